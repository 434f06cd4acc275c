// truncation.hpp
// The surjections E_n -> E_{n-1} that kill every vertex of c_p except the first.
#pragma once

#include "gl2/operators.hpp"

namespace gl2 {

struct NotMultiplicative : AlgebraError {
  std::array<int, 2> witness;
  explicit NotMultiplicative(std::array<int, 2> w)
      : AlgebraError("not multiplicative at (" + std::to_string(w[0]) + "," + std::to_string(w[1]) + ")"),
        witness(w) {}
};

// e = c_p(A, X) built by op_p_iterate; returns the basis-level matrix E -> A.
SpMap truncation_map(const TwistedAlgebra& e);

}  // namespace gl2
