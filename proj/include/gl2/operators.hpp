// operators.hpp
// Trivial extensions, the corner/subquotient operator C_p, twisted tensor
// products c(A,T) and their iteration.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gl2/bimodule.hpp"
#include "gl2/iso_check.hpp"

namespace gl2 {

// B (+) M with (b,m)(b',m') = (bb', bm' + mb'). Degrees of M are used as given.
Algebra trivial_extension(const Algebra& b, const Bimodule& m);

// Componentwise maximum of the degrees of T (empty T gives zeros).
std::vector<int> top_degree(const Bimodule& t, int rank);

// Bimodule maps T -> dual(T) homogeneous of degree -top_degree(T); the first
// invertible one found.
IsoSearch self_duality(const Bimodule& t, const SearchLimits& lim = {});

struct CpResult {
  AlgebraPtr c;  // C_p(A)
  Bimodule x;    // X_p(A) as a (C_p(A), C_p(A))-bimodule
  SpMap phi;     // the self-duality T -> T* used for the left action
};

// Builds C_p(A) and X_p(A) from (A, T); T must be self-dual. The construction is
// done for two truncations of the infinite block algebra and compared.
CpResult cp_operator(const AlgebraPtr& a, const Bimodule& t, u32 p, const SearchLimits& lim = {});

// c(A,T) = sum_j c^(j) (x) T^j; c graded by its first (or only) degree coordinate.
struct TwistedAlgebra {
  AlgebraPtr c;
  AlgebraPtr a;
  AlgebraPtr alg;
  std::vector<Bimodule> powers;        // T^0 = A, T^1 = T, ...
  std::vector<TensorProduct> steps;    // steps[j] realizes T^j = T^{j-1} (x)_A T, j >= 2
  std::vector<std::array<int, 3>> origin;  // (c basis index, j, T^j basis index)
  std::vector<std::vector<int>> index;     // [c basis index][T^j index] -> basis index

  // u in T^j times v in T^k, landing in T^{j+k}
  SparseVec concat(int j, int u, int k, int v) const;
  SparseVec concat(int j, const SparseVec& u, int k, const SparseVec& v) const;
};

int c_degree(const Algebra& c, int i);

TwistedAlgebra twisted_algebra(const AlgebraPtr& c, const AlgebraPtr& a, const Bimodule& t,
                               int max_power = -1);

// x(A,T) for a graded (c, c')-bimodule x; left and right twisted algebras must
// share A and T.
struct TwistedBimodule {
  Bimodule mod;
  std::vector<std::array<int, 3>> origin;  // (x basis index, j, T^j basis index)
};
TwistedBimodule twisted_bimodule(const Bimodule& x, const TwistedAlgebra& left,
                                 const TwistedAlgebra& right);

struct OpStep {
  TwistedAlgebra e;  // E_k, built over E_{k-1}; for k = 0 only e.alg is set
  Bimodule x;        // X_k
};

struct PairCp {
  AlgebraPtr c;  // c_p as C_p(F), with the summed grading
  Bimodule x;    // x_p
};
PairCp standard_pair(u32 p);

struct BudgetError : AlgebraError {
  int k;
  long long projected;
  BudgetError(int k_, long long proj)
      : AlgebraError("budget exceeded at k=" + std::to_string(k_) + " (projected dimension " +
                     std::to_string(proj) + ")"),
        k(k_),
        projected(proj) {}
};

// E_0 = F, (E_{k+1}, X_{k+1}) = (c_p(E_k, X_k), x_p(E_k, X_k))
std::vector<OpStep> op_p_iterate(u32 p, int n, long long budget_dim = 20000);

// C_0 = F, (C_{k+1}, X_{k+1}) = C_p(C_k, X_k)
std::vector<CpResult> cn_iterate(u32 p, int n, long long budget_dim = 20000,
                                 const SearchLimits& lim = {});

// (A1, X1) ~ (A2, X2): an algebra isomorphism f: A1 -> A2 together with a
// bimodule isomorphism X1 -> f^*X2.
struct PairComparison {
  IsoStatus status = IsoStatus::none;
  std::optional<IsoCertificate> alg;
  std::optional<SpMap> bimodule;
  std::string reason;
};
PairComparison compare_pairs(const AlgebraPtr& a1, const Bimodule& x1, const AlgebraPtr& a2,
                             const Bimodule& x2, const IsoOptions& opt = {},
                             const SearchLimits& lim = {});

// (c(A,T) (x)_A M, O(phi_M)) for a 1-cell (M, phi_M) over (A,T) -> (B,T').
OneCell map_one_cell(const PairCp& cx, const TwistedAlgebra& ca, const TwistedAlgebra& cb,
                     const OneCell& cell);

}  // namespace gl2
