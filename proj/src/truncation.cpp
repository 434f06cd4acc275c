#include "gl2/truncation.hpp"

namespace gl2 {

SpMap truncation_map(const TwistedAlgebra& e) {
  const Algebra& c = *e.c;
  const Algebra& a = *e.a;
  const int first = c.idem.at(0);
  SpMap f(a.dim(), e.alg->dim(), a.p);
  for (int x = 0; x < e.alg->dim(); ++x) {
    auto [g, j, u] = e.origin[x];
    if (g == first) f.col[x] = {{u, 1 % a.p}};
  }
  if (auto w = hom_witness(*e.alg, a, f)) throw NotMultiplicative(*w);
  return f;
}

}  // namespace gl2
