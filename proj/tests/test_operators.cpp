#include "doctest.h"
#include "gl2/gl2_family.hpp"
#include "gl2/operators.hpp"
#include "oracles.hpp"

using namespace gl2;

namespace {

bool square_zero(const Algebra& t, int from) {
  for (int i = from; i < t.dim(); ++i)
    for (int j = from; j < t.dim(); ++j)
      if (!t.product(i, j).empty()) return false;
  return true;
}

bool algebra_ok(const Algebra& a) {
  return !a.associativity_witness() && a.grading_respected() && a.vertex_structure_ok();
}

// dim c^(j) for each j
std::vector<int> graded_dims(const Algebra& c) {
  std::vector<int> d;
  for (int i = 0; i < c.dim(); ++i) {
    int j = c_degree(c, i);
    if (j >= static_cast<int>(d.size())) d.resize(j + 1, 0);
    ++d[j];
  }
  return d;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("trivial extensions") {
  auto f = share(field_algebra(3));
  Algebra fm = trivial_extension(*f, regular_bimodule(f));
  CHECK(fm.dim() == 2);
  CHECK(algebra_ok(fm));
  CHECK(fm.product(1, 1).empty());
  CHECK(fm.product(0, 1) == SparseVec{{1, 1}});
  auto c = share(build_cp(2));
  Algebra t = trivial_extension(*c, dual(regular_bimodule(c)));
  CHECK(t.dim() == 10);
  CHECK(algebra_ok(t));
  CHECK(square_zero(t, c->dim()));
}

TEST_CASE("C_p(F) has dimension 4p-3 and the shape of c_p") {
  for (u32 p : {2u, 3u, 5u}) {
    auto f = share(field_algebra(p));
    CpResult r = cp_operator(f, regular_bimodule(f), p);
    const Algebra& c = *r.c;
    CHECK(c.dim() == 4 * static_cast<int>(p) - 3);
    CHECK(c.num_vertices() == static_cast<int>(p));
    CHECK(algebra_ok(c));
    CHECK(tightness_check(c));
    CHECK(cartan_matrix(c) == cartan_matrix(build_cp(p)));
    CHECK(graded_dims(c) == graded_dims(summed_grading(build_cp(p))));
    CHECK(bimodule_invariants_hold(r.x));
    CHECK(r.x.dim == 4 * static_cast<int>(p) - 4);
  }
}

TEST_CASE("x_p is self-dual") {
  for (u32 p : {2u, 3u}) {
    PairCp cx = standard_pair(p);
    auto sd = self_duality(cx.x);
    REQUIRE(sd.status == SearchStatus::found);
    Bimodule d = dual(cx.x);
    CHECK(is_bimodule_map(cx.x, d, *sd.map));
  }
}

TEST_CASE("X_p(A) for a nontrivial A") {
  PairCp cx = standard_pair(2);
  CpResult r = cp_operator(cx.c, cx.x, 2);
  CHECK(algebra_ok(*r.c));
  CHECK(tightness_check(*r.c));
  CHECK(bimodule_invariants_hold(r.x));
  CHECK(r.c->num_vertices() == 4);
  CHECK(self_duality(r.x).status == SearchStatus::found);
}

TEST_CASE("twisted algebras") {
  PairCp cx = standard_pair(3);
  auto f = share(field_algebra(3));
  TwistedAlgebra e1 = twisted_algebra(cx.c, f, regular_bimodule(f));
  CHECK(e1.alg->dim() == cx.c->dim());
  CHECK(algebra_ok(*e1.alg));
  CHECK(cartan_matrix(*e1.alg) == cartan_matrix(*cx.c));

  PairCp c2 = standard_pair(2);
  TwistedAlgebra e = twisted_algebra(c2.c, c2.c, c2.x);
  CHECK(algebra_ok(*e.alg));
  // graded dimension identity against powers computed separately
  std::vector<int> cd = graded_dims(*c2.c);
  std::vector<int> pw{c2.c->dim(), c2.x.dim};
  for (int j = 2; j < static_cast<int>(cd.size()); ++j) pw.push_back(tensor_over_algebra(e.powers[j - 1], c2.x).result.dim);
  std::vector<int> ed(cd.size(), 0);
  for (int i = 0; i < e.alg->dim(); ++i) ++ed[e.alg->basis[i].deg.back()];
  for (int j = 0; j < static_cast<int>(cd.size()); ++j) CHECK(ed[j] == cd[j] * pw[j]);

  // F in degree 0 gives back A
  auto f1 = share(field_algebra(2, 1));
  TwistedAlgebra unit = twisted_algebra(f1, c2.c, c2.x);
  CHECK(unit.alg->dim() == c2.c->dim());
  CHECK(cartan_matrix(*unit.alg) == cartan_matrix(*c2.c));

  TwistedBimodule tb = twisted_bimodule(c2.x, e, e);
  CHECK(bimodule_invariants_hold(tb.mod));
  TwistedBimodule reg = twisted_bimodule(regular_bimodule(c2.c), e, e);
  CHECK(reg.mod.dim == e.alg->dim());
  CHECK(iso_certificate(reg.mod, regular_bimodule(e.alg)).status == SearchStatus::found);
}

TEST_CASE("iterating the operator") {
  for (auto [p, n] : {std::pair<u32, int>{2, 3}, {3, 2}}) {
    auto steps = op_p_iterate(p, n);
    REQUIRE(static_cast<int>(steps.size()) == n + 1);
    int pk = 1;
    for (int k = 0; k <= n; ++k) {
      const Algebra& e = *steps[k].e.alg;
      CHECK(e.num_vertices() == pk);
      CHECK(tightness_check(e));
      CHECK(bimodule_invariants_hold(steps[k].x));
      pk *= static_cast<int>(p);
    }
  }
  CHECK(op_p_iterate(2, 2)[2].e.alg->dim() == 23);
  CHECK(op_p_iterate(3, 2)[2].e.alg->dim() == 77);
  CHECK_THROWS_AS(op_p_iterate(2, 3, 50), BudgetError);
}


TEST_CASE("C_n and E_n have the same size") {
  for (auto [p, n] : {std::pair<u32, int>{2, 2}, {3, 1}, {2, 3}}) {
    auto cs = cn_iterate(p, n);
    auto es = op_p_iterate(p, n);
    for (int k = 0; k <= n; ++k) {
      CHECK(cs[k].c->dim() == es[k].e.alg->dim());
      CHECK(cartan_matrix(*cs[k].c).size() == cartan_matrix(*es[k].e.alg).size());
      CHECK(cs[k].x.dim == es[k].x.dim);
      CHECK(tightness_check(*cs[k].c));
    }
  }
}

TEST_CASE("identity 1-cells map to identity 1-cells") {
  for (u32 p : {2u, 3u}) {
    PairCp cx = standard_pair(p);
    auto f = share(field_algebra(p));
    TwistedAlgebra e1 = twisted_algebra(cx.c, f, regular_bimodule(f), 2);
    OneCell out = map_one_cell(cx, e1, e1, identity_one_cell(regular_bimodule(f)));
    CHECK(bimodule_invariants_hold(out.m));
    CHECK(one_cell_check(out));
    CHECK(iso_certificate(out.m, regular_bimodule(e1.alg)).status == SearchStatus::found);
  }
  PairCp c2 = standard_pair(2);
  TwistedAlgebra e = twisted_algebra(c2.c, c2.c, c2.x, 2);
  OneCell out = map_one_cell(c2, e, e, identity_one_cell(c2.x));
  CHECK(bimodule_invariants_hold(out.m));
  CHECK(one_cell_check(out));
  CHECK(iso_certificate(out.m, regular_bimodule(e.alg)).status == SearchStatus::found);
}

TEST_CASE("a non-identity 1-cell") {
  // M = F^2 over (F, F) with T = T' = F and phi a nontrivial automorphism
  auto f = share(field_algebra(3));
  OneCell cell;
  cell.m.left = cell.m.right = f;
  cell.m.p = 3;
  cell.m.dim = 2;
  cell.m.lact = cell.m.ract = {SpMap::identity(2, 3)};
  cell.m.lv = cell.m.rv = {0, 0};
  cell.t = cell.t2 = regular_bimodule(f);
  cell.phi = SpMap::from_dense(Matrix::from_rows({{1, 1}, {0, 2}}, 3));
  REQUIRE(one_cell_check(cell));
  PairCp cx = standard_pair(3);
  TwistedAlgebra e1 = twisted_algebra(cx.c, f, regular_bimodule(f), 2);
  OneCell out = map_one_cell(cx, e1, e1, cell);
  CHECK(out.m.dim == 2 * cx.c->dim());
  CHECK(bimodule_invariants_hold(out.m));
  CHECK(one_cell_check(out));
  OneCell bad = cell;
  bad.phi = SpMap(2, 2, 3);
  CHECK_THROWS_WITH_AS(map_one_cell(cx, e1, e1, bad), "input cell invalid", AlgebraError);
}

TEST_CASE("C_p and the twisted pair agree") {
  for (u32 p : {2u, 3u}) {
    auto f = share(field_algebra(p));
    CpResult cp = cp_operator(f, regular_bimodule(f), p);
    auto es = op_p_iterate(p, 1);
    PairComparison cmp = compare_pairs(cp.c, cp.x, es[1].e.alg, es[1].x);
    REQUIRE(cmp.status == IsoStatus::found);
    CHECK(verify_iso(*cp.c, *es[1].e.alg, *cmp.alg));
  }
  PairCp c2 = standard_pair(2);
  CpResult cp = cp_operator(c2.c, c2.x, 2);
  TwistedAlgebra e = twisted_algebra(c2.c, c2.c, c2.x);
  TwistedBimodule x = twisted_bimodule(c2.x, e, e);
  PairComparison cmp = compare_pairs(cp.c, cp.x, e.alg, x.mod);
  REQUIRE(cmp.status == IsoStatus::found);
  Bimodule pulled = restrict_scalars(x.mod, cp.c, cmp.alg->map, cp.c, cmp.alg->map);
  CHECK(is_bimodule_map(cp.x, pulled, *cmp.bimodule));
  // a different bimodule over the same algebra is rejected
  PairComparison wrong = compare_pairs(cp.c, regular_bimodule(cp.c), e.alg, x.mod);
  CHECK(wrong.status != IsoStatus::found);
}

}
