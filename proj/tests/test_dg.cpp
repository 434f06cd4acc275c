#include "doctest.h"
#include "gl2/dg.hpp"
#include "gl2/gl2_family.hpp"

using namespace gl2;

namespace {

Complex regular(const AlgebraPtr& a) { return complex_from_bimodule(regular_bimodule(a)); }

Complex unit_t(u32 p) {
  auto f = share(field_algebra(p, 1));
  return regular(f);
}

// homology concentrated in degree 0 and isomorphic there to the regular bimodule
bool homology_is_regular(const Complex& c, const AlgebraPtr& a) {
  Homology h = homology(c);
  if (h.modules.size() != 1 || !h.modules.count(0)) return false;
  return iso_certificate(h.modules.at(0), regular_bimodule(a)).status == SearchStatus::found;
}

// sum over k of (-1)^k dim e_v P_k, per vertex v
std::vector<long long> alternating_vertex_dims(const Complex& c, int nv) {
  std::vector<long long> out(nv, 0);
  for (int i = 0; i < c.dim(); ++i) out[c.total.lv[i]] += c.hdeg[i] % 2 ? -1 : 1;
  return out;
}

std::map<int, int> std_dims(const Complex& c) {
  std::map<int, int> d;
  for (int i = 0; i < c.dim(); ++i) ++d[c.sdeg(i)];
  return d;
}

}  // namespace

TEST_SUITE("dg") {

TEST_CASE("two-term complexes Y_i and Y_i'") {
  auto c2 = graded_cp(2);
  Complex y = ks_complex(c2, 1, false);
  auto cm = cartan_matrix(*c2);
  int ce1 = 0, e1c = 0;
  for (int v = 0; v < 2; ++v) {
    ce1 += cm[v][0];
    e1c += cm[0][v];
  }
  CHECK(static_cast<int>(y.term(1).size()) == ce1 * e1c);
  CHECK(y.term(1).size() == 9);
  CHECK(y.term(0).size() == 5);
  CHECK(complex_ok(y));
  CHECK(complex_ok(ks_complex(c2, 1, true)));
  CHECK_THROWS_WITH_AS(ks_complex(c2, 2, false), "index out of range", AlgebraError);
  CHECK_THROWS_WITH_AS(ks_complex(c2, 0, true), "index out of range", AlgebraError);
  for (u32 p : {2u, 3u}) {
    auto c = graded_cp(p);
    for (int i = 1; i < static_cast<int>(p); ++i) {
      CHECK(is_projective_bimodule(projective_bimodule(c, i - 1, i - 1)));
      // the coevaluation slot is one-dimensional
      std::vector<int> two{2};
      CHECK(intertwiner_basis(regular_bimodule(c), projective_bimodule(c, i - 1, i - 1), &two).size() == 1);
    }
  }
  CHECK(!is_projective_bimodule(standard_pair(2).x));
  // a corrupted differential is rejected
  Complex bad = y;
  bad.d.col[y.term(1)[0]].clear();
  bad.d.col[y.term(1)[0]].push_back({y.term(0)[1], 1});
  REQUIRE(bad.d != y.d);
  CHECK(!complex_ok(bad));
}

TEST_CASE("total tensor") {
  auto c2 = graded_cp(2);
  Complex y = ks_complex(c2, 1, false), yp = ks_complex(c2, 1, true);
  // unit
  Complex yc = total_tensor(y, regular(c2)).result;
  CHECK(yc.dim() == y.dim());
  CHECK(homology(yc).dims == homology(y).dims);
  Complex t = total_tensor(y, yp).result;
  CHECK(complex_ok(t));
  CHECK(t.term(1).size() == 9);
  CHECK(t.term(0).size() == 23);
  CHECK(t.term(-1).size() == 9);
  Homology h = homology(t);
  CHECK(h.total_dim() == 5);
  CHECK(homology_is_regular(t, c2));
  CHECK(euler_homology(h) == euler_terms(t));
}

TEST_CASE("Koszul signs are associative") {
  auto c3 = graded_cp(3);
  Complex x = ks_complex(c3, 1, false), y = ks_complex(c3, 2, true), z = ks_complex(c3, 1, true);
  TensorComplex xy = total_tensor(x, y), yz = total_tensor(y, z);
  TensorComplex l = total_tensor(xy.result, z), r = total_tensor(x, yz.result);
  REQUIRE(l.result.dim() == r.result.dim());
  // the associator ((u v) w) -> (u (v w)) on representatives
  SpMap assoc(r.result.dim(), l.result.dim(), 3);
  for (int k = 0; k < l.result.dim(); ++k) {
    auto [uv, w] = l.tp.rep[k];
    auto [u, v] = xy.tp.rep[uv];
    assoc.col[k] = r.tp.project(SparseVec{{u, 1}}, yz.tp.project(v, w));
  }
  CHECK(rank(assoc.dense()) == l.result.dim());
  CHECK(compose(r.result.d, assoc) == compose(assoc, l.result.d));
  CHECK(is_chain_map(l.result, r.result, assoc));
}

TEST_CASE("homology basics") {
  auto c2 = graded_cp(2);
  Complex z = regular(c2);
  Homology h = homology(z);
  CHECK(h.total_dim() == 5);
  CHECK(iso_certificate(h.modules.at(0), regular_bimodule(c2)).status == SearchStatus::found);
  // identity cone is acyclic
  Bimodule r = regular_bimodule(c2);
  Complex cone = two_term(r, 1, r, SpMap::identity(5, 2));
  CHECK(complex_ok(cone));
  CHECK(homology(cone).total_dim() == 0);
  CHECK(euler_terms(cone).empty());
}

TEST_CASE("Y_i (x) Y_i' has the homology of c_p") {
  for (u32 p : {2u, 3u}) {
    auto c = graded_cp(p);
    for (int i = 1; i < static_cast<int>(p); ++i) {
      Complex t = total_tensor(ks_complex(c, i, false), ks_complex(c, i, true)).result;
      CHECK(homology_is_regular(t, c));
      auto q = quasi_iso_certificate(t, regular(c));
      REQUIRE(q.status == SearchStatus::found);
      CHECK(is_chain_map(t, regular(c), *q.map));
    }
  }
}

TEST_CASE("quasi-isomorphism certificates") {
  auto c3 = graded_cp(3);
  Complex y = ks_complex(c3, 2, false);
  auto q = quasi_iso_certificate(y, y);
  CHECK(q.status == SearchStatus::found);
  auto qi = quasi_iso_certificate(y, y, {}, SpMap::identity(y.dim(), 3));
  CHECK(qi.status == SearchStatus::found);
  auto qz = quasi_iso_certificate(y, y, {}, SpMap(y.dim(), y.dim(), 3));
  CHECK(qz.status == SearchStatus::none);
  auto qd = quasi_iso_certificate(y, regular(c3));
  CHECK(qd.status == SearchStatus::none);
  CHECK(!qd.tables_equal);
}

TEST_CASE("braid relations") {
  auto c3 = graded_cp(3);
  Complex a = braid_word_complex(c3, {1, 2, 1}), b = braid_word_complex(c3, {2, 1, 2});
  CHECK(homology(a, false).dims == homology(b, false).dims);
  auto q = quasi_iso_certificate(a, b);
  REQUIRE(q.status == SearchStatus::found);
  CHECK(is_chain_map(a, b, *q.map));
  auto c5 = graded_cp(5);
  for (auto [i, j] : {std::pair{1, 3}, {1, 4}, {2, 4}}) {
    auto q5 = quasi_iso_certificate(braid_word_complex(c5, {i, j}), braid_word_complex(c5, {j, i}));
    CHECK(q5.status == SearchStatus::found);
  }
  // adjacent generators do not commute
  CHECK(quasi_iso_certificate(braid_word_complex(c3, {1, 2}), braid_word_complex(c3, {2, 1})).status ==
        SearchStatus::none);
  CHECK(homology_is_regular(braid_word_complex(c3, {}), c3));
  Complex inv = total_tensor(braid_word_complex(c3, {1}), ks_complex(c3, 1, true)).result;
  CHECK(quasi_iso_certificate(inv, regular(c3)).status == SearchStatus::found);
  CHECK_THROWS_AS(braid_word_complex(c3, {3}), AlgebraError);
}

TEST_CASE("dg twisted algebras") {
  // a = F, t = F gives c back
  auto c2 = graded_cp(2);
  auto f = share(field_algebra(2, 1));
  DgAlgebra e = dg_twisted_algebra(c2, f, unit_t(2));
  CHECK(e.alg->dim() == 5);
  CHECK(e.dg->d.is_zero());
  CHECK(cartan_matrix(*e.alg) == cartan_matrix(*c2));
  CHECK(dg_algebra_ok(e));

  // c_2(c_2, Y_1): graded pieces are c^(j) times the total complex of t^j
  Complex t = ks_complex(c2, 1, false);
  DgAlgebra et = dg_twisted_algebra(c2, c2, t);
  CHECK(dg_algebra_ok(et));
  std::map<int, int> cd;
  for (int i = 0; i < c2->dim(); ++i) ++cd[c2->basis[i].deg[0]];
  std::vector<int> pw{c2->dim(), t.dim(), total_tensor(t, t).result.dim()};
  std::map<int, int> ed;
  for (int i = 0; i < et.alg->dim(); ++i) ++ed[et.alg->basis[i].deg.back()];
  for (auto [j, n] : cd) CHECK(ed[j] == n * pw[j]);
  CHECK(et.alg->dim() == 2 * 5 + 2 * 14 + 41);
  CHECK(complex_ok(regular_complex(et)));
  // over a field the homology of c^(j) (x) Tot(t^j) is c^(j) (x) H(t^j)
  int ht = homology(t, false).total_dim(), ht2 = homology(total_tensor(t, t).result, false).total_dim();
  CHECK(homology(regular_complex(et), false).total_dim() == 2 * 5 + 2 * ht + ht2);

  CHECK_THROWS_AS(dg_twisted_algebra(graded_cp(3), c2, t), AlgebraError);
}

TEST_CASE("dg twisted bimodules") {
  auto c2 = graded_cp(2);
  auto f = share(field_algebra(2, 1));
  DgAlgebra e = dg_twisted_algebra(c2, f, unit_t(2), 4);
  Complex y = ks_complex(c2, 1, false);
  Complex yt = dg_twisted_bimodule(y, e, e);
  CHECK(yt.dim() == y.dim());
  CHECK(complex_ok(yt));
  CHECK(homology(yt, false).dims == homology(y, false).dims);
  Complex reg = dg_twisted_bimodule(regular(c2), e, e);
  CHECK(reg.dim() == 5);

  Complex t = ks_complex(c2, 1, false);
  DgAlgebra et = dg_twisted_algebra(c2, c2, t, 4);
  Complex y1 = dg_twisted_bimodule(y, et, et);
  CHECK(complex_ok(y1));
  // graded dims: sum over j of dim Y^(j) times dim Tot(t^j)
  std::vector<int> tot{c2->dim(), t.dim()};
  Complex tj = t;
  for (int j = 2; j <= 4; ++j) {
    tj = total_tensor(tj, t).result;
    tot.push_back(tj.dim());
  }
  std::map<int, int> want, got = std_dims(y1);
  for (auto [j, n] : std_dims(y)) want[j] = n * tot[j];
  CHECK(got == want);
  CHECK_THROWS_WITH_AS(dg_twisted_bimodule(ks_complex(c2, 1, true), e, e), "not positively graded",
                       AlgebraError);
}

TEST_CASE("hom complexes") {
  auto c2 = graded_cp(2);
  HomComplex aa = hom_complex(regular(c2), regular(c2));
  CHECK(aa.warning.empty());
  Homology haa = homology(aa.cx);
  CHECK(iso_certificate(haa.modules.at(0), regular_bimodule(c2)).status == SearchStatus::found);
  Complex t = ks_complex(c2, 1, false);
  HomComplex tt = hom_complex(t, t);
  CHECK(complex_ok(tt.cx));
  CHECK(homology_is_regular(tt.cx, c2));
  // cancellation: hom(t^2, t) and hom(t, a) have the same homology
  Complex t2 = total_tensor(t, t).result;
  auto h1 = homology(hom_complex(t2, t, false).cx, false);
  auto h2 = homology(hom_complex(t, regular(c2), false).cx, false);
  CHECK(h1.dims == h2.dims);
  CHECK(h1.total_dim() > 0);
  // basis maps are read back by their coordinates
  for (size_t k = 0; k < tt.maps.size(); k += 7) CHECK(tt.coords(tt.maps[k]) == SparseVec{{static_cast<int>(k), 1}});
  // a non-projective source is flagged
  PairCp cx = standard_pair(2);
  CHECK(!hom_complex(complex_from_bimodule(cx.x), complex_from_bimodule(cx.x)).warning.empty());
}

TEST_CASE("minimal projective resolutions") {
  auto c2 = graded_cp(2);
  Resolution r0 = min_proj_resolution(projective_bimodule(c2, 0, 1));
  CHECK(r0.length == 0);
  CHECK(r0.res.dim() == 6);
  // c_2 itself is not a projective bimodule
  CHECK(min_proj_resolution(regular_bimodule(c2)).length > 0);

  // the simple left module at vertex 2
  auto f = share(field_algebra(2, 1));
  Bimodule s2 = simple_bimodule(c2, 1, f, 0);
  Resolution rs = min_proj_resolution(s2);
  CHECK(complex_ok(rs.res));
  CHECK(homology(rs.res, false).total_dim() == 1);
  auto alt = alternating_vertex_dims(rs.res, 2);
  CHECK(alt == std::vector<long long>{0, 1});
  auto cm = cartan_matrix(*c2);
  CHECK(static_cast<int>(rs.res.term(0).size()) == cm[0][1] + cm[1][1]);  // c_2 e_2

  PairCp cx = standard_pair(2);
  Resolution rx = min_proj_resolution(cx.x, 6);
  CHECK(complex_ok(rx.res));
  CHECK(rx.length <= 6);
  Homology h = homology(rx.res);
  CHECK(h.total_dim() == cx.x.dim);
  CHECK(is_projective_bimodule(rx.res.total));
  // the augmentation induces H_0 = x_2
  SpMap aug0(cx.x.dim, static_cast<int>(h.reps.at(0).size()), 2);
  for (size_t q = 0; q < h.reps.at(0).size(); ++q) aug0.col[q] = rx.aug.apply(h.reps.at(0)[q]);
  CHECK(rank(aug0.dense()) == cx.x.dim);
  CHECK_THROWS_WITH_AS(min_proj_resolution(cx.x, 1), "resolution exceeds max_len", AlgebraError);
}

TEST_CASE("dg resolution: c_2(c_2, t) -> c_2(c_2, x_2)") {
  PairCp cx = standard_pair(2);
  Resolution r = min_proj_resolution(cx.x);
  DgAlgebra src = dg_twisted_algebra(cx.c, cx.c, r.res);
  DgAlgebra tgt = dg_twisted_algebra(cx.c, cx.c, complex_from_bimodule(cx.x));
  CHECK(dg_algebra_ok(src));
  SpMap phi = induced_twisted_map(src, tgt, r.aug);
  CHECK(!hom_witness(*src.alg, *tgt.alg, phi));
  Homology hs = homology(regular_complex(src), false);
  CHECK(hs.total_dim() == tgt.alg->dim());
  auto q = quasi_iso_certificate(forget_actions(regular_complex(src)), forget_actions(regular_complex(tgt)),
                                 {}, phi);
  CHECK(q.status == SearchStatus::found);
}

TEST_CASE("gamma checks") {
  auto c2 = graded_cp(2);
  auto f2 = share(field_algebra(2, 1));
  auto g = endomorphism_gamma_check(c2, c2, ks_complex(c2, 1, false), f2, unit_t(2));
  CHECK(g.status == SearchStatus::found);
  CHECK(g.source == g.target);
  auto gr = endomorphism_gamma_check(c2, c2, regular(c2), f2, unit_t(2));
  CHECK(gr.status == SearchStatus::found);
  auto c3 = graded_cp(3);
  auto f3 = share(field_algebra(3, 1));
  auto g3 = endomorphism_gamma_check(c3, c3, braid_word_complex(c3, {1, 2}), f3, unit_t(3));
  CHECK(g3.status == SearchStatus::found);
  // a complex that is not tilting: the simple-like two-term complex c -> 0
  Bimodule s = simple_bimodule(c2, 0, c2, 0);
  s.deg.assign(s.dim, {0});
  auto gs = endomorphism_gamma_check(c2, c2, complex_from_bimodule(s), f2, unit_t(2));
  CHECK(gs.status == SearchStatus::none);
  auto gn = endomorphism_gamma_check(c2, c2, ks_complex(c2, 1, true), f2, unit_t(2));
  CHECK(gn.status == SearchStatus::inconclusive);
}

TEST_CASE("braid words twisted by a tilting complex") {
  auto c3 = graded_cp(3);
  auto a = graded_cp(2, 3);
  Complex t = ks_complex(a, 1, false);
  DgAlgebra e = dg_twisted_algebra(c3, a, t, 6);
  CHECK(dg_algebra_ok(e));
  Complex x = dg_twisted_bimodule(braid_word_complex(c3, {1, 2, 1}), e, e);
  Complex y = dg_twisted_bimodule(braid_word_complex(c3, {2, 1, 2}), e, e);
  CHECK(complex_ok(x));
  Homology hx = homology(x, false), hy = homology(y, false);
  CHECK(hx.dims == hy.dims);
  CHECK(euler_homology(hx) == euler_terms(x));
}

TEST_CASE("complex-v1 round trip") {
  auto c3 = graded_cp(3);
  Complex y = braid_word_complex(c3, {1, 2});
  std::string js = complex_to_json(y, "c3", "c3");
  Complex back = complex_from_json(js, c3, c3);
  CHECK(back.hdeg == y.hdeg);
  CHECK(back.d == y.d);
  CHECK(back.total.deg == y.total.deg);
  CHECK(complex_to_json(back, "c3", "c3") == js);
  std::string broken = js;
  broken.replace(broken.find("complex-v1"), 10, "complex-v0");
  CHECK_THROWS_AS(complex_from_json(broken, c3, c3), AlgebraError);
}

}
