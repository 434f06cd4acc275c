#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gl2/gl2_family.hpp"
#include "gl2/quiver.hpp"
#include "oracles.hpp"

using namespace gl2;

namespace {

std::vector<u32> unit_vec(int n, int i, u32 p) {
  std::vector<u32> v(n, 0);
  v[i] = 1 % p;
  return v;
}

int find_tag(const Algebra& a, const std::string& tag) {
  for (int i = 0; i < a.dim(); ++i)
    if (a.basis[i].tag == tag) return i;
  return -1;
}

// one vertex, one loop x of degree 1 with x^k = 0
Algebra truncated_polynomial(u32 p, int k) {
  Quiver q;
  q.grading_rank = 1;
  q.add_vertex("0");
  q.add_arrow("x", 0, 0, {1});
  Relation r{{{1, Path(k, 0)}}};
  return build_algebra(q, {r}, p, {k + 1});
}

}  // namespace

TEST_SUITE("quiver_algebra") {

TEST_CASE("c_2 and trivial presentations") {
  Algebra c2 = build_cp(2);
  CHECK(c2.dim() == 5);
  std::vector<std::string> tags;
  for (auto& b : c2.basis) tags.push_back(b.tag);
  std::sort(tags.begin(), tags.end());
  std::vector<std::string> expect{"e1", "e2", "ξ", "ξη", "η"};
  std::sort(expect.begin(), expect.end());
  CHECK(tags == expect);

  Quiver point;
  point.add_vertex("0");
  Algebra f = build_algebra(point, {}, 3);
  CHECK(f.dim() == 1);
  CHECK(cartan_matrix(f) == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("c_3 against the path-space oracle") {
  for (u32 p : {2u, 3u, 5u}) {
    Quiver q = cp_quiver(p);
    auto rels = cp_relations(q, p);
    std::vector<int> cap(2, 2 * static_cast<int>(p));
    Algebra c = build_algebra(q, rels, p, cap);
    CHECK(c.dim() == static_cast<int>(4 * p - 3));
    CHECK(oracle::presented_dim(q, rels, p) == c.dim());
  }
}

TEST_CASE("multiply") {
  Algebra c2 = build_cp(2);
  int xi = find_tag(c2, "ξ"), e1 = find_tag(c2, "e1"), e2 = find_tag(c2, "e2");
  auto one = to_dense(c2.unit(), c2.dim());
  for (int i = 0; i < c2.dim(); ++i) {
    auto x = unit_vec(c2.dim(), i, 2);
    CHECK(c2.multiply(one, x) == x);
    CHECK(c2.multiply(x, one) == x);
  }
  CHECK(c2.product(xi, xi).empty());
  CHECK(c2.product(e1, e2).empty());
  int eta = find_tag(c2, "η"), loop = find_tag(c2, "ξη");
  CHECK(c2.product(eta, xi) == SparseVec{{loop, 1}});
  CHECK(c2.product(xi, eta).empty());
}

TEST_CASE("cartan matrices and projectives") {
  Algebra c2 = build_cp(2);
  CHECK(cartan_matrix(c2) == std::vector<std::vector<int>>{{2, 1}, {1, 1}});
  for (u32 p : {2u, 3u, 5u}) {
    Algebra c = build_cp(p);
    auto cm = cartan_matrix(c);
    int total = 0;
    for (int j = 0; j < c.num_vertices(); ++j) {
      int col = 0;
      for (int i = 0; i < c.num_vertices(); ++i) col += cm[i][j];
      total += col;
      int expect = (j == 0) ? 3 : (j == c.num_vertices() - 1 ? 2 : 4);
      CHECK(col == expect);
      CHECK(left_projective(c, j).dim == col);
      CHECK(cm[j][j] >= 1);
    }
    CHECK(total == c.dim());
  }
  CHECK(left_projective(c2, 0).dim == 3);
  CHECK(left_projective(c2, 1).dim == 2);
  CHECK_THROWS_AS(left_projective(c2, 2), AlgebraError);
  CHECK(module_invariants_hold(c2, left_projective(c2, 0)));
}

TEST_CASE("tightness") {
  CHECK(tightness_check(build_cp(2)));
  CHECK(tightness_check(build_An(2, 2)));
  // adjoin a degree-0 nilpotent loop: F[m]/m^2 with m in degree 0
  Algebra bad(2, 1);
  bad.vertices = {"0"};
  bad.basis = {{0, 0, {0}, "e0", {}}, {0, 0, {0}, "m", {}}};
  bad.idem = {0};
  bad.init_table();
  bad.set_product(0, 0, {{0, 1}});
  bad.set_product(0, 1, {{1, 1}});
  bad.set_product(1, 0, {{1, 1}});
  CHECK_FALSE(bad.associativity_witness());
  CHECK_FALSE(tightness_check(bad));
  CHECK_THROWS_AS(radical_layers(bad, left_projective(bad, 0)), AlgebraError);
  CHECK(radical_layers(bad, left_projective(bad, 0), std::vector<SparseVec>{{{1, 1}}}).size() == 2);
}

TEST_CASE("radical layers") {
  Algebra c2 = build_cp(2);
  CHECK(radical_layers(c2, simple_module(c2, 1)) == std::vector<std::vector<int>>{{0, 1}});
  CHECK(radical_layers(c2, left_projective(c2, 0)) ==
        std::vector<std::vector<int>>{{1, 0}, {0, 1}, {1, 0}});
  for (u32 p : {3u, 5u}) {
    Algebra c = build_cp(p);
    auto layers = radical_layers(c, left_projective(c, static_cast<int>(p) - 1));
    REQUIRE(layers.size() == 2);
    std::vector<int> top(p, 0), second(p, 0);
    top[p - 1] = 1;
    second[p - 2] = 1;
    CHECK(layers[0] == top);
    CHECK(layers[1] == second);
  }
}

TEST_CASE("associativity and grading on all built algebras") {
  std::vector<Algebra> algs{build_cp(2), build_cp(3), build_cp(5), build_An(2, 2), build_An(3, 2),
                            truncated_polynomial(3, 4)};
  for (auto& a : algs) {
    CHECK_FALSE(a.associativity_witness());
    CHECK(a.grading_respected());
    CHECK(a.vertex_structure_ok());
    int total = 0;
    for (auto& row : cartan_matrix(a)) total += std::accumulate(row.begin(), row.end(), 0);
    CHECK(total == a.dim());
  }
  CHECK(truncated_polynomial(3, 4).dim() == 4);
}

TEST_CASE("result does not depend on arrow order") {
  auto pres = present_An(3, 2);
  Quiver q = pres.qn.quiver;
  const int na = static_cast<int>(q.arrows.size());
  std::vector<int> perm(na);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(5);
  for (int i = na - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  Quiver shuffled = q;
  for (int i = 0; i < na; ++i) shuffled.arrows[perm[i]] = q.arrows[i];
  std::vector<Relation> rels = pres.relations;
  for (auto& r : rels)
    for (auto& t : r.terms)
      for (auto& a : t.second) a = perm[a];
  auto profile = [](const Algebra& a) {
    std::map<std::tuple<int, int, std::vector<int>>, int> m;
    for (auto& b : a.basis) ++m[{b.src, b.tgt, b.deg}];
    return m;
  };
  CHECK(profile(build_algebra(q, pres.relations, 3)) == profile(build_algebra(shuffled, rels, 3)));
}

TEST_CASE("errors") {
  Quiver q = cp_quiver(3);
  // ξ1 and η1 have different endpoints
  Relation bad{{{1, {0}}, {1, {2}}}};
  CHECK_THROWS_WITH_AS(build_algebra(q, {bad}, 3), "inhomogeneous relation", AlgebraError);
  Relation broken{{{1, {0, 0}}}};
  CHECK_THROWS_AS(build_algebra(q, {broken}, 3), AlgebraError);
  // free algebra on a loop is infinite
  Quiver loop;
  loop.grading_rank = 1;
  loop.add_vertex("0");
  loop.add_arrow("x", 0, 0, {1});
  CHECK_THROWS_WITH_AS(build_algebra(loop, {}, 2), "cap too small", AlgebraError);
}

TEST_CASE("algebra-v1 round trip") {
  for (auto a : {build_cp(2), build_An(3, 2)}) {
    std::string s = algebra_to_json(a);
    Algebra b = algebra_from_json(s);
    CHECK(algebra_to_json(b) == s);
    CHECK(b.dim() == a.dim());
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) CHECK(a.product(i, j) == b.product(i, j));
  }
}

}
