#include "doctest.h"
#include "gl2/exactla.hpp"

using namespace gl2;

namespace {

Matrix random_matrix(Rng& rng, int r, int c, u32 p) {
  Matrix m(r, c, p);
  for (auto& x : m.a) x = rng.below(p);
  return m;
}

// all vectors of F_p^n, for tiny brute-force checks
std::vector<std::vector<u32>> all_vectors(int n, u32 p) {
  std::vector<std::vector<u32>> out(1, std::vector<u32>(n, 0));
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<u32>> next;
    for (auto& v : out)
      for (u32 x = 0; x < p; ++x) {
        auto w = v;
        w[i] = x;
        next.push_back(w);
      }
    out.swap(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("exactla") {

TEST_CASE("reduce on small matrices") {
  auto r = reduce(Matrix::identity(2, 3));
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<int>{0, 1});

  r = reduce(Matrix(3, 3, 2));
  CHECK(r.rank == 0);
  CHECK(r.pivots.empty());

  r = reduce(Matrix::from_rows({{1, 2}, {2, 4}}, 5));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<int>{0});
  CHECK(r.rref == Matrix::from_rows({{1, 2}, {0, 0}}, 5));
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(Matrix::identity(4, 5)).rows == 0);
  CHECK(kernel_basis(Matrix(3, 3, 2)).rows == 3);

  auto k = kernel_basis(Matrix::from_rows({{1, 1}}, 2));
  REQUIRE(k.rows == 1);
  // enumerate F_2^2: the only nonzero solution is (1,1)
  int nonzero_solutions = 0;
  for (auto& v : all_vectors(2, 2))
    if ((v[0] + v[1]) % 2 == 0 && (v[0] || v[1])) ++nonzero_solutions;
  CHECK(nonzero_solutions == 1);
  CHECK(k.row_vec(0) == std::vector<u32>{1, 1});
}

TEST_CASE("solve_affine") {
  std::vector<u32> b{1, 2, 0};
  auto x = solve_affine(Matrix::identity(3, 3), b);
  REQUIRE(x);
  CHECK(*x == b);

  auto m = Matrix::from_rows({{1, 1}}, 2);
  x = solve_affine(m, {1});
  REQUIRE(x);
  CHECK(mat_vec(m, *x) == std::vector<u32>{1});

  CHECK_FALSE(solve_affine(Matrix::from_rows({{0}}, 3), {1}));
  CHECK_THROWS_AS(solve_affine(m, {1, 0}), LinAlgError);
}

TEST_CASE("tensor product matrix") {
  CHECK(tensor_product_matrix(Matrix::identity(2, 3), Matrix::identity(3, 3)) ==
        Matrix::identity(6, 3));
  Rng rng(7);
  auto a = random_matrix(rng, 3, 3, 3);
  CHECK(tensor_product_matrix(a, Matrix(2, 2, 3)).is_zero());
  CHECK_THROWS_AS(tensor_product_matrix(Matrix(1, 1, 2), Matrix(1, 1, 3)), LinAlgError);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_matrix(rng, 3, 3, 3);
    auto y = random_matrix(rng, 3, 3, 3);
    // make some rank-deficient samples
    if (trial % 3 == 0) std::copy(x.row(0), x.row(0) + 3, x.row(1));
    CHECK(rank(tensor_product_matrix(x, y)) == rank(x) * rank(y));
  }
}

TEST_CASE("properties on random matrices") {
  Rng rng(11);
  for (u32 p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      int r = 1 + static_cast<int>(rng.below(6)), c = 1 + static_cast<int>(rng.below(6));
      auto m = random_matrix(rng, r, c, p);
      auto red = reduce(m);
      CHECK(reduce(red.rref).rref == red.rref);
      auto k = kernel_basis(m);
      CHECK(red.rank + k.rows == c);
      if (k.rows) CHECK((m * k.transpose()).is_zero());
      auto b = rng.vec(r, p);
      auto x = solve_affine(m, b);
      if (x) CHECK(mat_vec(m, *x) == b);
      // consistent right-hand sides always solve
      auto y = rng.vec(c, p);
      auto mb = mat_vec(m, y);
      auto z = solve_affine(m, mb);
      REQUIRE(z);
      CHECK(mat_vec(m, *z) == mb);
    }
  }
}

TEST_CASE("inverse and echelon basis") {
  Rng rng(3);
  auto m = Matrix::from_rows({{1, 2}, {3, 4}}, 5);
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == Matrix::identity(2, 5));
  CHECK_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, 5)));

  EchelonBasis eb(4, 3);
  CHECK(eb.add({1, 2, 0, 1}));
  CHECK(eb.add({0, 1, 1, 0}));
  CHECK_FALSE(eb.add({1, 0, 1, 1}));  // (1,2,0,1) + (0,1,1,0) mod 3
  CHECK(eb.size() == 2);
  CHECK(eb.as_matrix() == row_space(Matrix::from_rows({{1, 2, 0, 1}, {0, 1, 1, 0}}, 3)));
}

TEST_CASE("sparse helpers") {
  SparseVec a{{0, 1}, {3, 2}};
  SparseVec b{{3, 1}, {4, 4}};
  sparse_axpy(a, b, 1, 3);
  CHECK(a == SparseVec{{0, 1}, {4, 1}});
  CHECK(to_sparse(to_dense(a, 6)) == a);
}

}
