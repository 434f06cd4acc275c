// exactla.hpp
// Dense linear algebra over a prime field F_p.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gl2 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct LinAlgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(u32 p);

inline u32 fp_add(u32 a, u32 b, u32 p) {
  u32 s = a + b;
  return s >= p ? s - p : s;
}
inline u32 fp_sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fp_mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64)a * b % p); }
inline u32 fp_neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
u32 fp_inv(u32 a, u32 p);
u32 fp_pow(u32 a, u64 e, u32 p);
// maps a signed integer to its residue
u32 fp_from_int(long long v, u32 p);

// Row-major dense matrix. p is carried along so mismatches can be caught.
struct Matrix {
  int rows = 0;
  int cols = 0;
  u32 p = 2;
  std::vector<u32> a;

  Matrix() = default;
  Matrix(int r, int c, u32 p_) : rows(r), cols(c), p(p_), a(static_cast<size_t>(r) * c, 0) {}

  static Matrix identity(int n, u32 p);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, u32 p);
  // sparse triples (row, col, value) are accepted and densified
  static Matrix from_triples(int r, int c, u32 p,
                             const std::vector<std::tuple<int, int, long long>>& t);

  u32& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  u32 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  u32* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const u32* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }

  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  std::vector<u32> row_vec(int i) const { return {row(i), row(i) + cols}; }
  std::vector<u32> col_vec(int j) const;
  void append_row(const std::vector<u32>& v);
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix scale(const Matrix& x, u32 s);
std::vector<u32> mat_vec(const Matrix& m, const std::vector<u32>& v);
// stacks rows of x on top of rows of y
Matrix vstack(const Matrix& x, const Matrix& y);

struct Reduced {
  Matrix rref;
  int rank = 0;
  std::vector<int> pivots;
};

Reduced reduce(const Matrix& m);
int rank(const Matrix& m);
// rows form a basis of the right null space {v : m v = 0}
Matrix kernel_basis(const Matrix& m);
std::optional<std::vector<u32>> solve_affine(const Matrix& a, const std::vector<u32>& b);
Matrix tensor_product_matrix(const Matrix& x, const Matrix& y);
std::optional<Matrix> inverse(const Matrix& m);
// basis (as rows, in rref) of the row space
Matrix row_space(const Matrix& m);

// Sparse vector: sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<int, u32>>;

void sparse_axpy(SparseVec& acc, const SparseVec& x, u32 s, u32 p);
SparseVec to_sparse(const std::vector<u32>& v);
std::vector<u32> to_dense(const SparseVec& v, int n);

// Sparse linear map stored by columns: col[j] is the image of basis vector j.
struct SpMap {
  int rows = 0;
  int cols = 0;
  u32 p = 2;
  std::vector<SparseVec> col;

  SpMap() = default;
  SpMap(int r, int c, u32 p_) : rows(r), cols(c), p(p_), col(c) {}
  static SpMap identity(int n, u32 p);
  static SpMap from_dense(const Matrix& m);
  Matrix dense() const;
  SparseVec apply(const SparseVec& v) const;
  std::vector<u32> apply(const std::vector<u32>& v) const;
  bool is_zero() const;
  bool operator==(const SpMap& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && col == o.col;
  }
  bool operator!=(const SpMap& o) const { return !(*this == o); }
  size_t nnz() const;
};

// f after g
SpMap compose(const SpMap& f, const SpMap& g);
SpMap operator+(const SpMap& f, const SpMap& g);
SpMap scale(const SpMap& f, u32 s);
SpMap transpose(const SpMap& f);

// Incrementally maintained echelon basis with full back-substitution, used for
// span / membership / coordinate queries.
class EchelonBasis {
 public:
  EchelonBasis(int dim, u32 p) : dim_(dim), p_(p) {}
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(rows_.size()); }
  // reduces v in place against the basis; returns true if v became zero
  bool reduce_vec(std::vector<u32>& v) const;
  // adds v if independent; returns true when added
  bool add(std::vector<u32> v);
  bool contains(std::vector<u32> v) const { return reduce_vec(v); }
  const std::vector<int>& pivots() const { return piv_; }
  const std::vector<std::vector<u32>>& rows() const { return rows_; }
  Matrix as_matrix() const;

 private:
  int dim_;
  u32 p_;
  std::vector<std::vector<u32>> rows_;
  std::vector<int> piv_;
};

// Sparse Gaussian elimination on rows added one at a time. Pivot rows keep
// their leading entry normalized to 1; kernel() back-substitutes.
class SparseEliminator {
 public:
  SparseEliminator(int nvars, u32 p) : n_(nvars), p_(p), piv_(nvars, -1) {}
  int nvars() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  // returns true if the row was independent of the previous ones
  bool add(const SparseVec& row);
  // basis of {x : r.x = 0 for all added rows}, one sparse vector per free variable
  std::vector<SparseVec> kernel() const;

 private:
  int n_;
  u32 p_;
  std::vector<int> piv_;  // column -> row index
  std::vector<SparseVec> rows_;
  std::vector<u32> work_;
};

// Deterministic random source; all randomness flows from one 64-bit seed.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed ^ 0x9E3779B97F4A7C15ULL) {}
  u64 next() { return eng_(); }
  u32 below(u32 n) { return static_cast<u32>(eng_() % n); }
  std::vector<u32> vec(int n, u32 p) {
    std::vector<u32> v(n);
    for (auto& x : v) x = below(p);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gl2
