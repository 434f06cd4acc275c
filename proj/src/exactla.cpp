#include "gl2/exactla.hpp"

#include <algorithm>
#include <queue>

namespace gl2 {

bool is_prime(u32 p) {
  if (p < 2) return false;
  for (u32 d = 2; (u64)d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

u32 fp_pow(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 fp_inv(u32 a, u32 p) {
  if (a % p == 0) throw LinAlgError("inverse of zero in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

u32 fp_from_int(long long v, u32 p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<u32>(r);
}

Matrix Matrix::identity(int n, u32 p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rs, u32 p) {
  int r = static_cast<int>(rs.size());
  int c = r ? static_cast<int>(rs[0].size()) : 0;
  Matrix m(r, c, p);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rs[i].size()) != c) throw LinAlgError("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = fp_from_int(rs[i][j], p);
  }
  return m;
}

Matrix Matrix::from_triples(int r, int c, u32 p,
                            const std::vector<std::tuple<int, int, long long>>& t) {
  Matrix m(r, c, p);
  for (auto& [i, j, v] : t) {
    if (i < 0 || i >= r || j < 0 || j >= c) throw LinAlgError("triple out of range");
    m.at(i, j) = fp_add(m.at(i, j), fp_from_int(v, p), p);
  }
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<u32> Matrix::col_vec(int j) const {
  std::vector<u32> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

void Matrix::append_row(const std::vector<u32>& v) {
  if (rows == 0 && cols == 0) cols = static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != cols) throw LinAlgError("append_row: width mismatch");
  a.insert(a.end(), v.begin(), v.end());
  ++rows;
}

static void check_char(const Matrix& x, const Matrix& y) {
  if (x.p != y.p) throw LinAlgError("characteristic mismatch");
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  check_char(x, y);
  if (x.cols != y.rows) throw LinAlgError("dimension mismatch in product");
  const u32 p = x.p;
  Matrix r(x.rows, y.cols, p);
  std::vector<u64> acc(y.cols);
  for (int i = 0; i < x.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const u32* xi = x.row(i);
    int pending = 0;
    for (int k = 0; k < x.cols; ++k) {
      u32 s = xi[k];
      if (!s) continue;
      const u32* yk = y.row(k);
      for (int j = 0; j < y.cols; ++j) acc[j] += (u64)s * yk[j];
      // keep accumulators far from overflow
      if (++pending == 1 << 12) {
        for (auto& v : acc) v %= p;
        pending = 0;
      }
    }
    u32* ri = r.row(i);
    for (int j = 0; j < y.cols; ++j) ri[j] = static_cast<u32>(acc[j] % p);
  }
  return r;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  check_char(x, y);
  if (x.rows != y.rows || x.cols != y.cols) throw LinAlgError("dimension mismatch in sum");
  Matrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = fp_add(r.a[i], y.a[i], x.p);
  return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  check_char(x, y);
  if (x.rows != y.rows || x.cols != y.cols) throw LinAlgError("dimension mismatch in difference");
  Matrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = fp_sub(r.a[i], y.a[i], x.p);
  return r;
}

Matrix scale(const Matrix& x, u32 s) {
  Matrix r = x;
  for (auto& v : r.a) v = fp_mul(v, s, x.p);
  return r;
}

std::vector<u32> mat_vec(const Matrix& m, const std::vector<u32>& v) {
  if (static_cast<int>(v.size()) != m.cols) throw LinAlgError("dimension mismatch in mat_vec");
  std::vector<u32> r(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    u64 s = 0;
    const u32* mi = m.row(i);
    for (int j = 0; j < m.cols; ++j) s = (s + (u64)mi[j] * v[j]) % m.p;
    r[i] = static_cast<u32>(s);
  }
  return r;
}

Matrix vstack(const Matrix& x, const Matrix& y) {
  if (x.rows == 0) return y;
  if (y.rows == 0) return x;
  check_char(x, y);
  if (x.cols != y.cols) throw LinAlgError("vstack width mismatch");
  Matrix r = x;
  r.a.insert(r.a.end(), y.a.begin(), y.a.end());
  r.rows += y.rows;
  return r;
}

// row op: dst -= f * src, restricted to columns [from, cols)
static inline void row_sub(u32* dst, const u32* src, u32 f, int from, int cols, u32 p) {
  for (int j = from; j < cols; ++j)
    if (src[j]) dst[j] = fp_sub(dst[j], fp_mul(f, src[j], p), p);
}

Reduced reduce(const Matrix& m) {
  Reduced out;
  out.rref = m;
  Matrix& r = out.rref;
  const u32 p = m.p;
  int row = 0;
  for (int c = 0; c < r.cols && row < r.rows; ++c) {
    int piv = -1;
    for (int i = row; i < r.rows; ++i)
      if (r.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      std::swap_ranges(r.row(piv), r.row(piv) + r.cols, r.row(row));
    u32 inv = fp_inv(r.at(row, c), p);
    u32* rr = r.row(row);
    for (int j = c; j < r.cols; ++j) rr[j] = fp_mul(rr[j], inv, p);
    for (int i = 0; i < r.rows; ++i) {
      if (i == row) continue;
      u32 f = r.at(i, c);
      if (f) row_sub(r.row(i), rr, f, c, r.cols, p);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = row;
  return out;
}

int rank(const Matrix& m) { return reduce(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  Reduced red = reduce(m);
  const u32 p = m.p;
  std::vector<char> is_piv(m.cols, 0);
  for (int c : red.pivots) is_piv[c] = 1;
  Matrix k(0, m.cols, p);
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u32> v(m.cols, 0);
    v[f] = 1 % p;
    for (int i = 0; i < red.rank; ++i) v[red.pivots[i]] = fp_neg(red.rref.at(i, f), p);
    k.append_row(v);
  }
  return k;
}

std::optional<std::vector<u32>> solve_affine(const Matrix& a, const std::vector<u32>& b) {
  if (static_cast<int>(b.size()) != a.rows) throw LinAlgError("dimension mismatch");
  Matrix aug(a.rows, a.cols + 1, a.p);
  for (int i = 0; i < a.rows; ++i) {
    std::copy(a.row(i), a.row(i) + a.cols, aug.row(i));
    aug.at(i, a.cols) = b[i] % a.p;
  }
  Reduced red = reduce(aug);
  if (!red.pivots.empty() && red.pivots.back() == a.cols) return std::nullopt;
  std::vector<u32> x(a.cols, 0);
  for (int i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.rref.at(i, a.cols);
  return x;
}

Matrix tensor_product_matrix(const Matrix& x, const Matrix& y) {
  check_char(x, y);
  Matrix r(x.rows * y.rows, x.cols * y.cols, x.p);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      u32 s = x.at(i, j);
      if (!s) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          r.at(i * y.rows + k, j * y.cols + l) = fp_mul(s, y.at(k, l), x.p);
    }
  return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  int n = m.rows;
  Matrix aug(n, 2 * n, m.p);
  for (int i = 0; i < n; ++i) {
    std::copy(m.row(i), m.row(i) + n, aug.row(i));
    aug.at(i, n + i) = 1 % m.p;
  }
  Reduced red = reduce(aug);
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n, m.p);
  for (int i = 0; i < n; ++i) std::copy(red.rref.row(i) + n, red.rref.row(i) + 2 * n, inv.row(i));
  return inv;
}

Matrix row_space(const Matrix& m) {
  Reduced red = reduce(m);
  Matrix r(red.rank, m.cols, m.p);
  std::copy(red.rref.a.begin(), red.rref.a.begin() + static_cast<size_t>(red.rank) * m.cols,
            r.a.begin());
  return r;
}

void sparse_axpy(SparseVec& acc, const SparseVec& x, u32 s, u32 p) {
  if (s == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + x.size());
  size_t i = 0, j = 0;
  while (i < acc.size() || j < x.size()) {
    if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first)) {
      out.push_back(acc[i++]);
    } else if (i == acc.size() || x[j].first < acc[i].first) {
      out.emplace_back(x[j].first, fp_mul(x[j].second, s, p));
      ++j;
    } else {
      u32 v = fp_add(acc[i].second, fp_mul(x[j].second, s, p), p);
      if (v) out.emplace_back(acc[i].first, v);
      ++i;
      ++j;
    }
  }
  acc.swap(out);
}

SparseVec to_sparse(const std::vector<u32>& v) {
  SparseVec s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i]) s.emplace_back(i, v[i]);
  return s;
}

std::vector<u32> to_dense(const SparseVec& v, int n) {
  std::vector<u32> d(n, 0);
  for (auto& [i, x] : v) d[i] = x;
  return d;
}

bool EchelonBasis::reduce_vec(std::vector<u32>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    u32 f = v[piv_[r]];
    if (!f) continue;
    const auto& row = rows_[r];
    for (int j = piv_[r]; j < dim_; ++j)
      if (row[j]) v[j] = fp_sub(v[j], fp_mul(f, row[j], p_), p_);
  }
  return std::all_of(v.begin(), v.end(), [](u32 x) { return x == 0; });
}

bool EchelonBasis::add(std::vector<u32> v) {
  if (static_cast<int>(v.size()) != dim_) throw LinAlgError("EchelonBasis: wrong length");
  if (reduce_vec(v)) return false;
  int c = 0;
  while (v[c] == 0) ++c;
  u32 inv = fp_inv(v[c], p_);
  for (int j = c; j < dim_; ++j) v[j] = fp_mul(v[j], inv, p_);
  for (auto& row : rows_) {
    u32 f = row[c];
    if (f) row_sub(row.data(), v.data(), f, c, dim_, p_);
  }
  // keep rows sorted by pivot
  auto pos = std::lower_bound(piv_.begin(), piv_.end(), c) - piv_.begin();
  piv_.insert(piv_.begin() + pos, c);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

Matrix EchelonBasis::as_matrix() const {
  Matrix m(0, dim_, p_);
  for (auto& r : rows_) m.append_row(r);
  return m;
}

}  // namespace gl2

namespace gl2 {

SpMap SpMap::identity(int n, u32 p) {
  SpMap m(n, n, p);
  for (int i = 0; i < n; ++i) m.col[i] = {{i, 1 % p}};
  return m;
}

SpMap SpMap::from_dense(const Matrix& m) {
  SpMap s(m.rows, m.cols, m.p);
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i)
      if (m.at(i, j)) s.col[j].emplace_back(i, m.at(i, j));
  return s;
}

Matrix SpMap::dense() const {
  Matrix m(rows, cols, p);
  for (int j = 0; j < cols; ++j)
    for (auto& [i, v] : col[j]) m.at(i, j) = v;
  return m;
}

SparseVec SpMap::apply(const SparseVec& v) const {
  SparseVec out;
  for (auto& [j, x] : v) sparse_axpy(out, col[j], x, p);
  return out;
}

std::vector<u32> SpMap::apply(const std::vector<u32>& v) const {
  if (static_cast<int>(v.size()) != cols) throw LinAlgError("SpMap::apply: length mismatch");
  std::vector<u32> out(rows, 0);
  for (int j = 0; j < cols; ++j) {
    if (!v[j]) continue;
    for (auto& [i, x] : col[j]) out[i] = fp_add(out[i], fp_mul(x, v[j], p), p);
  }
  return out;
}

bool SpMap::is_zero() const {
  return std::all_of(col.begin(), col.end(), [](const SparseVec& c) { return c.empty(); });
}

size_t SpMap::nnz() const {
  size_t n = 0;
  for (auto& c : col) n += c.size();
  return n;
}

SpMap compose(const SpMap& f, const SpMap& g) {
  if (f.cols != g.rows) throw LinAlgError("compose: dimension mismatch");
  SpMap h(f.rows, g.cols, f.p);
  for (int j = 0; j < g.cols; ++j) h.col[j] = f.apply(g.col[j]);
  return h;
}

SpMap operator+(const SpMap& f, const SpMap& g) {
  if (f.rows != g.rows || f.cols != g.cols) throw LinAlgError("SpMap sum: dimension mismatch");
  SpMap h = f;
  for (int j = 0; j < f.cols; ++j) sparse_axpy(h.col[j], g.col[j], 1, f.p);
  return h;
}

SpMap scale(const SpMap& f, u32 s) {
  SpMap h(f.rows, f.cols, f.p);
  if (s % f.p == 0) return h;
  for (int j = 0; j < f.cols; ++j) {
    h.col[j] = f.col[j];
    for (auto& e : h.col[j]) e.second = fp_mul(e.second, s, f.p);
  }
  return h;
}

SpMap transpose(const SpMap& f) {
  SpMap t(f.cols, f.rows, f.p);
  for (int j = 0; j < f.cols; ++j)
    for (auto& [i, v] : f.col[j]) t.col[i].emplace_back(j, v);
  return t;
}

bool SparseEliminator::add(const SparseVec& row) {
  if (row.empty()) return false;
  if (work_.empty()) work_.assign(n_, 0);
  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
  for (auto& [i, v] : row) {
    work_[i] = fp_add(work_[i], v, p_);
    heap.push(i);
  }
  SparseVec out;
  int last = -1;
  while (!heap.empty()) {
    int c = heap.top();
    heap.pop();
    if (c == last) continue;
    last = c;
    u32 v = work_[c];
    if (!v) continue;
    if (piv_[c] >= 0 && out.empty()) {
      // eliminate the leading entry
      for (auto& [j, w] : rows_[piv_[c]]) {
        if (!work_[j] && j != c) heap.push(j);
        work_[j] = fp_sub(work_[j], fp_mul(v, w, p_), p_);
      }
      continue;
    }
    out.push_back({c, v});
    work_[c] = 0;
  }
  for (auto& [j, w] : out) work_[j] = 0;
  if (out.empty()) return false;
  u32 inv = fp_inv(out.front().second, p_);
  for (auto& e : out) e.second = fp_mul(e.second, inv, p_);
  piv_[out.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(out));
  return true;
}

std::vector<SparseVec> SparseEliminator::kernel() const {
  std::vector<int> pivcols;
  for (int c = 0; c < n_; ++c)
    if (piv_[c] >= 0) pivcols.push_back(c);
  std::vector<SparseVec> basis;
  std::vector<u32> x(n_, 0);
  for (int f = 0; f < n_; ++f) {
    if (piv_[f] >= 0) continue;
    std::fill(x.begin(), x.end(), 0);
    x[f] = 1;
    for (auto it = pivcols.rbegin(); it != pivcols.rend(); ++it) {
      if (*it > f) continue;  // only pivots left of f can see x_f
      const SparseVec& r = rows_[piv_[*it]];
      u32 s = 0;
      for (size_t k = 1; k < r.size(); ++k)
        if (x[r[k].first]) s = fp_add(s, fp_mul(r[k].second, x[r[k].first], p_), p_);
      x[*it] = fp_neg(s, p_);
    }
    basis.push_back(to_sparse(x));
  }
  return basis;
}

}  // namespace gl2
