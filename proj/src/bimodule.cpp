#include "gl2/bimodule.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace gl2 {

bool same_algebra(const Algebra& a, const Algebra& b) {
  if (&a == &b) return true;
  if (a.p != b.p || a.dim() != b.dim() || a.idem != b.idem) return false;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.basis[i].src != b.basis[i].src || a.basis[i].tgt != b.basis[i].tgt) return false;
    if (a.row(i) != b.row(i)) return false;
  }
  return true;
}

std::vector<int> Bimodule::block(int l, int r) const {
  std::vector<int> out;
  for (int i = 0; i < dim; ++i)
    if (lv[i] == l && rv[i] == r) out.push_back(i);
  return out;
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
  Bimodule m;
  m.left = m.right = a;
  m.p = a->p;
  m.dim = a->dim();
  for (int i = 0; i < a->dim(); ++i) {
    m.lact.push_back(a->left_mult(i));
    m.ract.push_back(a->right_mult(i));
    m.lv.push_back(a->basis[i].tgt);
    m.rv.push_back(a->basis[i].src);
    m.deg.push_back(a->basis[i].deg);
  }
  return m;
}

Bimodule projective_bimodule(const AlgebraPtr& a, int i, int j) {
  const Algebra& A = *a;
  std::vector<int> left, right;  // basis of A e_i and of e_j A
  for (int x = 0; x < A.dim(); ++x) {
    if (A.basis[x].src == i) left.push_back(x);
    if (A.basis[x].tgt == j) right.push_back(x);
  }
  std::vector<int> lpos(A.dim(), -1), rpos(A.dim(), -1);
  for (size_t k = 0; k < left.size(); ++k) lpos[left[k]] = static_cast<int>(k);
  for (size_t k = 0; k < right.size(); ++k) rpos[right[k]] = static_cast<int>(k);
  const int nr = static_cast<int>(right.size());
  Bimodule m;
  m.left = m.right = a;
  m.p = A.p;
  m.dim = static_cast<int>(left.size()) * nr;
  for (int x : left)
    for (int y : right) {
      m.lv.push_back(A.basis[x].tgt);
      m.rv.push_back(A.basis[y].src);
      std::vector<int> d = A.basis[x].deg;
      for (size_t k = 0; k < d.size(); ++k) d[k] += A.basis[y].deg[k];
      m.deg.push_back(d);
    }
  for (int b = 0; b < A.dim(); ++b) {
    SpMap l(m.dim, m.dim, m.p), r(m.dim, m.dim, m.p);
    for (size_t s = 0; s < left.size(); ++s)
      for (int t = 0; t < nr; ++t) {
        int col = static_cast<int>(s) * nr + t;
        for (auto& [z, c] : A.product(b, left[s])) l.col[col].push_back({lpos[z] * nr + t, c});
        for (auto& [z, c] : A.product(right[t], b))
          r.col[col].push_back({static_cast<int>(s) * nr + rpos[z], c});
        std::sort(l.col[col].begin(), l.col[col].end());
        std::sort(r.col[col].begin(), r.col[col].end());
      }
    m.lact.push_back(std::move(l));
    m.ract.push_back(std::move(r));
  }
  return m;
}

Bimodule simple_bimodule(const AlgebraPtr& a, int i, const AlgebraPtr& b, int j) {
  Bimodule m;
  m.left = a;
  m.right = b;
  m.p = a->p;
  m.dim = 1;
  m.lv = {i};
  m.rv = {j};
  for (int x = 0; x < a->dim(); ++x) {
    SpMap f(1, 1, m.p);
    if (x == a->idem[i]) f.col[0] = {{0, 1}};
    m.lact.push_back(f);
  }
  for (int x = 0; x < b->dim(); ++x) {
    SpMap f(1, 1, m.p);
    if (x == b->idem[j]) f.col[0] = {{0, 1}};
    m.ract.push_back(f);
  }
  return m;
}

namespace {

int fixed_vertex(const std::vector<SpMap>& act, const std::vector<int>& idem, int i) {
  for (int v = 0; v < static_cast<int>(idem.size()); ++v) {
    const SparseVec& img = act[idem[v]].col[i];
    if (img.empty()) continue;
    if (img.size() == 1 && img[0].first == i && img[0].second == 1) return v;
    return -1;
  }
  return -1;
}

}  // namespace

void assign_vertices(Bimodule& m) {
  m.lv.assign(m.dim, -1);
  m.rv.assign(m.dim, -1);
  for (int i = 0; i < m.dim; ++i) {
    m.lv[i] = fixed_vertex(m.lact, m.left->idem, i);
    m.rv[i] = fixed_vertex(m.ract, m.right->idem, i);
    if (m.lv[i] < 0 || m.rv[i] < 0) throw AlgebraError("bimodule basis is not vertex-adapted");
  }
}

std::vector<int> algebra_generators(const Algebra& a) {
  std::vector<int> gens = a.idem;
  std::vector<char> is_idem(a.dim(), 0);
  for (int e : a.idem) is_idem[e] = 1;
  if (!tightness_check(a)) {
    for (int i = 0; i < a.dim(); ++i)
      if (!is_idem[i]) gens.push_back(i);
    return gens;
  }
  EchelonBasis rad2(a.dim(), a.p);
  for (int i = 0; i < a.dim(); ++i) {
    if (is_idem[i]) continue;
    for (auto& [j, v] : a.row(i))
      if (!is_idem[j]) rad2.add(to_dense(v, a.dim()));
  }
  for (int i = 0; i < a.dim(); ++i) {
    if (is_idem[i]) continue;
    std::vector<u32> e(a.dim(), 0);
    e[i] = 1;
    if (rad2.add(e)) gens.push_back(i);
  }
  return gens;
}

bool bimodule_invariants_hold(const Bimodule& m) {
  const Algebra& A = *m.left;
  const Algebra& B = *m.right;
  if (static_cast<int>(m.lact.size()) != A.dim() || static_cast<int>(m.ract.size()) != B.dim())
    return false;
  SpMap id = SpMap::identity(m.dim, m.p);
  auto combine = [&](const std::vector<SpMap>& act, const SparseVec& v) {
    SpMap s(m.dim, m.dim, m.p);
    for (auto& [k, c] : v) s = s + scale(act[k], c);
    return s;
  };
  if (combine(m.lact, A.unit()) != id || combine(m.ract, B.unit()) != id) return false;
  auto ga = algebra_generators(A);
  auto gb = algebra_generators(B);
  // generators times all basis elements is enough for associativity
  for (int x : ga)
    for (int y = 0; y < A.dim(); ++y)
      if (compose(m.lact[x], m.lact[y]) != combine(m.lact, A.product(x, y))) return false;
  for (int x : gb)
    for (int y = 0; y < B.dim(); ++y)
      if (compose(m.ract[x], m.ract[y]) != combine(m.ract, B.product(y, x))) return false;
  for (int x : ga)
    for (int y : gb)
      if (compose(m.lact[x], m.ract[y]) != compose(m.ract[y], m.lact[x])) return false;
  try {
    Bimodule copy = m;
    assign_vertices(copy);
    if (copy.lv != m.lv || copy.rv != m.rv) return false;
  } catch (const AlgebraError&) {
    return false;
  }
  return true;
}

SparseVec TensorProduct::project(int i, int j) const {
  auto it = image.find(static_cast<long long>(i) * dim_n + j);
  return it == image.end() ? SparseVec{} : it->second;
}

SparseVec TensorProduct::project(const SparseVec& m, const SparseVec& n) const {
  SparseVec out;
  const u32 p = result.p;
  for (auto& [i, a] : m)
    for (auto& [j, b] : n) {
      auto it = image.find(static_cast<long long>(i) * dim_n + j);
      if (it != image.end()) sparse_axpy(out, it->second, fp_mul(a, b, p), p);
    }
  return out;
}

TensorProduct tensor_over_algebra(const Bimodule& m, const Bimodule& n) {
  if (!same_algebra(*m.right, *n.left)) throw AlgebraError("middle-algebra mismatch");
  const Algebra& B = *m.right;
  const u32 p = m.p;
  TensorProduct tp;
  tp.dim_m = m.dim;
  tp.dim_n = n.dim;
  Bimodule& out = tp.result;
  out.left = m.left;
  out.right = n.right;
  out.p = p;
  const int nl = m.left->num_vertices(), nr = n.right->num_vertices(), nb = B.num_vertices();

  // M e_v and e_v N, split by outer vertex
  std::vector<std::vector<std::vector<int>>> mby(nl, std::vector<std::vector<int>>(nb));
  std::vector<std::vector<std::vector<int>>> nby(nb, std::vector<std::vector<int>>(nr));
  for (int i = 0; i < m.dim; ++i) mby[m.lv[i]][m.rv[i]].push_back(i);
  for (int j = 0; j < n.dim; ++j) nby[n.lv[j]][n.rv[j]].push_back(j);

  std::vector<int> gens;
  for (int g : algebra_generators(B))
    if (std::find(B.idem.begin(), B.idem.end(), g) == B.idem.end()) gens.push_back(g);

  const bool graded = m.graded() && n.graded();
  for (int l = 0; l < nl; ++l)
    for (int r = 0; r < nr; ++r) {
      // columns: composable pairs in the (l, r) block, ordered by (i, j)
      std::vector<std::pair<int, int>> cols;
      for (int v = 0; v < nb; ++v)
        for (int i : mby[l][v])
          for (int j : nby[v][r]) cols.push_back({i, j});
      if (cols.empty()) continue;
      std::sort(cols.begin(), cols.end());
      std::map<std::pair<int, int>, int> col_of;
      for (int c = 0; c < static_cast<int>(cols.size()); ++c) col_of[cols[c]] = c;
      Matrix rel(0, static_cast<int>(cols.size()), p);
      for (int b : gens) {
        int t = B.basis[b].tgt, s = B.basis[b].src;
        for (int i : mby[l][t])
          for (int j : nby[s][r]) {
            std::vector<u32> row(cols.size(), 0);
            for (auto& [i2, c] : m.ract[b].col[i]) {
              int k = col_of.at({i2, j});
              row[k] = fp_add(row[k], c, p);
            }
            for (auto& [j2, c] : n.lact[b].col[j]) {
              int k = col_of.at({i, j2});
              row[k] = fp_sub(row[k], c, p);
            }
            if (std::any_of(row.begin(), row.end(), [](u32 x) { return x != 0; })) rel.append_row(row);
          }
      }
      Reduced red = reduce(rel);
      std::vector<int> pivot_row(cols.size(), -1);
      for (int k = 0; k < red.rank; ++k) pivot_row[red.pivots[k]] = k;
      std::vector<int> new_index(cols.size(), -1);
      for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        if (pivot_row[c] >= 0) continue;
        new_index[c] = out.dim++;
        tp.rep.push_back(cols[c]);
        out.lv.push_back(l);
        out.rv.push_back(r);
        if (graded) {
          std::vector<int> d = m.deg[cols[c].first];
          const auto& e = n.deg[cols[c].second];
          if (d.size() == e.size())
            for (size_t x = 0; x < d.size(); ++x) d[x] += e[x];
          out.deg.push_back(d);
        }
      }
      for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        SparseVec img;
        if (pivot_row[c] < 0) {
          img = {{new_index[c], 1}};
        } else {
          const u32* row = red.rref.row(pivot_row[c]);
          for (int k = c + 1; k < static_cast<int>(cols.size()); ++k)
            if (row[k] && pivot_row[k] < 0) img.push_back({new_index[k], fp_neg(row[k], p)});
          std::sort(img.begin(), img.end());
        }
        if (!img.empty())
          tp.image[static_cast<long long>(cols[c].first) * n.dim + cols[c].second] = std::move(img);
      }
    }

  for (int a = 0; a < m.left->dim(); ++a) {
    SpMap act(out.dim, out.dim, p);
    for (int k = 0; k < out.dim; ++k) {
      auto [i, j] = tp.rep[k];
      act.col[k] = tp.project(m.lact[a].col[i], SparseVec{{j, 1}});
    }
    out.lact.push_back(std::move(act));
  }
  for (int c = 0; c < n.right->dim(); ++c) {
    SpMap act(out.dim, out.dim, p);
    for (int k = 0; k < out.dim; ++k) {
      auto [i, j] = tp.rep[k];
      act.col[k] = tp.project(SparseVec{{i, 1}}, n.ract[c].col[j]);
    }
    out.ract.push_back(std::move(act));
  }
  return tp;
}

Bimodule dual(const Bimodule& m) {
  Bimodule d;
  d.left = m.right;
  d.right = m.left;
  d.p = m.p;
  d.dim = m.dim;
  for (auto& f : m.ract) d.lact.push_back(transpose(f));
  for (auto& f : m.lact) d.ract.push_back(transpose(f));
  d.lv = m.rv;
  d.rv = m.lv;
  for (auto x : m.deg) {
    for (auto& y : x) y = -y;
    d.deg.push_back(x);
  }
  return d;
}

std::vector<SpMap> intertwiner_basis(const Bimodule& m, const Bimodule& n,
                                     const std::vector<int>* shift) {
  if (!same_algebra(*m.left, *n.left) || !same_algebra(*m.right, *n.right))
    throw AlgebraError("intertwiner: algebras differ");
  if (shift && (!m.graded() || !n.graded())) throw AlgebraError("intertwiner: degree shift needs degrees");
  const u32 p = m.p;
  const int nr = m.right->num_vertices();
  auto block_of = [&](int l, int r) { return l * nr + r; };
  // unknown u(k, i): coefficient of n_k in f(m_i); k ranges over the candidates
  // of m_i (same block, and the shifted degree when asked)
  std::map<std::pair<int, std::vector<int>>, int> class_of;
  std::vector<std::vector<int>> cand;
  std::vector<std::vector<int>> cpos;  // per class: n index -> position or -1
  std::vector<int> cls(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    std::vector<int> want;
    if (shift) {
      want = m.deg[i];
      for (size_t x = 0; x < want.size() && x < shift->size(); ++x) want[x] += (*shift)[x];
    }
    auto key = std::make_pair(block_of(m.lv[i], m.rv[i]), want);
    auto it = class_of.find(key);
    if (it == class_of.end()) {
      std::vector<int> list, pos(n.dim, -1);
      for (int k = 0; k < n.dim; ++k)
        if (block_of(n.lv[k], n.rv[k]) == key.first && (!shift || n.deg[k] == want)) {
          pos[k] = static_cast<int>(list.size());
          list.push_back(k);
        }
      it = class_of.emplace(key, static_cast<int>(cand.size())).first;
      cand.push_back(std::move(list));
      cpos.push_back(std::move(pos));
    }
    cls[i] = it->second;
  }
  std::vector<int> offset(m.dim);
  int nvars = 0;
  for (int i = 0; i < m.dim; ++i) {
    offset[i] = nvars;
    nvars += static_cast<int>(cand[cls[i]].size());
  }
  auto var = [&](int k, int i) {
    int q = cpos[cls[i]][k];
    return q < 0 ? -1 : offset[i] + q;
  };

  SparseEliminator elim(nvars, p);
  auto add_side = [&](const std::vector<SpMap>& mact, const std::vector<SpMap>& nact,
                      const std::vector<int>& gens, bool left) {
    const Algebra& alg = left ? *m.left : *m.right;
    std::map<int, std::map<int, u32>> rows;  // component k of N -> row
    for (int g : gens) {
      const SpMap& ma = mact[g];
      const SpMap& na = nact[g];
      for (int i = 0; i < m.dim; ++i) {
        // f(g.m_i) - g.f(m_i) = 0, component by component
        if (left ? alg.basis[g].src != m.lv[i] : alg.basis[g].tgt != m.rv[i]) continue;
        rows.clear();
        for (auto& [j, c] : ma.col[i])
          for (int k : cand[cls[j]]) {
            auto& x = rows[k][var(k, j)];
            x = fp_add(x, c, p);
          }
        for (int k2 : cand[cls[i]])
          for (auto& [k, c] : na.col[k2]) {
            auto& x = rows[k][var(k2, i)];
            x = fp_sub(x, c, p);
          }
        for (auto& [k, r] : rows) {
          SparseVec v;
          for (auto& [col, x] : r)
            if (x) v.push_back({col, x});
          elim.add(v);
        }
      }
    }
  };
  auto strip = [](const Algebra& a) {
    std::vector<int> g;
    for (int x : algebra_generators(a))
      if (std::find(a.idem.begin(), a.idem.end(), x) == a.idem.end()) g.push_back(x);
    return g;
  };
  add_side(m.lact, n.lact, strip(*m.left), true);
  add_side(m.ract, n.ract, strip(*m.right), false);

  std::vector<SpMap> basis;
  for (auto& sol : elim.kernel()) {
    SpMap f(n.dim, m.dim, p);
    size_t pos = 0;
    for (int i = 0; i < m.dim; ++i) {
      const auto& list = cand[cls[i]];
      int end = offset[i] + static_cast<int>(list.size());
      while (pos < sol.size() && sol[pos].first < end) {
        f.col[i].push_back({list[sol[pos].first - offset[i]], sol[pos].second});
        ++pos;
      }
      std::sort(f.col[i].begin(), f.col[i].end());
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

Matrix intertwiner_space(const Bimodule& m, const Bimodule& n) {
  auto basis = intertwiner_basis(m, n);
  Matrix out(static_cast<int>(basis.size()), n.dim * m.dim, m.p);
  for (int r = 0; r < out.rows; ++r)
    for (int i = 0; i < m.dim; ++i)
      for (auto& [k, c] : basis[r].col[i]) out.at(r, k * m.dim + i) = c;
  return out;
}

bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const SpMap& f) {
  if (f.rows != n.dim || f.cols != m.dim) return false;
  for (int g : algebra_generators(*m.left))
    if (compose(f, m.lact[g]) != compose(n.lact[g], f)) return false;
  for (int g : algebra_generators(*m.right))
    if (compose(f, m.ract[g]) != compose(n.ract[g], f)) return false;
  return true;
}

namespace {

bool invertible(const SpMap& f) {
  return f.rows == f.cols && rank(f.dense()) == f.rows;
}

SpMap combination(const std::vector<SpMap>& basis, const std::vector<u32>& coef, int n, u32 p) {
  SpMap f(n, n, p);
  for (size_t k = 0; k < basis.size(); ++k)
    if (coef[k]) f = f + scale(basis[k], coef[k]);
  return f;
}

}  // namespace

IsoSearch find_invertible(const std::vector<SpMap>& basis, int n, u32 p, const SearchLimits& lim) {
  IsoSearch res;
  res.space_dim = static_cast<int>(basis.size());
  if (n == 0) {
    res.status = SearchStatus::found;
    res.map = SpMap(0, 0, p);
    return res;
  }
  if (basis.empty()) return res;
  const int d = res.space_dim;
  Rng rng(lim.seed);
  for (int t = 0; t < lim.retries; ++t) {
    ++res.samples;
    SpMap f = combination(basis, rng.vec(d, p), n, p);
    if (invertible(f)) {
      res.status = SearchStatus::found;
      res.map = std::move(f);
      return res;
    }
  }
  // exhaustive over projective classes: first nonzero coefficient is 1
  u64 total = 1;
  for (int k = 0; k < d && total <= lim.exhaustive_cap; ++k) total *= p;
  if (total > lim.exhaustive_cap) {
    res.status = SearchStatus::inconclusive;
    return res;
  }
  std::vector<u32> coef(d, 0);
  for (u64 code = 1; code < total; ++code) {
    u64 c = code;
    for (int k = 0; k < d; ++k) {
      coef[k] = static_cast<u32>(c % p);
      c /= p;
    }
    auto first = std::find_if(coef.begin(), coef.end(), [](u32 x) { return x != 0; });
    if (*first != 1) continue;
    ++res.samples;
    SpMap f = combination(basis, coef, n, p);
    if (invertible(f)) {
      res.status = SearchStatus::found;
      res.map = std::move(f);
      return res;
    }
  }
  res.status = SearchStatus::none;
  return res;
}

IsoSearch iso_certificate(const Bimodule& m, const Bimodule& n, const SearchLimits& lim,
                          const std::vector<int>* shift) {
  if (m.dim != n.dim) return {};
  std::map<std::pair<int, int>, int> bm, bn;
  for (int i = 0; i < m.dim; ++i) ++bm[{m.lv[i], m.rv[i]}];
  for (int i = 0; i < n.dim; ++i) ++bn[{n.lv[i], n.rv[i]}];
  if (bm != bn) return {};
  auto basis = intertwiner_basis(m, n, shift);
  IsoSearch res = find_invertible(basis, m.dim, m.p, lim);
  if (res.map && !is_bimodule_map(m, n, *res.map)) throw AlgebraError("iso certificate failed re-check");
  return res;
}

Bimodule restrict_scalars(const Bimodule& m, const AlgebraPtr& new_left, const SpMap& phi_left,
                          const AlgebraPtr& new_right, const SpMap& phi_right) {
  Bimodule out;
  out.left = new_left;
  out.right = new_right;
  out.p = m.p;
  out.dim = m.dim;
  out.deg = m.deg;
  auto pull = [&](const std::vector<SpMap>& act, const SpMap& phi, int n) {
    std::vector<SpMap> res;
    for (int a = 0; a < n; ++a) {
      SpMap s(m.dim, m.dim, m.p);
      for (auto& [k, c] : phi.col[a]) s = s + scale(act[k], c);
      res.push_back(std::move(s));
    }
    return res;
  };
  out.lact = pull(m.lact, phi_left, new_left->dim());
  out.ract = pull(m.ract, phi_right, new_right->dim());
  assign_vertices(out);
  return out;
}

SpMap left_unit_iso(const TensorProduct& am, const Bimodule& m) {
  SpMap f(m.dim, am.result.dim, m.p);
  for (int k = 0; k < am.result.dim; ++k) {
    auto [a, j] = am.rep[k];
    f.col[k] = m.lact[a].col[j];
  }
  return f;
}

SpMap right_unit_iso(const TensorProduct& mb, const Bimodule& m) {
  SpMap f(m.dim, mb.result.dim, m.p);
  for (int k = 0; k < mb.result.dim; ++k) {
    auto [i, b] = mb.rep[k];
    f.col[k] = m.ract[b].col[i];
  }
  return f;
}

bool one_cell_check(const OneCell& cell) {
  if (!same_algebra(*cell.t.right, *cell.m.left) || !same_algebra(*cell.m.right, *cell.t2.left))
    return false;
  TensorProduct tm = tensor_over_algebra(cell.t, cell.m);
  TensorProduct mt = tensor_over_algebra(cell.m, cell.t2);
  if (cell.phi.rows != mt.result.dim || cell.phi.cols != tm.result.dim) return false;
  return invertible(cell.phi) && is_bimodule_map(tm.result, mt.result, cell.phi);
}

OneCell identity_one_cell(const Bimodule& t) {
  OneCell cell;
  cell.m = regular_bimodule(t.left);
  cell.t = t;
  cell.t2 = t;
  TensorProduct ta = tensor_over_algebra(t, cell.m);
  TensorProduct at = tensor_over_algebra(cell.m, t);
  auto inv = inverse(left_unit_iso(at, t).dense());
  if (!inv) throw AlgebraError("unit map not invertible");
  cell.phi = compose(SpMap::from_dense(*inv), right_unit_iso(ta, t));
  return cell;
}

namespace {

nlohmann::json action_json(const std::vector<SpMap>& act) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& f : act) {
    nlohmann::json t = nlohmann::json::array();
    for (int j = 0; j < f.cols; ++j)
      for (auto& [i, c] : f.col[j]) t.push_back({i, j, c});
    out.push_back(t);
  }
  return out;
}

std::vector<SpMap> action_from_json(const nlohmann::json& j, int dim, u32 p) {
  std::vector<SpMap> out;
  for (auto& t : j) {
    SpMap f(dim, dim, p);
    for (auto& e : t) {
      int i = e[0], c = e[1];
      u32 v = e[2];
      if (i < 0 || i >= dim || c < 0 || c >= dim || v == 0 || v >= p)
        throw AlgebraError("bimodule-v1: bad action entry");
      f.col[c].push_back({i, v});
    }
    for (auto& col : f.col) std::sort(col.begin(), col.end());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::string bimodule_to_json(const Bimodule& m, const std::string& left_ref,
                             const std::string& right_ref) {
  nlohmann::json j;
  j["schema"] = "bimodule-v1";
  j["left_alg_ref"] = left_ref;
  j["right_alg_ref"] = right_ref;
  j["char"] = m.p;
  j["dim"] = m.dim;
  j["left_action"] = action_json(m.lact);
  j["right_action"] = action_json(m.ract);
  j["degrees"] = m.deg;
  return j.dump() + "\n";
}

Bimodule bimodule_from_json(const std::string& text, const AlgebraPtr& left,
                            const AlgebraPtr& right) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("schema", "") != "bimodule-v1") throw AlgebraError("not a bimodule-v1 document");
  Bimodule m;
  m.left = left;
  m.right = right;
  m.p = j.at("char");
  m.dim = j.at("dim");
  if (m.p != left->p || m.p != right->p) throw AlgebraError("bimodule-v1: characteristic mismatch");
  m.lact = action_from_json(j.at("left_action"), m.dim, m.p);
  m.ract = action_from_json(j.at("right_action"), m.dim, m.p);
  if (static_cast<int>(m.lact.size()) != left->dim() || static_cast<int>(m.ract.size()) != right->dim())
    throw AlgebraError("bimodule-v1: action count does not match the algebra");
  m.deg = j.at("degrees").get<std::vector<std::vector<int>>>();
  assign_vertices(m);
  return m;
}

}  // namespace gl2
