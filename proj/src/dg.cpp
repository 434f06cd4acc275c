#include "gl2/dg.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "gl2/gl2_family.hpp"
#include "json.hpp"

namespace gl2 {

namespace {

u32 sign(int e, u32 p) { return (e % 2 == 0) ? 1 % p : p - 1; }

SparseVec unit_vec(int i, u32 p) { return SparseVec{{i, 1 % p}}; }

SparseVec add_scaled(SparseVec a, const SparseVec& b, u32 s, u32 p) {
  sparse_axpy(a, b, s, p);
  return a;
}

u32 entry(const SpMap& f, int row, int col) {
  const auto& c = f.col[col];
  auto it = std::lower_bound(c.begin(), c.end(), std::make_pair(row, u32{0}));
  return (it != c.end() && it->first == row) ? it->second : 0;
}

std::vector<int> radical_generators(const Algebra& a) {
  std::vector<int> g;
  for (int x : algebra_generators(a))
    if (std::find(a.idem.begin(), a.idem.end(), x) == a.idem.end()) g.push_back(x);
  return g;
}

// A e_l (x)_F e_r B
Bimodule free_bimodule(const AlgebraPtr& a, int l, const AlgebraPtr& b, int r) {
  std::vector<int> left, right;
  for (int x = 0; x < a->dim(); ++x)
    if (a->basis[x].src == l) left.push_back(x);
  for (int y = 0; y < b->dim(); ++y)
    if (b->basis[y].tgt == r) right.push_back(y);
  std::vector<int> lpos(a->dim(), -1), rpos(b->dim(), -1);
  for (size_t k = 0; k < left.size(); ++k) lpos[left[k]] = static_cast<int>(k);
  for (size_t k = 0; k < right.size(); ++k) rpos[right[k]] = static_cast<int>(k);
  const int nr = static_cast<int>(right.size());
  const bool graded = a->grading_rank > 0 && a->grading_rank == b->grading_rank;
  Bimodule m;
  m.left = a;
  m.right = b;
  m.p = a->p;
  m.dim = static_cast<int>(left.size()) * nr;
  for (int x : left)
    for (int y : right) {
      m.lv.push_back(a->basis[x].tgt);
      m.rv.push_back(b->basis[y].src);
      if (graded) {
        std::vector<int> d = a->basis[x].deg;
        for (size_t k = 0; k < d.size(); ++k) d[k] += b->basis[y].deg[k];
        m.deg.push_back(d);
      }
    }
  for (int g = 0; g < a->dim(); ++g) {
    SpMap f(m.dim, m.dim, m.p);
    for (size_t s = 0; s < left.size(); ++s)
      for (int t = 0; t < nr; ++t) {
        auto& col = f.col[s * nr + t];
        for (auto& [z, c] : a->product(g, left[s])) col.push_back({lpos[z] * nr + t, c});
        std::sort(col.begin(), col.end());
      }
    m.lact.push_back(std::move(f));
  }
  for (int g = 0; g < b->dim(); ++g) {
    SpMap f(m.dim, m.dim, m.p);
    for (size_t s = 0; s < left.size(); ++s)
      for (int t = 0; t < nr; ++t) {
        auto& col = f.col[s * nr + t];
        for (auto& [z, c] : b->product(right[t], g)) col.push_back({static_cast<int>(s) * nr + rpos[z], c});
        std::sort(col.begin(), col.end());
      }
    m.ract.push_back(std::move(f));
  }
  return m;
}

using SliceKey = std::tuple<int, int, std::vector<int>>;

SliceKey slice_key(const Bimodule& m, int i) {
  return {m.lv[i], m.rv[i], m.graded() ? m.deg[i] : std::vector<int>{}};
}

// Sub-bimodule spanned by vectors that are homogeneous for slice_key; the
// basis is the reduced echelon form per slice.
struct Sub {
  Bimodule mod;
  std::vector<SparseVec> vecs;  // basis vectors in the ambient bimodule
};

Sub sub_bimodule(const Bimodule& amb, const std::vector<SparseVec>& gens) {
  const u32 p = amb.p;
  std::map<SliceKey, std::vector<int>> slices;
  for (int i = 0; i < amb.dim; ++i) slices[slice_key(amb, i)].push_back(i);
  std::vector<int> pos(amb.dim);
  std::vector<const SliceKey*> key_of(amb.dim);
  for (auto& [k, idx] : slices)
    for (size_t q = 0; q < idx.size(); ++q) {
      pos[idx[q]] = static_cast<int>(q);
      key_of[idx[q]] = &k;
    }
  std::map<SliceKey, EchelonBasis> ech;
  for (const auto& v : gens) {
    if (v.empty()) continue;
    const SliceKey& k = *key_of[v[0].first];
    const auto& idx = slices[k];
    std::vector<u32> d(idx.size(), 0);
    for (auto& [i, c] : v) {
      if (*key_of[i] != k) throw AlgebraError("sub-bimodule: generator not homogeneous");
      d[pos[i]] = c;
    }
    auto it = ech.try_emplace(k, static_cast<int>(idx.size()), p).first;
    it->second.add(std::move(d));
  }
  Sub s;
  s.mod.left = amb.left;
  s.mod.right = amb.right;
  s.mod.p = p;
  std::map<SliceKey, int> first;
  for (auto& [k, e] : ech) {
    first[k] = static_cast<int>(s.vecs.size());
    const auto& idx = slices[k];
    for (auto& row : e.rows()) {
      SparseVec v;
      for (size_t q = 0; q < row.size(); ++q)
        if (row[q]) v.push_back({idx[q], row[q]});
      s.vecs.push_back(std::move(v));
      s.mod.lv.push_back(std::get<0>(k));
      s.mod.rv.push_back(std::get<1>(k));
      if (amb.graded()) s.mod.deg.push_back(std::get<2>(k));
    }
  }
  s.mod.dim = static_cast<int>(s.vecs.size());
  auto coords = [&](const SparseVec& w) {
    // entries of w at the pivots of each slice it touches
    SparseVec out;
    for (auto& [k, e] : ech) {
      const auto& idx = slices[k];
      const auto& piv = e.pivots();
      for (size_t r = 0; r < piv.size(); ++r) {
        int i = idx[piv[r]];
        auto it = std::lower_bound(w.begin(), w.end(), std::make_pair(i, u32{0}));
        if (it != w.end() && it->first == i) out.push_back({first[k] + static_cast<int>(r), it->second});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto act = [&](const std::vector<SpMap>& acts) {
    std::vector<SpMap> res;
    for (const auto& a : acts) {
      SpMap f(s.mod.dim, s.mod.dim, p);
      for (int q = 0; q < s.mod.dim; ++q) f.col[q] = coords(a.apply(s.vecs[q]));
      res.push_back(std::move(f));
    }
    return res;
  };
  s.mod.lact = act(amb.lact);
  s.mod.ract = act(amb.ract);
  return s;
}

// Basis vectors spanning a complement of rad(A) M + M rad(B), or of rad(A) M
// when left_only; chosen slice by slice.
std::vector<int> top_vectors(const Bimodule& k, bool left_only) {
  const u32 p = k.p;
  std::vector<int> ga = radical_generators(*k.left), gb;
  if (!left_only) gb = radical_generators(*k.right);
  auto key_of = [&](int i) {
    SliceKey key = slice_key(k, i);
    if (left_only) std::get<1>(key) = 0;
    return key;
  };
  std::map<SliceKey, std::vector<int>> slices;
  for (int i = 0; i < k.dim; ++i) slices[key_of(i)].push_back(i);
  std::vector<int> pos(k.dim);
  std::map<SliceKey, EchelonBasis> ech;
  for (auto& [key, idx] : slices) {
    for (size_t q = 0; q < idx.size(); ++q) pos[idx[q]] = static_cast<int>(q);
    ech.emplace(key, EchelonBasis(static_cast<int>(idx.size()), p));
  }
  auto add = [&](const SparseVec& v) {
    if (v.empty()) return;
    SliceKey key = key_of(v[0].first);
    std::vector<u32> d(slices[key].size(), 0);
    for (auto& [i, c] : v) d[pos[i]] = c;
    ech.at(key).add(std::move(d));
  };
  for (int i = 0; i < k.dim; ++i) {
    for (int g : ga) add(k.lact[g].col[i]);
    for (int g : gb) add(k.ract[g].col[i]);
  }
  std::vector<int> tops;
  for (auto& [key, idx] : slices)
    for (size_t q = 0; q < idx.size(); ++q) {
      std::vector<u32> d(idx.size(), 0);
      d[q] = 1;
      if (ech.at(key).add(std::move(d))) tops.push_back(idx[q]);
    }
  std::sort(tops.begin(), tops.end());
  return tops;
}

int corner_dim(const Algebra& a, int v, bool src) {
  int n = 0;
  for (const auto& b : a.basis) n += (src ? b.src : b.tgt) == v;
  return n;
}

}  // namespace

bool is_projective_bimodule(const Bimodule& m) {
  long long cover = 0;
  for (int i : top_vectors(m, false))
    cover += static_cast<long long>(corner_dim(*m.left, m.lv[i], true)) * corner_dim(*m.right, m.rv[i], false);
  return cover == m.dim;
}

bool is_left_projective(const Bimodule& m) {
  long long cover = 0;
  for (int i : top_vectors(m, true)) cover += corner_dim(*m.left, m.lv[i], true);
  return cover == m.dim;
}

int Complex::min_h() const { return hdeg.empty() ? 0 : *std::min_element(hdeg.begin(), hdeg.end()); }
int Complex::max_h() const { return hdeg.empty() ? -1 : *std::max_element(hdeg.begin(), hdeg.end()); }

std::vector<int> Complex::term(int h) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (hdeg[i] == h) out.push_back(i);
  return out;
}

Bimodule direct_sum(const std::vector<Bimodule>& parts) {
  if (parts.empty()) throw AlgebraError("direct sum of nothing");
  Bimodule out;
  out.left = parts[0].left;
  out.right = parts[0].right;
  out.p = parts[0].p;
  bool graded = true;
  for (const auto& m : parts) {
    if (!same_algebra(*m.left, *out.left) || !same_algebra(*m.right, *out.right))
      throw AlgebraError("direct sum: algebras differ");
    graded = graded && (m.graded() || m.dim == 0);
    out.dim += m.dim;
  }
  std::vector<int> off;
  int o = 0;
  for (const auto& m : parts) {
    off.push_back(o);
    o += m.dim;
    out.lv.insert(out.lv.end(), m.lv.begin(), m.lv.end());
    out.rv.insert(out.rv.end(), m.rv.begin(), m.rv.end());
    if (graded) out.deg.insert(out.deg.end(), m.deg.begin(), m.deg.end());
  }
  auto stack = [&](bool left) {
    int nb = left ? out.left->dim() : out.right->dim();
    std::vector<SpMap> res;
    for (int b = 0; b < nb; ++b) {
      SpMap f(out.dim, out.dim, out.p);
      for (size_t k = 0; k < parts.size(); ++k) {
        const SpMap& g = left ? parts[k].lact[b] : parts[k].ract[b];
        for (int i = 0; i < parts[k].dim; ++i)
          for (auto& [r, c] : g.col[i]) f.col[off[k] + i].push_back({off[k] + r, c});
      }
      res.push_back(std::move(f));
    }
    return res;
  };
  out.lact = stack(true);
  out.ract = stack(false);
  return out;
}

Complex complex_from_bimodule(const Bimodule& m, int h) {
  Complex c;
  c.total = m;
  c.hdeg.assign(m.dim, h);
  c.d = SpMap(m.dim, m.dim, m.p);
  return c;
}

Complex two_term(const Bimodule& top, int h, const Bimodule& bottom, const SpMap& f) {
  if (f.rows != bottom.dim || f.cols != top.dim) throw AlgebraError("two_term: map has the wrong shape");
  Complex c;
  c.total = direct_sum({bottom, top});
  c.hdeg.assign(bottom.dim, h - 1);
  c.hdeg.insert(c.hdeg.end(), top.dim, h);
  c.d = SpMap(c.dim(), c.dim(), top.p);
  for (int i = 0; i < top.dim; ++i) c.d.col[bottom.dim + i] = f.col[i];
  return c;
}

bool complex_ok(const Complex& c, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const Bimodule& m = c.total;
  const u32 p = m.p;
  if (static_cast<int>(c.hdeg.size()) != m.dim || c.d.rows != m.dim || c.d.cols != m.dim)
    return fail("shape");
  for (int i = 0; i < m.dim; ++i)
    for (auto& [k, v] : c.d.col[i]) {
      if (c.hdeg[k] != c.hdeg[i] - 1) return fail("d does not lower the degree by one");
      if (m.lv[k] != m.lv[i] || m.rv[k] != m.rv[i]) return fail("d leaves a vertex block");
      if (c.sdeg(k) != c.sdeg(i)) return fail("d changes the standard degree");
    }
  if (!compose(c.d, c.d).is_zero()) return fail("d^2 != 0");
  // d(b.m) = d(b).m + (-1)^|b| b.dm
  for (int b = 0; b < m.left->dim(); ++b) {
    int hb = c.ldg ? c.ldg->hdeg[b] : 0;
    SpMap lhs = compose(c.d, m.lact[b]);
    SpMap rhs = scale(compose(m.lact[b], c.d), sign(hb, p));
    if (c.ldg)
      for (auto& [b2, v] : c.ldg->d.col[b]) rhs = rhs + scale(m.lact[b2], v);
    if (lhs != rhs) return fail("left Leibniz rule fails at " + std::to_string(b));
  }
  // d(m.b) = dm.b + (-1)^|m| m.db
  for (int b = 0; b < m.right->dim(); ++b) {
    SpMap lhs = compose(c.d, m.ract[b]);
    SpMap rhs = compose(m.ract[b], c.d);
    if (c.rdg) {
      SpMap extra(m.dim, m.dim, p);
      for (auto& [b2, v] : c.rdg->d.col[b]) extra = extra + scale(m.ract[b2], v);
      for (int i = 0; i < m.dim; ++i)
        if (c.hdeg[i] % 2) extra.col[i] = add_scaled({}, extra.col[i], p - 1, p);
      rhs = rhs + extra;
    }
    if (lhs != rhs) return fail("right Leibniz rule fails at " + std::to_string(b));
  }
  return true;
}

Complex shift_standard(const Complex& c, int k) {
  if (!c.total.graded()) throw AlgebraError("shift of an ungraded complex");
  Complex out = c;
  for (auto& d : out.total.deg) d.back() -= k;
  return out;
}

TensorComplex total_tensor(const Complex& x, const Complex& y) {
  if (!same_algebra(*x.total.right, *y.total.left)) throw AlgebraError("total_tensor: middle algebras differ");
  const u32 p = x.total.p;
  TensorComplex tc;
  tc.tp = tensor_over_algebra(x.total, y.total);
  Complex& r = tc.result;
  r.total = tc.tp.result;
  r.ldg = x.ldg;
  r.rdg = y.rdg;
  r.d = SpMap(r.dim(), r.dim(), p);
  for (int k = 0; k < r.dim(); ++k) {
    auto [i, j] = tc.tp.rep[k];
    r.hdeg.push_back(x.hdeg[i] + y.hdeg[j]);
    SparseVec v = tc.tp.project(x.d.col[i], unit_vec(j, p));
    sparse_axpy(v, tc.tp.project(unit_vec(i, p), y.d.col[j]), sign(x.hdeg[i], p), p);
    r.d.col[k] = std::move(v);
  }
  return tc;
}

int Homology::total_dim() const {
  int s = 0;
  for (auto& [k, v] : dims) s += v;
  return s;
}

SparseVec Homology::coords(int h, const SparseVec& z) const {
  SparseVec out;
  auto it = slices.find(h);
  if (it == slices.end()) return out;
  std::map<int, SparseVec> parts;
  for (auto& e : z) parts[slice_of[e.first]].push_back(e);
  for (auto& [s, part] : parts) {
    const Slice& sl = it->second.at(s);
    std::vector<u32> v(sl.idx.size(), 0);
    for (auto& [i, c] : part) v[pos_of[i]] = c;
    sl.bound->reduce_vec(v);
    const auto& piv = sl.cyc->pivots();
    for (size_t r = 0; r < piv.size(); ++r)
      if (v[piv[r]]) out.push_back({sl.first + static_cast<int>(r), v[piv[r]]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Homology homology(const Complex& c, bool with_modules) {
  const Bimodule& m = c.total;
  const u32 p = m.p;
  Homology H;
  H.slice_of.assign(m.dim, -1);
  H.pos_of.assign(m.dim, -1);
  // (h, lv, rv, s) -> indices
  std::map<std::tuple<int, int, int, int>, std::vector<int>> groups;
  for (int i = 0; i < m.dim; ++i) groups[{c.hdeg[i], m.lv[i], m.rv[i], c.sdeg(i)}].push_back(i);
  for (auto& [key, idx] : groups) {
    auto [h, l, r, s] = key;
    auto& list = H.slices[h];
    int sn = static_cast<int>(list.size());
    for (size_t q = 0; q < idx.size(); ++q) {
      H.slice_of[idx[q]] = sn;
      H.pos_of[idx[q]] = static_cast<int>(q);
    }
    Homology::Slice sl;
    sl.idx = idx;
    list.push_back(std::move(sl));
  }
  for (auto& [key, idx] : groups) {
    auto [h, l, r, s] = key;
    Homology::Slice& sl = H.slices[h][H.slice_of[idx[0]]];
    const int n = static_cast<int>(idx.size());
    // cycles
    std::map<int, int> rows;
    for (int i : idx)
      for (auto& [k, v] : c.d.col[i]) rows.emplace(k, 0);
    int nr = 0;
    for (auto& [k, v] : rows) v = nr++;
    Matrix dm(nr, n, p);
    for (int q = 0; q < n; ++q)
      for (auto& [k, v] : c.d.col[idx[q]]) dm.at(rows[k], q) = v;
    Matrix z = nr ? kernel_basis(dm) : Matrix::identity(n, p);
    // boundaries
    sl.bound = std::make_shared<EchelonBasis>(n, p);
    auto above = groups.find({h + 1, l, r, s});
    if (above != groups.end())
      for (int j : above->second) {
        std::vector<u32> v(n, 0);
        for (auto& [k, x] : c.d.col[j]) v[H.pos_of[k]] = x;
        sl.bound->add(std::move(v));
      }
    sl.cyc = std::make_shared<EchelonBasis>(n, p);
    for (int q = 0; q < z.rows; ++q) {
      std::vector<u32> v = z.row_vec(q);
      if (!sl.bound->reduce_vec(v)) sl.cyc->add(std::move(v));
    }
    auto& reps = H.reps[h];
    sl.first = static_cast<int>(reps.size());
    for (auto& row : sl.cyc->rows()) {
      SparseVec v;
      for (int q = 0; q < n; ++q)
        if (row[q]) v.push_back({idx[q], row[q]});
      reps.push_back(std::move(v));
    }
    if (sl.cyc->size()) H.dims[{h, s}] += sl.cyc->size();
  }
  for (auto it = H.reps.begin(); it != H.reps.end();)
    it = it->second.empty() ? H.reps.erase(it) : std::next(it);
  if (!with_modules || c.ldg || c.rdg) return H;
  for (auto& [h, reps] : H.reps) {
    Bimodule hm;
    hm.left = m.left;
    hm.right = m.right;
    hm.p = p;
    hm.dim = static_cast<int>(reps.size());
    for (auto& v : reps) {
      int i = v[0].first;
      hm.lv.push_back(m.lv[i]);
      hm.rv.push_back(m.rv[i]);
      if (m.graded()) hm.deg.push_back(m.deg[i]);
    }
    auto act = [&](const std::vector<SpMap>& acts) {
      std::vector<SpMap> out;
      for (const auto& a : acts) {
        SpMap f(hm.dim, hm.dim, p);
        for (int q = 0; q < hm.dim; ++q) f.col[q] = H.coords(h, a.apply(reps[q]));
        out.push_back(std::move(f));
      }
      return out;
    };
    hm.lact = act(m.lact);
    hm.ract = act(m.ract);
    H.modules.emplace(h, std::move(hm));
  }
  return H;
}

std::map<int, long long> euler_terms(const Complex& c) {
  std::map<int, long long> e;
  for (int i = 0; i < c.dim(); ++i) e[c.sdeg(i)] += (c.hdeg[i] % 2 == 0) ? 1 : -1;
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

std::map<int, long long> euler_homology(const Homology& h) {
  std::map<int, long long> e;
  for (auto& [bd, n] : h.dims) e[bd.second] += (bd.first % 2 == 0) ? n : -n;
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

bool is_chain_map(const Complex& x, const Complex& y, const SpMap& f) {
  if (f.rows != y.dim() || f.cols != x.dim()) return false;
  for (int i = 0; i < x.dim(); ++i)
    for (auto& [k, v] : f.col[i])
      if (y.hdeg[k] != x.hdeg[i] || y.sdeg(k) != x.sdeg(i)) return false;
  if (compose(y.d, f) != compose(f, x.d)) return false;
  return is_bimodule_map(x.total, y.total, f);
}

std::vector<SpMap> chain_map_basis(const Complex& x, const Complex& y) {
  const u32 p = x.total.p;
  auto bideg = [](const Complex& c) {
    Bimodule b = c.total;
    b.deg.assign(c.dim(), {});
    for (int i = 0; i < c.dim(); ++i) b.deg[i] = {c.sdeg(i), c.hdeg[i]};
    return b;
  };
  std::vector<int> zero{0, 0};
  std::vector<SpMap> basis = intertwiner_basis(bideg(x), bideg(y), &zero);
  const int nb = static_cast<int>(basis.size());
  std::map<long long, SparseVec> eqs;
  for (int k = 0; k < nb; ++k) {
    SpMap g = compose(y.d, basis[k]) + scale(compose(basis[k], x.d), p - 1);
    for (int i = 0; i < g.cols; ++i)
      for (auto& [r, v] : g.col[i]) eqs[static_cast<long long>(r) * x.dim() + i].push_back({k, v});
  }
  SparseEliminator elim(nb, p);
  for (auto& [key, row] : eqs) elim.add(row);
  std::vector<SpMap> out;
  for (auto& sol : elim.kernel()) {
    SpMap f(y.dim(), x.dim(), p);
    for (auto& [k, v] : sol) f = f + scale(basis[k], v);
    out.push_back(std::move(f));
  }
  return out;
}

std::map<int, Matrix> homology_map(const Homology& hx, const Homology& hy, const SpMap& f, u32 p) {
  std::map<int, Matrix> out;
  std::set<int> hs;
  for (auto& [h, r] : hx.reps) hs.insert(h);
  for (auto& [h, r] : hy.reps) hs.insert(h);
  for (int h : hs) {
    auto ix = hx.reps.find(h);
    auto iy = hy.reps.find(h);
    int nx = ix == hx.reps.end() ? 0 : static_cast<int>(ix->second.size());
    int ny = iy == hy.reps.end() ? 0 : static_cast<int>(iy->second.size());
    Matrix m(ny, nx, p);
    for (int q = 0; q < nx; ++q)
      for (auto& [r, v] : hy.coords(h, f.apply(ix->second[q]))) m.at(r, q) = v;
    out.emplace(h, std::move(m));
  }
  return out;
}

bool induces_iso(const Homology& hx, const Homology& hy, const SpMap& f, u32 p) {
  if (hx.dims != hy.dims) return false;
  for (auto& [h, m] : homology_map(hx, hy, f, p))
    if (m.rows != m.cols || rank(m) != m.rows) return false;
  return true;
}

QuasiIsoResult quasi_iso_certificate(const Complex& x, const Complex& y, const SearchLimits& lim,
                                     const std::optional<SpMap>& candidate) {
  const u32 p = x.total.p;
  QuasiIsoResult res;
  Homology hx = homology(x, false), hy = homology(y, false);
  res.tables_equal = hx.dims == hy.dims;
  if (candidate) {
    if (!is_chain_map(x, y, *candidate)) {
      res.reason = "candidate is not a bimodule chain map";
    } else if (!induces_iso(hx, hy, *candidate, p)) {
      res.reason = "candidate does not induce an isomorphism on homology";
    } else {
      res.status = SearchStatus::found;
      res.map = candidate;
    }
    return res;
  }
  if (!res.tables_equal) {
    res.reason = "homology tables differ";
    return res;
  }
  std::vector<SpMap> basis = chain_map_basis(x, y);
  res.space_dim = static_cast<int>(basis.size());
  std::vector<std::map<int, Matrix>> hm;
  for (const auto& f : basis) hm.push_back(homology_map(hx, hy, f, p));
  std::map<int, Matrix> zero = homology_map(hx, hy, SpMap(y.dim(), x.dim(), p), p);
  auto test = [&](const std::vector<u32>& lam) {
    std::map<int, Matrix> acc = zero;
    for (size_t k = 0; k < lam.size(); ++k)
      if (lam[k])
        for (auto& [h, m] : hm[k]) acc[h] = acc[h] + scale(m, lam[k]);
    for (auto& [h, m] : acc)
      if (rank(m) != m.rows) return false;
    return true;
  };
  auto build = [&](const std::vector<u32>& lam) {
    SpMap f(y.dim(), x.dim(), p);
    for (size_t k = 0; k < lam.size(); ++k)
      if (lam[k]) f = f + scale(basis[k], lam[k]);
    return f;
  };
  const int n = res.space_dim;
  if (hx.total_dim() == 0) {
    res.status = SearchStatus::found;
    res.map = SpMap(y.dim(), x.dim(), p);
    return res;
  }
  if (n == 0) {
    res.reason = "no nonzero chain maps";
    return res;
  }
  Rng rng(lim.seed);
  for (int t = 0; t < lim.retries; ++t) {
    std::vector<u32> lam = rng.vec(n, p);
    ++res.samples;
    if (test(lam)) {
      res.status = SearchStatus::found;
      res.map = build(lam);
      return res;
    }
  }
  long double space = 1;
  for (int k = 0; k < n && space <= static_cast<long double>(lim.exhaustive_cap); ++k) space *= p;
  if (space > static_cast<long double>(lim.exhaustive_cap)) {
    res.status = SearchStatus::inconclusive;
    res.reason = "inconclusive: chain map space too large for exhaustive search";
    return res;
  }
  std::vector<u32> lam(n, 0);
  while (true) {
    int k = 0;
    while (k < n && ++lam[k] == p) lam[k++] = 0;
    if (k == n) break;
    ++res.samples;
    if (test(lam)) {
      res.status = SearchStatus::found;
      res.map = build(lam);
      return res;
    }
  }
  res.reason = "no chain map induces an isomorphism on homology";
  return res;
}

AlgebraPtr graded_cp(u32 p, u32 field_char) {
  return share(summed_grading(build_cp(p, field_char ? field_char : p)));
}

Complex ks_complex(const AlgebraPtr& c, int i, bool primed) {
  const Algebra& A = *c;
  if (i < 1 || i >= A.num_vertices()) throw AlgebraError("index out of range");
  const int v = i - 1;
  const u32 p = A.p;
  Bimodule P = projective_bimodule(c, v, v);
  Bimodule reg = regular_bimodule(c);
  if (!primed) {
    std::vector<int> left, right;
    for (int x = 0; x < A.dim(); ++x) {
      if (A.basis[x].src == v) left.push_back(x);
      if (A.basis[x].tgt == v) right.push_back(x);
    }
    SpMap mult(A.dim(), P.dim, p);
    int q = 0;
    for (int x : left)
      for (int y : right) mult.col[q++] = A.product(x, y);
    return two_term(P, 1, reg, mult);
  }
  std::vector<int> shift{2};
  std::vector<SpMap> co = intertwiner_basis(reg, P, &shift);
  if (co.empty()) throw AlgebraError("no coevaluation map");
  Bimodule Ps = P;
  for (auto& d : Ps.deg) d.back() -= 2;
  Complex y = ks_complex(c, i, false);
  // the slot is expected to be one-dimensional; otherwise take the first
  // basis map for which Y (x) Y' has the homology of c
  for (const auto& f : co) {
    Complex yp = two_term(reg, 0, Ps, f);
    if (co.size() == 1) return yp;
    Homology h = homology(total_tensor(y, yp).result, false);
    Homology hc = homology(complex_from_bimodule(reg), false);
    if (h.dims == hc.dims) return yp;
  }
  throw AlgebraError("no coevaluation map inverts Y_" + std::to_string(i));
}

Complex ks_complex(u32 p, int i, bool primed) { return ks_complex(graded_cp(p), i, primed); }

Complex braid_word_complex(const AlgebraPtr& c, const std::vector<int>& word) {
  if (word.empty()) return complex_from_bimodule(regular_bimodule(c));
  Complex out = ks_complex(c, word[0], false);
  for (size_t k = 1; k < word.size(); ++k) out = total_tensor(out, ks_complex(c, word[k], false)).result;
  return out;
}

DgAlgebra dg_twisted_algebra(const AlgebraPtr& c, const AlgebraPtr& a, const Complex& t, int max_power) {
  if (t.ldg || t.rdg) throw AlgebraError("dg_twisted_algebra: a must be an ordinary algebra");
  if (c->p != a->p || t.total.p != a->p) throw AlgebraError("dg_twisted_algebra: characteristics differ");
  const u32 p = a->p;
  DgAlgebra e;
  e.tw = twisted_algebra(c, a, t.total, max_power);
  e.alg = e.tw.alg;
  const int np = static_cast<int>(e.tw.powers.size());
  e.power_h.push_back(std::vector<int>(a->dim(), 0));
  e.power_d.push_back(SpMap(a->dim(), a->dim(), p));
  if (np > 1) {
    e.power_h.push_back(t.hdeg);
    e.power_d.push_back(t.d);
  }
  for (int j = 2; j < np; ++j) {
    const TensorProduct& st = e.tw.steps[j];
    const int n = st.result.dim;
    std::vector<int> h(n);
    SpMap d(n, n, p);
    for (int k = 0; k < n; ++k) {
      auto [u, w] = st.rep[k];
      h[k] = e.power_h[j - 1][u] + t.hdeg[w];
      SparseVec v = st.project(e.power_d[j - 1].col[u], unit_vec(w, p));
      sparse_axpy(v, st.project(unit_vec(u, p), t.d.col[w]), sign(e.power_h[j - 1][u], p), p);
      d.col[k] = std::move(v);
    }
    e.power_h.push_back(std::move(h));
    e.power_d.push_back(std::move(d));
  }
  auto dg = std::make_shared<DgData>();
  const int n = e.alg->dim();
  dg->hdeg.resize(n);
  dg->d = SpMap(n, n, p);
  for (int x = 0; x < n; ++x) {
    auto [g, j, u] = e.tw.origin[x];
    dg->hdeg[x] = e.power_h[j][u];
    for (auto& [u2, v] : e.power_d[j].col[u]) dg->d.col[x].push_back({e.tw.index[g][u2], v});
    std::sort(dg->d.col[x].begin(), dg->d.col[x].end());
  }
  e.dg = dg;
  return e;
}

bool dg_algebra_ok(const DgAlgebra& e) {
  const Algebra& A = *e.alg;
  const u32 p = A.p;
  const SpMap& d = e.dg->d;
  if (!compose(d, d).is_zero()) return false;
  for (int x = 0; x < A.dim(); ++x)
    for (auto& [y, row] : A.row(x)) {
      SparseVec lhs = d.apply(row);
      SparseVec rhs = A.mul(d.col[x], unit_vec(y, p));
      sparse_axpy(rhs, A.mul(unit_vec(x, p), d.col[y]), sign(e.dg->hdeg[x], p), p);
      if (lhs != rhs) return false;
    }
  // pairs with zero product still need d(x)y + x d(y) = 0
  for (int x = 0; x < A.dim(); ++x)
    for (int y = 0; y < A.dim(); ++y) {
      if (!A.product(x, y).empty() || A.basis[x].src != A.basis[y].tgt) continue;
      SparseVec rhs = A.mul(d.col[x], unit_vec(y, p));
      sparse_axpy(rhs, A.mul(unit_vec(x, p), d.col[y]), sign(e.dg->hdeg[x], p), p);
      if (!rhs.empty()) return false;
    }
  return true;
}

Complex regular_complex(const DgAlgebra& e) {
  Complex c;
  c.total = regular_bimodule(e.alg);
  c.hdeg = e.dg->hdeg;
  c.d = e.dg->d;
  c.ldg = c.rdg = e.dg;
  return c;
}

SpMap induced_twisted_map(const DgAlgebra& from, const DgAlgebra& to, const SpMap& eps) {
  if (!same_algebra(*from.tw.c, *to.tw.c) || !same_algebra(*from.tw.a, *to.tw.a))
    throw AlgebraError("induced_twisted_map: different c or a");
  const u32 p = eps.p;
  const int np = std::min(from.tw.powers.size(), to.tw.powers.size());
  // eps on each tensor power
  std::vector<SpMap> ej;
  ej.push_back(SpMap::identity(from.tw.a->dim(), p));
  if (np > 1) ej.push_back(eps);
  for (int j = 2; j < np; ++j) {
    const TensorProduct& st = from.tw.steps[j];
    SpMap f(to.tw.powers[j].dim, st.result.dim, p);
    for (int k = 0; k < st.result.dim; ++k) {
      auto [u, w] = st.rep[k];
      f.col[k] = to.tw.steps[j].project(ej[j - 1].col[u], eps.col[w]);
    }
    ej.push_back(std::move(f));
  }
  SpMap out(to.alg->dim(), from.alg->dim(), p);
  for (int x = 0; x < from.alg->dim(); ++x) {
    auto [g, j, u] = from.tw.origin[x];
    if (j >= np) throw AlgebraError("induced_twisted_map: tensor power beyond the built range");
    for (auto& [u2, v] : ej[j].col[u]) out.col[x].push_back({to.tw.index[g][u2], v});
    std::sort(out.col[x].begin(), out.col[x].end());
  }
  return out;
}

Complex forget_actions(const Complex& c) {
  Complex out;
  const u32 p = c.total.p;
  out.total.left = out.total.right = share(field_algebra(p));
  out.total.p = p;
  out.total.dim = c.dim();
  out.total.lv.assign(c.dim(), 0);
  out.total.rv.assign(c.dim(), 0);
  out.total.deg = c.total.deg;
  out.total.lact = out.total.ract = {SpMap::identity(c.dim(), p)};
  out.hdeg = c.hdeg;
  out.d = c.d;
  return out;
}

Complex dg_twisted_bimodule(const Complex& x, const DgAlgebra& left, const DgAlgebra& right) {
  if (x.ldg || x.rdg) throw AlgebraError("dg_twisted_bimodule: x must be over ordinary algebras");
  if (!x.total.graded()) throw AlgebraError("dg_twisted_bimodule: x must be graded");
  for (int i = 0; i < x.dim(); ++i)
    if (x.sdeg(i) < 0) throw AlgebraError("not positively graded");
  const u32 p = x.total.p;
  TwistedBimodule tb = twisted_bimodule(x.total, left.tw, right.tw);
  Complex out;
  out.total = std::move(tb.mod);
  out.ldg = left.dg;
  out.rdg = right.dg;
  const int n = out.dim();
  std::vector<std::vector<int>> index(x.dim());
  out.hdeg.resize(n);
  for (int q = 0; q < n; ++q) {
    auto [i, j, u] = tb.origin[q];
    index[i].push_back(q);
    out.hdeg[q] = x.hdeg[i] + left.power_h[j][u];
  }
  // moving the T-part of the algebra element past x
  for (int b = 0; b < left.alg->dim(); ++b) {
    int hb = left.dg->hdeg[b];
    if (hb % 2 == 0) continue;
    for (int q = 0; q < n; ++q)
      if (x.hdeg[tb.origin[q][0]] % 2)
        for (auto& e : out.total.lact[b].col[q]) e.second = fp_neg(e.second, p);
  }
  out.d = SpMap(n, n, p);
  for (int q = 0; q < n; ++q) {
    auto [i, j, u] = tb.origin[q];
    SparseVec v;
    for (auto& [i2, c] : x.d.col[i]) v.push_back({index[i2][u], c});
    std::sort(v.begin(), v.end());
    SparseVec w;
    for (auto& [u2, c] : left.power_d[j].col[u]) w.push_back({index[i][u2], c});
    std::sort(w.begin(), w.end());
    sparse_axpy(v, w, sign(x.hdeg[i], p), p);
    out.d.col[q] = std::move(v);
  }
  return out;
}

std::optional<SparseVec> HomComplex::coords(const SpMap& f) const {
  if (classes.empty()) {
    if (f.is_zero()) return SparseVec{};
    return std::nullopt;
  }
  const u32 p = cx.total.p;
  std::set<int> touched;
  for (int i = 0; i < f.cols; ++i)
    for (auto& [k, v] : f.col[i]) {
      auto it = class_index.find({src_rv[i], tgt_rv[k], tgt_h[k] - src_h[i], tgt_s[k] - src_s[i]});
      if (it == class_index.end()) return std::nullopt;
      touched.insert(it->second);
    }
  SparseVec out;
  SpMap check(f.rows, f.cols, p);
  for (int ci : touched) {
    const Class& c = classes[ci];
    std::vector<u32> fv(c.count);
    for (int r = 0; r < c.count; ++r) fv[r] = entry(f, c.entries[r].first, c.entries[r].second);
    std::vector<u32> co = mat_vec(c.inv, fv);
    for (int r = 0; r < c.count; ++r)
      if (co[r]) {
        out.push_back({c.first + r, co[r]});
        check = check + scale(maps[c.first + r], co[r]);
      }
  }
  if (check != f) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

HomComplex hom_complex(const Complex& m, const Complex& n, bool with_actions) {
  if (!same_algebra(*m.total.left, *n.total.left)) throw AlgebraError("hom_complex: left algebras differ");
  if (with_actions && (m.rdg || n.rdg))
    throw AlgebraError("hom_complex: actions of dg algebras on Hom are not supported");
  const Algebra& A = *m.total.left;
  const u32 p = A.p;
  const bool graded = m.total.graded() && n.total.graded();
  std::vector<int> gens = radical_generators(A);
  auto gsign = [&](int g, int deg) { return sign(m.ldg ? m.ldg->hdeg[g] * deg : 0, p); };

  HomComplex H;
  // terms of M are projective iff their sum is; over a dg algebra the terms are
  // not submodules and nothing is checked
  if (!m.ldg && !is_left_projective(m.total)) H.warning = "source terms are not projective";
  for (int i = 0; i < m.dim(); ++i) {
    H.src_rv.push_back(m.total.rv[i]);
    H.src_h.push_back(m.hdeg[i]);
    H.src_s.push_back(graded ? m.sdeg(i) : 0);
  }
  for (int k = 0; k < n.dim(); ++k) {
    H.tgt_rv.push_back(n.total.rv[k]);
    H.tgt_h.push_back(n.hdeg[k]);
    H.tgt_s.push_back(graded ? n.sdeg(k) : 0);
  }
  // candidate pairs (i, k) grouped by class
  std::map<std::array<int, 4>, std::vector<std::pair<int, int>>> pairs;
  for (int i = 0; i < m.dim(); ++i)
    for (int k = 0; k < n.dim(); ++k)
      if (m.total.lv[i] == n.total.lv[k])
        pairs[{H.src_rv[i], H.tgt_rv[k], H.tgt_h[k] - H.src_h[i], H.tgt_s[k] - H.src_s[i]}].push_back({i, k});

  for (auto& [key, vars] : pairs) {
    const int nv = static_cast<int>(vars.size());
    std::map<std::pair<int, int>, int> var;
    for (int q = 0; q < nv; ++q) var[vars[q]] = q;
    std::vector<std::vector<std::pair<int, int>>> of_src(m.dim());  // i -> (k, var)
    for (int q = 0; q < nv; ++q) of_src[vars[q].first].push_back({vars[q].second, q});
    SparseEliminator elim(nv, p);
    const int deg = key[2];
    for (int g : gens) {
      u32 sg = gsign(g, deg);
      for (int i = 0; i < m.dim(); ++i) {
        if (H.src_rv[i] != key[0] || A.basis[g].src != m.total.lv[i]) continue;
        // f(g.m_i) - sg g.f(m_i), component k
        std::map<int, std::map<int, u32>> rows;
        for (auto& [i2, c] : m.total.lact[g].col[i])
          for (auto& [k, q] : of_src[i2]) {
            auto& x = rows[k][q];
            x = fp_add(x, c, p);
          }
        for (auto& [k2, q] : of_src[i])
          for (auto& [k, c] : n.total.lact[g].col[k2]) {
            auto& x = rows[k][q];
            x = fp_sub(x, fp_mul(sg, c, p), p);
          }
        for (auto& [k, r] : rows) {
          SparseVec v;
          for (auto& [q, x] : r)
            if (x) v.push_back({q, x});
          if (!v.empty()) elim.add(v);
        }
      }
    }
    auto ker = elim.kernel();
    if (ker.empty()) continue;
    HomComplex::Class cl;
    cl.u = key[0];
    cl.w = key[1];
    cl.n = key[2];
    cl.j = key[3];
    cl.first = static_cast<int>(H.maps.size());
    cl.count = static_cast<int>(ker.size());
    Matrix B(cl.count, nv, p);
    for (int r = 0; r < cl.count; ++r) {
      SpMap f(n.dim(), m.dim(), p);
      for (auto& [q, x] : ker[r]) {
        B.at(r, q) = x;
        f.col[vars[q].first].push_back({vars[q].second, x});
      }
      for (auto& col : f.col) std::sort(col.begin(), col.end());
      H.maps.push_back(std::move(f));
    }
    Reduced red = reduce(B);
    Matrix S(cl.count, cl.count, p);  // S(a, r) = B(r, piv a)
    for (int a = 0; a < cl.count; ++a) {
      cl.entries.push_back({vars[red.pivots[a]].second, vars[red.pivots[a]].first});
      for (int r = 0; r < cl.count; ++r) S.at(a, r) = B.at(r, red.pivots[a]);
    }
    cl.inv = *inverse(S);
    H.class_index[key] = static_cast<int>(H.classes.size());
    H.classes.push_back(std::move(cl));
  }

  Complex& cx = H.cx;
  Bimodule& t = cx.total;
  t.p = p;
  if (with_actions) {
    t.left = m.total.right;
    t.right = n.total.right;
  } else {
    t.left = t.right = share(field_algebra(p));
  }
  t.dim = static_cast<int>(H.maps.size());
  for (const auto& cl : H.classes)
    for (int r = 0; r < cl.count; ++r) {
      t.lv.push_back(with_actions ? cl.u : 0);
      t.rv.push_back(with_actions ? cl.w : 0);
      if (graded) t.deg.push_back({cl.j});
      cx.hdeg.push_back(cl.n);
    }
  auto need = [&](const SpMap& g) {
    auto c = H.coords(g);
    if (!c) throw AlgebraError("hom_complex: image leaves the Hom space");
    return *c;
  };
  cx.d = SpMap(t.dim, t.dim, p);
  for (const auto& cl : H.classes)
    for (int r = 0; r < cl.count; ++r) {
      const SpMap& f = H.maps[cl.first + r];
      SpMap g = compose(n.d, f) + scale(compose(f, m.d), p - sign(cl.n, p));
      cx.d.col[cl.first + r] = need(g);
    }
  if (with_actions) {
    for (int b = 0; b < t.left->dim(); ++b) {
      SpMap a(t.dim, t.dim, p);
      for (int q = 0; q < t.dim; ++q) a.col[q] = need(compose(H.maps[q], m.total.ract[b]));
      t.lact.push_back(std::move(a));
    }
    for (int b = 0; b < t.right->dim(); ++b) {
      SpMap a(t.dim, t.dim, p);
      for (int q = 0; q < t.dim; ++q) a.col[q] = need(compose(n.total.ract[b], H.maps[q]));
      t.ract.push_back(std::move(a));
    }
  } else {
    t.lact = t.ract = {SpMap::identity(t.dim, p)};
  }
  return H;
}

Resolution min_proj_resolution(const Bimodule& m, int max_len) {
  const AlgebraPtr& A = m.left;
  const AlgebraPtr& B = m.right;
  const u32 p = m.p;
  // projective cover of k: P and the map P -> k
  auto cover = [&](const Bimodule& k) {
    std::vector<int> tops = top_vectors(k, false);
    std::vector<Bimodule> parts;
    std::vector<SparseVec> image;
    for (int i : tops) {
      Bimodule f = free_bimodule(A, k.lv[i], B, k.rv[i]);
      if (k.graded())
        for (auto& d : f.deg)
          for (size_t c = 0; c < d.size(); ++c) d[c] += k.deg[i][c];
      // generator x (x) y -> x.k_i.y, in the order of free_bimodule
      std::vector<int> left, right;
      for (int x = 0; x < A->dim(); ++x)
        if (A->basis[x].src == k.lv[i]) left.push_back(x);
      for (int y = 0; y < B->dim(); ++y)
        if (B->basis[y].tgt == k.rv[i]) right.push_back(y);
      for (int x : left)
        for (int y : right) image.push_back(k.ract[y].apply(k.lact[x].col[i]));
      parts.push_back(std::move(f));
    }
    Bimodule P = direct_sum(parts);
    SpMap pi(k.dim, P.dim, p);
    for (int q = 0; q < P.dim; ++q) pi.col[q] = image[q];
    return std::make_pair(std::move(P), std::move(pi));
  };

  std::vector<Bimodule> terms;
  std::vector<SpMap> diffs;  // diffs[k]: P_k -> P_{k-1}, k >= 1
  Resolution res;
  Bimodule k = m;
  std::vector<SparseVec> embed;  // basis of k inside the previous term
  for (int len = 0;; ++len) {
    if (len > max_len) throw AlgebraError("resolution exceeds max_len");
    auto [P, pi] = cover(k);
    if (len == 0) {
      res.aug = pi;
    } else {
      SpMap d(terms.back().dim, P.dim, p);
      for (int q = 0; q < P.dim; ++q)
        for (auto& [r, c] : pi.col[q]) sparse_axpy(d.col[q], embed[r], c, p);
      diffs.push_back(std::move(d));
    }
    // kernel of pi, slice by slice
    std::vector<SparseVec> gens;
    std::map<SliceKey, std::vector<int>> slices;
    for (int i = 0; i < P.dim; ++i) slices[slice_key(P, i)].push_back(i);
    for (auto& [key, idx] : slices) {
      std::map<int, int> rows;
      for (int i : idx)
        for (auto& [r, c] : pi.col[i]) rows.emplace(r, 0);
      int nr = 0;
      for (auto& [r, v] : rows) v = nr++;
      Matrix dm(nr, static_cast<int>(idx.size()), p);
      for (size_t q = 0; q < idx.size(); ++q)
        for (auto& [r, c] : pi.col[idx[q]]) dm.at(rows[r], static_cast<int>(q)) = c;
      Matrix z = nr ? kernel_basis(dm) : Matrix::identity(static_cast<int>(idx.size()), p);
      for (int r = 0; r < z.rows; ++r) {
        SparseVec v;
        for (size_t q = 0; q < idx.size(); ++q)
          if (z.at(r, static_cast<int>(q))) v.push_back({idx[q], z.at(r, static_cast<int>(q))});
        gens.push_back(std::move(v));
      }
    }
    terms.push_back(P);
    if (gens.empty()) break;
    Sub s = sub_bimodule(P, gens);
    k = std::move(s.mod);
    embed = std::move(s.vecs);
  }
  res.length = static_cast<int>(terms.size()) - 1;
  Complex& c = res.res;
  c.total = direct_sum(terms);
  std::vector<int> off;
  int o = 0;
  for (size_t t = 0; t < terms.size(); ++t) {
    off.push_back(o);
    o += terms[t].dim;
    c.hdeg.insert(c.hdeg.end(), terms[t].dim, static_cast<int>(t));
  }
  c.d = SpMap(c.dim(), c.dim(), p);
  for (size_t t = 1; t < terms.size(); ++t)
    for (int q = 0; q < terms[t].dim; ++q)
      for (auto& [r, v] : diffs[t - 1].col[q]) c.d.col[off[t] + q].push_back({off[t - 1] + r, v});
  SpMap aug(m.dim, c.dim(), p);
  for (int q = 0; q < terms[0].dim; ++q) aug.col[q] = res.aug.col[q];
  res.aug = std::move(aug);
  return res;
}

GammaResult endomorphism_gamma_check(const AlgebraPtr& c, const AlgebraPtr& d, const Complex& x,
                                     const AlgebraPtr& a, const Complex& t) {
  GammaResult res;
  res.status = SearchStatus::inconclusive;
  int top = 0;
  for (int i = 0; i < x.dim(); ++i) {
    if (!x.total.graded() || x.sdeg(i) < 0) {
      res.reason = "inconclusive: x is not positively graded";
      return res;
    }
    top = std::max(top, x.sdeg(i));
  }
  std::string why;
  if (!complex_ok(x, &why)) {
    res.reason = "inconclusive: x is not a complex (" + why + ")";
    return res;
  }
  DgAlgebra ca = dg_twisted_algebra(c, a, t, top);
  DgAlgebra da = dg_twisted_algebra(d, a, t, top);
  Complex xa = dg_twisted_bimodule(x, ca, da);
  if (!complex_ok(xa, &why)) {
    res.reason = "inconclusive: x(a,t) fails " + why;
    return res;
  }
  const u32 p = x.total.p;
  HomComplex end = hom_complex(xa, xa, false);
  Complex dreg = regular_complex(da);
  Homology hs = homology(dreg, false), ht = homology(end.cx, false);
  res.source = hs.dims;
  res.target = ht.dims;
  // gamma(delta)(m) = (-1)^{|delta||m|} m.delta
  SpMap gamma(end.cx.dim(), da.alg->dim(), p);
  for (int b = 0; b < da.alg->dim(); ++b) {
    SpMap g = xa.total.ract[b];
    for (int q = 0; q < g.cols; ++q)
      if ((da.dg->hdeg[b] * xa.hdeg[q]) % 2)
        for (auto& e : g.col[q]) e.second = fp_neg(e.second, p);
    auto co = end.coords(g);
    if (!co) {
      res.status = SearchStatus::none;
      res.reason = "right multiplication is not left linear";
      return res;
    }
    gamma.col[b] = *co;
  }
  if (compose(end.cx.d, gamma) != compose(gamma, dreg.d)) {
    res.status = SearchStatus::none;
    res.reason = "gamma is not a chain map";
    return res;
  }
  if (!induces_iso(hs, ht, gamma, p)) {
    res.status = SearchStatus::none;
    res.reason = hs.dims == ht.dims ? "gamma is not an isomorphism on homology" : "homology tables differ";
    return res;
  }
  res.status = SearchStatus::found;
  return res;
}

std::string complex_to_json(const Complex& c, const std::string& left_ref, const std::string& right_ref) {
  nlohmann::json j;
  j["schema"] = "complex-v1";
  j["left_alg_ref"] = left_ref;
  j["right_alg_ref"] = right_ref;
  j["char"] = c.total.p;
  nlohmann::json terms = nlohmann::json::array();
  for (int h = c.min_h(); h <= c.max_h(); ++h) {
    auto idx = c.term(h);
    if (idx.empty()) continue;
    std::map<int, int> by_std;
    for (int i : idx) ++by_std[c.sdeg(i)];
    nlohmann::json dims = nlohmann::json::array();
    for (auto& [s, n] : by_std) dims.push_back({s, n});
    terms.push_back({{"hdeg", h}, {"indices", idx}, {"standard_dims", dims}});
  }
  j["terms"] = terms;
  j["total"] = nlohmann::json::parse(bimodule_to_json(c.total, left_ref, right_ref));
  j["hdeg"] = c.hdeg;
  nlohmann::json d = nlohmann::json::array();
  for (int col = 0; col < c.d.cols; ++col)
    for (auto& [r, v] : c.d.col[col]) d.push_back({r, col, v});
  j["differential"] = d;
  return j.dump() + "\n";
}

Complex complex_from_json(const std::string& text, const AlgebraPtr& left, const AlgebraPtr& right) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("schema", "") != "complex-v1") throw AlgebraError("not a complex-v1 document");
  Complex c;
  c.total = bimodule_from_json(j.at("total").dump(), left, right);
  c.hdeg = j.at("hdeg").get<std::vector<int>>();
  if (static_cast<int>(c.hdeg.size()) != c.total.dim) throw AlgebraError("complex-v1: hdeg length");
  c.d = SpMap(c.total.dim, c.total.dim, c.total.p);
  for (auto& e : j.at("differential")) {
    int r = e.at(0), col = e.at(1);
    u32 v = e.at(2);
    if (r < 0 || r >= c.total.dim || col < 0 || col >= c.total.dim || v == 0 || v >= c.total.p)
      throw AlgebraError("complex-v1: bad differential entry");
    c.d.col[col].push_back({r, v});
  }
  for (auto& col : c.d.col) std::sort(col.begin(), col.end());
  std::string why;
  if (!complex_ok(c, &why)) throw AlgebraError("complex-v1: " + why);
  return c;
}

}  // namespace gl2
