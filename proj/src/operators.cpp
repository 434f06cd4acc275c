#include "gl2/operators.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gl2 {

Algebra trivial_extension(const Algebra& b, const Bimodule& m) {
  const int db = b.dim();
  Algebra out(b.p, b.grading_rank);
  out.vertices = b.vertices;
  out.basis = b.basis;
  for (int i = 0; i < m.dim; ++i) {
    std::vector<int> d(b.grading_rank, 0);
    if (m.graded() && static_cast<int>(m.deg[i].size()) == b.grading_rank) d = m.deg[i];
    out.basis.push_back({m.rv[i], m.lv[i], d, "m" + std::to_string(i), {}});
  }
  out.idem = b.idem;
  out.init_table();
  auto shifted = [&](const SparseVec& v) {
    SparseVec s = v;
    for (auto& e : s) e.first += db;
    return s;
  };
  for (int i = 0; i < db; ++i) {
    for (auto& [j, v] : b.row(i)) out.set_product(i, j, v);
    for (int j = 0; j < m.dim; ++j)
      if (!m.lact[i].col[j].empty()) out.set_product(i, db + j, shifted(m.lact[i].col[j]));
  }
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < db; ++j)
      if (!m.ract[j].col[i].empty()) out.set_product(db + i, j, shifted(m.ract[j].col[i]));
  return out;
}

std::vector<int> top_degree(const Bimodule& t, int rank) {
  std::vector<int> s(rank, 0);
  for (auto& d : t.deg)
    for (int k = 0; k < rank && k < static_cast<int>(d.size()); ++k) s[k] = std::max(s[k], d[k]);
  return s;
}

IsoSearch self_duality(const Bimodule& t, const SearchLimits& lim) {
  Bimodule d = dual(t);
  if (!t.graded()) return iso_certificate(t, d, lim);
  std::vector<int> shift = top_degree(t, static_cast<int>(t.deg.empty() ? 0 : t.deg[0].size()));
  for (auto& s : shift) s = -s;
  return iso_certificate(t, d, lim, &shift);
}

namespace {

enum Kind { kA = 0, kT = 1, kTs = 2, kAs = 3 };

// Element of the truncated C(A): kind, block i (T and T* of block i sit between
// blocks i-1 and i), basis index inside A or T.
struct Meta {
  int kind, block, inner;
};

struct CBuild {
  Algebra c;
  std::vector<Meta> meta;
  std::map<std::array<int, 3>, int> where;
  int lo = 0, nv = 1;
  int block(int vertex) const { return lo + vertex / nv; }
  int at(int kind, int block, int inner) const { return where.at({kind, block, inner}); }
};

CBuild build_c(const Algebra& a, const Bimodule& t, int lo, int hi) {
  const int r = a.grading_rank;
  const int nv = a.num_vertices();
  auto vid = [&](int i, int v) { return (i - lo) * nv + v; };
  Algebra b(a.p, r + 1);
  std::vector<Meta> meta;
  for (int i = lo; i <= hi; ++i)
    for (int v = 0; v < nv; ++v)
      b.vertices.push_back(std::to_string(i) + (nv > 1 ? "|" + a.vertices[v] : ""));
  auto with_j = [](std::vector<int> d, int j) {
    d.push_back(j);
    return d;
  };
  for (int i = lo; i <= hi; ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const auto& e = a.basis[k];
      b.basis.push_back({vid(i, e.src), vid(i, e.tgt), with_j(e.deg, 0), "", {}});
      meta.push_back({kA, i, k});
    }
  for (int i = lo + 1; i <= hi; ++i)
    for (int k = 0; k < t.dim; ++k) {
      std::vector<int> d = t.graded() ? t.deg[k] : std::vector<int>(r, 0);
      b.basis.push_back({vid(i, t.rv[k]), vid(i - 1, t.lv[k]), with_j(d, 1), "", {}});
      meta.push_back({kT, i, k});
    }
  std::map<std::array<int, 3>, int> where;
  for (int x = 0; x < static_cast<int>(meta.size()); ++x)
    where[{meta[x].kind, meta[x].block, meta[x].inner}] = x;
  for (int i = lo; i <= hi; ++i)
    for (int v = 0; v < nv; ++v) b.idem.push_back(where.at({kA, i, a.idem[v]}));
  b.init_table();
  auto remap = [&](const SparseVec& v, int kind, int block) {
    SparseVec out;
    for (auto& [k, c] : v) out.push_back({where.at({kind, block, k}), c});
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int x = 0; x < static_cast<int>(meta.size()); ++x) {
    const Meta& mx = meta[x];
    if (mx.kind == kA) {
      for (auto& [k2, v] : a.row(mx.inner)) b.set_product(x, where.at({kA, mx.block, k2}), remap(v, kA, mx.block));
      if (mx.block + 1 <= hi)
        for (int k = 0; k < t.dim; ++k) {
          const SparseVec& img = t.lact[mx.inner].col[k];
          if (!img.empty()) b.set_product(x, where.at({kT, mx.block + 1, k}), remap(img, kT, mx.block + 1));
        }
    } else {
      for (int k = 0; k < a.dim(); ++k) {
        const SparseVec& img = t.ract[k].col[mx.inner];
        if (!img.empty()) b.set_product(x, where.at({kA, mx.block, k}), remap(img, kT, mx.block));
      }
    }
  }
  auto bp = std::make_shared<const Algebra>(b);
  Bimodule dual_b = dual(regular_bimodule(bp));
  // inner degree of a dual element is S - deg, with S the top degree of T
  std::vector<int> s = top_degree(t, r);
  for (int x = 0; x < dual_b.dim; ++x) {
    std::vector<int> d(r + 1, 0);
    for (int k = 0; k < r; ++k) d[k] = s[k] - b.basis[x].deg[k];
    d[r] = meta[x].kind == kA ? 2 : 1;
    dual_b.deg[x] = d;
  }
  CBuild out;
  out.c = trivial_extension(b, dual_b);
  out.lo = lo;
  out.nv = nv;
  const int db = b.dim();
  out.meta = meta;
  for (int x = 0; x < db; ++x) out.meta.push_back({meta[x].kind == kA ? kAs : kTs, meta[x].block, meta[x].inner});
  for (int x = 0; x < static_cast<int>(out.meta.size()); ++x)
    out.where[{out.meta[x].kind, out.meta[x].block, out.meta[x].inner}] = x;
  return out;
}

std::string kind_name(int kind) {
  static const char* names[] = {"A", "T", "T*", "A*"};
  return names[kind];
}

struct CpBuilt {
  Algebra cp;
  Bimodule x;  // left/right filled by the caller
};

CpBuilt build_cp_pair(const Algebra& a, const Bimodule& t, const SpMap& phi, u32 p, int lo, int hi) {
  const int P = static_cast<int>(p);
  CBuild cb = build_c(a, t, lo, hi);
  const Algebra& C = cb.c;
  const int nv = a.num_vertices();
  auto in = [](int x, int l, int h) { return x >= l && x <= h; };

  // corner on blocks 1..p+1; the elements touching block p+1 come first so that
  // they are the pivots of the ideal
  std::vector<int> touching, interior;
  for (int x = 0; x < C.dim(); ++x) {
    int tb = cb.block(C.basis[x].tgt), sb = cb.block(C.basis[x].src);
    if (!in(tb, 1, P + 1) || !in(sb, 1, P + 1)) continue;
    (tb == P + 1 || sb == P + 1 ? touching : interior).push_back(x);
  }
  std::vector<int> cols = touching;
  cols.insert(cols.end(), interior.begin(), interior.end());
  std::vector<int> col_of(C.dim(), -1);
  for (int k = 0; k < static_cast<int>(cols.size()); ++k) col_of[cols[k]] = k;
  const int ncols = static_cast<int>(cols.size());
  Matrix ideal(0, ncols, p);
  for (int x : touching) {
    std::vector<u32> row(ncols, 0);
    row[col_of[x]] = 1;
    ideal.append_row(row);
  }
  for (int u : touching) {
    if (cb.block(C.basis[u].src) != P + 1) continue;
    for (auto& [w, prod] : C.row(u)) {
      if (col_of[w] < 0 || cb.block(C.basis[w].tgt) != P + 1) continue;
      std::vector<u32> row(ncols, 0);
      bool inside = true;
      for (auto& [z, c] : prod) {
        if (col_of[z] < 0) inside = false;
        else row[col_of[z]] = c;
      }
      if (!inside) throw AlgebraError("corner product left the corner");
      ideal.append_row(row);
    }
  }
  Reduced red = reduce(ideal);
  std::vector<int> pivot_row(ncols, -1);
  for (int k = 0; k < red.rank; ++k) pivot_row[red.pivots[k]] = k;
  std::vector<int> kept;  // C indices of the quotient basis
  for (int k = 0; k < ncols; ++k)
    if (pivot_row[k] < 0) kept.push_back(cols[k]);
  std::sort(kept.begin(), kept.end());
  std::vector<int> new_of(C.dim(), -1);
  for (int k = 0; k < static_cast<int>(kept.size()); ++k) new_of[kept[k]] = k;
  auto to_quotient = [&](const SparseVec& v) {
    std::map<int, u32> acc;
    for (auto& [z, c] : v) {
      if (col_of[z] < 0) throw AlgebraError("corner product left the corner");
      int pr = pivot_row[col_of[z]];
      if (pr < 0) {
        acc[new_of[z]] = fp_add(acc[new_of[z]], c, p);
        continue;
      }
      const u32* row = red.rref.row(pr);
      for (int k = 0; k < ncols; ++k)
        if (row[k] && pivot_row[k] < 0 && k != col_of[z]) {
          int nz = new_of[cols[k]];
          acc[nz] = fp_sub(acc[nz], fp_mul(c, row[k], p), p);
        }
    }
    SparseVec out;
    for (auto& [k, c] : acc)
      if (c) out.push_back({k, c});
    return out;
  };

  CpBuilt res;
  Algebra& cp = res.cp;
  cp.p = p;
  cp.grading_rank = C.grading_rank;
  auto new_vertex = [&](int cv) { return (cb.block(cv) - 1) * nv + cv % nv; };
  for (int i = 1; i <= P; ++i)
    for (int v = 0; v < nv; ++v)
      cp.vertices.push_back(std::to_string(i) + (nv > 1 ? "|" + a.vertices[v] : ""));
  for (int x : kept) {
    const Meta& m = cb.meta[x];
    std::string inner = (m.kind == kA || m.kind == kAs) ? a.basis[m.inner].tag : "t" + std::to_string(m.inner);
    cp.basis.push_back({new_vertex(C.basis[x].src), new_vertex(C.basis[x].tgt), C.basis[x].deg,
                        kind_name(m.kind) + std::to_string(m.block) + ":" + inner, {}});
  }
  for (int i = 1; i <= P; ++i)
    for (int v = 0; v < nv; ++v) cp.idem.push_back(new_of[cb.at(kA, i, a.idem[v])]);
  cp.init_table();
  for (int k = 0; k < static_cast<int>(kept.size()); ++k)
    for (auto& [z, prod] : C.row(kept[k])) {
      if (new_of[z] < 0) continue;
      SparseVec q = to_quotient(prod);
      if (!q.empty()) cp.set_product(k, new_of[z], q);
    }

  // X_p(A): rows 1..p, columns 2..p+1
  std::vector<int> xs, x_of(C.dim(), -1);
  for (int z = 0; z < C.dim(); ++z)
    if (in(cb.block(C.basis[z].tgt), 1, P) && in(cb.block(C.basis[z].src), 2, P + 1)) {
      x_of[z] = static_cast<int>(xs.size());
      xs.push_back(z);
    }
  Bimodule& X = res.x;
  X.p = p;
  X.dim = static_cast<int>(xs.size());
  for (int z : xs) X.deg.push_back(C.basis[z].deg);
  auto to_x = [&](const SparseVec& v) {
    SparseVec out;
    for (auto& [z, c] : v) {
      if (x_of[z] < 0) throw AlgebraError("X_p is not closed under the action");
      out.push_back({x_of[z], c});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  Matrix phid = phi.dense();
  auto psi_opt = inverse(phid.transpose());
  if (!psi_opt) throw AlgebraError("self-duality map is not invertible");
  SpMap psi = SpMap::from_dense(*psi_opt);
  // tau: blocks i -> p+1-i, exchanging T and T* through phi and psi
  auto tau = [&](int z) {
    const Meta& m = cb.meta[z];
    SparseVec out;
    int j = P + 2 - m.block;
    switch (m.kind) {
      case kA: out = {{cb.at(kA, P + 1 - m.block, m.inner), 1}}; break;
      case kAs: out = {{cb.at(kAs, P + 1 - m.block, m.inner), 1}}; break;
      case kT:
        for (auto& [q, c] : phi.col[m.inner]) out.push_back({cb.at(kTs, j, q), c});
        break;
      case kTs:
        for (auto& [q, c] : psi.col[m.inner]) out.push_back({cb.at(kT, j, q), c});
        break;
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int k = 0; k < static_cast<int>(kept.size()); ++k) {
    SparseVec tk = tau(kept[k]);
    const Meta& m = cb.meta[kept[k]];
    int shifted = cb.at(m.kind, m.block + 1, m.inner);
    SpMap l(X.dim, X.dim, p), r(X.dim, X.dim, p);
    for (int q = 0; q < X.dim; ++q) {
      SparseVec e{{xs[q], 1}};
      l.col[q] = to_x(C.mul(tk, e));
      r.col[q] = to_x(C.product(xs[q], shifted));
    }
    X.lact.push_back(std::move(l));
    X.ract.push_back(std::move(r));
  }
  return res;
}

}  // namespace

CpResult cp_operator(const AlgebraPtr& a, const Bimodule& t, u32 p, const SearchLimits& lim) {
  if (!is_prime(p)) throw AlgebraError("p must be prime");
  if (!same_algebra(*t.left, *a) || !same_algebra(*t.right, *a)) throw AlgebraError("T is not an (A,A)-bimodule");
  SpMap phi;
  if (t.dim == 1 && a->dim() == 1) {
    phi = SpMap::identity(1, p);
  } else {
    IsoSearch sd = self_duality(t, lim);
    if (sd.status != SearchStatus::found) throw AlgebraError("T is not certified self-dual");
    phi = *sd.map;
  }
  const int P = static_cast<int>(p);
  CpBuilt one = build_cp_pair(*a, t, phi, p, 0, P + 2);
  CpBuilt two = build_cp_pair(*a, t, phi, p, -1, P + 3);
  CpResult res;
  auto c = share(std::move(one.cp));
  one.x.left = one.x.right = c;
  two.x.left = two.x.right = c;
  assign_vertices(one.x);
  if (algebra_to_json(*c) != algebra_to_json(two.cp) ||
      bimodule_to_json(one.x, "", "") != bimodule_to_json(two.x, "", ""))
    throw AlgebraError("padding-sensitive");
  res.c = c;
  res.x = std::move(one.x);
  res.phi = phi;
  return res;
}

int c_degree(const Algebra& c, int i) {
  return c.grading_rank == 1 ? c.basis[i].deg[0] : c.total_degree(i);
}

SparseVec TwistedAlgebra::concat(int j, int u, int k, int v) const {
  if (j + k >= static_cast<int>(powers.size())) throw AlgebraError("tensor power beyond the built range");
  if (k == 0) return powers[j].ract[v].col[u];
  if (j == 0) return powers[k].lact[u].col[v];
  if (k == 1) return steps[j + 1].project(SparseVec{{u, 1}}, SparseVec{{v, 1}});
  auto [v1, t] = steps[k].rep[v];
  SparseVec w = concat(j, u, k - 1, v1);
  return steps[j + k].project(w, SparseVec{{t, 1}});
}

SparseVec TwistedAlgebra::concat(int j, const SparseVec& u, int k, const SparseVec& v) const {
  SparseVec out;
  const u32 p = alg ? alg->p : a->p;
  for (auto& [x, a1] : u)
    for (auto& [y, b1] : v) sparse_axpy(out, concat(j, x, k, y), fp_mul(a1, b1, p), p);
  return out;
}

namespace {

void build_powers(TwistedAlgebra& ta, const Bimodule& t, int max_power) {
  ta.powers.clear();
  ta.steps.clear();
  ta.powers.push_back(regular_bimodule(ta.a));
  ta.steps.resize(2);
  if (max_power >= 1) ta.powers.push_back(t);
  for (int j = 2; j <= max_power; ++j) {
    ta.steps.push_back(tensor_over_algebra(ta.powers[j - 1], t));
    ta.powers.push_back(ta.steps[j].result);
  }
}

std::string vertex_label(const Algebra& c, int cv, const Algebra& a, int av) {
  return a.num_vertices() > 1 ? c.vertices[cv] + "|" + a.vertices[av] : c.vertices[cv];
}

}  // namespace

TwistedAlgebra twisted_algebra(const AlgebraPtr& c, const AlgebraPtr& a, const Bimodule& t,
                               int max_power) {
  if (!same_algebra(*t.left, *a) || !same_algebra(*t.right, *a)) throw AlgebraError("T is not an (A,A)-bimodule");
  if (c->p != a->p) throw AlgebraError("twisted algebra: characteristics differ");
  TwistedAlgebra ta;
  ta.c = c;
  ta.a = a;
  int top = 0;
  for (int i = 0; i < c->dim(); ++i) {
    if (c_degree(*c, i) < 0) throw AlgebraError("c must be nonnegatively graded");
    top = std::max(top, c_degree(*c, i));
  }
  build_powers(ta, t, std::max(top, max_power));
  const u32 p = a->p;
  const int nav = a->num_vertices();
  Algebra out(p, a->grading_rank + 1);
  for (int cv = 0; cv < c->num_vertices(); ++cv)
    for (int av = 0; av < nav; ++av) out.vertices.push_back(vertex_label(*c, cv, *a, av));
  ta.index.assign(c->dim(), {});
  for (int g = 0; g < c->dim(); ++g) {
    int j = c_degree(*c, g);
    const Bimodule& tj = ta.powers[j];
    ta.index[g].assign(tj.dim, -1);
    for (int u = 0; u < tj.dim; ++u) {
      ta.index[g][u] = out.dim();
      ta.origin.push_back({g, j, u});
      std::vector<int> d = tj.graded() ? tj.deg[u] : std::vector<int>(a->grading_rank, 0);
      d.push_back(j);
      const auto& cb = c->basis[g];
      std::string inner = j == 0 ? a->basis[u].tag : "u" + std::to_string(u);
      out.basis.push_back({cb.src * nav + tj.rv[u], cb.tgt * nav + tj.lv[u], d, cb.tag + "⊗" + inner, {}});
    }
  }
  for (int cv = 0; cv < c->num_vertices(); ++cv)
    for (int av = 0; av < nav; ++av) out.idem.push_back(ta.index[c->idem[cv]][a->idem[av]]);
  out.init_table();
  for (int x = 0; x < out.dim(); ++x) {
    auto [g1, j1, u1] = ta.origin[x];
    for (int y = 0; y < out.dim(); ++y) {
      if (out.basis[x].src != out.basis[y].tgt) continue;
      auto [g2, j2, u2] = ta.origin[y];
      const SparseVec& gg = c->product(g1, g2);
      if (gg.empty()) continue;
      SparseVec w = ta.concat(j1, u1, j2, u2);
      if (w.empty()) continue;
      SparseVec prod;
      for (auto& [g, cg] : gg)
        for (auto& [u, cu] : w) prod.push_back({ta.index[g][u], fp_mul(cg, cu, p)});
      std::sort(prod.begin(), prod.end());
      out.set_product(x, y, prod);
    }
  }
  ta.alg = share(std::move(out));
  return ta;
}

TwistedBimodule twisted_bimodule(const Bimodule& x, const TwistedAlgebra& left,
                                 const TwistedAlgebra& right) {
  if (!same_algebra(*left.a, *right.a)) throw AlgebraError("twisted bimodule: base algebras differ");
  const TwistedAlgebra& ta = left;
  const u32 p = x.p;
  const int nav = ta.a->num_vertices();
  auto xdeg = [&](int i) {
    int s = 0;
    for (int d : x.deg[i]) s += d;
    return s;
  };
  if (!x.graded()) throw AlgebraError("twisted bimodule: x must be graded");
  TwistedBimodule res;
  Bimodule& out = res.mod;
  out.left = left.alg;
  out.right = right.alg;
  out.p = p;
  std::vector<std::vector<int>> index(x.dim);
  for (int i = 0; i < x.dim; ++i) {
    int j = xdeg(i);
    if (j < 0) throw AlgebraError("not positively graded");
    if (j >= static_cast<int>(ta.powers.size())) throw AlgebraError("tensor power beyond the built range");
    const Bimodule& tj = ta.powers[j];
    for (int u = 0; u < tj.dim; ++u) {
      index[i].push_back(out.dim++);
      res.origin.push_back({i, j, u});
      std::vector<int> d = tj.graded() ? tj.deg[u] : std::vector<int>(ta.a->grading_rank, 0);
      d.push_back(j);
      out.deg.push_back(d);
      out.lv.push_back(x.lv[i] * nav + tj.lv[u]);
      out.rv.push_back(x.rv[i] * nav + tj.rv[u]);
    }
  }
  auto act = [&](const TwistedAlgebra& side, bool is_left) {
    std::vector<SpMap> acts;
    for (int b = 0; b < side.alg->dim(); ++b) {
      auto [g, jb, ub] = side.origin[b];
      SpMap f(out.dim, out.dim, p);
      for (int q = 0; q < out.dim; ++q) {
        auto [i, jx, ux] = res.origin[q];
        const SparseVec& img = is_left ? x.lact[g].col[i] : x.ract[g].col[i];
        if (img.empty()) continue;
        SparseVec w = is_left ? ta.concat(jb, ub, jx, ux) : ta.concat(jx, ux, jb, ub);
        if (w.empty()) continue;
        for (auto& [i2, ci] : img)
          for (auto& [u, cu] : w) f.col[q].push_back({index[i2][u], fp_mul(ci, cu, p)});
        std::sort(f.col[q].begin(), f.col[q].end());
      }
      acts.push_back(std::move(f));
    }
    return acts;
  };
  out.lact = act(left, true);
  out.ract = act(right, false);
  return res;
}

PairCp standard_pair(u32 p) {
  auto f = share(field_algebra(p));
  CpResult r = cp_operator(f, regular_bimodule(f), p);
  return {r.c, r.x};
}

std::vector<OpStep> op_p_iterate(u32 p, int n, long long budget_dim) {
  PairCp cx = standard_pair(p);
  std::vector<OpStep> steps;
  OpStep base;
  base.e.alg = share(field_algebra(p));
  base.e.a = base.e.alg;
  base.x = regular_bimodule(base.e.alg);
  steps.push_back(std::move(base));
  int xtop = 0;
  for (int i = 0; i < cx.x.dim; ++i) xtop = std::max(xtop, cx.x.deg[i][0]);
  for (int k = 1; k <= n; ++k) {
    const OpStep& prev = steps.back();
    // projected size from the powers of X_{k-1}
    TwistedAlgebra probe;
    probe.a = prev.e.alg;
    build_powers(probe, prev.x, 2);
    long long projected = 0;
    for (int g = 0; g < cx.c->dim(); ++g) {
      int j = c_degree(*cx.c, g);
      projected += j < static_cast<int>(probe.powers.size()) ? probe.powers[j].dim : 0;
    }
    if (projected > budget_dim) throw BudgetError(k, projected);
    OpStep next;
    next.e = twisted_algebra(cx.c, prev.e.alg, prev.x, xtop);
    next.x = twisted_bimodule(cx.x, next.e, next.e).mod;
    steps.push_back(std::move(next));
  }
  return steps;
}

std::vector<CpResult> cn_iterate(u32 p, int n, long long budget_dim, const SearchLimits& lim) {
  std::vector<CpResult> out;
  CpResult base;
  base.c = share(field_algebra(p));
  base.x = regular_bimodule(base.c);
  base.phi = SpMap::identity(1, p);
  out.push_back(std::move(base));
  for (int k = 1; k <= n; ++k) {
    const CpResult& prev = out.back();
    // C_p(A) is spanned by p copies of A, p-1 of T and their duals
    long long projected = 2LL * (p * prev.c->dim() + (p - 1LL) * prev.x.dim);
    if (projected > budget_dim) throw BudgetError(k, projected);
    out.push_back(cp_operator(prev.c, prev.x, p, lim));
  }
  return out;
}

PairComparison compare_pairs(const AlgebraPtr& a1, const Bimodule& x1, const AlgebraPtr& a2,
                             const Bimodule& x2, const IsoOptions& opt, const SearchLimits& lim) {
  PairComparison res;
  if (x1.dim != x2.dim) {
    res.reason = "bimodule dimensions differ";
    return res;
  }
  bool unsure = false;
  IsoOptions o = opt;
  o.accept = [&](const IsoCertificate& cert) {
    if (opt.accept && !opt.accept(cert)) return false;
    Bimodule pulled = restrict_scalars(x2, a1, cert.map, a1, cert.map);
    IsoSearch s = iso_certificate(x1, pulled, lim);
    if (s.status == SearchStatus::inconclusive) unsure = true;
    if (s.status != SearchStatus::found) return false;
    res.bimodule = s.map;
    return true;
  };
  IsoResult r = find_iso(*a1, *a2, o);
  res.status = r.status;
  res.alg = r.cert;
  res.reason = r.reason;
  if (r.status == IsoStatus::none && unsure) {
    res.status = IsoStatus::inconclusive;
    res.reason = "bimodule search inconclusive";
  }
  return res;
}

OneCell map_one_cell(const PairCp& cx, const TwistedAlgebra& ca, const TwistedAlgebra& cb,
                     const OneCell& cell) {
  if (!one_cell_check(cell)) throw AlgebraError("input cell invalid");
  const Bimodule& m = cell.m;
  const u32 p = m.p;
  const int top = static_cast<int>(std::min(ca.powers.size(), cb.powers.size())) - 1;
  if (!same_algebra(*ca.a, *m.left) || !same_algebra(*cb.a, *m.right))
    throw AlgebraError("cell does not match the twisted algebras");
  // mt[j] = M (x)_B T'^j is the model for T^j (x)_A M
  std::vector<TensorProduct> mt;
  for (int j = 0; j <= top; ++j) mt.push_back(tensor_over_algebra(m, cb.powers[j]));
  TensorProduct tm1 = tensor_over_algebra(ca.powers[std::min(top, 1)], m);
  auto unit_b = [&](int v) { return SparseVec{{cb.a->idem[v], 1}}; };

  // phi_i on the pure tensor u (x) m, u in T^i, as an element of mt[i]
  std::function<SparseVec(int, int, int)> phi_on = [&](int i, int u, int x) -> SparseVec {
    if (i == 0) {
      SparseVec out;
      for (auto& [y, c] : m.lact[u].col[x]) sparse_axpy(out, mt[0].project(SparseVec{{y, 1}}, unit_b(m.rv[y])), c, p);
      return out;
    }
    if (i == 1) return cell.phi.apply(tm1.project(u, x));
    auto [u1, t] = ca.steps[i].rep[u];
    SparseVec out;
    for (auto& [w, c] : cell.phi.apply(tm1.project(t, x))) {
      auto [x1, t1] = mt[1].rep[w];
      for (auto& [w2, c2] : phi_on(i - 1, u1, x1)) {
        auto [x2, s] = mt[i - 1].rep[w2];
        SparseVec st = i - 1 == 1 ? cb.steps[2].project(s, t1) : cb.steps[i].project(SparseVec{{s, 1}}, SparseVec{{t1, 1}});
        sparse_axpy(out, mt[i].project(SparseVec{{x2, 1}}, st), fp_mul(c, c2, p), p);
      }
    }
    return out;
  };
  // u in T^i acting on w in mt[j]
  auto left_on = [&](int i, int u, int j, int w) {
    auto [x, s] = mt[j].rep[w];
    SparseVec out;
    for (auto& [w2, c] : phi_on(i, u, x)) {
      auto [x2, s2] = mt[i].rep[w2];
      sparse_axpy(out, mt[i + j].project(SparseVec{{x2, 1}}, cb.concat(i, s2, j, s)), c, p);
    }
    return out;
  };
  // w in mt[j] times v in T'^i
  auto right_on = [&](int j, int w, int i, int v) {
    auto [x, s] = mt[j].rep[w];
    return mt[i + j].project(SparseVec{{x, 1}}, cb.concat(j, s, i, v));
  };

  // W = sum_j c^(j) (x) mt[j]
  struct Layout {
    std::vector<std::array<int, 3>> origin;  // (c or x index, j, mt[j] index)
    std::vector<std::vector<int>> index;
  };
  auto layout = [&](int n, auto degree) {
    Layout l;
    l.index.resize(n);
    for (int g = 0; g < n; ++g) {
      int j = degree(g);
      if (j > top) throw AlgebraError("tensor power beyond the built range");
      for (int w = 0; w < mt[j].result.dim; ++w) {
        l.index[g].push_back(static_cast<int>(l.origin.size()));
        l.origin.push_back({g, j, w});
      }
    }
    return l;
  };
  const Algebra& c = *cx.c;
  Layout lw = layout(c.dim(), [&](int g) { return c_degree(c, g); });
  auto xdeg = [&](int i) {
    int s = 0;
    for (int d : cx.x.deg[i]) s += d;
    return s;
  };
  Layout lx = layout(cx.x.dim, xdeg);
  auto place = [&](const Layout& l, const SparseVec& g, const SparseVec& w, u32 coeff) {
    SparseVec out;
    for (auto& [a, ca_] : g)
      for (auto& [b, cb_] : w) out.push_back({l.index[a][b], fp_mul(fp_mul(ca_, cb_, p), coeff, p)});
    std::sort(out.begin(), out.end());
    return out;
  };

  OneCell res;
  Bimodule& wm = res.m;
  wm.left = ca.alg;
  wm.right = cb.alg;
  wm.p = p;
  wm.dim = static_cast<int>(lw.origin.size());
  for (auto& [g, j, w] : lw.origin) {
    auto [x, s] = mt[j].rep[w];
    wm.lv.push_back(c.basis[g].tgt * ca.a->num_vertices() + m.lv[x]);
    wm.rv.push_back(c.basis[g].src * cb.a->num_vertices() + cb.powers[j].rv[s]);
  }
  for (int b = 0; b < ca.alg->dim(); ++b) {
    auto [g1, i, u] = ca.origin[b];
    SpMap f(wm.dim, wm.dim, p);
    for (int q = 0; q < wm.dim; ++q) {
      auto [g2, j, w] = lw.origin[q];
      const SparseVec& gg = c.product(g1, g2);
      if (!gg.empty()) f.col[q] = place(lw, gg, left_on(i, u, j, w), 1);
    }
    wm.lact.push_back(std::move(f));
  }
  for (int b = 0; b < cb.alg->dim(); ++b) {
    auto [g1, i, v] = cb.origin[b];
    SpMap f(wm.dim, wm.dim, p);
    for (int q = 0; q < wm.dim; ++q) {
      auto [g2, j, w] = lw.origin[q];
      const SparseVec& gg = c.product(g2, g1);
      if (!gg.empty()) f.col[q] = place(lw, gg, right_on(j, w, i, v), 1);
    }
    wm.ract.push_back(std::move(f));
  }

  TwistedBimodule xa = twisted_bimodule(cx.x, ca, ca);
  TwistedBimodule xb = twisted_bimodule(cx.x, cb, cb);
  res.t = xa.mod;
  res.t2 = xb.mod;
  TensorProduct left = tensor_over_algebra(res.t, wm);
  TensorProduct right = tensor_over_algebra(wm, res.t2);
  const int nx = static_cast<int>(lx.origin.size());
  // both sides map onto sum_j x^(j) (x) mt[j]
  SpMap can_l(nx, left.result.dim, p), can_r(nx, right.result.dim, p);
  for (int k = 0; k < left.result.dim; ++k) {
    auto [a, b] = left.rep[k];
    auto [xi, i, u] = xa.origin[a];
    auto [g, j, w] = lw.origin[b];
    const SparseVec& img = cx.x.ract[g].col[xi];
    if (!img.empty()) can_l.col[k] = place(lx, img, left_on(i, u, j, w), 1);
  }
  for (int k = 0; k < right.result.dim; ++k) {
    auto [a, b] = right.rep[k];
    auto [g, j, w] = lw.origin[a];
    auto [xi, i, v] = xb.origin[b];
    const SparseVec& img = cx.x.lact[g].col[xi];
    if (!img.empty()) can_r.col[k] = place(lx, img, right_on(j, w, i, v), 1);
  }
  auto inv = inverse(can_r.dense());
  if (!inv) throw AlgebraError("W (x) x(B,T') does not match the model");
  res.phi = compose(SpMap::from_dense(*inv), can_l);
  return res;
}

}  // namespace gl2
