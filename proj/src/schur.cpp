#include "gl2/schur.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "gl2/gl2_family.hpp"
#include "json.hpp"

namespace gl2 {

namespace {

using Vec = std::vector<u32>;
using Poly = std::vector<u32>;  // low degree first

// ---- polynomials over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = fp_add(c[i + j], fp_mul(a[i], b[j], p), p);
  trim(c);
  return c;
}

Poly psub(Poly a, const Poly& b, u32 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = fp_sub(a[i], b[i], p);
  trim(a);
  return a;
}

std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b, u32 p) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  u32 inv = fp_inv(b.back(), p);
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    u32 c = fp_mul(a[i], inv, p);
    if (c == 0) continue;
    int s = i - static_cast<int>(b.size()) + 1;
    q[s] = c;
    for (size_t j = 0; j < b.size(); ++j) a[s + j] = fp_sub(a[s + j], fp_mul(c, b[j], p), p);
  }
  trim(a);
  trim(q);
  return {q, a};
}

// s, t with s a + t b = gcd (made monic)
void pextgcd(const Poly& a, const Poly& b, u32 p, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = pdivmod(r0, r1, p);
    Poly s2 = psub(s0, pmul(q, s1, p), p), t2 = psub(t0, pmul(q, t1, p), p);
    r0 = r1, r1 = r, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
  }
  u32 inv = fp_inv(r0.back(), p);
  for (auto* x : {&r0, &s0, &t0})
    for (auto& c : *x) c = fp_mul(c, inv, p);
  g = r0, s = s0, t = t0;
}

u32 peval(const Poly& a, u32 x, u32 p) {
  u32 v = 0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) v = fp_add(fp_mul(v, x, p), a[i], p);
  return v;
}

// ---- helpers on an algebra

struct Work {
  const Algebra& a;
  u32 p;
  int n;

  explicit Work(const Algebra& alg) : a(alg), p(alg.p), n(alg.dim()) {}

  SparseVec mul(const SparseVec& x, const SparseVec& y) const { return a.mul(x, y); }
  Vec dense(const SparseVec& v) const { return to_dense(v, n); }
  // vertex pair (tgt, src) of a vertex-homogeneous element
  std::pair<int, int> verts(const SparseVec& v) const {
    const auto& b = a.basis[v.front().first];
    return {b.tgt, b.src};
  }
  bool composable(const SparseVec& x, const SparseVec& y) const {
    return !x.empty() && !y.empty() && verts(x).second == verts(y).first;
  }
  SparseVec prod(const SparseVec& x, const SparseVec& y) const {
    return composable(x, y) ? a.mul(x, y) : SparseVec{};
  }
  SparseVec axpy(SparseVec x, const SparseVec& y, u32 s) const {
    sparse_axpy(x, y, s, p);
    return x;
  }

  // basis of f A g, f and g refining vertex idempotents vf, vg
  std::vector<SparseVec> span_between(const SparseVec& f, int vf, const SparseVec& g, int vg) const {
    EchelonBasis eb(n, p);
    std::vector<SparseVec> out;
    for (int b = 0; b < n; ++b) {
      if (a.basis[b].tgt != vf || a.basis[b].src != vg) continue;
      SparseVec w = a.mul(a.mul(f, {{b, 1}}), g);
      if (w.empty()) continue;
      if (eb.add(dense(w))) out.push_back(w);
    }
    return out;
  }

  // Horner evaluation of q at x inside the corner with unit e
  SparseVec eval(const Poly& q, const SparseVec& x, const SparseVec& e) const {
    SparseVec acc;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      acc = a.mul(x, acc);
      if (q[i]) sparse_axpy(acc, e, q[i], p);
    }
    return acc;
  }

  Poly minpoly(const SparseVec& x, const SparseVec& e) const {
    EchelonBasis eb(n, p);
    std::vector<Vec> pw;
    SparseVec cur = e;
    for (;;) {
      Vec d = dense(cur);
      if (eb.contains(d)) {
        Matrix m(n, static_cast<int>(pw.size()), p);
        for (size_t k = 0; k < pw.size(); ++k)
          for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(k)) = pw[k][i];
        auto c = solve_affine(m, d);
        if (!c) throw LinAlgError("minimal polynomial: inconsistent powers");
        Poly q(pw.size() + 1, 0);
        for (size_t k = 0; k < pw.size(); ++k) q[k] = fp_neg((*c)[k], p);
        q.back() = 1;
        return q;
      }
      eb.add(d);
      pw.push_back(std::move(d));
      cur = a.mul(x, cur);
    }
  }

  // closed under multiplication and nilpotent
  bool nilpotent_subalgebra(const std::vector<SparseVec>& N) const {
    if (N.empty()) return true;
    EchelonBasis span(n, p);
    for (auto& v : N) span.add(dense(v));
    for (auto& u : N)
      for (auto& v : N) {
        SparseVec w = prod(u, v);
        if (!w.empty() && !span.contains(dense(w))) return false;
      }
    return nilpotent_chain(N) >= 0;
  }

  // smallest k with N^k = 0 for a subspace closed under products, -1 if none
  int nilpotent_chain(const std::vector<SparseVec>& N) const {
    std::vector<SparseVec> P = N;
    size_t last = N.size();
    int k = 1;
    while (!P.empty()) {
      EchelonBasis eb(n, p);
      std::vector<SparseVec> next;
      for (auto& u : P)
        for (auto& v : N) {
          SparseVec w = prod(u, v);
          if (!w.empty() && eb.add(dense(w))) next.push_back(std::move(w));
        }
      if (next.size() >= last && !next.empty()) return -1;
      last = next.size();
      P = std::move(next);
      ++k;
    }
    return k;
  }
};

struct Roots {
  std::vector<std::pair<u32, int>> roots;  // root, multiplicity
  int root_degree = 0;
};

Roots find_roots(const Poly& m, u32 p) {
  Roots r;
  for (u32 l = 0; l < p; ++l) {
    Poly q = m;
    int k = 0;
    Poly lin = {fp_neg(l, p), 1};
    while (q.size() > 1 && peval(q, l, p) == 0) {
      q = pdivmod(q, lin, p).first;
      ++k;
    }
    if (k) r.roots.push_back({l, k}), r.root_degree += k;
  }
  return r;
}

// Fitting idempotent of x for the first root, or empty when x does not split e.
SparseVec fitting_idempotent(const Work& w, const SparseVec& x, const SparseVec& e, const Poly& m,
                             const Roots& r) {
  int deg = static_cast<int>(m.size()) - 1;
  if (r.roots.empty() || r.roots[0].second == deg) return {};
  auto [l, k] = r.roots[0];
  Poly pk = {1};
  for (int i = 0; i < k; ++i) pk = pmul(pk, {fp_neg(l, w.p), 1}, w.p);
  Poly g = pdivmod(m, pk, w.p).first;
  Poly gg, s, t;
  pextgcd(pk, g, w.p, gg, s, t);
  Poly proj = pdivmod(pmul(t, g, w.p), m, w.p).second;
  return w.eval(proj, x, e);
}

struct Local {
  bool local = false;
  std::vector<SparseVec> rad;
};

Local certify_local(const Work& w, const SparseVec& e, const std::vector<SparseVec>& corner) {
  Local out;
  std::vector<SparseVec> N;
  EchelonBasis eb(w.n, w.p);
  for (auto& b : corner) {
    Roots r = find_roots(w.minpoly(b, e), w.p);
    if (r.roots.size() != 1 || r.root_degree != static_cast<int>(w.minpoly(b, e).size()) - 1)
      return out;
    SparseVec v = w.axpy(b, e, fp_neg(r.roots[0].first, w.p));
    if (!v.empty() && eb.add(w.dense(v))) N.push_back(std::move(v));
  }
  if (static_cast<int>(N.size()) != static_cast<int>(corner.size()) - 1) return out;
  if (!w.nilpotent_subalgebra(N)) return out;
  out.local = true;
  out.rad = std::move(N);
  return out;
}

void decompose(const Work& w, const SparseVec& e, int v, Rng& rng, int retries, Idempotents& out) {
  auto corner = w.span_between(e, v, e, v);
  if (corner.size() <= 1) {
    out.prim.push_back(e);
    out.vertex.push_back(v);
    out.rad_corner.push_back({});
    return;
  }
  bool no_root = false;
  auto try_split = [&](const SparseVec& x) {
    Poly m = w.minpoly(x, e);
    Roots r = find_roots(m, w.p);
    if (r.root_degree < static_cast<int>(m.size()) - 1 && r.roots.empty()) no_root = true;
    SparseVec eps = fitting_idempotent(w, x, e, m, r);
    if (eps.empty()) return false;
    decompose(w, eps, v, rng, retries, out);
    decompose(w, w.axpy(e, eps, w.p - 1), v, rng, retries, out);
    return true;
  };
  for (auto& b : corner)
    if (try_split(b)) return;
  Local loc = certify_local(w, e, corner);
  if (loc.local) {
    out.prim.push_back(e);
    out.vertex.push_back(v);
    out.rad_corner.push_back(std::move(loc.rad));
    return;
  }
  for (int t = 0; t < retries; ++t) {
    SparseVec x;
    for (auto& b : corner) sparse_axpy(x, b, rng.below(w.p), w.p);
    if (!x.empty() && try_split(x)) return;
  }
  if (no_root) throw SplitError("not split over F_p");
  throw SplitError("splitting failed");
}

// lambda(x) for x in f A f = F f + N, with N given by an echelon basis
u32 residue(const Work& w, const EchelonBasis& N, const SparseVec& f, const SparseVec& x) {
  Vec rf = w.dense(f), rx = w.dense(x);
  N.reduce_vec(rf);
  N.reduce_vec(rx);
  for (int i = 0; i < w.n; ++i)
    if (rf[i]) return fp_mul(rx[i], fp_inv(rf[i], w.p), w.p);
  throw AlgebraError("residue: idempotent lies in the radical");
}

// spaces f_i A f_j for all primitive idempotents
std::vector<std::vector<std::vector<SparseVec>>> all_spaces(const Work& w, const Idempotents& id) {
  size_t k = id.prim.size();
  std::vector<std::vector<std::vector<SparseVec>>> s(k, std::vector<std::vector<SparseVec>>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      s[i][j] = w.span_between(id.prim[i], id.vertex[i], id.prim[j], id.vertex[j]);
  return s;
}

// coordinates against an arbitrary independent family
struct Coordinates {
  u32 p;
  int n;
  std::vector<int> piv;
  Matrix t;  // rref rows as combinations of the family

  Coordinates(const std::vector<SparseVec>& fam, int n_, u32 p_) : p(p_), n(n_) {
    int m = static_cast<int>(fam.size());
    Matrix aug(m, n + m, p);
    for (int r = 0; r < m; ++r) {
      for (auto& [i, c] : fam[r]) aug.at(r, i) = c;
      aug.at(r, n + r) = 1;
    }
    Reduced red = reduce(aug);
    t = Matrix(m, m, p);
    for (int r = 0; r < red.rank; ++r) {
      if (red.pivots[r] >= n) throw AlgebraError("coordinates: dependent family");
      piv.push_back(red.pivots[r]);
      for (int c = 0; c < m; ++c) t.at(r, c) = red.rref.at(r, n + c);
    }
  }

  SparseVec of(const SparseVec& x) const {
    Vec d = to_dense(x, n);
    Vec c(t.cols, 0);
    for (size_t r = 0; r < piv.size(); ++r) {
      u32 s = d[piv[r]];
      if (!s) continue;
      for (int k = 0; k < t.cols; ++k) c[k] = fp_add(c[k], fp_mul(s, t.at(static_cast<int>(r), k), p), p);
    }
    return to_sparse(c);
  }
};

Algebra rebuild(const Algebra& a, const std::vector<SparseVec>& fam, std::vector<BasisElem> elems,
                std::vector<int> idem, std::vector<std::string> vertices, int rank) {
  Work w(a);
  Coordinates co(fam, a.dim(), a.p);
  Algebra out(a.p, rank);
  out.vertices = std::move(vertices);
  out.basis = std::move(elems);
  out.idem = std::move(idem);
  out.init_table();
  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = 0; j < fam.size(); ++j) {
      if (out.basis[i].src != out.basis[j].tgt) continue;
      SparseVec x = w.mul(fam[i], fam[j]);
      if (x.empty()) continue;
      SparseVec c = co.of(x);
      if (!c.empty()) out.set_product(static_cast<int>(i), static_cast<int>(j), c);
    }
  return out;
}

std::string weight_label(int r, int b) {
  return "(" + std::to_string(r - b) + "," + std::to_string(b) + ")";
}

}  // namespace

// ---- Schur algebras

CommutantAlgebra build_schur(u32 p, int r) {
  if (!is_prime(p)) throw AlgebraError("build_schur: p must be prime");
  if (r < 0 || r > kSchurMaxR) throw AlgebraError("budget: r must lie in 0..10");
  const u32 N = 1u << r;
  const size_t pairs = static_cast<size_t>(N) * N;
  // commutation with a permutation matrix forces X[s i][s j] = X[i][j]
  std::vector<u32> parent(pairs);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](u32 x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](u32 x, u32 y) {
    x = find(x), y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  auto swap01 = [&](u32 w) { return r < 2 ? w : (w & ~3u) | ((w & 1u) << 1) | ((w >> 1) & 1u); };
  auto rotate = [&](u32 w) { return r < 1 ? w : ((w << 1) | (w >> (r - 1))) & (N - 1); };
  for (u32 i = 0; i < N; ++i)
    for (u32 j = 0; j < N; ++j) {
      u32 x = i * N + j;
      unite(x, swap01(i) * N + swap01(j));
      unite(x, rotate(i) * N + rotate(j));
    }
  CommutantAlgebra s;
  s.p = p;
  s.r = r;
  s.orbit.assign(pairs, -1);
  std::vector<int> id_of_root(pairs, -1);
  for (u32 x = 0; x < pairs; ++x) {
    u32 root = find(x);
    if (id_of_root[root] < 0) {
      id_of_root[root] = static_cast<int>(s.rep.size());
      s.rep.push_back({x / N, x % N});
    }
    s.orbit[x] = id_of_root[root];
  }
  auto alg = std::make_shared<Algebra>(p, 0);
  for (int b = 0; b <= r; ++b) alg->vertices.push_back(weight_label(r, b));
  const int dim = static_cast<int>(s.rep.size());
  for (int k = 0; k < dim; ++k) {
    auto [i, j] = s.rep[k];
    BasisElem e;
    e.tgt = std::popcount(i);
    e.src = std::popcount(j);
    e.tag = "O" + std::to_string(k);
    alg->basis.push_back(e);
  }
  for (int b = 0; b <= r; ++b) {
    u32 w = (1u << b) - 1;
    alg->idem.push_back(s.orbit[static_cast<size_t>(w) * N + w]);
  }
  alg->init_table();
  // (O_a O_b)[i][k] = #{j : (i,j) in a, (j,k) in b}, read at the representative of c
  std::map<std::pair<int, int>, SparseVec> table;
  for (int c = 0; c < dim; ++c) {
    auto [i, k] = s.rep[c];
    std::map<std::pair<int, int>, u32> cnt;
    for (u32 j = 0; j < N; ++j) ++cnt[{s.orbit[static_cast<size_t>(i) * N + j], s.orbit[static_cast<size_t>(j) * N + k]}];
    for (auto& [ab, m] : cnt)
      if (m % p) table[ab].push_back({c, m % p});
  }
  for (auto& [ab, v] : table) alg->set_product(ab.first, ab.second, v);
  s.alg = alg;
  return s;
}

SpMap CommutantAlgebra::matrix(int k) const {
  const u32 N = 1u << r;
  SpMap m(static_cast<int>(N), static_cast<int>(N), p);
  for (u32 j = 0; j < N; ++j)
    for (u32 i = 0; i < N; ++i)
      if (orbit[static_cast<size_t>(i) * N + j] == k) m.col[j].push_back({static_cast<int>(i), 1 % p});
  return m;
}

// ---- idempotents, blocks, radical

Idempotents primitive_idempotents(const Algebra& a, u64 seed, int retries) {
  Work w(a);
  Rng rng(seed);
  Idempotents out;
  for (int v = 0; v < a.num_vertices(); ++v) decompose(w, {{a.idem[v], 1 % a.p}}, v, rng, retries, out);
  // f_i ~ f_j iff f_i A f_j . f_j A f_i leaves rad(f_i A f_i)
  size_t k = out.prim.size();
  out.cls.assign(k, -1);
  for (size_t i = 0; i < k; ++i) {
    if (out.cls[i] >= 0) continue;
    out.cls[i] = out.num_classes++;
    EchelonBasis Ni(a.dim(), a.p);
    for (auto& v : out.rad_corner[i]) Ni.add(w.dense(v));
    for (size_t j = i + 1; j < k; ++j) {
      if (out.cls[j] >= 0) continue;
      auto sij = w.span_between(out.prim[i], out.vertex[i], out.prim[j], out.vertex[j]);
      if (sij.empty()) continue;
      auto sji = w.span_between(out.prim[j], out.vertex[j], out.prim[i], out.vertex[i]);
      bool iso = false;
      for (auto& y : sij) {
        for (auto& z : sji)
          if (!Ni.contains(w.dense(w.mul(y, z)))) {
            iso = true;
            break;
          }
        if (iso) break;
      }
      if (iso) out.cls[j] = out.cls[i];
    }
  }
  return out;
}

std::vector<SparseVec> jacobson_radical(const Algebra& a, const Idempotents& id) {
  Work w(a);
  auto S = all_spaces(w, id);
  size_t k = id.prim.size();
  std::vector<SparseVec> rad;
  for (size_t i = 0; i < k; ++i) {
    EchelonBasis Ni(a.dim(), a.p);
    for (auto& v : id.rad_corner[i]) Ni.add(w.dense(v));
    for (size_t j = 0; j < k; ++j) {
      if (id.cls[i] != id.cls[j]) {
        rad.insert(rad.end(), S[i][j].begin(), S[i][j].end());
        continue;
      }
      // y in f_i A f_j with residue(y z) = 0 for all z in f_j A f_i
      int m = static_cast<int>(S[i][j].size());
      Matrix cond(static_cast<int>(S[j][i].size()), m, a.p);
      for (size_t z = 0; z < S[j][i].size(); ++z)
        for (int y = 0; y < m; ++y)
          cond.at(static_cast<int>(z), y) = residue(w, Ni, id.prim[i], w.mul(S[i][j][y], S[j][i][z]));
      Matrix ker = kernel_basis(cond);
      for (int r = 0; r < ker.rows; ++r) {
        SparseVec v;
        for (int y = 0; y < m; ++y)
          if (ker.at(r, y)) sparse_axpy(v, S[i][j][y], ker.at(r, y), a.p);
        if (!v.empty()) rad.push_back(std::move(v));
      }
    }
  }
  // certificate: nilpotent, and the quotient has the dimension of prod M_d(F)
  std::vector<int> d(id.num_classes, 0);
  for (int c : id.cls) ++d[c];
  int ss = 0;
  for (int x : d) ss += x * x;
  if (a.dim() - static_cast<int>(rad.size()) != ss)
    throw AlgebraError("radical certification failed: quotient is not semisimple");
  if (w.nilpotent_chain(rad) < 0) throw AlgebraError("radical certification failed: not nilpotent");
  return rad;
}

std::vector<SparseVec> jacobson_radical(const Algebra& a, u64 seed) {
  return jacobson_radical(a, primitive_idempotents(a, seed));
}

BlockSplit block_split(const Algebra& a, u64 seed) {
  Work w(a);
  BlockSplit out;
  out.idem = primitive_idempotents(a, seed);
  const auto& id = out.idem;
  auto S = all_spaces(w, id);
  int k = static_cast<int>(id.prim.size());
  std::vector<int> comp(k);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!S[i][j].empty()) comp[std::max(find(i), find(j))] = std::min(find(i), find(j));
  std::map<int, int> block_of;
  for (int i = 0; i < k; ++i) {
    int root = find(i);
    if (!block_of.count(root)) {
      block_of[root] = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    auto& b = out.blocks[block_of[root]];
    b.prims.push_back(i);
    sparse_axpy(b.central, id.prim[i], 1, a.p);
  }
  std::vector<int> rep(id.num_classes, -1);
  for (int i = 0; i < k; ++i)
    if (rep[id.cls[i]] < 0) rep[id.cls[i]] = i;
  for (auto& b : out.blocks) {
    for (int i : b.prims) {
      auto it = std::find(b.classes.begin(), b.classes.end(), id.cls[i]);
      if (it == b.classes.end()) {
        b.classes.push_back(id.cls[i]);
        b.simple_dims.push_back(1);
      } else {
        ++b.simple_dims[it - b.classes.begin()];
      }
      for (int j : b.prims) b.corner_dim += static_cast<int>(S[i][j].size());
    }
    size_t c = b.classes.size();
    b.cartan.assign(c, std::vector<int>(c, 0));
    for (size_t x = 0; x < c; ++x)
      for (size_t y = 0; y < c; ++y)
        b.cartan[x][y] = static_cast<int>(S[rep[b.classes[x]]][rep[b.classes[y]]].size());
  }
  return out;
}

Algebra basic_algebra(const Algebra& a, const Idempotents& id, const BlockData& block) {
  Work w(a);
  std::vector<int> rep;
  for (int c : block.classes)
    for (size_t i = 0; i < id.prim.size(); ++i)
      if (id.cls[i] == c) {
        rep.push_back(static_cast<int>(i));
        break;
      }
  int m = static_cast<int>(rep.size());
  std::vector<SparseVec> fam;
  std::vector<BasisElem> elems;
  std::vector<int> idem(m);
  for (int x = 0; x < m; ++x) {
    idem[x] = static_cast<int>(fam.size());
    fam.push_back(id.prim[rep[x]]);
    elems.push_back({x, x, {}, "e" + std::to_string(x), {}});
    for (auto& v : id.rad_corner[rep[x]]) {
      fam.push_back(v);
      elems.push_back({x, x, {}, "r", {}});
    }
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y) continue;
      int i = rep[x], j = rep[y];
      for (auto& v : w.span_between(id.prim[i], id.vertex[i], id.prim[j], id.vertex[j])) {
        fam.push_back(v);
        elems.push_back({y, x, {}, "r", {}});
      }
    }
  std::vector<std::string> names;
  for (int x = 0; x < m; ++x) names.push_back(std::to_string(x + 1));
  return rebuild(a, fam, std::move(elems), std::move(idem), std::move(names), 0);
}

// ---- report

namespace {

bool cartan_equal_up_to_bijection(const std::vector<std::vector<int>>& x,
                                  const std::vector<std::vector<int>>& y) {
  if (x.size() != y.size()) return false;
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (size_t i = 0; i < x.size() && ok; ++i)
      for (size_t j = 0; j < x.size() && ok; ++j) ok = x[i][j] == y[perm[i]][perm[j]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

const char* status_name(IsoStatus s) {
  switch (s) {
    case IsoStatus::found: return "found";
    case IsoStatus::none: return "none";
    default: return "inconclusive";
  }
}

}  // namespace

SchurReport gl2_block_report(u32 p, int n, u64 seed, bool attempt_iso) {
  if (n < 0) throw AlgebraError("gl2_block_report: n must be nonnegative");
  long long q = 1;
  for (int i = 0; i <= n; ++i) q *= p;
  if (q - 1 > kSchurMaxR)
    throw AlgebraError("budget: S(2," + std::to_string(q - 1) + ") exceeds r <= 10");
  long long want = q / p;
  SchurReport rep;
  rep.p = p;
  rep.n = n;
  rep.literal_r = static_cast<int>(q - 1);
  rep.seed = seed;
  for (long long r : {q - 1, q - 2}) {
    if (r < 0) continue;
    CommutantAlgebra s = build_schur(p, static_cast<int>(r));
    BlockSplit bs = block_split(*s.alg, seed);
    // principal block: the one through xi_(r,0), vertex 0
    const BlockData* principal = nullptr;
    for (auto& b : bs.blocks)
      for (int i : b.prims)
        if (bs.idem.vertex[i] == 0) principal = &b;
    int k = static_cast<int>(principal->classes.size());
    if (r == q - 1) rep.literal_simples = k;
    rep.r = static_cast<int>(r);
    rep.schur_dim = s.alg->dim();
    rep.num_blocks = static_cast<int>(bs.blocks.size());
    rep.simple_dims = principal->simple_dims;
    if (k != want) continue;
    rep.found_block = true;
    Algebra basic = basic_algebra(*s.alg, bs.idem, *principal);
    rep.basic_dim = basic.dim();
    rep.basic_cartan = cartan_matrix(basic);
    Algebra an = summed_grading(build_An(p, n));
    rep.an_dim = an.dim();
    rep.an_cartan = cartan_matrix(an);
    rep.cartan_match = cartan_equal_up_to_bijection(rep.basic_cartan, rep.an_cartan);
    if (attempt_iso && rep.cartan_match) {
      rep.iso_attempted = true;
      IsoOptions opt;
      opt.radical_target = true;
      IsoResult res = find_iso(an, basic, opt);
      rep.iso = res.status;
      rep.cert = res.cert;
    }
    break;
  }
  std::string lit = "S(2," + std::to_string(rep.literal_r) + ")";
  rep.note = "Simple modules in the principal block of " + lit + ": " +
             std::to_string(rep.literal_simples);
  if (rep.literal_simples != want)
    rep.note += rep.found_block ? ", not p^n; the block used is the principal block of S(2," +
                                      std::to_string(rep.r) + ")."
                                : ", not p^n, and no principal block with p^n simples was found.";
  else
    rep.note += ".";
  rep.note +=
      " Compared by dimension and Cartan matrix up to a vertex bijection; an isomorphism with "
      "A_n is claimed only where find_iso returned found. The full Schur-side statement for all p "
      "and n is not desk-verifiable beyond these sizes.";
  return rep;
}

std::string SchurReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "schur-report-v1";
  j["p"] = p;
  j["n"] = n;
  j["literal_r"] = literal_r;
  j["literal_simples"] = literal_simples;
  j["r"] = r;
  j["found_block"] = found_block;
  j["seed"] = seed;
  j["schur_dim"] = schur_dim;
  j["num_blocks"] = num_blocks;
  j["principal_simple_dims"] = simple_dims;
  j["basic_dim"] = basic_dim;
  j["basic_cartan"] = basic_cartan;
  j["an_dim"] = an_dim;
  j["an_cartan"] = an_cartan;
  j["cartan_match"] = cartan_match;
  j["iso_attempted"] = iso_attempted;
  j["iso"] = status_name(iso);
  if (cert) j["iso_vertex_map"] = cert->vertex_map;
  j["note"] = note;
  return j.dump(2) + "\n";
}

std::string SchurReport::to_text() const {
  auto mat = [](const std::vector<std::vector<int>>& m) {
    std::ostringstream o;
    o << "[";
    for (size_t i = 0; i < m.size(); ++i) {
      o << (i ? "," : "") << "[";
      for (size_t k = 0; k < m[i].size(); ++k) o << (k ? "," : "") << m[i][k];
      o << "]";
    }
    o << "]";
    return o.str();
  };
  std::ostringstream o;
  o << "S(2," << r << ") over F_" << p << ", seed " << seed << "\n";
  o << "  dim " << schur_dim << ", blocks " << num_blocks << "\n";
  o << "  principal block: " << simple_dims.size() << " simples, dims";
  for (int d : simple_dims) o << " " << d;
  o << "\n  basic algebra dim " << basic_dim << ", Cartan " << mat(basic_cartan) << "\n";
  o << "  A_" << n << " dim " << an_dim << ", Cartan " << mat(an_cartan) << "\n";
  o << "  Cartan match: " << (cartan_match ? "yes" : "no") << "\n";
  o << "  isomorphism: " << (iso_attempted ? status_name(iso) : "not attempted") << "\n";
  o << "  note: " << note << "\n";
  return o.str();
}

}  // namespace gl2
