#include "gl2/gl2_family.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace gl2 {

std::string tuple_label(const VertexTuple& a) {
  std::string s;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(a[i]);
  }
  return s;
}

VertexTuple parse_tuple_label(const std::string& s) {
  VertexTuple a;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '.')) a.push_back(std::stoi(item));
  return a;
}

int QuiverQn::vertex_of(const VertexTuple& a) const {
  for (int v = 0; v < static_cast<int>(tuples.size()); ++v)
    if (tuples[v] == a) return v;
  return -1;
}

namespace {

bool colex_less(const VertexTuple& x, const VertexTuple& y) {
  return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

std::optional<VertexTuple> arrow_target(const VertexTuple& a, int i, int eps, u32 p,
                                        const QnOptions& opt) {
  const int P = static_cast<int>(p);
  bool literal = (p == 2 && opt.unguarded_p2);
  if (!literal && a[i - 1] == P - 1) return std::nullopt;
  if (a[i] + eps < 0 || a[i] + eps > P - 1) return std::nullopt;
  VertexTuple t = a;
  if (!literal) t[i - 1] = P - 2 - a[i - 1];
  t[i] = a[i] + eps;
  return t;
}

}  // namespace

QuiverQn build_Qn(u32 p, int n, QnOptions opt) {
  if (!is_prime(p)) throw AlgebraError("p must be prime");
  if (n < 0) throw AlgebraError("n must be nonnegative");
  QuiverQn out;
  out.p = p;
  out.n = n;
  std::vector<VertexTuple> seen{VertexTuple(n + 1, 0)};
  for (size_t k = 0; k < seen.size(); ++k) {
    for (int i = 1; i <= n; ++i)
      for (int eps : {-1, 1}) {
        auto t = arrow_target(seen[k], i, eps, p, opt);
        if (t && std::find(seen.begin(), seen.end(), *t) == seen.end()) seen.push_back(*t);
      }
  }
  std::sort(seen.begin(), seen.end(), colex_less);
  out.tuples = seen;
  out.quiver.grading_rank = n;
  for (auto& a : seen) out.quiver.add_vertex(tuple_label(a));
  out.out.assign(seen.size(), std::vector<std::array<int, 2>>(n, {-1, -1}));
  for (int v = 0; v < static_cast<int>(seen.size()); ++v)
    for (int i = 1; i <= n; ++i)
      for (int eps : {-1, 1}) {
        auto t = arrow_target(seen[v], i, eps, p, opt);
        if (!t) continue;
        std::vector<int> deg(n, 0);
        deg[i - 1] = 1;
        std::string id = "f" + std::to_string(i) + (eps > 0 ? "+" : "-") + "@" + tuple_label(seen[v]);
        out.out[v][i - 1][eps > 0] = out.quiver.add_arrow(id, v, out.vertex_of(*t), deg);
      }
  return out;
}

namespace {

// f_{i1,e1} ... f_{ik,ek} a, written left to right; the rightmost factor acts first
using Word = std::vector<std::pair<int, int>>;

std::optional<Path> monomial(const QuiverQn& qn, int v, const Word& w) {
  Path rev;
  int cur = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int arrow = qn.out[cur][it->first - 1][it->second > 0];
    if (arrow < 0) return std::nullopt;
    rev.push_back(arrow);
    cur = qn.quiver.arrows[arrow].tgt;
  }
  return Path(rev.rbegin(), rev.rend());
}

void add_monomial(std::vector<Relation>& rels, const std::optional<Path>& m) {
  if (m) rels.push_back({{{1, *m}}});
}

// binomial m1 - m2 when both exist; a surviving single monomial only if guard holds
void add_binomial(std::vector<Relation>& rels, const std::optional<Path>& m1,
                  const std::optional<Path>& m2, bool guard) {
  if (m1 && m2)
    rels.push_back({{{1, *m1}, {-1, *m2}}});
  else if (guard && m1)
    rels.push_back({{{1, *m1}}});
  else if (guard && m2)
    rels.push_back({{{1, *m2}}});
}

}  // namespace

AnPresentation present_An(u32 p, int n, QnOptions opt) {
  AnPresentation pres;
  pres.qn = build_Qn(p, n, opt);
  const QuiverQn& qn = pres.qn;
  const int P = static_cast<int>(p);
  auto& rels = pres.relations;
  auto in_range = [&](int x) { return x >= 0 && x <= P - 1; };
  for (int v = 0; v < static_cast<int>(qn.tuples.size()); ++v) {
    const VertexTuple& a = qn.tuples[v];
    if (p >= 3) {
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (std::abs(i - j) < 2) continue;
          for (int e1 : {-1, 1})
            for (int e2 : {-1, 1})  // (1)
              add_binomial(rels, monomial(qn, v, {{i, e1}, {j, e2}}),
                           monomial(qn, v, {{j, e2}, {i, e1}}), true);
        }
      for (int i = 1; i <= n; ++i) {
        for (int e : {-1, 1}) {
          add_monomial(rels, monomial(qn, v, {{i, e}, {i, e}}));  // (2)
          if (a[i] == P - 1) add_monomial(rels, monomial(qn, v, {{i, e}, {i, -e}}));  // (3)
        }
        if (a[i] > 0)  // (4)
          add_binomial(rels, monomial(qn, v, {{i, 1}, {i, -1}}), monomial(qn, v, {{i, -1}, {i, 1}}),
                       true);
      }
      for (int i = 1; i < n; ++i)
        for (int e1 : {-1, 1})
          for (int e2 : {-1, 1}) {
            // (5) is read with its leftmost arrow traversed first; with that
            // reading the side condition coincides with arrow existence.
            auto m1 = monomial(qn, v, {{i + 1, e2}, {i, e1}});
            auto m2 = monomial(qn, v, {{i, -e1}, {i + 1, e2}});
            bool guard = in_range(a[i] + e1) && in_range(P - 2 - a[i] - e1) && a[i - 1] != P - 1 &&
                         a[i] != P - 1;
            bool both = m1 && m2;
            if (guard != both && (m1 || m2))
              pres.flags.push_back({a, i, e1, e2, guard, m1.has_value(), m2.has_value()});
            add_binomial(rels, m1, m2, guard);
          }
    } else {
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (std::abs(i - j) < 2) continue;
          for (int e1 : {-1, 1})
            for (int e2 : {-1, 1}) {  // (i)
              bool guard = in_range(a[i] + e1) && in_range(a[j] + e2) && a[i - 1] == 0 && a[j - 1] == 0;
              add_binomial(rels, monomial(qn, v, {{i, e1}, {j, e2}}),
                           monomial(qn, v, {{j, e2}, {i, e1}}), guard);
            }
        }
      for (int i = 1; i <= n; ++i)
        if (a[i] == 1 && a[i - 1] == 0) add_monomial(rels, monomial(qn, v, {{i, 1}, {i, -1}}));  // (ii)
      for (int i = 1; i < n; ++i)
        for (int e : {-1, 1}) {
          if (a[i] == 0 && a[i - 1] == 0)  // (iii)
            add_binomial(rels, monomial(qn, v, {{i + 1, e}, {i, -1}, {i, 1}}),
                         monomial(qn, v, {{i, -1}, {i, 1}, {i + 1, e}}), true);
          if (a[i] == 1 && a[i - 1] == 0)  // (iv)
            add_monomial(rels, monomial(qn, v, {{i, 1}, {i + 1, e}, {i, -1}}));
        }
    }
  }
  return pres;
}

Algebra build_An(u32 p, int n, std::vector<int> cap) {
  auto pres = present_An(p, n);
  return build_algebra(pres.qn.quiver, pres.relations, p, cap);
}

Quiver cp_quiver(u32 p) {
  Quiver q;
  q.grading_rank = 2;
  for (u32 i = 1; i <= p; ++i) q.add_vertex(std::to_string(i));
  auto name = [&](const char* base, u32 i) {
    return p == 2 ? std::string(base) : std::string(base) + std::to_string(i);
  };
  for (u32 i = 1; i < p; ++i) q.add_arrow(name("ξ", i), i - 1, i, {1, 0});
  for (u32 i = 1; i < p; ++i) q.add_arrow(name("η", i), i, i - 1, {0, 1});
  return q;
}

std::vector<Relation> cp_relations(const Quiver& q, u32 p) {
  const int m = static_cast<int>(p) - 1;  // arrows per kind
  auto xi = [&](int i) { return i - 1; };
  auto eta = [&](int i) { return m + i - 1; };
  (void)q;
  std::vector<Relation> rels;
  for (int i = 1; i + 1 <= m; ++i) {
    rels.push_back({{{1, {xi(i + 1), xi(i)}}}});
    rels.push_back({{{1, {eta(i), eta(i + 1)}}}});
    rels.push_back({{{1, {xi(i), eta(i)}}, {-1, {eta(i + 1), xi(i + 1)}}}});
  }
  if (m >= 1) rels.push_back({{{1, {xi(m), eta(m)}}}});
  return rels;
}

Algebra build_cp(u32 p) { return build_cp(p, p); }

Algebra build_cp(u32 n, u32 field_char) {
  if (!is_prime(field_char)) throw AlgebraError("p must be prime");
  if (n < 1) throw AlgebraError("c_n needs at least one vertex");
  Quiver q = cp_quiver(n);
  return build_algebra(q, cp_relations(q, n), field_char);
}

Algebra summed_grading(const Algebra& alg) {
  Algebra out = alg;
  out.grading_rank = 1;
  for (auto& a : out.arrows) {
    int s = 0;
    for (int d : a.deg) s += d;
    a.deg = {s};
  }
  for (int i = 0; i < out.dim(); ++i) out.basis[i].deg = {alg.total_degree(i)};
  return out;
}

VertexTuple tilde(const VertexTuple& a, u32 p) {
  VertexTuple t(a.size());
  for (size_t i = 0; i < a.size(); ++i) t[i] = static_cast<int>(p) - 1 - a[i];
  return t;
}

std::string expected_shape(int c, u32 p, int n) {
  if (n == 0) return "P";
  if (c == 0) return "P/K+/L";
  if (c == static_cast<int>(p) - 1) return "P/K-";
  return "P/K+K-/L";
}

FiltrationProfile filtration_profile(const Algebra& an, u32 p, int n, const VertexTuple& a) {
  int v = an.vertex_index(tuple_label(a));
  const int nv = an.num_vertices();
  FiltrationProfile prof;
  prof.top.assign(nv, 0);
  prof.k_plus.assign(nv, 0);
  prof.k_minus.assign(nv, 0);
  prof.bottom.assign(nv, 0);
  if (n == 0) {
    for (auto& b : an.basis)
      if (b.src == v) ++prof.top[b.tgt];
    prof.shape = "P";
    return prof;
  }
  const int c = a[n];
  for (auto& b : an.basis) {
    if (b.src != v) continue;
    int k = b.deg[n - 1];
    int t = parse_tuple_label(an.vertices[b.tgt])[n];
    if (k == 0 && t == c)
      ++prof.top[b.tgt];
    else if (k == 1 && t == c + 1)
      ++prof.k_plus[b.tgt];
    else if (k == 1 && t == c - 1)
      ++prof.k_minus[b.tgt];
    else if (k == 2 && t == c)
      ++prof.bottom[b.tgt];
    else
      throw AlgebraError("foreign layer at " + b.tag);
  }
  auto nonzero = [](const std::vector<int>& x) {
    return std::any_of(x.begin(), x.end(), [](int y) { return y > 0; });
  };
  std::string mid = std::string(nonzero(prof.k_plus) ? "K+" : "") + (nonzero(prof.k_minus) ? "K-" : "");
  prof.shape = "P";
  if (!mid.empty()) prof.shape += "/" + mid;
  if (nonzero(prof.bottom)) prof.shape += "/L";
  (void)p;
  return prof;
}

}  // namespace gl2
