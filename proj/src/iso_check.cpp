#include "gl2/iso_check.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace gl2 {

GradedCartan graded_cartan(const Algebra& a) {
  int top = 0;
  for (int i = 0; i < a.dim(); ++i) top = std::max(top, a.total_degree(i));
  const int n = a.num_vertices();
  GradedCartan c(n, std::vector<std::vector<int>>(n, std::vector<int>(top + 1, 0)));
  for (int i = 0; i < a.dim(); ++i) ++c[a.basis[i].tgt][a.basis[i].src][a.total_degree(i)];
  return c;
}

std::vector<std::vector<int>> quiver_match(const Algebra& a, const Algebra& b, int limit) {
  std::vector<std::vector<int>> out;
  const int n = a.num_vertices();
  if (n != b.num_vertices()) return out;
  GradedCartan ca = graded_cartan(a), cb = graded_cartan(b);
  if (!ca.empty() && !cb.empty() && ca[0][0].size() != cb[0][0].size()) return out;
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> go = [&](int v) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (v == n) {
      out.push_back(sigma);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || ca[v][v] != cb[w][w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = ca[v][u] == cb[w][sigma[u]] && ca[u][v] == cb[sigma[u]][w];
      if (!ok) continue;
      sigma[v] = w;
      used[w] = true;
      go(v + 1);
      used[w] = false;
      sigma[v] = -1;
    }
  };
  go(0);
  return out;
}

namespace {

std::vector<std::vector<int>> cartan_match(const Algebra& a, const Algebra& b, int limit) {
  std::vector<std::vector<int>> out;
  const int n = a.num_vertices();
  if (n != b.num_vertices()) return out;
  auto ca = cartan_matrix(a), cb = cartan_matrix(b);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n && ok; ++v) ok = ca[u][v] == cb[sigma[u]][sigma[v]];
    if (ok) out.push_back(sigma);
  } while (static_cast<int>(out.size()) < limit && std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

struct Term {
  u32 c;
  int g, y;  // x = sum c * g * y with g of degree 1
};

// Writes every element of degree >= 2 through products with degree-1 elements.
std::optional<std::vector<std::vector<Term>>> expressions(const Algebra& a) {
  const int n = a.dim();
  int top = 0;
  for (int i = 0; i < n; ++i) top = std::max(top, a.total_degree(i));
  std::vector<std::vector<int>> by_deg(top + 1);
  for (int i = 0; i < n; ++i) by_deg[a.total_degree(i)].push_back(i);
  std::vector<std::vector<Term>> expr(n);
  for (int d = 2; d <= top; ++d) {
    std::vector<std::pair<int, int>> chosen;
    EchelonBasis eb(n, a.p);
    std::vector<std::vector<u32>> cols;
    for (int g : by_deg[1])
      for (int y : by_deg[d - 1]) {
        const SparseVec& prod = a.product(g, y);
        if (prod.empty()) continue;
        std::vector<u32> v = to_dense(prod, n);
        if (eb.add(v)) {
          chosen.push_back({g, y});
          cols.push_back(v);
        }
      }
    if (eb.size() != static_cast<int>(by_deg[d].size())) return std::nullopt;
    Matrix m(n, static_cast<int>(cols.size()), a.p);
    for (int k = 0; k < m.cols; ++k)
      for (int r = 0; r < n; ++r) m.at(r, k) = cols[k][r];
    for (int x : by_deg[d]) {
      std::vector<u32> e(n, 0);
      e[x] = 1 % a.p;
      auto sol = solve_affine(m, e);
      if (!sol) return std::nullopt;
      for (int k = 0; k < m.cols; ++k)
        if ((*sol)[k]) expr[x].push_back({(*sol)[k], chosen[k].first, chosen[k].second});
    }
  }
  return expr;
}

struct Search {
  const Algebra& a;
  const Algebra& b;
  const IsoOptions& opt;
  const std::vector<std::vector<Term>>& expr;
  std::vector<int> sigma;
  std::vector<int> slots;                  // degree-1 generators of A in search order
  std::vector<std::vector<int>> cands;     // per slot
  std::vector<bool> normalized;            // slot on the spanning forest
  std::vector<std::vector<int>> compute;   // per level: elements to evaluate, by degree
  std::vector<std::vector<std::pair<int, int>>> checks;  // per level: pairs
  std::vector<SparseVec> img;
  long long* nodes;
  long long pairs = 0;
  bool over_budget = false;
  std::optional<IsoCertificate> found;

  void setup() {
    const int n = a.dim();
    std::vector<int> gens;
    for (int i = 0; i < n; ++i)
      if (a.total_degree(i) == 1) gens.push_back(i);
    // greedy order: grow from vertex 0 so relations close early
    std::vector<bool> seen(a.num_vertices(), false), taken(gens.size(), false);
    if (!seen.empty()) seen[0] = true;
    std::vector<int> comp(a.num_vertices());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
    for (size_t step = 0; step < gens.size(); ++step) {
      int best = -1, score = -1;
      for (size_t k = 0; k < gens.size(); ++k) {
        if (taken[k]) continue;
        const auto& e = a.basis[gens[k]];
        int s = (seen[e.src] ? 1 : 0) + (seen[e.tgt] ? 1 : 0);
        if (s > score) {
          score = s;
          best = static_cast<int>(k);
        }
      }
      taken[best] = true;
      int g = gens[best];
      const auto& e = a.basis[g];
      seen[e.src] = seen[e.tgt] = true;
      int rs = find(e.src), rt = find(e.tgt);
      normalized.push_back(rs != rt);
      if (rs != rt) comp[rs] = rt;
      slots.push_back(g);
    }
    std::vector<int> level(n, -1);
    std::vector<int> slot_of(n, -1);
    for (size_t s = 0; s < slots.size(); ++s) {
      slot_of[slots[s]] = static_cast<int>(s);
      level[slots[s]] = static_cast<int>(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a.total_degree(x) < a.total_degree(y); });
    for (int x : order)
      for (auto& t : expr[x]) level[x] = std::max({level[x], slot_of[t.g], level[t.y]});
    const int levels = static_cast<int>(slots.size()) + 1;  // index 0 is "before any slot"
    compute.assign(levels, {});
    checks.assign(levels, {});
    for (int x : order)
      if (a.total_degree(x) >= 2) compute[level[x] + 1].push_back(x);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (a.basis[u].src != a.basis[v].tgt) continue;
        int l = std::max(level[u], level[v]);
        for (auto& [z, c] : a.product(u, v)) l = std::max(l, level[z]);
        checks[l + 1].push_back({u, v});
      }
  }

  bool check_level(int l) {
    for (int x : compute[l]) {
      SparseVec v;
      for (auto& t : expr[x]) sparse_axpy(v, b.mul(img[t.g], img[t.y]), t.c, a.p);
      img[x] = v;
    }
    for (auto& [u, v] : checks[l]) {
      ++pairs;
      SparseVec lhs;
      for (auto& [z, c] : a.product(u, v)) sparse_axpy(lhs, img[z], c, a.p);
      if (lhs != b.mul(img[u], img[v])) return false;
    }
    return true;
  }

  void finish() {
    IsoCertificate cert;
    cert.vertex_map = sigma;
    cert.map = SpMap(b.dim(), a.dim(), a.p);
    cert.map.col = img;
    if (rank(cert.map.dense()) != a.dim()) return;
    if (hom_witness(a, b, cert.map)) return;
    cert.pairs_checked = pairs;
    if (opt.accept && !opt.accept(cert)) return;
    found = std::move(cert);
  }

  void dfs(int s) {
    if (found || over_budget) return;
    if (s == static_cast<int>(slots.size())) {
      finish();
      return;
    }
    const int k = static_cast<int>(cands[s].size());
    u64 total = 1;
    for (int i = 0; i < k; ++i) total *= a.p;
    for (u64 code = 1; code < total && !found && !over_budget; ++code) {
      std::vector<u32> digits(k);
      u64 c = code;
      for (int i = 0; i < k; ++i, c /= a.p) digits[i] = static_cast<u32>(c % a.p);
      if (normalized[s]) {
        int lead = 0;
        while (digits[lead] == 0) ++lead;
        if (digits[lead] != 1) continue;
      }
      if (++*nodes > opt.node_budget) {
        over_budget = true;
        return;
      }
      SparseVec v;
      for (int i = 0; i < k; ++i)
        if (digits[i]) v.push_back({cands[s][i], digits[i]});
      std::sort(v.begin(), v.end());
      img[slots[s]] = v;
      if (check_level(s + 1)) dfs(s + 1);
    }
  }

  bool is_gen(int y) const {
    if (!opt.radical_target) return b.total_degree(y) == 1;
    return std::find(b.idem.begin(), b.idem.end(), y) == b.idem.end();
  }

  // true if the candidate lists are consistent with sigma
  bool start(const std::vector<int>& sg) {
    sigma = sg;
    img.assign(a.dim(), {});
    pairs = 0;
    for (int v = 0; v < a.num_vertices(); ++v) img[a.idem[v]] = {{b.idem[sigma[v]], 1 % a.p}};
    cands.assign(slots.size(), {});
    for (size_t s = 0; s < slots.size(); ++s) {
      const auto& e = a.basis[slots[s]];
      for (int y = 0; y < b.dim(); ++y)
        if (is_gen(y) && b.basis[y].src == sigma[e.src] && b.basis[y].tgt == sigma[e.tgt])
          cands[s].push_back(y);
      if (cands[s].empty()) return false;
    }
    return check_level(0);
  }
};

}  // namespace

IsoResult find_iso(const Algebra& a, const Algebra& b, const IsoOptions& opt) {
  IsoResult res;
  if (a.p != b.p) {
    res.reason = "different characteristic";
    return res;
  }
  if (a.dim() != b.dim() || a.num_vertices() != b.num_vertices()) {
    res.reason = "dimension or vertex count differs";
    return res;
  }
  if (!tightness_check(a) || (!opt.radical_target && !tightness_check(b))) {
    res.status = IsoStatus::inconclusive;
    res.reason = "not tightly graded";
    return res;
  }
  auto expr = expressions(a);
  if (!expr) {
    res.status = IsoStatus::inconclusive;
    res.reason = "not generated in degree 1";
    return res;
  }
  auto bijections = opt.radical_target ? cartan_match(a, b, opt.max_bijections)
                                       : quiver_match(a, b, opt.max_bijections);
  if (bijections.empty()) {
    res.reason = "no vertex bijection preserves the graded Cartan data";
    return res;
  }
  Search s{a, b, opt, *expr, {}, {}, {}, {}, {}, {}, {}, &res.nodes, 0, false, std::nullopt};
  s.setup();
  for (auto& sg : bijections) {
    if (!s.start(sg)) continue;
    s.dfs(0);
    if (s.found) {
      res.status = IsoStatus::found;
      res.cert = std::move(s.found);
      return res;
    }
    if (s.over_budget) {
      res.status = IsoStatus::inconclusive;
      res.reason = "node budget exceeded";
      return res;
    }
  }
  if (static_cast<int>(bijections.size()) >= opt.max_bijections) {
    res.status = IsoStatus::inconclusive;
    res.reason = "bijection limit reached";
    return res;
  }
  res.reason = opt.accept ? "no accepted isomorphism" : "exhausted";
  return res;
}

bool verify_iso(const Algebra& a, const Algebra& b, const IsoCertificate& cert) {
  if (a.p != b.p || a.dim() != b.dim() || a.num_vertices() != b.num_vertices()) return false;
  const SpMap& f = cert.map;
  if (f.rows != b.dim() || f.cols != a.dim() || f.p != a.p) return false;
  if (static_cast<int>(cert.vertex_map.size()) != a.num_vertices()) return false;
  std::vector<int> sorted = cert.vertex_map;
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < a.num_vertices(); ++v)
    if (sorted[v] != v) return false;
  // e_v must go to e_sigma(v) modulo the radical (so conjugated certificates pass)
  for (int v = 0; v < a.num_vertices(); ++v) {
    SparseVec top;
    for (auto& [i, c] : f.col[a.idem[v]])
      if (b.total_degree(i) == 0) top.push_back({i, c});
    if (top != SparseVec{{b.idem[cert.vertex_map[v]], 1 % a.p}}) return false;
  }
  if (rank(f.dense()) != a.dim()) return false;
  return !hom_witness(a, b, f);
}

IsoCertificate invert_certificate(const IsoCertificate& cert) {
  IsoCertificate out;
  out.vertex_map.assign(cert.vertex_map.size(), -1);
  for (size_t v = 0; v < cert.vertex_map.size(); ++v) out.vertex_map[cert.vertex_map[v]] = static_cast<int>(v);
  auto inv = inverse(cert.map.dense());
  if (!inv) throw AlgebraError("certificate map is not invertible");
  out.map = SpMap::from_dense(*inv);
  return out;
}

std::string certificate_to_json(const IsoCertificate& cert, const std::string& source_ref,
                                const std::string& target_ref) {
  nlohmann::json j;
  j["schema"] = "isocert-v1";
  j["source_ref"] = source_ref;
  j["target_ref"] = target_ref;
  j["char"] = cert.map.p;
  j["rows"] = cert.map.rows;
  j["cols"] = cert.map.cols;
  j["vertex_map"] = cert.vertex_map;
  nlohmann::json m = nlohmann::json::array();
  for (int c = 0; c < cert.map.cols; ++c)
    for (auto& [r, v] : cert.map.col[c]) m.push_back({r, c, v});
  j["matrix"] = m;
  j["pairs_checked"] = cert.pairs_checked;
  return j.dump() + "\n";
}

IsoCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraError(std::string("malformed isocert-v1: ") + e.what());
  }
  if (j.value("schema", "") != "isocert-v1") throw AlgebraError("not an isocert-v1 document");
  IsoCertificate cert;
  u32 p = j.at("char");
  cert.map = SpMap(j.at("rows"), j.at("cols"), p);
  cert.vertex_map = j.at("vertex_map").get<std::vector<int>>();
  for (auto& e : j.at("matrix")) {
    int r = e[0], c = e[1];
    u32 v = e[2];
    if (r < 0 || r >= cert.map.rows || c < 0 || c >= cert.map.cols) throw AlgebraError("isocert-v1 entry out of range");
    cert.map.col[c].push_back({r, v % p});
  }
  for (auto& col : cert.map.col) std::sort(col.begin(), col.end());
  cert.pairs_checked = j.value("pairs_checked", 0LL);
  return cert;
}

}  // namespace gl2
