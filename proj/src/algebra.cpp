#include "gl2/algebra.hpp"

#include <algorithm>

#include "json.hpp"

namespace gl2 {

namespace {
const SparseVec kZero;
}

int Algebra::vertex_index(const std::string& label) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == label) return i;
  throw AlgebraError("unknown vertex " + label);
}

int Algebra::total_degree(int i) const {
  int s = 0;
  for (int d : basis[i].deg) s += d;
  return s;
}

void Algebra::init_table() { table_.assign(basis.size(), {}); }

void Algebra::set_product(int i, int j, SparseVec v) {
  auto& r = table_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, int key) { return e.first < key; });
  if (it != r.end() && it->first == j) {
    if (v.empty())
      r.erase(it);
    else
      it->second = std::move(v);
  } else if (!v.empty()) {
    r.insert(it, {j, std::move(v)});
  }
}

const SparseVec& Algebra::product(int i, int j) const {
  const auto& r = table_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, int key) { return e.first < key; });
  if (it != r.end() && it->first == j) return it->second;
  return kZero;
}

SparseVec Algebra::mul(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (auto& [i, a] : x) {
    const auto& r = table_[i];
    if (r.empty()) continue;
    for (auto& [j, b] : y) {
      const SparseVec& prod = product(i, j);
      if (!prod.empty()) sparse_axpy(out, prod, fp_mul(a, b, p), p);
    }
  }
  return out;
}

std::vector<u32> Algebra::multiply(const std::vector<u32>& x, const std::vector<u32>& y) const {
  if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
    throw AlgebraError("multiply: coefficient vector has wrong length");
  return to_dense(mul(to_sparse(x), to_sparse(y)), dim());
}

SparseVec Algebra::unit() const {
  SparseVec u;
  for (int e : idem) u.emplace_back(e, 1 % p);
  std::sort(u.begin(), u.end());
  return u;
}

SpMap Algebra::left_mult(int i) const {
  SpMap m(dim(), dim(), p);
  for (auto& [j, v] : table_[i]) m.col[j] = v;
  return m;
}

SpMap Algebra::right_mult(int i) const {
  SpMap m(dim(), dim(), p);
  for (int j = 0; j < dim(); ++j) m.col[j] = product(j, i);
  return m;
}

std::optional<std::array<int, 3>> Algebra::associativity_witness() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (auto& [j, ij] : table_[i])
      for (int k = 0; k < n; ++k) {
        SparseVec left = mul(ij, {{k, 1 % p}});
        SparseVec jk = product(j, k);
        SparseVec right = jk.empty() ? SparseVec{} : mul({{i, 1 % p}}, jk);
        if (left != right) return std::array<int, 3>{i, j, k};
      }
  // pairs with ij = 0 still need i(jk) = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!product(i, j).empty()) continue;
      for (auto& [k, jk] : table_[j])
        if (!mul({{i, 1 % p}}, jk).empty()) return std::array<int, 3>{i, j, k};
    }
  return std::nullopt;
}

std::optional<std::array<int, 2>> hom_witness(const Algebra& a, const Algebra& b, const SpMap& f) {
  if (f.rows != b.dim() || f.cols != a.dim()) throw AlgebraError("map shape does not match the algebras");
  if (f.apply(a.unit()) != b.unit()) return std::array<int, 2>{-1, -1};
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      SparseVec lhs = f.apply(a.product(i, j));
      if (lhs != b.mul(f.col[i], f.col[j])) return std::array<int, 2>{i, j};
    }
  return std::nullopt;
}

bool Algebra::grading_respected() const {
  for (int i = 0; i < dim(); ++i)
    for (auto& [j, v] : table_[i])
      for (auto& [k, c] : v) {
        (void)c;
        for (int g = 0; g < grading_rank; ++g)
          if (basis[k].deg[g] != basis[i].deg[g] + basis[j].deg[g]) return false;
      }
  return true;
}

bool Algebra::vertex_structure_ok() const {
  if (static_cast<int>(idem.size()) != num_vertices()) return false;
  for (int v = 0; v < num_vertices(); ++v) {
    const auto& b = basis[idem[v]];
    if (b.src != v || b.tgt != v) return false;
  }
  for (int i = 0; i < dim(); ++i) {
    const auto& b = basis[i];
    for (int v = 0; v < num_vertices(); ++v) {
      SparseVec expect_l = (b.tgt == v) ? SparseVec{{i, 1 % p}} : SparseVec{};
      SparseVec expect_r = (b.src == v) ? SparseVec{{i, 1 % p}} : SparseVec{};
      if (product(idem[v], i) != expect_l || product(i, idem[v]) != expect_r) return false;
    }
  }
  return true;
}

Algebra field_algebra(u32 p, int grading_rank) {
  Algebra f(p, grading_rank);
  f.vertices = {"1"};
  f.basis = {{0, 0, std::vector<int>(grading_rank, 0), "e1", {}}};
  f.idem = {0};
  f.init_table();
  f.set_product(0, 0, {{0, 1}});
  return f;
}

std::vector<std::vector<int>> cartan_matrix(const Algebra& alg) {
  std::vector<std::vector<int>> c(alg.num_vertices(), std::vector<int>(alg.num_vertices(), 0));
  for (auto& b : alg.basis) ++c[b.tgt][b.src];
  return c;
}

bool tightness_check(const Algebra& alg) {
  if (!alg.grading_respected()) return false;
  std::vector<int> zero;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int d : alg.basis[i].deg)
      if (d < 0) return false;
    if (alg.total_degree(i) == 0) zero.push_back(i);
  }
  std::vector<int> ids = alg.idem;
  std::sort(ids.begin(), ids.end());
  return zero == ids;
}

std::vector<int> graded_radical(const Algebra& alg) {
  std::vector<int> r;
  for (int i = 0; i < alg.dim(); ++i)
    if (alg.total_degree(i) > 0) r.push_back(i);
  return r;
}

bool module_invariants_hold(const Algebra& alg, const LeftModule& m) {
  if (static_cast<int>(m.act.size()) != alg.dim()) return false;
  SpMap unit(m.dim, m.dim, m.p);
  for (int e : alg.idem) unit = unit + m.act[e];
  if (unit != SpMap::identity(m.dim, m.p)) return false;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      SpMap lhs = compose(m.act[i], m.act[j]);
      SpMap rhs(m.dim, m.dim, m.p);
      for (auto& [k, c] : alg.product(i, j)) rhs = rhs + scale(m.act[k], c);
      if (lhs != rhs) return false;
    }
  return true;
}

LeftModule left_projective(const Algebra& alg, int v) {
  if (v < 0 || v >= alg.num_vertices()) throw AlgebraError("unknown vertex");
  std::vector<int> idx, pos(alg.dim(), -1);
  for (int i = 0; i < alg.dim(); ++i)
    if (alg.basis[i].src == v) {
      pos[i] = static_cast<int>(idx.size());
      idx.push_back(i);
    }
  LeftModule m;
  m.p = alg.p;
  m.dim = static_cast<int>(idx.size());
  m.act.assign(alg.dim(), SpMap(m.dim, m.dim, alg.p));
  for (int x = 0; x < alg.dim(); ++x)
    for (int c = 0; c < m.dim; ++c) {
      SparseVec img;
      for (auto& [k, val] : alg.product(x, idx[c])) img.emplace_back(pos[k], val);
      m.act[x].col[c] = img;
    }
  for (int i : idx) {
    m.vertex.push_back(alg.basis[i].tgt);
    m.deg.push_back(alg.basis[i].deg);
  }
  return m;
}

LeftModule simple_module(const Algebra& alg, int v) {
  LeftModule m;
  m.p = alg.p;
  m.dim = 1;
  m.act.assign(alg.dim(), SpMap(1, 1, alg.p));
  m.act[alg.idem[v]] = SpMap::identity(1, alg.p);
  m.vertex = {v};
  m.deg = {std::vector<int>(alg.grading_rank, 0)};
  return m;
}

std::vector<std::vector<int>> radical_layers(const Algebra& alg, const LeftModule& m,
                                             const std::optional<std::vector<SparseVec>>& radical) {
  std::vector<SparseVec> rad;
  if (radical) {
    rad = *radical;
  } else {
    if (!tightness_check(alg)) throw AlgebraError("no radical available");
    for (int i : graded_radical(alg)) rad.push_back({{i, 1 % alg.p}});
  }
  std::vector<SpMap> rad_act;
  for (auto& r : rad) {
    SpMap a(m.dim, m.dim, m.p);
    for (auto& [k, c] : r) a = a + scale(m.act[k], c);
    rad_act.push_back(a);
  }
  auto vertex_dims = [&](const std::vector<std::vector<u32>>& span) {
    std::vector<int> d(alg.num_vertices(), 0);
    for (int v = 0; v < alg.num_vertices(); ++v) {
      EchelonBasis eb(m.dim, m.p);
      for (auto& s : span) eb.add(m.act[alg.idem[v]].apply(s));
      d[v] = eb.size();
    }
    return d;
  };
  std::vector<std::vector<u32>> cur;
  for (int i = 0; i < m.dim; ++i) {
    std::vector<u32> e(m.dim, 0);
    e[i] = 1 % m.p;
    cur.push_back(e);
  }
  std::vector<std::vector<int>> layers;
  auto cur_dims = vertex_dims(cur);
  while (!cur.empty()) {
    EchelonBasis next(m.dim, m.p);
    for (auto& a : rad_act)
      for (auto& v : cur) next.add(a.apply(v));
    std::vector<std::vector<u32>> nxt = next.rows();
    auto nd = vertex_dims(nxt);
    std::vector<int> layer(alg.num_vertices());
    for (int v = 0; v < alg.num_vertices(); ++v) layer[v] = cur_dims[v] - nd[v];
    if (static_cast<int>(nxt.size()) == static_cast<int>(cur.size()))
      throw AlgebraError("radical action is not nilpotent");
    layers.push_back(layer);
    cur.swap(nxt);
    cur_dims = nd;
  }
  return layers;
}

std::string algebra_to_json(const Algebra& alg) {
  using nlohmann::json;
  json j;
  j["schema"] = "algebra-v1";
  j["char"] = alg.p;
  j["grading_rank"] = alg.grading_rank;
  j["vertices"] = alg.vertices;
  json arrows = json::array();
  for (auto& a : alg.arrows)
    arrows.push_back({{"id", a.id}, {"src", alg.vertices[a.src]},
                      {"tgt", alg.vertices[a.tgt]}, {"deg", a.deg}});
  j["arrows"] = arrows;
  json basis = json::array();
  for (auto& b : alg.basis)
    basis.push_back({{"id", b.tag}, {"src", alg.vertices[b.src]}, {"tgt", alg.vertices[b.tgt]},
                     {"deg", b.deg}, {"word", b.word}});
  j["basis"] = basis;
  j["idempotents"] = alg.idem;
  json sc = json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (auto& [k, v] : alg.row(i))
      for (auto& [l, c] : v) sc.push_back({i, k, l, c});
  j["structconst"] = sc;
  return j.dump() + "\n";
}

Algebra algebra_from_json(const std::string& text) {
  using nlohmann::json;
  json j = json::parse(text);
  if (j.value("schema", "") != "algebra-v1") throw AlgebraError("not an algebra-v1 document");
  Algebra alg(j.at("char").get<u32>(), j.at("grading_rank").get<int>());
  alg.vertices = j.at("vertices").get<std::vector<std::string>>();
  for (auto& a : j.at("arrows"))
    alg.arrows.push_back({a.at("id").get<std::string>(),
                          alg.vertex_index(a.at("src").get<std::string>()),
                          alg.vertex_index(a.at("tgt").get<std::string>()),
                          a.at("deg").get<std::vector<int>>()});
  for (auto& b : j.at("basis")) {
    BasisElem e;
    e.tag = b.at("id").get<std::string>();
    e.src = alg.vertex_index(b.at("src").get<std::string>());
    e.tgt = alg.vertex_index(b.at("tgt").get<std::string>());
    e.deg = b.at("deg").get<std::vector<int>>();
    e.word = b.at("word").get<std::vector<std::string>>();
    alg.basis.push_back(e);
  }
  alg.idem = j.at("idempotents").get<std::vector<int>>();
  alg.init_table();
  std::vector<std::vector<std::pair<int, SparseVec>>> rows(alg.dim());
  for (auto& t : j.at("structconst")) {
    int i = t[0], k = t[1], l = t[2];
    u32 c = t[3];
    if (i < 0 || i >= alg.dim() || k < 0 || k >= alg.dim() || l < 0 || l >= alg.dim())
      throw AlgebraError("structure constant index out of range");
    if (rows[i].empty() || rows[i].back().first != k) rows[i].push_back({k, {}});
    rows[i].back().second.emplace_back(l, c % alg.p);
  }
  for (int i = 0; i < alg.dim(); ++i)
    for (auto& [k, v] : rows[i]) alg.set_product(i, k, v);
  return alg;
}

}  // namespace gl2
