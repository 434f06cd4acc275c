#include "gl2/quiver.hpp"

#include <algorithm>
#include <map>

namespace gl2 {

int Quiver::add_vertex(const std::string& label) {
  vertices.push_back(label);
  return static_cast<int>(vertices.size()) - 1;
}

int Quiver::add_arrow(const std::string& id, int src, int tgt, std::vector<int> deg) {
  arrows.push_back({id, src, tgt, std::move(deg)});
  return static_cast<int>(arrows.size()) - 1;
}

int Quiver::arrow_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
    if (arrows[i].id == id) return i;
  throw AlgebraError("unknown arrow " + id);
}

std::string path_tag(const Quiver& q, const Path& path) {
  std::string s;
  for (auto it = path.rbegin(); it != path.rend(); ++it) s += q.arrows[*it].id;
  return s;
}

namespace {

using Deg = std::vector<int>;

Deg add(const Deg& a, const Deg& b) {
  Deg c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

bool leq(const Deg& a, const Deg& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Deg sub(const Deg& a, const Deg& b) {
  Deg c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

struct CheckedRelation {
  int src, tgt;
  Deg deg;
  std::vector<std::pair<u32, Path>> terms;
};

CheckedRelation check_relation(const Quiver& q, const Relation& r, u32 p) {
  CheckedRelation out{-1, -1, Deg(q.grading_rank, 0), {}};
  bool first = true;
  for (auto& [c, path] : r.terms) {
    if (path.empty()) throw AlgebraError("inhomogeneous relation: empty path");
    for (int a : path)
      if (a < 0 || a >= static_cast<int>(q.arrows.size()))
        throw AlgebraError("inhomogeneous relation: unknown arrow");
    for (size_t i = 0; i + 1 < path.size(); ++i)
      if (q.arrows[path[i]].src != q.arrows[path[i + 1]].tgt)
        throw AlgebraError("inhomogeneous relation: path not composable");
    Deg d(q.grading_rank, 0);
    for (int a : path) d = add(d, q.arrows[a].deg);
    int s = q.arrows[path.back()].src, t = q.arrows[path.front()].tgt;
    if (first) {
      out.src = s;
      out.tgt = t;
      out.deg = d;
      first = false;
    } else if (s != out.src || t != out.tgt || d != out.deg) {
      throw AlgebraError("inhomogeneous relation");
    }
    u32 cc = fp_from_int(c, p);
    if (cc) out.terms.push_back({cc, path});
  }
  return out;
}

}  // namespace

Algebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, u32 p,
                      std::vector<int> cap) {
  if (!is_prime(p)) throw AlgebraError("characteristic must be prime");
  const int g = q.grading_rank;
  if (cap.empty()) cap.assign(g, static_cast<int>(2 * p));
  if (static_cast<int>(cap.size()) != g) throw AlgebraError("degree cap has wrong length");
  for (auto& a : q.arrows) {
    if (static_cast<int>(a.deg.size()) != g) throw AlgebraError("arrow degree has wrong length");
    int tot = 0;
    for (int x : a.deg) {
      if (x != 0 && x != 1) throw AlgebraError("arrow degrees must be 0/1 vectors");
      tot += x;
    }
    if (tot == 0) throw AlgebraError("arrow of degree zero");
    if (!leq(a.deg, cap)) throw AlgebraError("degree cap below an arrow degree");
    if (a.src < 0 || a.src >= static_cast<int>(q.vertices.size()) || a.tgt < 0 ||
        a.tgt >= static_cast<int>(q.vertices.size()))
      throw AlgebraError("arrow endpoint out of range");
  }
  std::vector<CheckedRelation> crs;
  for (auto& r : rels) {
    auto c = check_relation(q, r, p);
    if (!c.terms.empty()) crs.push_back(std::move(c));
  }

  // all degrees below the cap, ordered by total degree then descending lex
  std::vector<Deg> degrees(1, Deg());
  for (int i = 0; i < g; ++i) {
    std::vector<Deg> nxt;
    for (auto& d : degrees)
      for (int x = 0; x <= cap[i]; ++x) {
        Deg e = d;
        e.push_back(x);
        nxt.push_back(e);
      }
    degrees.swap(nxt);
  }
  auto total = [](const Deg& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
  };
  std::sort(degrees.begin(), degrees.end(), [&](const Deg& a, const Deg& b) {
    if (total(a) != total(b)) return total(a) < total(b);
    return a > b;
  });

  Algebra alg(p, g);
  alg.vertices = q.vertices;
  alg.arrows = q.arrows;
  std::vector<Path> words;
  std::vector<int> first_arrow, rest;
  std::map<Deg, std::vector<int>> bydeg;
  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
    alg.basis.push_back({v, v, Deg(g, 0), "e" + q.vertices[v], {}});
    alg.idem.push_back(v);
    words.push_back({});
    first_arrow.push_back(-1);
    rest.push_back(-1);
    bydeg[Deg(g, 0)].push_back(v);
  }

  std::map<std::pair<int, int>, SparseVec> leftmul;
  auto leftmul_vec = [&](int a, const SparseVec& v) {
    SparseVec out;
    for (auto& [b, c] : v) {
      auto it = leftmul.find({a, b});
      if (it != leftmul.end()) sparse_axpy(out, it->second, c, p);
    }
    return out;
  };

  for (auto& d : degrees) {
    if (total(d) == 0) continue;
    bool boundary = false;
    for (int i = 0; i < g; ++i)
      if (d[i] == cap[i]) boundary = true;

    struct Span {
      int a, b;
      Path path;
    };
    std::map<std::pair<int, int>, std::vector<Span>> comps;  // (src, tgt)
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
      const auto& ar = q.arrows[a];
      if (!leq(ar.deg, d)) continue;
      auto it = bydeg.find(sub(d, ar.deg));
      if (it == bydeg.end()) continue;
      for (int b : it->second) {
        if (alg.basis[b].tgt != ar.src) continue;
        Path path{a};
        path.insert(path.end(), words[b].begin(), words[b].end());
        comps[{alg.basis[b].src, ar.tgt}].push_back({a, b, path});
      }
    }
    for (auto& [key, span] : comps) {
      std::sort(span.begin(), span.end(),
                [](const Span& x, const Span& y) { return x.path < y.path; });
      std::map<std::pair<int, int>, int> col_of;
      for (int c = 0; c < static_cast<int>(span.size()); ++c) col_of[{span[c].a, span[c].b}] = c;
      const int ncols = static_cast<int>(span.size());

      Matrix relmat(0, ncols, p);
      for (auto& r : crs) {
        if (r.tgt != key.second || !leq(r.deg, d)) continue;
        auto it = bydeg.find(sub(d, r.deg));
        if (it == bydeg.end()) continue;
        for (int b : it->second) {
          if (alg.basis[b].tgt != r.src || alg.basis[b].src != key.first) continue;
          std::vector<u32> row(ncols, 0);
          for (auto& [c, path] : r.terms) {
            SparseVec v{{b, 1 % p}};
            for (size_t i = path.size() - 1; i >= 1; --i) v = leftmul_vec(path[i], v);
            for (auto& [bb, cc] : v) {
              auto ci = col_of.find({path[0], bb});
              if (ci == col_of.end()) throw AlgebraError("internal: spanning element missing");
              row[ci->second] = fp_add(row[ci->second], fp_mul(c, cc, p), p);
            }
          }
          relmat.append_row(row);
        }
      }
      Reduced red = reduce(relmat);
      std::vector<int> pivot_row(ncols, -1);
      for (int r = 0; r < red.rank; ++r) pivot_row[red.pivots[r]] = r;
      std::vector<int> new_index(ncols, -1);
      for (int c = 0; c < ncols; ++c) {
        if (pivot_row[c] >= 0) continue;
        if (boundary) throw AlgebraError("cap too small");
        int idx = alg.dim();
        new_index[c] = idx;
        BasisElem e;
        e.src = key.first;
        e.tgt = key.second;
        e.deg = d;
        e.tag = path_tag(q, span[c].path);
        for (int a : span[c].path) e.word.push_back(q.arrows[a].id);
        alg.basis.push_back(e);
        words.push_back(span[c].path);
        first_arrow.push_back(span[c].a);
        rest.push_back(span[c].b);
        bydeg[d].push_back(idx);
      }
      for (int c = 0; c < ncols; ++c) {
        SparseVec nf;
        if (pivot_row[c] < 0) {
          nf = {{new_index[c], 1 % p}};
        } else {
          for (int k = 0; k < ncols; ++k)
            if (pivot_row[k] < 0 && red.rref.at(pivot_row[c], k))
              nf.emplace_back(new_index[k], fp_neg(red.rref.at(pivot_row[c], k), p));
          std::sort(nf.begin(), nf.end());
        }
        leftmul[{span[c].a, span[c].b}] = nf;
      }
    }
  }

  alg.init_table();
  for (int x = 0; x < alg.dim(); ++x)
    for (int y = 0; y < alg.dim(); ++y) {
      if (alg.basis[y].tgt != alg.basis[x].src) continue;
      if (first_arrow[x] < 0) {
        alg.set_product(x, y, {{y, 1 % p}});
      } else if (first_arrow[y] < 0) {
        alg.set_product(x, y, {{x, 1 % p}});
      } else {
        // x = a * rest[x], and rest[x] has a smaller index
        alg.set_product(x, y, leftmul_vec(first_arrow[x], alg.product(rest[x], y)));
      }
    }
  return alg;
}

}  // namespace gl2
