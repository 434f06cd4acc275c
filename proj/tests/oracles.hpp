// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library's algebra builders.
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "gl2/exactla.hpp"
#include "gl2/quiver.hpp"

namespace oracle {

using gl2::Matrix;
using gl2::Path;
using gl2::Quiver;
using gl2::Relation;
using gl2::u32;

// (src, tgt, degree) -> paths of that shape, written order
using PathTable = std::map<std::tuple<int, int, std::vector<int>>, std::vector<Path>>;

// paths[l] holds every path with l arrows
inline std::vector<PathTable> enumerate_paths(const Quiver& q, int max_len) {
  std::vector<PathTable> tab(max_len + 1);
  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
    tab[0][{v, v, std::vector<int>(q.grading_rank, 0)}].push_back({});
  for (int l = 1; l <= max_len; ++l)
    for (auto& [key, paths] : tab[l - 1]) {
      auto& [s, t, d] = key;
      for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        if (q.arrows[a].src != t) continue;
        std::vector<int> e = d;
        for (int i = 0; i < q.grading_rank; ++i) e[i] += q.arrows[a].deg[i];
        auto& bucket = tab[l][{s, q.arrows[a].tgt, e}];
        for (auto& path : paths) {
          Path np{a};
          np.insert(np.end(), path.begin(), path.end());
          bucket.push_back(np);
        }
      }
    }
  return tab;
}

// Dimension of every (src, tgt, degree) component of kQ/I: number of paths minus
// the rank of all u*r*w of that shape, spanned directly in path space with no
// normal forms. Path lengths grow until every path of some length lies in I,
// which certifies that nothing longer survives.
inline std::map<std::tuple<int, int, std::vector<int>>, int> presented_dims(
    const Quiver& q, const std::vector<Relation>& rels, u32 p, int max_len = 12) {
  std::map<std::tuple<int, int, std::vector<int>>, int> dims;
  for (int len = 0; len <= max_len; ++len) {
    auto tab = enumerate_paths(q, len);
    bool any = false;
    for (auto& [key, paths] : tab[len]) {
      auto& [s, t, d] = key;
      std::map<Path, int> col;
      for (int i = 0; i < static_cast<int>(paths.size()); ++i) col[paths[i]] = i;
      Matrix m(0, static_cast<int>(paths.size()), p);
      for (auto& r : rels) {
        const Path& p0 = r.terms.front().second;
        int rl = static_cast<int>(p0.size());
        if (rl > len) continue;
        int rs = q.arrows[p0.back()].src, rt = q.arrows[p0.front()].tgt;
        for (int wl = 0; wl + rl <= len; ++wl)
          for (auto& [wk, ws] : tab[wl]) {
            auto& [w_s, w_t, w_d] = wk;
            if (w_s != s || w_t != rs) continue;
            for (auto& [uk, us] : tab[len - rl - wl]) {
              auto& [u_s, u_t, u_d] = uk;
              if (u_s != rt || u_t != t) continue;
              for (auto& w : ws)
                for (auto& u : us) {
                  std::vector<u32> row(paths.size(), 0);
                  bool fits = true;
                  for (auto& [c, rp] : r.terms) {
                    Path full = u;
                    full.insert(full.end(), rp.begin(), rp.end());
                    full.insert(full.end(), w.begin(), w.end());
                    auto it = col.find(full);
                    if (it == col.end()) {
                      fits = false;  // other multidegree
                      break;
                    }
                    row[it->second] = gl2::fp_add(row[it->second], gl2::fp_from_int(c, p), p);
                  }
                  if (fits) m.append_row(row);
                }
            }
          }
      }
      int dim = static_cast<int>(paths.size()) - gl2::rank(m);
      if (dim) {
        dims[key] = dim;
        any = true;
      }
    }
    if (!any) return dims;
  }
  throw std::runtime_error("oracle: path length bound reached");
}

inline int presented_dim(const Quiver& q, const std::vector<Relation>& rels, u32 p) {
  int total = 0;
  for (auto& [k, d] : presented_dims(q, rels, p)) total += d;
  return total;
}

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
