// quiver.hpp
// Algebras presented by a quiver with homogeneous relations.
#pragma once

#include <string>
#include <vector>

#include "gl2/algebra.hpp"

namespace gl2 {

struct Quiver {
  int grading_rank = 0;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;  // arrow degrees must be nonzero 0/1 vectors

  int add_vertex(const std::string& label);
  int add_arrow(const std::string& id, int src, int tgt, std::vector<int> deg);
  int arrow_index(const std::string& id) const;
};

// A path is a list of arrow indices in written order: {f, g} means g then f.
using Path = std::vector<int>;

struct Relation {
  std::vector<std::pair<long long, Path>> terms;
};

// Builds path algebra modulo the ideal generated by rels, degree by degree up to
// cap (default 2p in every coordinate). Finiteness is certified by checking that
// every component with some coordinate equal to the cap vanishes.
Algebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, u32 p,
                      std::vector<int> cap = {});

// arrow ids of a path in traversal order, concatenated
std::string path_tag(const Quiver& q, const Path& path);

}  // namespace gl2
