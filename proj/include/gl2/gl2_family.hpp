// gl2_family.hpp
// The quivers Q_n, the algebras A_n and c_p, and checks on their projectives.
#pragma once

#include <string>
#include <vector>

#include "gl2/algebra.hpp"
#include "gl2/quiver.hpp"

namespace gl2 {

// (a_0, ..., a_n). For p = 2 the first entry is always 0; it is kept in
// memory and in labels so both cases share one code path.
using VertexTuple = std::vector<int>;

std::string tuple_label(const VertexTuple& a);
VertexTuple parse_tuple_label(const std::string& s);

struct QnOptions {
  // p = 2 only: drop the a_{i-1} = 0 condition on arrows. The resulting algebra
  // is infinite-dimensional; kept to demonstrate why the condition is needed.
  bool unguarded_p2 = false;
};

struct QuiverQn {
  u32 p = 3;
  int n = 0;
  Quiver quiver;
  std::vector<VertexTuple> tuples;  // parallel to quiver.vertices
  // arrow index of f_{i,eps} starting at each vertex, or -1; [vertex][i-1][eps>0]
  std::vector<std::vector<std::array<int, 2>>> out;

  int vertex_of(const VertexTuple& a) const;
};

QuiverQn build_Qn(u32 p, int n, QnOptions opt = {});

// Commutation relation instances where the stated side condition and arrow existence
// disagree; recorded rather than silently resolved.
struct GuardFlag {
  VertexTuple a;
  int i = 0;
  int eps1 = 0;
  int eps2 = 0;
  bool side_condition = false;
  bool first_exists = false;
  bool second_exists = false;
};

struct AnPresentation {
  QuiverQn qn;
  std::vector<Relation> relations;
  std::vector<GuardFlag> flags;
};

AnPresentation present_An(u32 p, int n, QnOptions opt = {});
Algebra build_An(u32 p, int n, std::vector<int> cap = {});

Quiver cp_quiver(u32 p);
std::vector<Relation> cp_relations(const Quiver& q, u32 p);
// vertices "1".."p"; xi_i : i -> i+1 in degree (1,0), eta_i : i+1 -> i in (0,1)
Algebra build_cp(u32 p);
// the same presentation with n vertices over F_field_char
Algebra build_cp(u32 n, u32 field_char);
// the same algebra with the summed Z_+-grading
Algebra summed_grading(const Algebra& alg);

VertexTuple tilde(const VertexTuple& a, u32 p);

struct FiltrationProfile {
  std::string shape;  // "P/K+K-/L", "P/K+/L", "P/K-" or "P" (n = 0)
  // multiplicity vectors over the vertices of the algebra
  std::vector<int> top, k_plus, k_minus, bottom;
};

// expected shape for last coordinate c
std::string expected_shape(int c, u32 p, int n);
FiltrationProfile filtration_profile(const Algebra& an, u32 p, int n, const VertexTuple& a);

}  // namespace gl2
