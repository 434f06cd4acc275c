// algebra.hpp
// Finite-dimensional algebras on a vertex-adapted basis, and their left modules.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gl2/exactla.hpp"

namespace gl2 {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
  std::vector<int> deg;
};

// A basis element x lies in e_tgt A e_src. word lists arrow ids in written
// order, so the last arrow is traversed first.
struct BasisElem {
  int src = 0;
  int tgt = 0;
  std::vector<int> deg;
  std::string tag;
  std::vector<std::string> word;
};

class Algebra {
 public:
  u32 p = 2;
  int grading_rank = 0;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;  // empty unless built from a quiver
  std::vector<BasisElem> basis;
  std::vector<int> idem;  // basis index of each vertex idempotent

  Algebra() = default;
  Algebra(u32 p_, int rank) : p(p_), grading_rank(rank) {}

  int dim() const { return static_cast<int>(basis.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int vertex_index(const std::string& label) const;
  int total_degree(int i) const;

  // Must be called once the basis is complete and before products are set.
  void init_table();
  void set_product(int i, int j, SparseVec v);
  const SparseVec& product(int i, int j) const;
  const std::vector<std::pair<int, SparseVec>>& row(int i) const { return table_[i]; }
  SparseVec mul(const SparseVec& x, const SparseVec& y) const;
  std::vector<u32> multiply(const std::vector<u32>& x, const std::vector<u32>& y) const;
  SparseVec unit() const;

  SpMap left_mult(int i) const;
  SpMap right_mult(int i) const;

  // first basis triple (i,j,k) with (ij)k != i(jk), if any
  std::optional<std::array<int, 3>> associativity_witness() const;
  bool grading_respected() const;
  // idempotents orthogonal, sum to 1, and every basis element is vertex-adapted
  bool vertex_structure_ok() const;

 private:
  std::vector<std::vector<std::pair<int, SparseVec>>> table_;
};

// First basis pair (i,j) with f(ij) != f(i)f(j) for a basis-level map f: a -> b;
// (-1,-1) flags a unit mismatch.
std::optional<std::array<int, 2>> hom_witness(const Algebra& a, const Algebra& b, const SpMap& f);

// the ground field as a one-vertex algebra
Algebra field_algebra(u32 p, int grading_rank = 0);

// entry (i,j) = dim e_i A e_j
std::vector<std::vector<int>> cartan_matrix(const Algebra& alg);
// degree-0 part (total degree) is exactly the span of the vertex idempotents
bool tightness_check(const Algebra& alg);
// positive total degree basis elements; only meaningful for tight algebras
std::vector<int> graded_radical(const Algebra& alg);

struct LeftModule {
  u32 p = 2;
  int dim = 0;
  std::vector<SpMap> act;   // one per algebra basis element
  std::vector<int> vertex;  // the idempotent fixing each basis vector
  std::vector<std::vector<int>> deg;
};

bool module_invariants_hold(const Algebra& alg, const LeftModule& m);
LeftModule left_projective(const Algebra& alg, int v);
LeftModule simple_module(const Algebra& alg, int v);
// layers m/rad m, rad m/rad^2 m, ...; each layer lists multiplicities per vertex.
// radical: vectors spanning the Jacobson radical; without it the graded radical
// is used, which requires a tight algebra.
std::vector<std::vector<int>> radical_layers(
    const Algebra& alg, const LeftModule& m,
    const std::optional<std::vector<SparseVec>>& radical = std::nullopt);

std::string algebra_to_json(const Algebra& alg);
Algebra algebra_from_json(const std::string& text);

}  // namespace gl2
