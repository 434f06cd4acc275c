// bimodule.hpp
// Finite-dimensional bimodules over algebras on vertex-adapted bases.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gl2/algebra.hpp"

namespace gl2 {

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

// Same object, or identical presentations (basis endpoints and products).
bool same_algebra(const Algebra& a, const Algebra& b);

struct Bimodule {
  AlgebraPtr left, right;
  u32 p = 2;
  int dim = 0;
  std::vector<SpMap> lact;  // per left basis element: m -> a.m
  std::vector<SpMap> ract;  // per right basis element: m -> m.b
  std::vector<int> lv, rv;  // basis vector i lies in e_lv[i] M e_rv[i]
  std::vector<std::vector<int>> deg;  // optional, empty when ungraded

  bool graded() const { return !deg.empty(); }
  // e_l M e_r as basis indices
  std::vector<int> block(int l, int r) const;
};

Bimodule regular_bimodule(const AlgebraPtr& a);
// A e_i (x)_F e_j A
Bimodule projective_bimodule(const AlgebraPtr& a, int i, int j);
// left action of a, right action of b, both through the given idempotents only
Bimodule simple_bimodule(const AlgebraPtr& a, int i, const AlgebraPtr& b, int j);
// Uses the left/right idempotent actions to fill lv/rv; throws if the basis is
// not vertex-adapted.
void assign_vertices(Bimodule& m);
bool bimodule_invariants_hold(const Bimodule& m);

// Idempotents plus a complement of rad^2 in rad when the algebra is tight,
// otherwise idempotents plus every other basis element.
std::vector<int> algebra_generators(const Algebra& a);

struct TensorProduct {
  Bimodule result;
  int dim_m = 0, dim_n = 0;
  // representative pure tensor (i, j) of each result basis vector
  std::vector<std::pair<int, int>> rep;
  // image of m_i (x) n_j, zero when the endpoints do not match
  SparseVec project(int i, int j) const;
  SparseVec project(const SparseVec& m, const SparseVec& n) const;

  std::unordered_map<long long, SparseVec> image;
};

TensorProduct tensor_over_algebra(const Bimodule& m, const Bimodule& n);

// M* over (B, A) with (b.f.a)(m) = f(a.m.b); degrees are negated.
Bimodule dual(const Bimodule& m);

// Basis of the bimodule maps M -> N. With a shift, only maps sending degree d
// to degree d + shift.
std::vector<SpMap> intertwiner_basis(const Bimodule& m, const Bimodule& n,
                                     const std::vector<int>* shift = nullptr);
// Same space with each map flattened row-major (dim N x dim M) into one row.
Matrix intertwiner_space(const Bimodule& m, const Bimodule& n);
bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const SpMap& f);

enum class SearchStatus { found, none, inconclusive };

struct IsoSearch {
  SearchStatus status = SearchStatus::none;
  std::optional<SpMap> map;
  int space_dim = 0;
  int samples = 0;
};

struct SearchLimits {
  u64 seed = 0;
  int retries = 64;
  // exhaustive enumeration is attempted when p^space_dim is at most this
  u64 exhaustive_cap = 1u << 16;
};

// Looks for an invertible element in a linear space of maps (rows of basis).
IsoSearch find_invertible(const std::vector<SpMap>& basis, int n, u32 p, const SearchLimits& lim);
IsoSearch iso_certificate(const Bimodule& m, const Bimodule& n, const SearchLimits& lim = {},
                          const std::vector<int>* shift = nullptr);

// Bimodule structure on M pulled back along algebra maps into its left and right
// algebras (given as basis-level matrices from the new algebras).
Bimodule restrict_scalars(const Bimodule& m, const AlgebraPtr& new_left, const SpMap& phi_left,
                          const AlgebraPtr& new_right, const SpMap& phi_right);

// Canonical isomorphisms A (x)_A M -> M and M (x)_B B -> M.
SpMap left_unit_iso(const TensorProduct& am, const Bimodule& m);
SpMap right_unit_iso(const TensorProduct& mb, const Bimodule& m);

struct OneCell {
  Bimodule m;   // over (A, B)
  Bimodule t;   // over (A, A)
  Bimodule t2;  // over (B, B)
  SpMap phi;    // T (x)_A M -> M (x)_B T', in the bases built by tensor_over_algebra
};

bool one_cell_check(const OneCell& cell);
// the identity 1-cell (A, phi_A) for (A, T)
OneCell identity_one_cell(const Bimodule& t);

std::string bimodule_to_json(const Bimodule& m, const std::string& left_ref,
                             const std::string& right_ref);
// actions are read back into m, whose algebras must already be set
Bimodule bimodule_from_json(const std::string& text, const AlgebraPtr& left,
                            const AlgebraPtr& right);

}  // namespace gl2
