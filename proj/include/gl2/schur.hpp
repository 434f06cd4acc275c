// schur.hpp
// Schur algebras S(2,r) as commutants of the symmetric group on (F_p^2)^{(x)r},
// their blocks, radicals and basic algebras.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gl2/bimodule.hpp"
#include "gl2/iso_check.hpp"

namespace gl2 {

// Basis: orbit sums of the symmetric group acting on pairs (i, j) of words in
// {0,1}^r. Vertices are the weight idempotents xi_(a,b), a + b = r, indexed by
// the number b of ones; orbit (i, j) lies in xi_wt(i) S xi_wt(j).
struct CommutantAlgebra {
  u32 p = 2;
  int r = 0;
  AlgebraPtr alg;
  std::vector<std::pair<u32, u32>> rep;  // representative pair of each orbit
  std::vector<int> orbit;                // pair i * 2^r + j -> orbit

  // the orbit sum as a 2^r x 2^r matrix
  SpMap matrix(int k) const;
};

constexpr int kSchurMaxR = 10;
// throws AlgebraError("budget: ...") for r outside 0..kSchurMaxR
CommutantAlgebra build_schur(u32 p, int r);

// Primitive idempotents refining the vertex idempotents, with their local data.
struct Idempotents {
  std::vector<SparseVec> prim;  // pairwise orthogonal, summing to 1
  std::vector<int> vertex;      // vertex idempotent each one refines
  std::vector<int> cls;         // isomorphism class
  int num_classes = 0;
  std::vector<std::vector<SparseVec>> rad_corner;  // basis of rad(f A f), per idempotent
};

struct SplitError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Throws SplitError("not split over F_p") when a corner has a residue field
// larger than F_p, and SplitError("splitting failed") after the retry bound.
Idempotents primitive_idempotents(const Algebra& a, u64 seed = 0, int retries = 64);

struct BlockData {
  SparseVec central;            // central idempotent
  std::vector<int> prims;       // indices into Idempotents::prim
  std::vector<int> classes;     // isomorphism classes in the block
  std::vector<int> simple_dims; // per class: dimension of the simple module
  int corner_dim = 0;           // dim e A e for the central idempotent e
  std::vector<std::vector<int>> cartan;  // of the basic algebra, over classes
};

struct BlockSplit {
  Idempotents idem;
  std::vector<BlockData> blocks;
};
BlockSplit block_split(const Algebra& a, u64 seed = 0);

// Basis of the Jacobson radical. Assembled from the primitive idempotents and
// certified: nilpotent, and dim A - dim rad = sum of squares of simple dims.
std::vector<SparseVec> jacobson_radical(const Algebra& a, u64 seed = 0);
std::vector<SparseVec> jacobson_radical(const Algebra& a, const Idempotents& idem);

// e A e for one primitive idempotent per class of the block; vertices follow
// block.classes. Ungraded; the basis is the idempotents plus a radical basis.
Algebra basic_algebra(const Algebra& a, const Idempotents& idem, const BlockData& block);

struct SchurReport {
  u32 p = 2;
  int n = 0;
  int literal_r = 0;        // p^{n+1} - 1
  int literal_simples = 0;  // simples in the principal block of S(2, literal_r)
  int r = 0;                // the Schur algebra whose principal block is used
  bool found_block = false; // a principal block with p^n simples was found
  u64 seed = 0;
  int schur_dim = 0;
  int num_blocks = 0;
  std::vector<int> simple_dims;  // principal block
  int basic_dim = 0;
  std::vector<std::vector<int>> basic_cartan, an_cartan;
  int an_dim = 0;
  bool cartan_match = false;  // up to a vertex bijection
  IsoStatus iso = IsoStatus::inconclusive;
  bool iso_attempted = false;
  std::optional<IsoCertificate> cert;  // A_n -> basic algebra
  std::string note;

  std::string to_json() const;
  std::string to_text() const;
};

// First principal block with p^n simples among S(2, p^{n+1} - 1) and
// S(2, p^{n+1} - 2), against A_n.
SchurReport gl2_block_report(u32 p, int n, u64 seed = 0, bool attempt_iso = true);

}  // namespace gl2
