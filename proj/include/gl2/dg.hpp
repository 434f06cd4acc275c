// dg.hpp
// Complexes of bimodules, homology, Hom complexes, graded dg algebras c(a,t)
// and the two-term complexes Y_i, Y_i'.
//
// Conventions: differentials lower the homological degree by one, and
// d(u (x) v) = du (x) v + (-1)^|u| u (x) dv. The standard degree of a basis vector
// is the last coordinate of its degree vector.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gl2/bimodule.hpp"
#include "gl2/operators.hpp"

namespace gl2 {

// homological degrees and differential of a dg algebra, by basis element
struct DgData {
  std::vector<int> hdeg;
  SpMap d;
};

// All terms live in one bimodule; hdeg[i] is the homological degree of basis
// vector i. ldg/rdg are set when the acting algebras carry a differential.
struct Complex {
  Bimodule total;
  std::vector<int> hdeg;
  SpMap d;
  std::shared_ptr<const DgData> ldg, rdg;

  int dim() const { return total.dim; }
  int min_h() const;
  int max_h() const;
  std::vector<int> term(int h) const;
  int sdeg(int i) const { return total.graded() ? total.deg[i].back() : 0; }
};

Bimodule direct_sum(const std::vector<Bimodule>& parts);
// projective cover has the same dimension (exact for basic algebras, radical
// taken from algebra_generators)
bool is_projective_bimodule(const Bimodule& m);
bool is_left_projective(const Bimodule& m);
Complex complex_from_bimodule(const Bimodule& m, int h = 0);
// top in degree h, bottom in degree h - 1, differential f: top -> bottom
Complex two_term(const Bimodule& top, int h, const Bimodule& bottom, const SpMap& f);
// d^2 = 0, degrees, and the (signed) Leibniz rule for both actions
bool complex_ok(const Complex& c, std::string* why = nullptr);
// (M<k>)^(i) = M^(i+k)
Complex shift_standard(const Complex& c, int k);

struct TensorComplex {
  Complex result;
  TensorProduct tp;
};
TensorComplex total_tensor(const Complex& x, const Complex& y);

using Bidegree = std::pair<int, int>;  // (homological, standard)

struct Homology {
  std::map<Bidegree, int> dims;
  // induced bimodules, one per homological degree; only for ordinary algebras
  std::map<int, Bimodule> modules;
  // cycles representing the basis of H_h, as vectors on the total basis
  std::map<int, std::vector<SparseVec>> reps;

  int total_dim() const;
  // coordinates in reps[h] of a cycle of degree h
  SparseVec coords(int h, const SparseVec& z) const;

  struct Slice {
    std::vector<int> idx;
    std::shared_ptr<EchelonBasis> bound, cyc;
    int first = 0;  // index in reps[h] of the first representative of this slice
  };
  std::map<int, std::vector<Slice>> slices;
  std::vector<int> slice_of;  // total index -> slice number within its degree
  std::vector<int> pos_of;    // total index -> position within its slice
};

Homology homology(const Complex& c, bool with_modules = true);
// alternating sums of term dimensions per standard degree
std::map<int, long long> euler_terms(const Complex& c);
std::map<int, long long> euler_homology(const Homology& h);

// Bimodule chain maps X -> Y preserving both degrees.
bool is_chain_map(const Complex& x, const Complex& y, const SpMap& f);
std::vector<SpMap> chain_map_basis(const Complex& x, const Complex& y);
// matrices of H(f) per homological degree, columns indexed by hx.reps
std::map<int, Matrix> homology_map(const Homology& hx, const Homology& hy, const SpMap& f,
                                   u32 p);
bool induces_iso(const Homology& hx, const Homology& hy, const SpMap& f, u32 p);

struct QuasiIsoResult {
  SearchStatus status = SearchStatus::none;
  std::optional<SpMap> map;
  bool tables_equal = false;
  int space_dim = 0;
  int samples = 0;
  std::string reason;
};
QuasiIsoResult quasi_iso_certificate(const Complex& x, const Complex& y, const SearchLimits& lim = {},
                                     const std::optional<SpMap>& candidate = std::nullopt);

// c_p with the summed grading, the algebra the complexes Y_i live over; a
// nonzero field_char builds the same quiver algebra over another prime field
AlgebraPtr graded_cp(u32 p, u32 field_char = 0);
// Y_i: c e_i (x) e_i c (degree 1) -> c (degree 0) by multiplication.
// Y_i': c (degree 0) -> c e_i (x) e_i c <2> (degree -1) by the coevaluation map.
Complex ks_complex(const AlgebraPtr& c, int i, bool primed);
Complex ks_complex(u32 p, int i, bool primed);
// left-to-right total tensor over c; the empty word gives c in degree 0
Complex braid_word_complex(const AlgebraPtr& c, const std::vector<int>& word);

struct DgAlgebra {
  TwistedAlgebra tw;
  AlgebraPtr alg;
  std::shared_ptr<const DgData> dg;
  std::vector<std::vector<int>> power_h;  // homological degree on t^j
  std::vector<SpMap> power_d;             // differential on t^j
};
// c(a,t) = sum_j c^(j) (x) Tot(t^j); t a complex of (a,a)-bimodules
DgAlgebra dg_twisted_algebra(const AlgebraPtr& c, const AlgebraPtr& a, const Complex& t,
                             int max_power = -1);
// d^2 = 0 and the Leibniz rule on all basis pairs
bool dg_algebra_ok(const DgAlgebra& e);
Complex regular_complex(const DgAlgebra& e);
// The algebra map c(a,t) -> c(a,t') induced by a chain map eps: t -> t' of
// (a,a)-bimodules; both sides must be built over the same c and a.
SpMap induced_twisted_map(const DgAlgebra& from, const DgAlgebra& to, const SpMap& eps);
// the same complex seen over the ground field
Complex forget_actions(const Complex& c);
// x(a,t) for a standardly graded complex x of (c,d)-bimodules
Complex dg_twisted_bimodule(const Complex& x, const DgAlgebra& left, const DgAlgebra& right);

// Hom over the left algebra: degree n holds the maps raising the homological
// degree by n, and the standard degree is the shift j of the maps.
// D(f) = d f - (-1)^n f d.
struct HomComplex {
  Complex cx;  // over (M.right, N.right) with actions, otherwise over F
  std::vector<SpMap> maps;
  std::string warning;  // set when a term of M is not projective as a left module

  // coordinates of a map lying in the span of maps; nullopt otherwise
  std::optional<SparseVec> coords(const SpMap& f) const;

  struct Class {
    int u, w, n, j;
    int first, count;
    std::vector<std::pair<int, int>> entries;  // (row, col) positions read off
    Matrix inv;
  };
  std::vector<Class> classes;
  std::map<std::array<int, 4>, int> class_index;  // (u, w, n, j) -> class
  std::vector<int> src_rv, src_h, src_s, tgt_rv, tgt_h, tgt_s;
};
HomComplex hom_complex(const Complex& m, const Complex& n, bool with_actions = true);

struct Resolution {
  Complex res;  // terms in degrees 0..len
  SpMap aug;    // degree-0 term -> M
  int length = 0;
};
// minimal projective bimodule resolution by iterated projective covers
Resolution min_proj_resolution(const Bimodule& m, int max_len = 12);

struct GammaResult {
  SearchStatus status = SearchStatus::none;  // found = gamma is a quasi-isomorphism
  std::map<Bidegree, int> source, target;    // homology tables of d(a,t) and End(x(a,t))
  std::string reason;
};
GammaResult endomorphism_gamma_check(const AlgebraPtr& c, const AlgebraPtr& d, const Complex& x,
                                     const AlgebraPtr& a, const Complex& t);

std::string complex_to_json(const Complex& c, const std::string& left_ref,
                            const std::string& right_ref);
Complex complex_from_json(const std::string& text, const AlgebraPtr& left, const AlgebraPtr& right);

}  // namespace gl2
