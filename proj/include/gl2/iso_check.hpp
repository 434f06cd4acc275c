// iso_check.hpp
// Certified isomorphisms between tightly graded basic algebras.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl2/algebra.hpp"

namespace gl2 {

struct IsoCertificate {
  std::vector<int> vertex_map;  // vertex of A -> vertex of B
  SpMap map;                    // dim B x dim A, column i = image of basis element i
  long long pairs_checked = 0;  // basis pairs verified multiplicative
};

enum class IsoStatus { found, none, inconclusive };

struct IsoResult {
  IsoStatus status = IsoStatus::none;
  std::optional<IsoCertificate> cert;
  long long nodes = 0;
  std::string reason;
};

struct IsoOptions {
  long long node_budget = 1000000;
  int max_bijections = 100000;
  // b is ungraded and its basis is the vertex idempotents plus a basis of its
  // radical; degree-1 generators of a may go anywhere in the radical
  bool radical_target = false;
  // further filter on certificates; the search goes on while it returns false
  std::function<bool(const IsoCertificate&)> accept;
};

// [tgt][src] -> dimension of each total degree
using GradedCartan = std::vector<std::vector<std::vector<int>>>;
GradedCartan graded_cartan(const Algebra& a);

// Vertex bijections preserving the graded Cartan data (which includes the
// degree-1 arrow counts). Complete up to the limit.
std::vector<std::vector<int>> quiver_match(const Algebra& a, const Algebra& b, int limit = 100000);

// Graded isomorphism search: idempotents go to the matched idempotents and degree-1
// elements to degree-1 elements. Both algebras must be tight and generated in
// degree 1, otherwise the answer is inconclusive.
IsoResult find_iso(const Algebra& a, const Algebra& b, const IsoOptions& opt = {});

bool verify_iso(const Algebra& a, const Algebra& b, const IsoCertificate& cert);
IsoCertificate invert_certificate(const IsoCertificate& cert);

std::string certificate_to_json(const IsoCertificate& cert, const std::string& source_ref,
                                const std::string& target_ref);
IsoCertificate certificate_from_json(const std::string& text);

}  // namespace gl2
