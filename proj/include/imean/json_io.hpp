#pragma once

// JSON encodings of the artifact's values. Parsers throw Error(MalformedInput)
// for shape problems; semantic validation errors pass through unchanged.

#include <json.hpp>

#include "imean/af_tower.hpp"
#include "imean/affine.hpp"
#include "imean/bim.hpp"
#include "imean/means.hpp"
#include "imean/paradox.hpp"
#include "imean/rational.hpp"
#include "imean/rook.hpp"
#include "imean/typemonoid.hpp"

namespace imean::json {

using nlohmann::json;

json to_json(const PartialBijection& a);
PartialBijection pbij_from_json(const json& j);
json to_json(const SubsetIdempotent& e);
SubsetIdempotent subset_from_json(const json& j);
// Inside a known ground: a bare graph or member list is accepted too.
PartialBijection pbij_from_json(const json& j, GroundSet ground);
SubsetIdempotent subset_from_json(const json& j, GroundSet ground);

json to_json(const Rational& q);
Rational rational_from_json(const json& j);
json to_json(const RationalVector& v);
RationalVector rational_vector_from_json(const json& j);

// {"ground", "generators", "cap"} or {"semisimple": [...]}.
struct MonoidSpec {
  std::optional<SemisimpleSpec> semisimple;
  GroundSet ground{1};
  std::vector<PartialBijection> generators;
  std::size_t cap = 100000;

  FiniteBIM build() const;
};
MonoidSpec monoid_spec_from_json(const json& j);
json to_json(const MonoidSpec& spec);
json summary(const FiniteBIM& s);

json to_json(const MeanVector& mu);
MeanVector mean_vector_from_json(const json& j);
json to_json(const MeanSolution& sol);
MeanSolution mean_solution_from_json(const json& j);

json to_json(const RookMatrix<PartialBijection>& a);
RookMatrix<PartialBijection> rook_from_json(const json& j);

json to_json(const AFTower& t);
AFTower tower_from_json(const json& j);
json to_json(const TowerMean& mu);
TowerMean tower_mean_from_json(const json& j);

json to_json(const TypeElement& x);
TypeElement type_element_from_json(const json& j);
json to_json(const TypePresentation& p);
// Generators, relations and unit only; δ needs a presentation built from a monoid.
TypePresentation type_presentation_from_json(const json& j);

json to_json(const PeriodicSet& s);
PeriodicSet periodic_set_from_json(const json& j);
json to_json(const AffinePiece& p);
AffinePiece affine_piece_from_json(const json& j);
json to_json(const AffineMap& a);
AffineMap affine_from_json(const json& j);
// A list of maps, or {"generators": [...]}.
std::vector<AffineMap> affine_list_from_json(const json& j);
json to_json(const ParadoxCertificate& c);
ParadoxCertificate certificate_from_json(const json& j);

json to_json(const KuratowskiInput& in);
KuratowskiInput kuratowski_from_json(const json& j);
json to_json(const KuratowskiResult& r);
KuratowskiResult kuratowski_result_from_json(const json& j, GroundSet ground);

}  // namespace imean::json
