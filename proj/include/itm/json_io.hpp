#pragma once

// JSON forms of the core types. Rationals are written as lowest-terms "p/q"
// strings and read from strings ("p/q", integers, exact decimals) or integers.

#include <json.hpp>

#include "itm/approximation.hpp"
#include "itm/conjugacy.hpp"
#include "itm/itm_map.hpp"
#include "itm/measure.hpp"
#include "itm/piecewise.hpp"

namespace itm::io {

using Json = nlohmann::json;

Json to_json(const Rational& value);
Rational rational_from_json(const Json& j, const std::string& where);
std::vector<Rational> rationals_from_json(const Json& j, const std::string& where);
Json to_json(const std::vector<Rational>& values);

Json to_json(const ArcSet& set);
ArcSet arcset_from_json(const Json& j);

Json to_json(const Itm& map);
Itm itm_from_json(const Json& j);

Json to_json(const Measure& mu);
Measure measure_from_json(const Json& j);

/// Pieces carry {"interval":{"lo","hi"}, "affine":{"a","b"}}; an optional
/// "h" list replaces the default discontinuity set.
Json to_json(const PiecewiseMap& map);
PiecewiseMap piecewise_from_json(const Json& j);

Json to_json(const AttractorResult& result);
Json to_json(const HomtervalReport& report);
Json to_json(const Relation& relation);
Json to_json(const RelationSystem& system);
Relation relation_from_json(const Json& j);

/// {"breakpoints":[…],"shifts":[…],"precision":N?}
ParameterVector parameters_from_json(const Json& j);
Json to_json(const ParameterVector& params);

Json to_json(const CauchyReport& report);
Json to_json(const CollisionReport& report);
Json to_json(const Iem& iem);
Json to_json(const IemReport& report);
Json to_json(const LimitReport& report);
Json to_json(const FunctionalResidual& residual);
Json to_json(const VisitFrequencyTable& table);
Json to_json(const DefectReport& report);
Json to_json(const WanderingReport& report);

}  // namespace itm::io
