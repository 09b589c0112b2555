#pragma once

#include "ssvcg/equilibrium.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/rebate_design.hpp"
#include "ssvcg/sampling.hpp"
#include "ssvcg/surrogate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ssvcg {

using json = nlohmann::json;

/// Accepts either {"surrogate": {...}} or the inner object
/// {"kind": "power_law", "alpha": 0.5}.
SurrogateSpec surrogate_from_json(json const &doc);
json to_json(SurrogateSpec const &spec);

json to_json(BidProfile const &theta);
json to_json(MechanismOutcome const &outcome);
json to_json(TheoryConstants const &constants);
json to_json(LpStats const &stats);

/// [{"kind": "power", "w": 2.0, "beta": 0.5}, ...]; an empty list is rejected.
std::vector<ValuationSpec> valuations_from_json(json const &doc);

/// Reads "n" and "c" (c_2 .. c_{n-1}). Rejects coefficients whose partial
/// sums go negative, since such rebates break voluntary participation.
RebateCoefficients coefficients_from_json(json const &doc);

json read_json_file(std::string const &path);

}  // namespace ssvcg
