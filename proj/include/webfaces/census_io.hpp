#pragma once

// JSON and CSV forms of census, walk and ratio results. Layouts are described
// by the schemas under docs/.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "webfaces/dirichlet.hpp"
#include "webfaces/montecarlo.hpp"

namespace webfaces {

nlohmann::json to_json(const CensusResult& c);
/// Inverse of to_json. Throws nlohmann::json::exception on malformed input.
CensusResult census_from_json(const nlohmann::json& j);

/// One row per (size, depth) cell, then one per face type:
/// kind,key,depth,count,sum_sq
void write_census_csv(std::ostream& os, const CensusResult& c);

nlohmann::json to_json(const WalkOracleResult& w);
nlohmann::json to_json(const ExtensionRatio& r, int d, int fa, int fb, StartColor color);
nlohmann::json to_json(const ComparisonReport& r);

}  // namespace webfaces
