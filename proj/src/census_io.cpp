#include "webfaces/census_io.hpp"

#include <ostream>

namespace webfaces {

using nlohmann::json;

json to_json(const CensusResult& c) {
  json cfg = {{"n", c.config.n},
              {"sample_count", c.config.sample_count},
              {"seed", c.config.seed},
              {"eps", c.config.eps},
              {"depth_max", c.config.depth_max},
              {"type_max_len", c.config.type_max_len},
              {"exhaustive", c.config.exhaustive}};
  json sd = json::array();
  for (const auto& [k, t] : c.size_depth)
    sd.push_back({{"size", k.first}, {"depth", k.second}, {"count", t.count}, {"sum_sq", t.sum_sq}});
  json ty = json::array();
  for (const auto& [k, t] : c.types)
    ty.push_back({{"type", to_string(k)}, {"count", t.count}, {"sum_sq", t.sum_sq}});
  return {{"config", cfg},
          {"samples", c.samples},
          {"window", {c.window_lo, c.window_hi}},
          {"faces", c.faces},
          {"ambiguous", c.ambiguous},
          {"irregular", c.irregular},
          {"size_depth", sd},
          {"types", ty}};
}

CensusResult census_from_json(const json& j) {
  CensusResult c;
  const json& cfg = j.at("config");
  c.config.n = cfg.at("n").get<int>();
  c.config.sample_count = cfg.at("sample_count").get<std::int64_t>();
  c.config.seed = cfg.at("seed").get<std::uint64_t>();
  c.config.eps = cfg.at("eps").get<double>();
  c.config.depth_max = cfg.at("depth_max").get<int>();
  c.config.type_max_len = cfg.at("type_max_len").get<int>();
  c.config.exhaustive = cfg.at("exhaustive").get<bool>();
  c.samples = j.at("samples").get<std::int64_t>();
  c.window_lo = j.at("window").at(0).get<std::int64_t>();
  c.window_hi = j.at("window").at(1).get<std::int64_t>();
  c.faces = j.at("faces").get<std::int64_t>();
  c.ambiguous = j.at("ambiguous").get<std::int64_t>();
  c.irregular = j.at("irregular").get<std::int64_t>();
  for (const json& e : j.at("size_depth"))
    c.size_depth[{e.at("size").get<int>(), e.at("depth").get<int>()}] = {e.at("count").get<std::int64_t>(),
                                                                        e.at("sum_sq").get<std::int64_t>()};
  for (const json& e : j.at("types"))
    c.types[parse_face_type(e.at("type").get<std::string>())] = {e.at("count").get<std::int64_t>(),
                                                               e.at("sum_sq").get<std::int64_t>()};
  return c;
}

void write_census_csv(std::ostream& os, const CensusResult& c) {
  os << "kind,key,depth,count,sum_sq\n";
  for (const auto& [k, t] : c.size_depth)
    os << "size," << k.first << ',' << k.second << ',' << t.count << ',' << t.sum_sq << '\n';
  for (const auto& [k, t] : c.types) os << "type,\"" << to_string(k) << "\",," << t.count << ',' << t.sum_sq << '\n';
}

json to_json(const WalkOracleResult& w) {
  json hits = json::array();
  for (const auto& [a, c] : w.hits)
    hits.push_back({{"point", {a.x, a.y}}, {"count", c}, {"frequency", w.frequency(a)}, {"std_error", w.std_error(a)}});
  return {{"start", {w.start.x, w.start.y}}, {"d", w.d}, {"trials", w.trials}, {"censored", w.censored}, {"hits", hits}};
}

json to_json(const ExtensionRatio& r, int d, int fa, int fb, StartColor color) {
  return {{"d", d},
          {"fa", fa},
          {"fb", fb},
          {"color", color == StartColor::Blue ? "B" : "R"},
          {"ratio", r.ratio},
          {"tail_bound", r.tail_bound},
          {"residual", r.residual},
          {"denominator", r.denominator},
          {"degenerate", r.degenerate},
          {"trunc", r.T},
          {"cap", r.L},
          {"convention", r.convention}};
}

json to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"key", row.key},
                    {"observed", row.observed},
                    {"expected", row.expected},
                    {"z", row.z},
                    {"flagged", row.flagged},
                    {"zero_variance", row.zero_variance}});
  return {{"flagged", r.flagged}, {"ok", r.ok()}, {"rows", rows}};
}

}  // namespace webfaces
