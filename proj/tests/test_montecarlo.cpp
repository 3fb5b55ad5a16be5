#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "webfaces/census_io.hpp"
#include "webfaces/montecarlo.hpp"
#include "webfaces/sampler.hpp"
#include "webfaces/web.hpp"

using namespace webfaces;

TEST_CASE("walk oracle matches exact hitting probabilities at d = 0") {
  for (const LatticePointEZ start : {LatticePointEZ{1, 1}, LatticePointEZ{2, 1}, LatticePointEZ{1, 2}}) {
    const WalkOracleResult w = walk_oracle(start, 0, 1000000, 42);
    CHECK(w.censored == 0);
    std::int64_t total = 0;
    for (const auto& [a, c] : w.hits) total += c;
    CHECK(total == w.trials);
    for (const LatticePointEZ a : {LatticePointEZ{0, 2}, LatticePointEZ{0, 3}, LatticePointEZ{1, 0}, LatticePointEZ{2, 0}}) {
      const double exact = h_point_numeric(a, start);
      INFO("start (" << start.x << "," << start.y << ") target (" << a.x << "," << a.y << ")");
      CHECK(std::abs(w.frequency(a) - exact) < 4 * w.std_error(a));
    }
  }
}

TEST_CASE("walk oracle: boundary starts, censoring, errors") {
  const WalkOracleResult w = walk_oracle({0, 4}, 0, 10, 1);
  CHECK(w.hits.size() == 1);
  CHECK(w.frequency({0, 4}) == 1.0);
  const WalkOracleResult cut = walk_oracle({5, 5}, 0, 1000, 1, 3);
  CHECK(cut.censored > 0);
  CHECK_THROWS_AS(walk_oracle({1, 1}, 3, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(walk_oracle({-1, 2}, 0, 10, 1), std::invalid_argument);
}

TEST_CASE("walk oracle and census do not depend on the thread count") {
  const auto a = walk_oracle({2, 2}, 1, 300000, 9, 100000000, 1);
  const auto b = walk_oracle({2, 2}, 1, 300000, 9, 100000000, 3);
  CHECK(a.hits == b.hits);

  CensusConfig cfg;
  cfg.n = 60;
  cfg.sample_count = 40;
  cfg.seed = 5;
  cfg.threads = 1;
  const CensusResult one = census(cfg);
  cfg.threads = 4;
  const CensusResult four = census(cfg);
  CHECK(one == four);
  cfg.seed = 6;
  CHECK_FALSE(census(cfg) == one);
}

TEST_CASE("exhaustive census agrees with faces traced on the webs") {
  for (int n = 2; n <= 5; ++n) {
    CensusConfig cfg;
    cfg.n = n;
    cfg.eps = 0;
    cfg.exhaustive = true;
    const CensusResult c = census(cfg);
    CHECK(c.samples == static_cast<std::int64_t>(count_webs(n)));
    std::map<int, std::int64_t> by_size_census, by_size_web;
    for (const auto& [k, t] : c.size_depth) by_size_census[k.first] += t.count;
    for (const LatticePath& p : enumerate_paths(n))
      for (int s : check_web(to_web(build_mdiagram(p))).interior_face_sizes) ++by_size_web[s];
    CHECK(by_size_census == by_size_web);
    std::int64_t typed = 0;
    for (const auto& [k, t] : c.types) typed += t.count;
    CHECK(typed <= c.faces);
    CHECK(c.irregular == 0);
    for (const auto& [k, t] : c.size_depth) CHECK(k.first >= 6);
  }
}

TEST_CASE("n = 3 exhaustive census equals the committed golden") {
  std::ifstream f(WEBFACES_DOCS "/golden/census_n3.json");
  REQUIRE(f);
  const CensusResult golden = census_from_json(nlohmann::json::parse(f));
  CensusConfig cfg;
  cfg.n = 3;
  cfg.eps = 0;
  cfg.exhaustive = true;
  const CensusResult c = census(cfg);
  CHECK(c == golden);
  CHECK(c.faces == 3);
}

TEST_CASE("census JSON round trip and CSV layout") {
  CensusConfig cfg;
  cfg.n = 40;
  cfg.sample_count = 25;
  cfg.seed = 3;
  const CensusResult c = census(cfg);
  const CensusResult back = census_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(back == c);
  CHECK(back.config.n == 40);
  std::ostringstream os;
  write_census_csv(os, c);
  const std::string csv = os.str();
  CHECK(csv.rfind("kind,key,depth,count,sum_sq\n", 0) == 0);
  CHECK(csv.find("type,\"(1),") != std::string::npos);
}

TEST_CASE("census window and conditional size frequencies") {
  CensusConfig cfg;
  cfg.n = 100;
  cfg.sample_count = 20;
  cfg.eps = 0.1;
  const CensusResult c = census(cfg);
  CHECK(c.window_lo == 31);
  CHECK(c.window_hi == 270);
  CHECK(c.window_steps() == 240);
  const auto [p, se] = c.size_given_depth(6, 1);
  CHECK(p > 0.3);
  CHECK(p < 1.0);
  CHECK(se > 0);
  CHECK(c.size_given_depth(6, 1000).first == 0.0);
  cfg.eps = 0.5;
  CHECK_THROWS_AS(census(cfg), std::invalid_argument);
  cfg.eps = 0.1;
  cfg.n = 0;
  CHECK_THROWS_AS(census(cfg), std::invalid_argument);
}

TEST_CASE("compare: identical inputs, corrupted predictions, zero variance") {
  std::vector<Prediction> cells = {{"a", 100, 100, 10}, {"b", 50, 50, 7}};
  ComparisonReport r = compare(cells);
  CHECK(r.ok());
  for (const auto& row : r.rows) CHECK(row.z == 0.0);

  for (auto& c : cells) c.expected *= 1.5;
  r = compare(cells);
  CHECK(r.flagged == 2);

  r = compare({{"c", 3, 4, 0}});
  CHECK(r.rows[0].zero_variance);
  CHECK(r.rows[0].flagged);
  r = compare({{"c", 3, 3, 0}});
  CHECK(r.rows[0].zero_variance);
  CHECK_FALSE(r.rows[0].flagged);
}

TEST_CASE("face type predictions scale with exposure") {
  CensusConfig cfg;
  cfg.n = 80;
  cfg.sample_count = 30;
  const CensusResult c = census(cfg);
  const auto top = most_frequent_types(c, 3);
  REQUIRE(top.size() == 3);
  CHECK(c.types.at(top[0]).count >= c.types.at(top[1]).count);
  const auto preds = face_type_predictions(c, top);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    CHECK(preds[i].expected == doctest::Approx(face_type_probability(top[i]).value * c.exposure()));
    CHECK(preds[i].observed == static_cast<double>(c.types.at(top[i]).count));
    CHECK(preds[i].std_error > 0);
  }
}
