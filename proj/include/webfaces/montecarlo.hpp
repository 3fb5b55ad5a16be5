#pragma once

// Simulation harnesses: the i.i.d. walk behind the crossing events, the face
// census over uniform random webs, and z-score comparison with predictions.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "webfaces/arrangement.hpp"
#include "webfaces/exactmath.hpp"

namespace webfaces {

struct WalkOracleResult {
  LatticePointEZ start;
  int d = 0;
  std::int64_t trials = 0;
  std::int64_t censored = 0;  // walks still running after the step cap
  std::map<LatticePointEZ, std::int64_t> hits;

  double frequency(LatticePointEZ a) const;
  /// Binomial standard error of frequency(a).
  double std_error(LatticePointEZ a) const;
};

/// Runs `trials` walks with steps (1,0), (-1,1), (0,-1) from `start` until
/// they leave the interior of Q_d (x, y >= 1, x + y > d). Trials are split into
/// fixed blocks with their own streams, so the result does not depend on the
/// thread count. A start on the boundary is absorbed at once. Throws
/// std::invalid_argument for a start outside Q_d.
WalkOracleResult walk_oracle(LatticePointEZ start, int d, std::int64_t trials, std::uint64_t seed,
                             std::int64_t step_cap = 100000000, int threads = 0);

struct CensusConfig {
  int n = 0;
  std::int64_t sample_count = 1;
  std::uint64_t seed = 0;
  double eps = 0.1;       // first/last eps * 3n steps excluded
  int depth_max = 16;     // deeper faces are tallied at depth_max
  int type_max_len = 8;   // longer types are only counted in faces
  bool exhaustive = false;  // every path once instead of sampling
  int threads = 0;          // 0: WEBFACES_THREADS or hardware concurrency
};

/// Per-sample tally with its sum of squares, for standard errors.
struct Tally {
  std::int64_t count = 0;
  std::int64_t sum_sq = 0;
  void add(std::int64_t c) { count += c; sum_sq += c * c; }
  Tally& operator+=(const Tally& o) { count += o.count; sum_sq += o.sum_sq; return *this; }
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct CensusResult {
  CensusConfig config;
  std::int64_t samples = 0;
  std::int64_t window_lo = 0;  // first steps s with window_lo <= s <= window_hi count
  std::int64_t window_hi = 0;
  std::int64_t faces = 0;      // interior faces with first step in the window
  std::int64_t ambiguous = 0;
  std::int64_t irregular = 0;
  std::map<std::pair<int, int>, Tally> size_depth;  // (web size, depth)
  std::map<FaceType, Tally> types;

  std::int64_t window_steps() const { return window_hi - window_lo + 1; }
  /// Observations per sample, for densities: samples * window_steps.
  double exposure() const { return static_cast<double>(samples) * static_cast<double>(window_steps()); }
  /// Empirical P(size = s | depth >= d) with its binomial standard error.
  std::pair<double, double> size_given_depth(int size, int d) const;
  friend bool operator==(const CensusResult& a, const CensusResult& b) {
    return a.samples == b.samples && a.window_lo == b.window_lo && a.window_hi == b.window_hi &&
           a.faces == b.faces && a.ambiguous == b.ambiguous && a.irregular == b.irregular &&
           a.size_depth == b.size_depth && a.types == b.types;
  }
};

/// Throws std::invalid_argument for n < 1, sample_count < 1 or eps outside
/// [0, 1/2).
CensusResult census(const CensusConfig& cfg);

/// Worker count: explicit value, else WEBFACES_THREADS, else the hardware.
int resolve_threads(int requested);

struct Prediction {
  std::string key;
  double expected = 0.0;  // expected count
  double observed = 0.0;
  double std_error = 0.0;  // of the observed count
};

struct ComparisonRow {
  std::string key;
  double observed = 0.0;
  double expected = 0.0;
  double z = 0.0;
  bool flagged = false;        // |z| > threshold
  bool zero_variance = false;  // std_error == 0; z not computed
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  int flagged = 0;
  bool ok() const { return flagged == 0; }
};

ComparisonReport compare(const std::vector<Prediction>& cells, double threshold = 3.0);

/// Expected counts of face types in a census, density times exposure, and
/// the observed counts with standard errors from the per-sample tallies.
std::vector<Prediction> face_type_predictions(const CensusResult& c, const std::vector<FaceType>& types,
                                              RedOffset form = RedOffset::Two);

/// Face types ordered by observed count, most frequent first.
std::vector<FaceType> most_frequent_types(const CensusResult& c, std::size_t k);

}  // namespace webfaces
