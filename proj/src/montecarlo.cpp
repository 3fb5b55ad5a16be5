#include "webfaces/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "webfaces/mdiagram.hpp"
#include "webfaces/rng.hpp"
#include "webfaces/sampler.hpp"

namespace webfaces {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WEBFACES_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <class Work>
void run_workers(int threads, Work&& work) {
  if (threads == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back([&work, w] { work(w); });
  for (auto& t : pool) t.join();
}

}  // namespace

double WalkOracleResult::frequency(LatticePointEZ a) const {
  auto it = hits.find(a);
  return it == hits.end() || trials == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
}

double WalkOracleResult::std_error(LatticePointEZ a) const {
  if (trials == 0) return 0.0;
  const double p = frequency(a);
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

WalkOracleResult walk_oracle(LatticePointEZ start, int d, std::int64_t trials, std::uint64_t seed,
                             std::int64_t step_cap, int threads) {
  auto interior = [d](LatticePointEZ p) { return p.x >= 1 && p.y >= 1 && p.x + p.y > d; };
  const bool on_boundary = start.x >= 0 && start.y >= 0 && start.x + start.y >= d && !interior(start);
  if (!interior(start) && !on_boundary) throw std::invalid_argument("walk_oracle: start outside Q_d");
  if (trials < 0) throw std::invalid_argument("walk_oracle: negative trial count");

  WalkOracleResult out;
  out.start = start;
  out.d = d;
  out.trials = trials;
  if (on_boundary) {
    if (trials > 0) out.hits[start] = trials;
    return out;
  }

  constexpr std::int64_t kBlock = 1 << 16;
  const std::int64_t blocks = (trials + kBlock - 1) / kBlock;
  const int nt = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(blocks, 1)));
  std::vector<WalkOracleResult> part(nt);
  constexpr std::array<LatticePointEZ, 3> steps{kV1, kV2, kV3};
  run_workers(nt, [&](int w) {
    for (std::int64_t b = w; b < blocks; b += nt) {
      Rng rng(stream_seed(seed, static_cast<std::uint64_t>(b)));
      const std::int64_t count = std::min(kBlock, trials - b * kBlock);
      for (std::int64_t i = 0; i < count; ++i) {
        LatticePointEZ p = start;
        std::int64_t k = 0;
        while (interior(p) && k < step_cap) {
          p = p + steps[rng.three()];
          ++k;
        }
        if (interior(p)) ++part[w].censored;
        else ++part[w].hits[p];
      }
    }
  });
  for (const auto& r : part) {
    out.censored += r.censored;
    for (const auto& [a, c] : r.hits) out.hits[a] += c;
  }
  return out;
}

std::pair<double, double> CensusResult::size_given_depth(int size, int d) const {
  double num = 0, den = 0;
  for (const auto& [key, t] : size_depth) {
    if (key.second < d) continue;
    den += static_cast<double>(t.count);
    if (key.first == size) num += static_cast<double>(t.count);
  }
  if (den == 0) return {0.0, 0.0};
  const double p = num / den;
  return {p, std::sqrt(p * (1 - p) / den)};
}

namespace {

void tally_sample(const LatticePath& path, const CensusConfig& cfg, std::int64_t lo, std::int64_t hi,
                  CensusResult& acc) {
  const Arrangement A = Arrangement::build(build_mdiagram(path));
  std::map<std::pair<int, int>, std::int64_t> sd;
  std::map<FaceType, std::int64_t> ty;
  for (const FaceRecord& f : classify_faces(A)) {
    if (f.first_step < lo || f.first_step > hi) continue;
    ++acc.faces;
    if (f.direction_ambiguous) ++acc.ambiguous;
    if (f.irregular) ++acc.irregular;
    ++sd[{f.web_size, std::min(f.depth, cfg.depth_max)}];
    if (static_cast<int>(f.type.counts.size()) <= cfg.type_max_len) ++ty[f.type];
  }
  for (const auto& [k, c] : sd) acc.size_depth[k].add(c);
  for (const auto& [k, c] : ty) acc.types[k].add(c);
  ++acc.samples;
}

}  // namespace

CensusResult census(const CensusConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("census: n must be positive");
  if (cfg.sample_count < 1 && !cfg.exhaustive) throw std::invalid_argument("census: sample_count must be positive");
  if (!(cfg.eps >= 0 && cfg.eps < 0.5)) throw std::invalid_argument("census: eps must lie in [0, 1/2)");

  const std::int64_t len = 3 * static_cast<std::int64_t>(cfg.n);
  const auto cut = static_cast<std::int64_t>(std::floor(cfg.eps * static_cast<double>(len)));
  CensusResult out;
  out.config = cfg;
  out.window_lo = cut + 1;
  out.window_hi = len - cut;

  std::vector<LatticePath> all;
  if (cfg.exhaustive) all = enumerate_paths(cfg.n);
  const std::int64_t total = cfg.exhaustive ? static_cast<std::int64_t>(all.size()) : cfg.sample_count;
  out.config.sample_count = total;
  const int nt = static_cast<int>(std::min<std::int64_t>(resolve_threads(cfg.threads), total));

  std::vector<CensusResult> part(nt);
  run_workers(nt, [&](int w) {
    for (std::int64_t i = w; i < total; i += nt) {
      if (cfg.exhaustive) tally_sample(all[i], cfg, out.window_lo, out.window_hi, part[w]);
      else tally_sample(sample_path(cfg.n, stream_seed(cfg.seed, static_cast<std::uint64_t>(i))), cfg,
                        out.window_lo, out.window_hi, part[w]);
    }
  });
  for (const auto& p : part) {
    out.samples += p.samples;
    out.faces += p.faces;
    out.ambiguous += p.ambiguous;
    out.irregular += p.irregular;
    for (const auto& [k, t] : p.size_depth) out.size_depth[k] += t;
    for (const auto& [k, t] : p.types) out.types[k] += t;
  }
  return out;
}

ComparisonReport compare(const std::vector<Prediction>& cells, double threshold) {
  ComparisonReport rep;
  for (const Prediction& c : cells) {
    ComparisonRow r;
    r.key = c.key;
    r.observed = c.observed;
    r.expected = c.expected;
    if (c.std_error > 0) {
      r.z = (c.observed - c.expected) / c.std_error;
      r.flagged = std::abs(r.z) > threshold;
    } else if (c.observed != c.expected) {
      r.zero_variance = true;
      r.flagged = true;
    } else {
      r.zero_variance = true;
    }
    if (r.flagged) ++rep.flagged;
    rep.rows.push_back(r);
  }
  return rep;
}

std::vector<Prediction> face_type_predictions(const CensusResult& c, const std::vector<FaceType>& types,
                                              RedOffset form) {
  std::vector<Prediction> out;
  const double N = static_cast<double>(c.samples);
  for (const FaceType& t : types) {
    Prediction p;
    p.key = to_string(t);
    p.expected = face_type_probability(t, form).value * c.exposure();
    if (auto it = c.types.find(t); it != c.types.end() && N > 0) {
      const double mean = static_cast<double>(it->second.count) / N;
      const double var = std::max(0.0, static_cast<double>(it->second.sum_sq) / N - mean * mean);
      p.observed = static_cast<double>(it->second.count);
      p.std_error = std::sqrt(N * var);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<FaceType> most_frequent_types(const CensusResult& c, std::size_t k) {
  std::vector<std::pair<std::int64_t, FaceType>> v;
  for (const auto& [t, tally] : c.types) v.emplace_back(tally.count, t);
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<FaceType> out;
  for (std::size_t i = 0; i < v.size() && i < k; ++i) out.push_back(v[i].second);
  return out;
}

}  // namespace webfaces
