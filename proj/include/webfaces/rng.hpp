#pragma once

#include <cstdint>
#include <random>

#include <boost/multiprecision/gmp.hpp>

namespace webfaces {

using BigInt = boost::multiprecision::mpz_int;

/// SplitMix64 finalizer. Used to derive independent streams from one seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the stream for sample `index` under master seed `seed`.
/// Every parallel census derives per-sample generators this way, so results
/// do not depend on how samples are distributed over workers.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform big integer in [0, bound) by rejection on random limbs.
  BigInt below(const BigInt& bound);

  /// Uniform choice among {0,1,2}.
  int three() { return static_cast<int>(below(3)); }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace webfaces
