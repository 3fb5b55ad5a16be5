#include "webfaces/rng.hpp"

#include <stdexcept>

namespace webfaces {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Lemire-style rejection keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: bound must be positive");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t limbs = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (limbs - 1);
  for (;;) {
    BigInt r = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      std::uint64_t limb = engine_();
      if (i == 0 && top_bits < 64) limb &= (std::uint64_t{1} << top_bits) - 1;
      r <<= 64;
      r += limb;
    }
    if (r < bound) return r;
  }
}

}  // namespace webfaces
