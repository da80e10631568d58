#pragma once

#include <cstdint>

#include "qlax/exact/rational.hpp"

namespace qlax {

/// Counter-based generator (splitmix64 over seed + counter). The stream is a
/// pure function of the seed, so it is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Independent child generator; children with distinct indices never share
  /// a stream with each other or with the parent.
  Rng split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

inline constexpr long kDefaultBound = 1000;

/// +-p/r with p, r uniform in [1, bound]. Never zero. Requires bound >= 2.
Rational sample_rational(Rng& rng, long bound = kDefaultBound);

/// +-p/r with p, r uniform in [ceil(bound/2), bound], so 1/2 <= |x| <= 2.
Rational sample_unit_scale(Rng& rng, long bound = kDefaultBound);

}  // namespace qlax
