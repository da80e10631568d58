#include "qlax/exact/rng.hpp"

#include <limits>
#include <stdexcept>

namespace qlax {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix(seed_ + counter_ * kGolden);
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return lo + x % n;
}

Rng Rng::split(std::uint64_t index) const {
  // Child seeds go through two rounds of mixing so that neighbouring indices
  // land far apart.
  return Rng(mix(mix(seed_ ^ 0x5851f42d4c957f2dULL) + (index + 1) * kGolden));
}

Rational sample_rational(Rng& rng, long bound) {
  if (bound < 2) throw std::invalid_argument("sample_rational: bound must be >= 2");
  const auto b = static_cast<std::uint64_t>(bound);
  const auto p = static_cast<long>(rng.uniform(1, b));
  const auto r = static_cast<long>(rng.uniform(1, b));
  const bool negative = (rng.next_u64() & 1U) != 0;
  return rat(negative ? -p : p, r);
}

Rational sample_unit_scale(Rng& rng, long bound) {
  if (bound < 2) throw std::invalid_argument("sample_unit_scale: bound must be >= 2");
  const auto b = static_cast<std::uint64_t>(bound);
  const auto p = static_cast<long>(rng.uniform((b + 1) / 2, b));
  const auto r = static_cast<long>(rng.uniform((b + 1) / 2, b));
  const bool negative = (rng.next_u64() & 1U) != 0;
  return rat(negative ? -p : p, r);
}

}  // namespace qlax
