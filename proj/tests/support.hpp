#pragma once

#include <stdexcept>
#include <utility>

#include "qlax/core/painleve.hpp"
#include "qlax/degen/degen.hpp"
#include "qlax/exact/rng.hpp"

namespace qlax::test {

/// Generic E8 draw with a state for which one step each way is defined.
inline std::pair<core::ParamsE8, core::State> draw_e8(Rng& rng, long bound = kDefaultBound) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<Rational, 8> u;
    for (auto& x : u) x = sample_rational(rng, bound);
    try {
      core::ParamsE8 p(sample_rational(rng, bound), sample_rational(rng, bound), u);
      p.require_generic();
      core::State s{sample_rational(rng, bound), sample_rational(rng, bound)};
      core::evolve(p, s);
      core::evolve_inverse(p, s);
      return {p, s};
    } catch (const NonGeneric&) {
    }
  }
  throw std::runtime_error("no generic E8 draw");
}

inline std::pair<degen::ParamsDeg, degen::DegState> draw_deg(degen::System sys, Rng& rng,
                                                             long bound = kDefaultBound) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<Rational, 8> b;
    for (auto& x : b) x = sample_rational(rng, bound);
    try {
      degen::ParamsDeg p(sys, b, sample_rational(rng, bound));
      if (p.q() == Rational(1)) continue;
      degen::DegState s{sample_rational(rng, bound), sample_rational(rng, bound)};
      degen::deg_evolve(p, s);
      degen::deg_evolve_inverse(p, s);
      return {p, s};
    } catch (const NonGeneric&) {
    }
  }
  throw std::runtime_error("no generic degenerate draw");
}

/// Retries `fn` on NonGeneric, as the CLI does.
template <class Fn>
auto resampled(Fn&& fn) {
  for (int attempt = 0; attempt < 63; ++attempt) {
    try {
      return fn();
    } catch (const NonGeneric&) {
    }
  }
  return fn();
}

}  // namespace qlax::test
