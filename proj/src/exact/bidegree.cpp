#include "qlax/exact/bidegree.hpp"

#include <algorithm>

namespace qlax {

std::vector<Rational> interpolate_univariate(std::span<const Rational> nodes, std::span<const Rational> values) {
  const std::size_t n = nodes.size();
  if (values.size() != n) throw DegenerateNodes("node/value count mismatch");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (nodes[a] == nodes[b]) throw DegenerateNodes("repeated node " + nodes[a].str());

  // Divided differences in place.
  std::vector<Rational> dd(values.begin(), values.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);

  // Expand the Newton form by Horner from the top.
  std::vector<Rational> coeffs(n);
  for (std::size_t k = n; k-- > 0;) {
    // coeffs <- coeffs * (x - nodes[k]) + dd[k]
    for (std::size_t d = n - 1; d > 0; --d) coeffs[d] = coeffs[d - 1] - nodes[k] * coeffs[d];
    coeffs[0] = dd[k] - nodes[k] * coeffs[0];
  }
  return coeffs;
}

CurveCoeffs32 interpolate_bidegree32(std::span<const Rational, 4> f_nodes, std::span<const Rational, 3> g_nodes,
                                     const CurveCoeffs32::Grid& values) {
  return interpolate_bidegree<3, 2>(f_nodes, g_nodes, values);
}

Rational eval_curve(const CurveCoeffs32& curve, const Rational& f, const Rational& g) { return curve.eval(f, g); }

namespace {

template <std::size_t N>
bool fill_distinct(std::array<Rational, N>& out, Rng& rng, long bound) {
  for (std::size_t k = 0; k < N; ++k) {
    Rational x = sample_rational(rng, bound);
    if (std::find(out.begin(), out.begin() + static_cast<long>(k), x) != out.begin() + static_cast<long>(k))
      return false;
    out[k] = x;
  }
  return true;
}

}  // namespace

CurveCoeffs32 fit_bidegree32(const BivariateFn& fn, Rng& rng, const FitOptions& opts) {
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::array<Rational, 4> fs;
    std::array<Rational, 3> gs;
    if (!fill_distinct(fs, rng, opts.bound) || !fill_distinct(gs, rng, opts.bound)) continue;
    CurveCoeffs32::Grid values;
    try {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) values[i][j] = fn(fs[i], gs[j]);
    } catch (const NonGeneric&) {
      continue;
    }
    const auto curve = interpolate_bidegree32(fs, gs, values);

    int certified = 0;
    for (int tries = 0; certified < opts.extra_points && tries < opts.max_attempts; ++tries) {
      const Rational f = sample_rational(rng, opts.bound);
      const Rational g = sample_rational(rng, opts.bound);
      if (std::find(fs.begin(), fs.end(), f) != fs.end() || std::find(gs.begin(), gs.end(), g) != gs.end()) continue;
      Rational value;
      try {
        value = fn(f, g);
      } catch (const NonGeneric&) {
        continue;
      }
      if (curve.eval(f, g) != value)
        throw DegreeMismatch("function disagrees with its (3,2) interpolant at (" + f.str() + ", " + g.str() + ")");
      ++certified;
    }
    if (certified < opts.extra_points) throw NonGeneric("could not find generic off-grid certification points");
    return curve;
  }
  throw NonGeneric("could not find a generic interpolation grid");
}

}  // namespace qlax
