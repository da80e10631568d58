#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "qlax/exact/rational.hpp"
#include "qlax/exact/rng.hpp"

namespace qlax {

/// Polynomial sum_{i<=DF, j<=DG} c[i][j] f^i g^j with exact coefficients.
template <int DF, int DG>
class BidegreePoly {
 public:
  static constexpr int kDegF = DF;
  static constexpr int kDegG = DG;
  using Grid = std::array<std::array<Rational, DG + 1>, DF + 1>;

  BidegreePoly() = default;
  explicit BidegreePoly(Grid c) : c_(std::move(c)) {}

  Rational& at(int i, int j) { return c_[i][j]; }
  const Rational& at(int i, int j) const { return c_[i][j]; }
  const Grid& coefficients() const { return c_; }

  /// Horner in g inside Horner in f.
  Rational eval(const Rational& f, const Rational& g) const {
    Rational acc;
    for (int i = DF; i >= 0; --i) {
      Rational row;
      for (int j = DG; j >= 0; --j) row = row * g + c_[i][j];
      acc = acc * f + row;
    }
    return acc;
  }

  bool is_zero() const {
    for (const auto& row : c_)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const BidegreePoly& a, const BidegreePoly& b) { return a.c_ == b.c_; }

 private:
  Grid c_{};
};

using CurveCoeffs32 = BidegreePoly<3, 2>;

/// Monomial coefficients (ascending) of the unique polynomial of degree
/// < nodes.size() through (nodes[k], values[k]). Newton form, then expanded.
/// Throws DegenerateNodes on repeated nodes.
std::vector<Rational> interpolate_univariate(std::span<const Rational> nodes, std::span<const Rational> values);

/// Tensor-product interpolation on a (DF+1) x (DG+1) grid.
template <int DF, int DG>
BidegreePoly<DF, DG> interpolate_bidegree(std::span<const Rational, DF + 1> f_nodes,
                                          std::span<const Rational, DG + 1> g_nodes,
                                          const typename BidegreePoly<DF, DG>::Grid& values) {
  // rows[j][i]: coefficient of f^i in the cubic through the column g = g_nodes[j].
  std::array<std::vector<Rational>, DG + 1> rows;
  for (int j = 0; j <= DG; ++j) {
    std::array<Rational, DF + 1> column;
    for (int i = 0; i <= DF; ++i) column[i] = values[i][j];
    rows[j] = interpolate_univariate(f_nodes, column);
  }
  typename BidegreePoly<DF, DG>::Grid c;
  for (int i = 0; i <= DF; ++i) {
    std::array<Rational, DG + 1> across;
    for (int j = 0; j <= DG; ++j) across[j] = rows[j][i];
    const auto coeffs = interpolate_univariate(g_nodes, across);
    for (int j = 0; j <= DG; ++j) c[i][j] = coeffs[j];
  }
  return BidegreePoly<DF, DG>(std::move(c));
}

/// values[i][j] is the value at (f_nodes[i], g_nodes[j]).
CurveCoeffs32 interpolate_bidegree32(std::span<const Rational, 4> f_nodes, std::span<const Rational, 3> g_nodes,
                                     const CurveCoeffs32::Grid& values);

Rational eval_curve(const CurveCoeffs32& curve, const Rational& f, const Rational& g);

using BivariateFn = std::function<Rational(const Rational& f, const Rational& g)>;

struct FitOptions {
  long bound = kDefaultBound;
  int extra_points = 3;
  int max_attempts = 64;
};

/// Interpolates `fn` on a random 4x3 grid and certifies the result at
/// `extra_points` random off-grid points. Grid points where `fn` throws
/// NonGeneric are resampled. Throws DegreeMismatch if any extra point
/// disagrees, i.e. `fn` is not a bidegree-(3,2) polynomial.
CurveCoeffs32 fit_bidegree32(const BivariateFn& fn, Rng& rng, const FitOptions& opts = {});

}  // namespace qlax
