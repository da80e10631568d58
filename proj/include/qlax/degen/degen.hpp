#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlax/exact/rational.hpp"
#include "qlax/exact/rng.hpp"
#include "qlax/lax/lax.hpp"
#include "qlax/exact/report.hpp"

namespace qlax::degen {

enum class System { E7, E6, D5 };

/// "e7", "e6", "d5" (case-insensitive). Throws ParseError.
System parse_system(std::string_view text);
std::string system_name(System s);

/// Three printed formulas fail their checks:
///   E7 second evolution relation: (fbar g - t^2) where (fbar g q - t^2) is required;
///   D5 L1 first bracket: q z/(q t^2) where g z/(q t^2) is required.
/// `printed` reproduces them, `corrected` is the working form. E6 is
/// unaffected.
enum class Variant { corrected, printed };

/// (b_1..b_8, t) with q = b5 b6 b7 b8 / (b1 b2 b3 b4) derived.
class ParamsDeg {
 public:
  ParamsDeg(System system, std::array<Rational, 8> b, Rational t);

  System system() const { return system_; }
  const std::array<Rational, 8>& b() const { return b_; }
  /// 1-based, as in the formulas.
  const Rational& b(int i) const { return b_[static_cast<std::size_t>(i - 1)]; }
  const Rational& t() const { return t_; }
  const Rational& q() const { return q_; }

  ParamsDeg with_t(Rational t) const { return ParamsDeg(system_, b_, std::move(t)); }

  friend bool operator==(const ParamsDeg& a, const ParamsDeg& b) {
    return a.system_ == b.system_ && a.b_ == b.b_ && a.t_ == b.t_;
  }

 private:
  System system_;
  std::array<Rational, 8> b_;
  Rational t_;
  Rational q_;
};

/// (f, g) after the change of coordinate g -> 1/g.
struct DegState {
  Rational f;
  Rational g;
  friend bool operator==(const DegState&, const DegState&) = default;
};

/// (B1(z), B2(z)) with B1 = prod_{i<=4} (1 - b_i z), B2 = prod_{i>=5} (1 - b_i z).
std::pair<Rational, Rational> b_polys(const Rational& z, const ParamsDeg& params);

/// First evolution relation, cross-multiplied; zero iff fbar is the image
/// of (f, g). Affine in f and in fbar.
Rational relation1(const ParamsDeg& params, const Rational& f, const Rational& g, const Rational& fbar);

/// Second evolution relation at the pre-step t; affine in g and in gbar.
Rational relation2(const ParamsDeg& params, const Rational& fbar, const Rational& g, const Rational& gbar,
                   Variant variant = Variant::corrected);

/// (b, t, f, g) -> (b, t/q, fbar, gbar).
std::pair<ParamsDeg, DegState> deg_evolve(const ParamsDeg& params, const DegState& s,
                                          Variant variant = Variant::corrected);

/// Inverse of deg_evolve; `params` are the post-step parameters.
std::pair<ParamsDeg, DegState> deg_evolve_inverse(const ParamsDeg& params, const DegState& s,
                                                  Variant variant = Variant::corrected);

/// L1 as (Y(z/q), Y(z), Y(qz)) coefficients and L2 as (Y(z/q), Y(z), Ybar(z/q)).
std::pair<lax::LaxTriple, lax::L2Form> deg_lax_coeffs(const Rational& z, const DegState& s, const ParamsDeg& params,
                                                      Variant variant = Variant::corrected);

/// A configuration point; nullopt marks a coordinate at infinity.
struct ConfigPoint {
  std::optional<Rational> f;
  std::optional<Rational> g;
  std::string label;
};

std::vector<ConfigPoint> configuration(const ParamsDeg& params);

// ---------------------------------------------------------------------------

/// Evolved L1 on the Ybar triple built from seeds, as in the E8 harness.
Rational deg_compatibility_residual(const ParamsDeg& params, const DegState& s, const Rational& z,
                                    const Rational& seed_minus, const Rational& seed_zero,
                                    lax::Perturbation perturbation = lax::Perturbation::none,
                                    Variant variant = Variant::corrected);

Report deg_check_compatibility(const ParamsDeg& params, const DegState& s, const Rational& z, Rng& rng,
                               Variant variant = Variant::corrected);

/// Back-substitution of (fbar, gbar) into both relations, q conservation,
/// t -> t/q, and the inverse round trip. Control: gbar + 1.
Report deg_check_evolution(const ParamsDeg& params, const DegState& s, Variant variant = Variant::corrected);

/// E7: every configuration point annihilates (fg - 1) or (fg - t^2).
Report check_e7_configuration(const ParamsDeg& params);

/// Deviations |ratio - 1| of one limit relation along the epsilon ladder.
struct LimitSeries {
  std::string relation;
  std::vector<Rational> deviations;
};

/// True when each deviation is at least 5^(decades) times smaller than the
/// previous one (zero deviations pass).
bool converges(const std::vector<Rational>& eps, const std::vector<Rational>& deviations);

/// Every limit relation for the degeneration into `target` (from E8, E7, E6
/// respectively) at one random draw with 1/2 <= |x| <= 2 for every sampled
/// value, so that the fixed epsilon ladder is small against the draw.
/// Controls: the target's fbar at a shifted g, and a Lax ratio at a shifted
/// spectral parameter.
Report check_limit(System target, const std::vector<Rational>& eps, Rng& rng, Variant variant = Variant::corrected,
                   long bound = kDefaultBound);

/// The series behind check_limit at an explicit draw (b, t, f, g, z of the
/// target system).
std::vector<LimitSeries> limit_series(System target, const std::array<Rational, 8>& b, const Rational& t,
                                      const DegState& s, const Rational& z, const std::vector<Rational>& eps,
                                      Variant variant = Variant::corrected);

}  // namespace qlax::degen
