#pragma once

#include <array>
#include <vector>

#include "qlax/core/painleve.hpp"
#include "qlax/exact/bidegree.hpp"
#include "qlax/exact/rng.hpp"
#include "qlax/exact/report.hpp"

namespace qlax::lax {

using core::ParamsE8;
using core::State;

/// Three-term linear form c_minus Y(z/q) + c_zero Y(z) + c_plus Y(qz).
struct LaxTriple {
  Rational c_minus;
  Rational c_zero;
  Rational c_plus;

  Rational apply(const Rational& y_minus, const Rational& y_zero, const Rational& y_plus) const {
    return c_minus * y_minus + c_zero * y_zero + c_plus * y_plus;
  }
};

/// Deformation form a Y(z/q) + b Y(z) + c Ybar(z/q).
struct L2Form {
  Rational a;
  Rational b;
  Rational c;

  Rational apply(const Rational& y_minus, const Rational& y_zero, const Rational& ybar_minus) const {
    return a * y_minus + b * y_zero + c * ybar_minus;
  }
};

/// The deformation equation as printed carries {f - f(z)} in the Ybar term;
/// compatibility requires {f - f(z/q)}. Both are available, the working one
/// is the default.
enum class L2Variant { corrected, printed };

/// The evolved three-term equation in (fbar, g); the printed version has
/// (z^2 - h1 q^2) in its first denominator where (z^2 - h1 q) is required.
enum class L1uVariant { corrected, printed };

/// Values Y(base_z q^k) for k = first_offset .. first_offset + size - 1.
struct LaxWindow {
  Rational base_z;
  int first_offset = 0;
  std::vector<Rational> values;

  int last_offset() const { return first_offset + static_cast<int>(values.size()) - 1; }
  bool contains(int k) const { return k >= first_offset && k <= last_offset(); }
  /// Throws std::out_of_range outside the window.
  const Rational& at(int k) const;
  bool all_zero() const;
};

/// Y(z/q), Y(z), Y(qz).
struct YTriple {
  Rational minus;
  Rational zero;
  Rational plus;
};

/// Coefficients of L1 at spectral parameter z. NonGeneric names the
/// vanishing denominator.
LaxTriple l1_coeffs(const Rational& z, const State& s, const ParamsE8& params);

L2Form l2_coeffs(const Rational& z, const State& s, const ParamsE8& params, L2Variant variant = L2Variant::corrected);

/// F(f, g) = phi {f - f(z/q)} {f - f(z)} L1 evaluated at one (f, g).
Rational l1_curve_value(const Rational& z, const ParamsE8& params, const YTriple& y, const Rational& f,
                        const Rational& g);

/// F as a certified bidegree-(3,2) polynomial in (f, g).
CurveCoeffs32 curve_from_l1(const Rational& z, const ParamsE8& params, const YTriple& y, Rng& rng);

/// The g of Q(u): (g - g(u)) / (g - g(h1/u)) = y_qu / y_u.
Rational q_point_g(const Rational& u, const Rational& y_u, const Rational& y_qu, const ParamsE8& params);

/// Solves L1 = 0 forward from Y(z/q) = seed_minus, Y(z) = seed_zero.
/// The window covers offsets -1 .. k_max.
LaxWindow propagate_y(const Rational& seed_minus, const Rational& seed_zero, const Rational& z, const State& s,
                      const ParamsE8& params, int k_max);

/// Ybar(w/q) from L2 at every w = z q^k whose Y(w/q), Y(w) are in the window.
/// The result starts at the same offset and is one entry shorter.
LaxWindow ybar_from_y(const LaxWindow& window, const State& s, const ParamsE8& params,
                      L2Variant variant = L2Variant::corrected);

/// Coefficients of the evolved three-term equation for Ybar in the mixed
/// coordinates (fbar, g), at the pre-step parameters.
LaxTriple l1u_coeffs(const Rational& z, const Rational& fbar, const Rational& g, const ParamsE8& params,
                     L1uVariant variant = L1uVariant::corrected);

// ---------------------------------------------------------------------------
// Verification harnesses. Each returns a single-draw Report; NonGeneric from
// the draw itself propagates so callers can resample.

enum class Perturbation {
  none,
  gbar_plus_one,   ///< evolved L1 at (fbar, gbar + 1)
  fbar_times_two,  ///< evolved L1 at (2 fbar, gbar)
  stale_params,    ///< evolved L1 at the pre-step parameters
};

/// Evolved L1 applied to the Ybar triple built from seeds; zero iff the Lax
/// pair is compatible with the step at this draw.
Rational compatibility_residual(const ParamsE8& params, const State& s, const Rational& z, const Rational& seed_minus,
                                const Rational& seed_zero, Perturbation perturbation = Perturbation::none,
                                L2Variant variant = L2Variant::corrected);

Report check_compatibility(const ParamsE8& params, const State& s, const Rational& z, Rng& rng,
                           L2Variant variant = L2Variant::corrected);

/// Left side of the (x1, x2) ratio identity; independent of x1, x2.
Rational lemma_ratio_lhs(const ParamsE8& params, const State& s, const Rational& x1, const Rational& x2);
/// (h1 - h2 q) phi / ((h1 - h2) phi_u).
Rational lemma_ratio_rhs(const ParamsE8& params, const State& s);

Report check_lemma_ratio(const ParamsE8& params, const State& s, const Rational& x1, const Rational& x2);

/// Residuals of each intermediate identity of the compatibility derivation.
struct ChainResiduals {
  Rational eliminated_l1;  ///< L1 with Y(qz), Y(z/q) eliminated through L2
  Rational w_relation;     ///< W(z/q) relation at z
  Rational w_relation_up;  ///< the same at qz
  Rational w_pair;         ///< W(z/q), Ybar(z), W(z) relation
  Rational w_pair_rewritten;
  Rational l1u;            ///< evolved equation in (fbar, g) on the Ybar triple
};

ChainResiduals proof_chain_residuals(const ParamsE8& params, const State& s, const Rational& z,
                                     const Rational& seed_minus, const Rational& seed_zero,
                                     const Rational& w_scale = Rational(1),
                                     L1uVariant variant = L1uVariant::corrected);

Report check_proof_chain(const ParamsE8& params, const State& s, const Rational& z, Rng& rng);

/// A state together with its image under one step.
struct StepState {
  Rational f, g, fbar, gbar;
};

/// phi_u {fbar - fbar(z/q)} {fbar - fbar(z)} L1u as a function of (fbar, g).
Rational l1u_curve_value(const Rational& z, const ParamsE8& params, const YTriple& ybar, const Rational& fbar,
                         const Rational& g);

/// The L1u curve pulled to (fbar, gbar) through the g-update, with the
/// factor fbar^2 prod (fbar - fbar(u_i)) removed.
Rational transformed_curve_value(const Rational& z, const ParamsE8& params, const YTriple& ybar,
                                 const Rational& fbar, const Rational& gbar);

Report check_l1u_geometry(const ParamsE8& params, const StepState& s, const Rational& z, const YTriple& ybar,
                          Rng& rng);

/// Degree (3,2) and the 12 vanishing conditions of the L1 curve.
Report check_l1_curve(const ParamsE8& params, const Rational& z, const YTriple& y, Rng& rng);

/// The four cancelling residue expressions of the L1 curve and the
/// proportionality of its Y(z) coefficient on the curve phi = 0, at
/// `samples` random u.
Report check_l1_structure(const ParamsE8& params, const Rational& z, Rng& rng, int samples = 3);

}  // namespace qlax::lax
