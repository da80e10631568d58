#pragma once

#include "qlax/core/painleve.hpp"
#include "qlax/exact/report.hpp"
#include "qlax/exact/rng.hpp"

namespace qlax::core {

/// Identities of P_n, P_d, U and phi at one random (h, z, g, u):
///   (z - h/z) P_n(h, z + h/z) = U(z)/z^3 - (z/h)^3 U(h/z)
///   (z - h/z) P_d(h, z + h/z) = z^5 U(h/z) - (h/z)^5 U(z)
///   P_d(h, x) + h^3 z^2 P_n(h, x) - (h/z)^3 x U(z) = 0 at x = z + h/z
///   P_d(h, g) = h^4 P_n(1/h, g/h) with m_i -> m_{8-i}
///   closed forms against quartics interpolated from the defining relations
///   phi(point_on_curve(u)) = 0 and U as product and as symmetric functions.
/// Each identity carries a control with one corrupted input.
Report check_identities(const ParamsE8& params, Rng& rng, long bound = kDefaultBound);

/// One step from (params, s), with both step relations evaluated as
/// printed ratios, V(fbar, f) = 0, q conservation, u fixed, and both round
/// trips. Control: gbar + 1.
Report check_evolution(const ParamsE8& params, const State& s);

/// Left and right sides of the two step relations as ratios. NonGeneric on a
/// vanishing denominator.
std::pair<Rational, Rational> f_relation_sides(const ParamsE8& params, const Rational& f, const Rational& g,
                                               const Rational& fbar);
std::pair<Rational, Rational> g_relation_sides(const ParamsE8& params, const Rational& fbar, const Rational& g,
                                               const Rational& gbar);

}  // namespace qlax::core
