#pragma once

#include <array>
#include <span>
#include <utility>

#include "qlax/exact/rational.hpp"

namespace qlax::core {

using SymFuncs = std::array<Rational, 9>;

/// Elementary symmetric functions m_0..m_8 of u_1..u_8.
SymFuncs sym_funcs(std::span<const Rational, 8> u);

/// Parameters (h1, h2, u_1..u_8) of the E8 q-Painleve system.
///
/// q = h1^2 h2^2 / (u_1...u_8) and the symmetric functions m_k are derived
/// once at construction. All of h1, h2, u_i must be nonzero (NonGeneric
/// otherwise); the remaining genericity conditions are checked lazily by
/// require_generic().
class ParamsE8 {
 public:
  ParamsE8(Rational h1, Rational h2, std::array<Rational, 8> u);

  const Rational& h1() const { return h1_; }
  const Rational& h2() const { return h2_; }
  const std::array<Rational, 8>& u() const { return u_; }
  const Rational& u(int i) const { return u_[static_cast<std::size_t>(i)]; }
  const Rational& q() const { return q_; }
  const SymFuncs& m() const { return m_; }

  /// q != 1, h1 != h2, h1 != h2 q: the denominators of L1 and of the (x1, x2) ratio.
  bool is_generic() const;
  void require_generic() const;

  /// f(u) = u + h1/u and g(u) = u + h2/u.
  Rational f_at(const Rational& u) const;
  Rational g_at(const Rational& u) const;
  /// The same points after one evolution step: u + h1/(q u) and u + h2 q/u.
  Rational fbar_at(const Rational& u) const;
  Rational gbar_at(const Rational& u) const;

  friend bool operator==(const ParamsE8& a, const ParamsE8& b) {
    return a.h1_ == b.h1_ && a.h2_ == b.h2_ && a.u_ == b.u_;
  }

 private:
  Rational h1_, h2_;
  std::array<Rational, 8> u_;
  Rational q_;
  SymFuncs m_;
};

/// Affine point (f, g) of P1 x P1.
struct State {
  Rational f;
  Rational g;
  friend bool operator==(const State&, const State&) = default;
};

enum class Shift {
  plain,  ///< (f(u), g(u))
  f_bar,  ///< (fbar(u), g(u)): the mixed coordinates of the proof
  g_bar,  ///< (fbar(u), gbar(u)): the configuration after one step
};

State point_on_curve(const Rational& u, const ParamsE8& params, Shift shift = Shift::plain);

/// phi(f, g) for explicit (h1, h2).
Rational phi(const Rational& f, const Rational& g, const Rational& h1, const Rational& h2);
Rational phi(const State& s, const ParamsE8& params);

/// U(z) = prod (z - u_i).
Rational u_poly(const Rational& z, const ParamsE8& params);

Rational pn_eval(const Rational& h, const Rational& g, const SymFuncs& m);
Rational pd_eval(const Rational& h, const Rational& g, const SymFuncs& m);

/// V(f0, f) at the given g; affine in f0 and in f.
Rational v_eval(const Rational& f0, const Rational& f, const Rational& g, const ParamsE8& params);

/// Polynomial form of the g-update relation in (fbar, gbar, g); affine in
/// gbar and in g. Zero iff (fbar, gbar) is the step image of (fbar, g).
Rational g_relation(const Rational& fbar, const Rational& gbar, const Rational& g, const ParamsE8& params);

/// The fbar solving V(fbar, f) = 0.
Rational step_f(const Rational& f, const Rational& g, const ParamsE8& params);
/// The gbar solving g_relation(fbar, gbar, g) = 0.
Rational step_g(const Rational& fbar, const Rational& g, const ParamsE8& params);

/// One evolution step: (h1, h2) -> (h1/q, h2 q), u fixed, (f, g) -> (fbar, gbar).
std::pair<ParamsE8, State> evolve(const ParamsE8& params, const State& s);

/// Inverse of evolve. `params` are the post-step parameters; g is recovered
/// from g_relation, then f from V, and (h1, h2) -> (h1 q, h2/q).
std::pair<ParamsE8, State> evolve_inverse(const ParamsE8& params, const State& s);

}  // namespace qlax::core
