#include "qlax/core/painleve.hpp"

#include "qlax/exact/affine.hpp"

namespace qlax::core {

SymFuncs sym_funcs(std::span<const Rational, 8> u) {
  SymFuncs m;
  m[0] = 1;
  for (const auto& x : u)
    for (int k = 8; k >= 1; --k) m[k] += m[k - 1] * x;
  return m;
}

namespace {

Rational product(std::span<const Rational, 8> u) {
  Rational p = 1;
  for (const auto& x : u) p *= x;
  return p;
}

}  // namespace

ParamsE8::ParamsE8(Rational h1, Rational h2, std::array<Rational, 8> u)
    : h1_(std::move(h1)), h2_(std::move(h2)), u_(std::move(u)) {
  if (h1_.is_zero() || h2_.is_zero()) throw NonGeneric("h1 or h2 is zero");
  for (const auto& x : u_)
    if (x.is_zero()) throw NonGeneric("some u_i is zero");
  q_ = h1_ * h1_ * h2_ * h2_ / product(u_);
  m_ = sym_funcs(u_);
}

bool ParamsE8::is_generic() const { return q_ != Rational(1) && h1_ != h2_ && h1_ != h2_ * q_; }

void ParamsE8::require_generic() const {
  if (q_ == Rational(1)) throw NonGeneric("q = 1");
  if (h1_ == h2_) throw NonGeneric("h1 = h2");
  if (h1_ == h2_ * q_) throw NonGeneric("h1 = h2 q");
}

Rational ParamsE8::f_at(const Rational& u) const { return u + h1_ / u; }
Rational ParamsE8::g_at(const Rational& u) const { return u + h2_ / u; }
Rational ParamsE8::fbar_at(const Rational& u) const { return u + h1_ / (q_ * u); }
Rational ParamsE8::gbar_at(const Rational& u) const { return u + h2_ * q_ / u; }

State point_on_curve(const Rational& u, const ParamsE8& params, Shift shift) {
  if (u.is_zero()) throw NonGeneric("point_on_curve at u = 0");
  switch (shift) {
    case Shift::plain:
      return {params.f_at(u), params.g_at(u)};
    case Shift::f_bar:
      return {params.fbar_at(u), params.g_at(u)};
    case Shift::g_bar:
      return {params.fbar_at(u), params.gbar_at(u)};
  }
  return {};
}

Rational phi(const Rational& f, const Rational& g, const Rational& h1, const Rational& h2) {
  return (f - g) * (f / h1 - g / h2) - (h1 - h2) * (inv(h1) - inv(h2));
}

Rational phi(const State& s, const ParamsE8& params) { return phi(s.f, s.g, params.h1(), params.h2()); }

Rational u_poly(const Rational& z, const ParamsE8& params) {
  Rational p = 1;
  for (const auto& x : params.u()) p *= z - x;
  return p;
}

Rational pn_eval(const Rational& h, const Rational& g, const SymFuncs& m) {
  const Rational h2 = h * h;
  const Rational c4 = m[0];
  const Rational c3 = -m[1];
  const Rational c2 = m[2] - 3 * h * m[0] - m[8] / (h2 * h);
  const Rational c1 = 2 * h * m[1] - m[3] + m[7] / h2;
  const Rational c0 = h2 * m[0] - h * m[2] + m[4] - m[6] / h + m[8] / h2;
  return (((c4 * g + c3) * g + c2) * g + c1) * g + c0;
}

Rational pd_eval(const Rational& h, const Rational& g, const SymFuncs& m) {
  const Rational h2 = h * h;
  const Rational h3 = h2 * h;
  const Rational h4 = h3 * h;
  const Rational h5 = h4 * h;
  const Rational h6 = h5 * h;
  const Rational c4 = m[8];
  const Rational c3 = -h * m[7];
  const Rational c2 = h2 * m[6] - 3 * h * m[8] - h5 * m[0];
  const Rational c1 = 2 * h2 * m[7] - h3 * m[5] + h5 * m[1];
  const Rational c0 = h6 * m[0] - h5 * m[2] + h4 * m[4] - h3 * m[6] + h2 * m[8];
  return (((c4 * g + c3) * g + c2) * g + c1) * g + c0;
}

Rational v_eval(const Rational& f0, const Rational& f, const Rational& g, const ParamsE8& params) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const Rational num_bracket = (f0 - g) * (f - g) - (h1 / q - h2) * (h1 - h2) / h2;
  const Rational den_bracket =
      (f0 * q / h1 - g / h2) * (f / h1 - g / h2) - (q / h1 - inv(h2)) * (inv(h1) - inv(h2)) * h2;
  return q * num_bracket * pd_eval(h2, g, params.m()) -
         h1 * h1 * pow(h2, 4) * den_bracket * pn_eval(h2, g, params.m());
}

Rational g_relation(const Rational& fbar, const Rational& gbar, const Rational& g, const ParamsE8& params) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const Rational hb = h1 / q;
  const Rational num_bracket = (fbar - gbar) * (fbar - g) - (hb - h2 * q) * (hb - h2) * q / h1;
  const Rational den_bracket = (fbar * q / h1 - gbar / (h2 * q)) * (fbar * q / h1 - g / h2) -
                               (q / h1 - inv(h2 * q)) * (q / h1 - inv(h2)) * hb;
  return pow(q, 3) * num_bracket * pd_eval(hb, fbar, params.m()) -
         pow(h1, 4) * h2 * h2 * den_bracket * pn_eval(hb, fbar, params.m());
}

Rational step_f(const Rational& f, const Rational& g, const ParamsE8& params) {
  return solve_affine([&](const Rational& x) { return v_eval(x, f, g, params); },
                      "coefficient of fbar in V(fbar, f) vanishes");
}

Rational step_g(const Rational& fbar, const Rational& g, const ParamsE8& params) {
  return solve_affine([&](const Rational& x) { return g_relation(fbar, x, g, params); },
                      "coefficient of gbar in the g-update relation vanishes");
}

std::pair<ParamsE8, State> evolve(const ParamsE8& params, const State& s) {
  params.require_generic();
  const Rational fbar = step_f(s.f, s.g, params);
  const Rational gbar = step_g(fbar, s.g, params);
  return {ParamsE8(params.h1() / params.q(), params.h2() * params.q(), params.u()), State{fbar, gbar}};
}

std::pair<ParamsE8, State> evolve_inverse(const ParamsE8& params, const State& s) {
  const ParamsE8 before(params.h1() * params.q(), params.h2() / params.q(), params.u());
  before.require_generic();
  const Rational g = solve_affine([&](const Rational& x) { return g_relation(s.f, s.g, x, before); },
                                  "coefficient of g in the g-update relation vanishes");
  const Rational f = solve_affine([&](const Rational& x) { return v_eval(s.f, x, g, before); },
                                  "coefficient of f in V(fbar, f) vanishes");
  return {before, State{f, g}};
}

}  // namespace qlax::core
