#include "qlax/core/checks.hpp"

#include <string>
#include <vector>

#include "qlax/exact/bidegree.hpp"

namespace qlax::core {

using nlohmann::json;

namespace {

/// U(z) from explicit symmetric functions: sum (-1)^i m_{8-i} z^i.
Rational u_from_m(const Rational& z, const SymFuncs& m) {
  Rational acc = 0;
  for (int i = 8; i >= 0; --i) acc = acc * z + (i % 2 == 0 ? m[8 - i] : -m[8 - i]);
  return acc;
}

/// P_n and P_d read off their defining relations at x = z + h/z.
Rational pn_defining(const Rational& h, const Rational& z, const SymFuncs& m) {
  return (u_from_m(z, m) / pow(z, 3) - pow(z / h, 3) * u_from_m(h / z, m)) / (z - h / z);
}

Rational pd_defining(const Rational& h, const Rational& z, const SymFuncs& m) {
  return (pow(z, 5) * u_from_m(h / z, m) - pow(h / z, 5) * u_from_m(z, m)) / (z - h / z);
}

SymFuncs reversed(const SymFuncs& m) {
  SymFuncs r;
  for (int i = 0; i <= 8; ++i) r[i] = m[8 - i];
  return r;
}

SymFuncs bumped(SymFuncs m, int k) {
  m[k] += 1;
  return m;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// z with z^2 != h and z + h/z distinct from every x in `taken`.
Rational fresh_z(const Rational& h, std::vector<Rational>& taken, Rng& rng, long bound) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Rational z = sample_rational(rng, bound);
    if (z * z == h) continue;
    const Rational x = z + h / z;
    bool clash = false;
    for (const auto& t : taken) clash = clash || t == x;
    if (clash) continue;
    taken.push_back(x);
    return z;
  }
  throw NonGeneric("no admissible spectral sample");
}

}  // namespace

std::pair<Rational, Rational> f_relation_sides(const ParamsE8& params, const Rational& f, const Rational& g,
                                               const Rational& fbar) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const Rational num = (fbar - g) * (f - g) - (h1 / q - h2) * (h1 - h2) / h2;
  const Rational den = (fbar * q / h1 - g / h2) * (f / h1 - g / h2) - (q / h1 - inv(h2)) * (inv(h1) - inv(h2)) * h2;
  const Rational pd = pd_eval(h2, g, params.m());
  if (den.is_zero() || pd.is_zero()) throw NonGeneric("f step relation denominator vanishes");
  return {num / den, h1 * h1 * pow(h2, 4) / q * pn_eval(h2, g, params.m()) / pd};
}

std::pair<Rational, Rational> g_relation_sides(const ParamsE8& params, const Rational& fbar, const Rational& g,
                                               const Rational& gbar) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const Rational num = (fbar - gbar) * (fbar - g) - (h1 / q - h2 * q) * (h1 / q - h2) * q / h1;
  const Rational den = (fbar * q / h1 - gbar / (h2 * q)) * (fbar * q / h1 - g / h2) -
                       (q / h1 - inv(h2 * q)) * (q / h1 - inv(h2)) * h1 / q;
  const Rational pd = pd_eval(h1 / q, fbar, params.m());
  if (den.is_zero() || pd.is_zero()) throw NonGeneric("g step relation denominator vanishes");
  return {num / den, pow(h1, 4) * h2 * h2 / pow(q, 3) * pn_eval(h1 / q, fbar, params.m()) / pd};
}

Report check_identities(const ParamsE8& params, Rng& rng, long bound) {
  Report r("identities");
  const SymFuncs& m = params.m();
  const Rational h = sample_rational(rng, bound);
  std::vector<Rational> taken;
  const Rational z = fresh_z(h, taken, rng, bound);
  const Rational x = z + h / z;
  const Rational g = sample_rational(rng, bound);
  const Rational u = sample_rational(rng, bound);

  auto line1 = [&](const SymFuncs& mm) {
    return (z - h / z) * pn_eval(h, x, mm) - (u_from_m(z, m) / pow(z, 3) - pow(z / h, 3) * u_from_m(h / z, m));
  };
  auto line2 = [&](const SymFuncs& mm) {
    return (z - h / z) * pd_eval(h, x, mm) - (pow(z, 5) * u_from_m(h / z, m) - pow(h / z, 5) * u_from_m(z, m));
  };
  auto mixed = [&](const SymFuncs& mm) {
    return pd_eval(h, x, mm) + pow(h, 3) * z * z * pn_eval(h, x, mm) - pow(h / z, 3) * x * u_from_m(z, m);
  };
  auto swap = [&](const SymFuncs& mm) { return pd_eval(h, g, m) - pow(h, 4) * pn_eval(inv(h), g / h, mm); };

  // Quartics through five values of the defining relations, compared with
  // the closed forms at a sixth point.
  std::vector<Rational> nodes, pn_vals, pd_vals;
  for (int k = 0; k < 5; ++k) {
    const Rational zk = fresh_z(h, taken, rng, bound);
    nodes.push_back(zk + h / zk);
    pn_vals.push_back(pn_defining(h, zk, m));
    pd_vals.push_back(pd_defining(h, zk, m));
  }
  const Rational z6 = fresh_z(h, taken, rng, bound);
  const Rational x6 = z6 + h / z6;
  const auto pn_fit = interpolate_univariate(nodes, pn_vals);
  const auto pd_fit = interpolate_univariate(nodes, pd_vals);
  auto closed = [&](const SymFuncs& mm) {
    return !(horner(pn_fit, x6) - pn_eval(h, x6, mm)).is_zero() || !(horner(pd_fit, x6) - pd_eval(h, x6, mm)).is_zero();
  };
  const Rational sixth = horner(pn_fit, x6) - pn_defining(h, z6, m);

  const State on_curve = point_on_curve(u, params);
  const Rational phi_res = phi(on_curve, params);
  const Rational u_res = u_poly(z, params) - u_from_m(z, m);

  std::string failed;
  if (!line1(m).is_zero()) failed = "P_n defining relation";
  else if (!line2(m).is_zero()) failed = "P_d defining relation";
  else if (!mixed(m).is_zero()) failed = "P_d + h^3 z^2 P_n relation";
  else if (!swap(reversed(m)).is_zero()) failed = "P_d / P_n reflection";
  else if (closed(m) || !sixth.is_zero()) failed = "closed forms vs defining relations";
  else if (!phi_res.is_zero()) failed = "phi on the curve";
  else if (!u_res.is_zero()) failed = "U product vs symmetric functions";
  r.record(failed.empty(), {{"identity", failed}, {"h", h.str()}, {"z", z.str()}, {"g", g.str()}, {"u", u.str()}});

  r.record_control(!line1(bumped(m, 4)).is_zero(), {{"control", "P_n relation with m4 + 1"}});
  r.record_control(!line2(bumped(m, 4)).is_zero(), {{"control", "P_d relation with m4 + 1"}});
  r.record_control(!mixed(bumped(m, 2)).is_zero(), {{"control", "mixed relation with m2 + 1"}});
  r.record_control(!swap(m).is_zero(), {{"control", "reflection without reversing m"}});
  r.record_control(closed(bumped(m, 3)), {{"control", "closed forms with m3 + 1"}});
  r.record_control(!phi(State{on_curve.f + 1, on_curve.g}, params).is_zero(), {{"control", "phi at f + 1"}});
  r.record_control(!(u_poly(z, params) - u_from_m(z, bumped(m, 1))).is_zero(), {{"control", "U with m1 + 1"}});
  return r;
}

Report check_evolution(const ParamsE8& params, const State& s) {
  Report r("evolution");
  const auto [next_params, next] = evolve(params, s);
  const auto [f_lhs, f_rhs] = f_relation_sides(params, s.f, s.g, next.f);
  const auto [g_lhs, g_rhs] = g_relation_sides(params, next.f, s.g, next.g);

  std::string failed;
  if (!v_eval(next.f, s.f, s.g, params).is_zero()) failed = "V(fbar, f)";
  else if (f_lhs != f_rhs) failed = "f step relation";
  else if (g_lhs != g_rhs) failed = "g step relation";
  else if (next_params.q() != params.q()) failed = "q not conserved";
  else if (next_params.u() != params.u()) failed = "u moved";
  else if (next_params.h1() != params.h1() / params.q() || next_params.h2() != params.h2() * params.q())
    failed = "parameter update";
  else if (evolve_inverse(next_params, next) != std::pair{params, s}) failed = "inverse after forward";
  if (failed.empty()) {
    const auto back = evolve_inverse(params, s);
    if (back.first.q() != params.q() || evolve(back.first, back.second) != std::pair{params, s})
      failed = "forward after inverse";
  }
  r.record(failed.empty(), {{"stage", failed}, {"f", s.f.str()}, {"g", s.g.str()}});

  const Rational wrong = next.g + 1;
  bool control_failed = true;
  try {
    const auto [lhs, rhs] = g_relation_sides(params, next.f, s.g, wrong);
    control_failed = lhs != rhs;
  } catch (const NonGeneric&) {
  }
  r.record_control(control_failed, {{"control", "gbar + 1"}});
  return r;
}

}  // namespace qlax::core
