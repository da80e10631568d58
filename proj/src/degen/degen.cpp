#include "qlax/degen/degen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "qlax/core/painleve.hpp"
#include "qlax/exact/affine.hpp"

namespace qlax::degen {

using lax::L2Form;
using lax::LaxTriple;
using lax::Perturbation;
using nlohmann::json;

System parse_system(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "e7") return System::E7;
  if (t == "e6") return System::E6;
  if (t == "d5") return System::D5;
  throw ParseError("unknown degenerate system '" + std::string(text) + "'");
}

std::string system_name(System s) {
  switch (s) {
    case System::E7:
      return "e7";
    case System::E6:
      return "e6";
    case System::D5:
      return "d5";
  }
  return {};
}

ParamsDeg::ParamsDeg(System system, std::array<Rational, 8> b, Rational t)
    : system_(system), b_(std::move(b)), t_(std::move(t)) {
  for (const auto& x : b_)
    if (x.is_zero()) throw NonGeneric("some b_i is zero");
  if (t_.is_zero()) throw NonGeneric("t is zero");
  q_ = b_[4] * b_[5] * b_[6] * b_[7] / (b_[0] * b_[1] * b_[2] * b_[3]);
}

std::pair<Rational, Rational> b_polys(const Rational& z, const ParamsDeg& params) {
  Rational b1 = 1, b2 = 1;
  for (int i = 1; i <= 4; ++i) b1 *= 1 - params.b(i) * z;
  for (int i = 5; i <= 8; ++i) b2 *= 1 - params.b(i) * z;
  return {b1, b2};
}

namespace {

void require_nonzero(const Rational& x, const char* what) {
  if (x.is_zero()) throw NonGeneric(what);
}

Rational b1_at(const Rational& z, const ParamsDeg& p) { return b_polys(z, p).first; }
Rational b2_at(const Rational& z, const ParamsDeg& p) { return b_polys(z, p).second; }

/// prod_{i in [lo, hi]} (b_i x - 1).
Rational bg_product(const ParamsDeg& p, int lo, int hi, const Rational& x) {
  Rational r = 1;
  for (int i = lo; i <= hi; ++i) r *= p.b(i) * x - 1;
  return r;
}

}  // namespace

Rational relation1(const ParamsDeg& p, const Rational& f, const Rational& g, const Rational& fbar) {
  const auto& t = p.t();
  const auto& q = p.q();
  switch (p.system()) {
    case System::E7:
      return (f * g - 1) * (fbar * g - 1) * pow(t, 4) * b2_at(g / t, p) -
             b1_at(g, p) * (f * g - t * t) * (fbar * g * q - t * t);
    case System::E6:
      return (f * g - 1) * (fbar * g - 1) * p.b(5) * p.b(6) * (p.b(7) * g - t) * (p.b(8) * g - t) -
             f * fbar * q * bg_product(p, 1, 4, g);
    case System::D5:
      return f * fbar * q * bg_product(p, 1, 2, g) - p.b(5) * p.b(6) * (p.b(7) * g - t) * (p.b(8) * g - t);
  }
  return {};
}

Rational relation2(const ParamsDeg& p, const Rational& fbar, const Rational& g, const Rational& gbar,
                   Variant variant) {
  const auto& t = p.t();
  const auto& q = p.q();
  switch (p.system()) {
    case System::E7: {
      require_nonzero(fbar, "fbar = 0");
      const Rational middle = variant == Variant::corrected ? fbar * g * q - t * t : fbar * g - t * t;
      return (fbar * g - 1) * (fbar * gbar - 1) * pow(q, 3) * b2_at(t / (fbar * q), p) -
             b1_at(inv(fbar), p) * middle * (fbar * gbar * q * q - t * t);
    }
    case System::E6: {
      Rational prod = 1;
      for (int i = 1; i <= 4; ++i) prod *= p.b(i) - fbar;
      return (fbar * g - 1) * (fbar * gbar - 1) * (fbar * q - p.b(5) * t) * (fbar * q - p.b(6) * t) -
             g * gbar * q * q * prod;
    }
    case System::D5:
      return g * gbar * q * q * p.b(1) * p.b(2) * (p.b(3) - fbar) * (p.b(4) - fbar) -
             (fbar * q - p.b(5) * t) * (fbar * q - p.b(6) * t);
  }
  return {};
}

std::pair<ParamsDeg, DegState> deg_evolve(const ParamsDeg& params, const DegState& s, Variant variant) {
  if (params.q() == Rational(1)) throw NonGeneric("q = 1");
  const Rational fbar = solve_affine([&](const Rational& x) { return relation1(params, s.f, s.g, x); },
                                     "coefficient of fbar in the first relation vanishes");
  const Rational gbar = solve_affine([&](const Rational& x) { return relation2(params, fbar, s.g, x, variant); },
                                     "coefficient of gbar in the second relation vanishes");
  return {params.with_t(params.t() / params.q()), DegState{fbar, gbar}};
}

std::pair<ParamsDeg, DegState> deg_evolve_inverse(const ParamsDeg& params, const DegState& s, Variant variant) {
  if (params.q() == Rational(1)) throw NonGeneric("q = 1");
  const ParamsDeg before = params.with_t(params.t() * params.q());
  const Rational g = solve_affine([&](const Rational& x) { return relation2(before, s.f, x, s.g, variant); },
                                  "coefficient of g in the second relation vanishes");
  const Rational f = solve_affine([&](const Rational& x) { return relation1(before, x, g, s.f); },
                                  "coefficient of f in the first relation vanishes");
  return {before, DegState{f, g}};
}

std::pair<LaxTriple, L2Form> deg_lax_coeffs(const Rational& z, const DegState& s, const ParamsDeg& p,
                                            Variant variant) {
  const auto& t = p.t();
  const auto& q = p.q();
  const auto& f = s.f;
  const auto& g = s.g;
  const Rational gz = g * z;
  const Rational t2 = t * t;
  require_nonzero(z, "z = 0");
  require_nonzero(g, "g = 0");
  require_nonzero(f * q - z, "f q = z");
  require_nonzero(f - z, "f = z");

  switch (p.system()) {
    case System::E7: {
      require_nonzero(f * g - 1, "f g = 1");
      require_nonzero(f * g - t2, "f g = t^2");
      require_nonzero(gz - q, "g z = q");
      require_nonzero(gz - t2, "g z = t^2");
      const Rational a = t2 * b1_at(q / z, p) / (q * (f * q - z));
      const Rational b = b2_at(t / z, p) / (t2 * (f - z));
      const Rational c = (1 - t2) / (g * z * z) *
                         (q * b1_at(g, p) / ((f * g - 1) * (gz - q)) - pow(t, 4) * b2_at(g / t, p) / ((f * g - t2) * (gz - t2)));
      const Rational zero = c - b * t2 * (1 - gz) / (t2 - gz) - a * (q * t2 - gz) / (t2 * (q - gz));
      return {{a, zero, b}, {gz - q, (q * t2 - gz) / t2, gz * (f * q - z) / (q * q)}};
    }
    case System::E6: {
      require_nonzero(f * g - 1, "f g = 1");
      require_nonzero(gz - q, "g z = q");
      require_nonzero(f, "f = 0");
      Rational bq = 1;
      for (int i = 1; i <= 4; ++i) bq *= p.b(i) * q - z;
      const Rational a = bq * t2 / (q * (f * q - z) * pow(z, 4));
      const Rational b = (p.b(5) * t - z) * (p.b(6) * t - z) / ((f - z) * z * z * t2);
      const Rational c = bg_product(p, 1, 4, g) * q / (g * (f * g - 1) * z * z * (gz - q)) -
                         p.b(5) * p.b(6) * (p.b(7) * g - t) * (p.b(8) * g - t) / (f * g * pow(z, 3));
      const Rational zero = c - a * gz / (t2 * (gz - q)) - b * (gz - 1) * t2 / gz;
      return {{a, zero, b}, {q - gz, gz / t2, -gz * (f * q - z) / (q * q)}};
    }
    case System::D5: {
      require_nonzero(f, "f = 0");
      const Rational a = p.b(1) * p.b(2) * q * (p.b(3) * q - z) * (p.b(4) * q - z) * t2 / ((f * q - z) * z * z);
      const Rational b = (p.b(5) * t - z) * (p.b(6) * t - z) / ((f - z) * t2);
      const Rational c = bg_product(p, 1, 2, g) / g - p.b(5) * p.b(6) * (p.b(7) * g - t) * (p.b(8) * g - t) / (f * gz);
      const Rational first = variant == Variant::corrected ? gz / (q * t2) : q * z / (q * t2);
      const Rational zero = c + a * first + b * t2 / gz;
      return {{a, zero, b}, {q, gz / t2, -gz * (f * q - z) / (q * q)}};
    }
  }
  return {};
}

std::vector<ConfigPoint> configuration(const ParamsDeg& p) {
  std::vector<ConfigPoint> pts;
  const auto& t = p.t();
  auto label = [](int i) { return "b" + std::to_string(i); };
  switch (p.system()) {
    case System::E7:
      for (int i = 1; i <= 4; ++i) pts.push_back({p.b(i), inv(p.b(i)), label(i)});
      for (int i = 5; i <= 8; ++i) pts.push_back({p.b(i) * t, t / p.b(i), label(i)});
      break;
    case System::E6:
      for (int i = 1; i <= 4; ++i) pts.push_back({p.b(i), inv(p.b(i)), label(i)});
      for (int i = 5; i <= 6; ++i) pts.push_back({p.b(i) * t, Rational(0), label(i)});
      for (int i = 7; i <= 8; ++i) pts.push_back({Rational(0), t / p.b(i), label(i)});
      break;
    case System::D5:
      for (int i = 1; i <= 2; ++i) pts.push_back({std::nullopt, inv(p.b(i)), label(i)});
      for (int i = 3; i <= 4; ++i) pts.push_back({p.b(i), std::nullopt, label(i)});
      for (int i = 5; i <= 6; ++i) pts.push_back({p.b(i) * t, Rational(0), label(i)});
      for (int i = 7; i <= 8; ++i) pts.push_back({Rational(0), t / p.b(i), label(i)});
      break;
  }
  return pts;
}

// ---------------------------------------------------------------------------

namespace {

std::array<Rational, 5> propagate(const Rational& seed_minus, const Rational& seed_zero, const Rational& z,
                                  const DegState& s, const ParamsDeg& p, Variant variant) {
  std::array<Rational, 5> y{seed_minus, seed_zero};
  Rational site = z;
  for (std::size_t k = 2; k < y.size(); ++k, site *= p.q()) {
    const LaxTriple t = deg_lax_coeffs(site, s, p, variant).first;
    require_nonzero(t.c_plus, "L1 coefficient of Y(qz) vanishes");
    y[k] = -(t.c_minus * y[k - 2] + t.c_zero * y[k - 1]) / t.c_plus;
  }
  return y;
}

std::array<Rational, 4> ybar_window(const std::array<Rational, 5>& y, const Rational& z, const DegState& s,
                                    const ParamsDeg& p, Variant variant) {
  std::array<Rational, 4> out;
  Rational site = z;
  for (std::size_t k = 0; k < out.size(); ++k, site *= p.q()) {
    const L2Form form = deg_lax_coeffs(site, s, p, variant).second;
    require_nonzero(form.c, "L2 coefficient of Ybar vanishes");
    out[k] = -(form.a * y[k] + form.b * y[k + 1]) / form.c;
  }
  return out;
}

json draw_detail(const ParamsDeg& p, const DegState& s, const Rational& z) {
  json b = json::array();
  for (const auto& x : p.b()) b.push_back(x.str());
  return {{"system", system_name(p.system())}, {"b", b}, {"t", p.t().str()},
          {"f", s.f.str()}, {"g", s.g.str()}, {"z", z.str()}};
}

}  // namespace

Rational deg_compatibility_residual(const ParamsDeg& params, const DegState& s, const Rational& z,
                                    const Rational& seed_minus, const Rational& seed_zero, Perturbation perturbation,
                                    Variant variant) {
  const auto y = propagate(seed_minus, seed_zero, z, s, params, variant);
  const auto yb = ybar_window(y, z, s, params, variant);
  auto [next_params, next] = deg_evolve(params, s, variant);
  switch (perturbation) {
    case Perturbation::none:
      break;
    case Perturbation::gbar_plus_one:
      next.g += 1;
      break;
    case Perturbation::fbar_times_two:
      next.f *= 2;
      break;
    case Perturbation::stale_params:
      next_params = params;
      break;
  }
  return deg_lax_coeffs(z, next, next_params, variant).first.apply(yb[0], yb[1], yb[2]);
}

Report deg_check_compatibility(const ParamsDeg& params, const DegState& s, const Rational& z, Rng& rng,
                               Variant variant) {
  Report r("compatibility " + system_name(params.system()));
  Rational seed_minus, seed_zero;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 16) throw NonGeneric("vacuous: every seed pair produced Ybar = 0");
    seed_minus = sample_rational(rng);
    seed_zero = sample_rational(rng);
    const auto yb = ybar_window(propagate(seed_minus, seed_zero, z, s, params, variant), z, s, params, variant);
    if (!std::all_of(yb.begin(), yb.end(), [](const Rational& x) { return x.is_zero(); })) break;
  }
  const Rational residual =
      deg_compatibility_residual(params, s, z, seed_minus, seed_zero, Perturbation::none, variant);
  json detail = draw_detail(params, s, z);
  detail["variant"] = variant == Variant::corrected ? "corrected" : "printed";
  detail["residual"] = residual.str();
  r.record(residual.is_zero(), detail);
  for (auto [pert, name] : {std::pair{Perturbation::gbar_plus_one, "gbar+1"},
                            std::pair{Perturbation::fbar_times_two, "fbar*2"},
                            std::pair{Perturbation::stale_params, "stale parameters"}}) {
    const Rational res = deg_compatibility_residual(params, s, z, seed_minus, seed_zero, pert, variant);
    r.record_control(!res.is_zero(), {{"control", name}});
  }
  return r;
}

Report deg_check_evolution(const ParamsDeg& params, const DegState& s, Variant variant) {
  Report r("evolution " + system_name(params.system()));
  const auto [next_params, next] = deg_evolve(params, s, variant);
  std::string failed;
  if (!relation1(params, s.f, s.g, next.f).is_zero()) failed = "first relation";
  else if (!relation2(params, next.f, s.g, next.g, variant).is_zero()) failed = "second relation";
  else if (next_params.q() != params.q()) failed = "q not conserved";
  else if (next_params.t() != params.t() / params.q()) failed = "t update";
  else if (deg_evolve_inverse(next_params, next, variant) != std::pair{params, s}) failed = "inverse round trip";
  json detail = draw_detail(params, s, Rational(1));
  detail.erase("z");
  detail["stage"] = failed;
  r.record(failed.empty(), detail);
  r.record_control(!relation2(params, next.f, s.g, next.g + 1, variant).is_zero(), {{"control", "gbar+1"}});
  return r;
}

Report check_e7_configuration(const ParamsDeg& params) {
  if (params.system() != System::E7) throw std::invalid_argument("check_e7_configuration needs an E7 system");
  Report r("e7 configuration");
  const Rational t2 = params.t() * params.t();
  std::string failed;
  for (const auto& pt : configuration(params)) {
    const Rational fg = *pt.f * *pt.g;
    if (!((fg - 1) * (fg - t2)).is_zero() && failed.empty()) failed = pt.label;
  }
  r.record(failed.empty(), {{"point", failed}});
  const Rational fg = params.b(1) * params.t() / params.b(1);  // (b1 t, 1/b1) mixes the two families
  r.record_control(!((fg - 1) * (fg - t2)).is_zero(), {{"control", "(b1 t, 1/b1)"}});
  return r;
}

// ---------------------------------------------------------------------------

bool converges(const std::vector<Rational>& eps, const std::vector<Rational>& deviations) {
  if (eps.size() != deviations.size()) throw std::invalid_argument("converges: size mismatch");
  for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
    const Rational& d0 = deviations[k];
    const Rational& d1 = deviations[k + 1];
    if (d1.is_zero()) continue;
    if (d0.is_zero()) return false;
    // Exact when the ratio of successive epsilons is a power of ten.
    Rational ratio = eps[k] / eps[k + 1];
    int decades = 0;
    while (ratio.is_integer() && ratio != Rational(1) && (ratio.numerator() % 10) == 0) {
      ratio /= 10;
      ++decades;
    }
    if (ratio == Rational(1)) {
      if (d0 < pow(Rational(5), decades) * d1) return false;
    } else if ((d0 / d1).to_double() < std::pow(5.0, std::log10((eps[k] / eps[k + 1]).to_double()))) {
      return false;
    }
  }
  return true;
}

namespace {

using EpsFn = std::function<Rational(const Rational& eps)>;

/// source(eps) -> target(eps) as eps -> 0; the target may carry explicit eps powers.
struct Relation {
  std::string name;
  EpsFn source;
  EpsFn target;
};

EpsFn constant(Rational x) {
  return [x = std::move(x)](const Rational&) { return x; };
}

Rational l1_invariant(const LaxTriple& t) {
  require_nonzero(t.c_zero, "L1 coefficient of Y(z) vanishes");
  return t.c_minus * t.c_plus / (t.c_zero * t.c_zero);
}

std::array<Rational, 8> scaled(std::array<Rational, 8> b, const std::array<int, 8>& powers, const Rational& eps) {
  for (std::size_t i = 0; i < 8; ++i) b[i] *= pow(eps, powers[i]);
  return b;
}

std::vector<Relation> relations(System target, const std::array<Rational, 8>& b, const Rational& t,
                                const DegState& s, const Rational& z, Variant variant) {
  std::vector<Relation> out;
  const auto& f = s.f;
  const auto& g = s.g;
  switch (target) {
    case System::E7: {
      const ParamsDeg p7(System::E7, b, t);
      const Rational q = p7.q();
      const auto next7 = deg_evolve(p7, s, variant).second;
      const auto lax7 = deg_lax_coeffs(z, s, p7, variant);
      auto e8 = [b, t](const Rational& e) {
        std::array<Rational, 8> u;
        for (int i = 0; i < 4; ++i) u[i] = b[i];
        for (int i = 4; i < 8; ++i) u[i] = e / b[i];
        return core::ParamsE8(t * e, e / t, u);
      };
      const Rational g8 = inv(g);  // E8 coordinate before g -> 1/g
      const Rational x = next7.f;  // a fixed value for the fbar argument
      const Rational b1g = b1_at(inv(g8), p7);
      const Rational b2g = b2_at(inv(t * g8), p7);
      const Rational b1x = b1_at(inv(x), p7);
      const Rational b2x = b2_at(t / (q * x), p7);
      out.push_back({"P_n(h2, g)", [=](const Rational& e) { const auto p = e8(e); return core::pn_eval(p.h2(), g8, p.m()); },
                     constant(pow(g8, 4) * b1g)});
      out.push_back({"P_d(h2, g)", [=](const Rational& e) { const auto p = e8(e); return core::pd_eval(p.h2(), g8, p.m()); },
                     [=](const Rational& e) { return pow(e, 4) * pow(g8, 4) / q * b2g; }});
      out.push_back({"P_n(h1/q, fbar)",
                     [=](const Rational& e) { const auto p = e8(e); return core::pn_eval(p.h1() / q, x, p.m()); },
                     constant(pow(x, 4) * b1x)});
      out.push_back({"P_d(h1/q, fbar)",
                     [=](const Rational& e) { const auto p = e8(e); return core::pd_eval(p.h1() / q, x, p.m()); },
                     [=](const Rational& e) { return pow(e, 4) * pow(x, 4) / q * b2x; }});
      out.push_back({"U(z/q)", [=](const Rational& e) { return core::u_poly(z / q, e8(e)); },
                     constant(pow(z / q, 8) * b1_at(q / z, p7))});
      const Rational b2z = b2_at(t / z, p7);
      out.push_back({"U(h1/z)", [=](const Rational& e) { const auto p = e8(e); return core::u_poly(p.h1() / z, p); },
                     [=](const Rational& e) { return pow(e, 4) / q * b2z; }});
      out.push_back({"fbar", [=](const Rational& e) { return core::evolve(e8(e), core::State{f, g8}).second.f; },
                     constant(next7.f)});
      out.push_back({"gbar", [=](const Rational& e) { return inv(core::evolve(e8(e), core::State{f, g8}).second.g); },
                     constant(next7.g)});
      out.push_back({"L1 Y(z/q)/Y(z) ratio",
                     [=](const Rational& e) {
                       const auto c = lax::l1_coeffs(z, core::State{f, g8}, e8(e));
                       return c.c_minus / c.c_zero;
                     },
                     constant(lax7.first.c_minus / lax7.first.c_zero)});
      out.push_back({"L1 Y(qz)/Y(z) ratio",
                     [=](const Rational& e) {
                       const auto c = lax::l1_coeffs(z, core::State{f, g8}, e8(e));
                       return c.c_plus / c.c_zero;
                     },
                     constant(lax7.first.c_plus / lax7.first.c_zero)});
      out.push_back({"L2 Y(z)/Y(z/q) ratio",
                     [=](const Rational& e) {
                       const auto l = lax::l2_coeffs(z, core::State{f, g8}, e8(e));
                       return l.b / l.a;
                     },
                     constant(lax7.second.b / lax7.second.a)});
      out.push_back({"L2 Ybar(z/q)/Y(z/q) ratio",
                     [=](const Rational& e) {
                       const auto l = lax::l2_coeffs(z, core::State{f, g8}, e8(e));
                       return l.c / l.a;
                     },
                     constant(lax7.second.c / lax7.second.a)});
      break;
    }
    case System::E6: {
      const ParamsDeg p6(System::E6, b, t);
      const auto next6 = deg_evolve(p6, s, variant).second;
      const auto lax6 = deg_lax_coeffs(z, s, p6, variant);
      auto e7 = [b, t](const Rational& e) {
        return ParamsDeg(System::E7, scaled(b, {0, 0, 0, 0, -1, -1, 1, 1}, e), t * e);
      };
      out.push_back({"fbar", [=](const Rational& e) { return deg_evolve(e7(e), s, variant).second.f; },
                     constant(next6.f)});
      out.push_back({"gbar", [=](const Rational& e) { return deg_evolve(e7(e), s, variant).second.g; },
                     constant(next6.g)});
      out.push_back({"L1 invariant",
                     [=](const Rational& e) { return l1_invariant(deg_lax_coeffs(z, s, e7(e), variant).first); },
                     constant(l1_invariant(lax6.first))});
      out.push_back({"L2 Y(z)/Y(z/q) ratio",
                     [=](const Rational& e) {
                       const auto l = deg_lax_coeffs(z, s, e7(e), variant).second;
                       return l.b / l.a;
                     },
                     [=](const Rational& e) { return lax6.second.b / lax6.second.a / (e * e); }});
      out.push_back({"L2 Ybar(z/q)/Y(z/q) ratio",
                     [=](const Rational& e) {
                       const auto l = deg_lax_coeffs(z, s, e7(e), variant).second;
                       return l.c / l.a;
                     },
                     constant(lax6.second.c / lax6.second.a)});
      break;
    }
    case System::D5: {
      const ParamsDeg p5(System::D5, b, t);
      const auto next5 = deg_evolve(p5, s, variant).second;
      const auto lax5 = deg_lax_coeffs(z, s, p5, variant);
      auto e6 = [b, t](const Rational& e) {
        return ParamsDeg(System::E6, scaled(b, {-1, -1, 1, 1, 0, 0, 0, 0}, e), t * e);
      };
      auto st = [s](const Rational& e) { return DegState{s.f * e, s.g * e}; };
      out.push_back({"fbar", [=](const Rational& e) { return deg_evolve(e6(e), st(e), variant).second.f / e; },
                     constant(next5.f)});
      out.push_back({"gbar", [=](const Rational& e) { return deg_evolve(e6(e), st(e), variant).second.g / e; },
                     constant(next5.g)});
      out.push_back({"L1 invariant",
                     [=](const Rational& e) { return l1_invariant(deg_lax_coeffs(z * e, st(e), e6(e), variant).first); },
                     constant(l1_invariant(lax5.first))});
      out.push_back({"L2 Y(z/q)", [=](const Rational& e) { return deg_lax_coeffs(z * e, st(e), e6(e), variant).second.a; },
                     constant(lax5.second.a)});
      out.push_back({"L2 Y(z)", [=](const Rational& e) { return deg_lax_coeffs(z * e, st(e), e6(e), variant).second.b; },
                     constant(lax5.second.b)});
      out.push_back({"L2 Ybar(z/q)", [=](const Rational& e) { return deg_lax_coeffs(z * e, st(e), e6(e), variant).second.c; },
                     [=](const Rational& e) { return lax5.second.c * pow(e, 3); }});
      break;
    }
  }
  return out;
}

std::vector<Rational> deviations(const EpsFn& source, const EpsFn& target, const std::vector<Rational>& eps) {
  std::vector<Rational> d;
  for (const auto& e : eps) {
    const Rational reference = target(e);
    require_nonzero(reference, "limit reference value is zero");
    d.push_back(abs(source(e) / reference - 1));
  }
  return d;
}

json deviation_json(const std::vector<Rational>& d) {
  json out = json::array();
  for (const auto& x : d) out.push_back(x.to_double());
  return out;
}

const Relation& find_relation(const std::vector<Relation>& rs, std::string_view prefix) {
  for (const auto& r : rs)
    if (r.name.starts_with(prefix)) return r;
  throw std::logic_error("missing limit relation");
}

}  // namespace

std::vector<LimitSeries> limit_series(System target, const std::array<Rational, 8>& b, const Rational& t,
                                      const DegState& s, const Rational& z, const std::vector<Rational>& eps,
                                      Variant variant) {
  std::vector<LimitSeries> out;
  for (const auto& r : relations(target, b, t, s, z, variant))
    out.push_back({r.name, deviations(r.source, r.target, eps)});
  return out;
}

Report check_limit(System target, const std::vector<Rational>& eps, Rng& rng, Variant variant, long bound) {
  if (eps.size() < 2) throw std::invalid_argument("check_limit needs at least two epsilons");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (eps[k].sign() <= 0) throw std::invalid_argument("epsilons must be positive");
    if (k > 0 && !(eps[k] < eps[k - 1])) throw std::invalid_argument("epsilons must be strictly decreasing");
  }
  Report r("limit " + system_name(target));
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<Rational, 8> b;
    for (auto& x : b) x = sample_unit_scale(rng, bound);
    const Rational t = sample_unit_scale(rng, bound);
    const DegState s{sample_unit_scale(rng, bound), sample_unit_scale(rng, bound)};
    const Rational z = sample_unit_scale(rng, bound);
    try {
      const auto own = relations(target, b, t, s, z, variant);
      const auto shifted_g = relations(target, b, t, DegState{s.f, s.g + 1}, z, variant);
      const auto shifted_z = relations(target, b, t, s, 2 * z, variant);
      std::vector<std::pair<std::string, std::vector<Rational>>> series;
      for (const auto& rel : own) series.emplace_back(rel.name, deviations(rel.source, rel.target, eps));
      const auto& fbar = find_relation(own, "fbar");
      const auto& l1 = find_relation(own, "L1");
      const auto fbar_control = deviations(fbar.source, find_relation(shifted_g, "fbar").target, eps);
      const auto l1_control = deviations(l1.source, find_relation(shifted_z, "L1").target, eps);

      std::string failed;
      json dev;
      for (const auto& [name, d] : series)
        if (failed.empty() && !converges(eps, d)) {
          failed = name;
          dev = deviation_json(d);
        }
      json detail = {{"relation", failed}, {"deviations", dev}, {"relations", series.size()}};
      if (variant == Variant::printed) detail["variant"] = "printed";
      r.record(failed.empty(), detail);
      r.record_control(!converges(eps, fbar_control), {{"control", "fbar against the target at g + 1"}});
      r.record_control(!converges(eps, l1_control), {{"control", l1.name + " against the target at 2z"}});
      return r;
    } catch (const NonGeneric&) {
      continue;
    }
  }
  throw NonGeneric("no generic limit draw in 64 attempts");
}

}  // namespace qlax::degen
