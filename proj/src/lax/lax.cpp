#include "qlax/lax/lax.hpp"

#include <stdexcept>
#include <string>

#include "qlax/exact/affine.hpp"
#include "qlax/exact/linalg.hpp"

namespace qlax::lax {

using core::phi;
using core::u_poly;
using core::v_eval;
using nlohmann::json;

namespace {

void require_nonzero(const Rational& x, const char* what) {
  if (x.is_zero()) throw NonGeneric(what);
}

Rational ybar_triple_apply(const LaxTriple& t, const YTriple& y) { return t.apply(y.minus, y.zero, y.plus); }

}  // namespace

const Rational& LaxWindow::at(int k) const {
  if (!contains(k)) throw std::out_of_range("LaxWindow: offset " + std::to_string(k) + " outside window");
  return values[static_cast<std::size_t>(k - first_offset)];
}

bool LaxWindow::all_zero() const {
  for (const auto& v : values)
    if (!v.is_zero()) return false;
  return true;
}

LaxTriple l1_coeffs(const Rational& z, const State& s, const ParamsE8& params) {
  require_nonzero(z, "z = 0");
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const auto& f = s.f;
  const auto& g = s.g;
  const Rational zq = z / q;
  const Rational z2 = z * z;

  const Rational d_minus = z2 - h1 * q * q;
  const Rational d_zero = z2 - h1;
  const Rational f_minus = f - params.f_at(zq);
  const Rational f_zero = f - params.f_at(z);
  const Rational g_minus = g - params.g_at(zq);
  const Rational g_h1z = g - params.g_at(h1 / z);
  const Rational phi_value = phi(s, params);
  require_nonzero(d_minus, "z^2 = h1 q^2");
  require_nonzero(d_zero, "z^2 = h1");
  require_nonzero(f_minus, "f = f(z/q)");
  require_nonzero(f_zero, "f = f(z)");
  require_nonzero(g_minus, "g = g(z/q)");
  require_nonzero(g_h1z, "g = g(h1/z)");
  require_nonzero(g, "g = 0");
  require_nonzero(phi_value, "phi(f, g) = 0");

  const Rational a = pow(q, 5) * u_poly(zq, params) / (d_minus * f_minus);
  const Rational b = pow(z, 8) * u_poly(h1 / z, params) / (d_zero * pow(h1, 4) * f_zero);
  const Rational v = v_eval(params.fbar_at(zq), f, g, params);
  const Rational c = (h1 - h2) * z2 * (z2 - h1 * q) * v /
                     (pow(h1, 3) * pow(h2, 3) * q * g * phi_value * g_h1z * g_minus);
  const Rational zero = -a * (g - params.g_at(h1 * q / z)) / g_minus - b * (g - params.g_at(z)) / g_h1z + c;
  return {a, zero, b};
}

L2Form l2_coeffs(const Rational& z, const State& s, const ParamsE8& params, L2Variant variant) {
  require_nonzero(z, "z = 0");
  const auto& h1 = params.h1();
  const auto& q = params.q();
  const Rational f_point = variant == L2Variant::corrected ? params.f_at(z / q) : params.f_at(z);
  return {s.g - params.g_at(z / q), -(s.g - params.g_at(h1 * q / z)), (s.f - f_point) * (h1 / z - z / (q * q))};
}

Rational l1_curve_value(const Rational& z, const ParamsE8& params, const YTriple& y, const Rational& f,
                        const Rational& g) {
  const State s{f, g};
  const LaxTriple t = l1_coeffs(z, s, params);
  return phi(s, params) * (f - params.f_at(z / params.q())) * (f - params.f_at(z)) * ybar_triple_apply(t, y);
}

CurveCoeffs32 curve_from_l1(const Rational& z, const ParamsE8& params, const YTriple& y, Rng& rng) {
  return fit_bidegree32([&](const Rational& f, const Rational& g) { return l1_curve_value(z, params, y, f, g); }, rng);
}

Rational q_point_g(const Rational& u, const Rational& y_u, const Rational& y_qu, const ParamsE8& params) {
  require_nonzero(u, "u = 0");
  // (g - g(u)) y_u = y_qu (g - g(h1/u))
  const Rational slope = y_u - y_qu;
  if (slope.is_zero()) throw NonGeneric("Y-ratio equals 1: Q point at g = infinity");
  return (y_u * params.g_at(u) - y_qu * params.g_at(params.h1() / u)) / slope;
}

LaxWindow propagate_y(const Rational& seed_minus, const Rational& seed_zero, const Rational& z, const State& s,
                      const ParamsE8& params, int k_max) {
  if (k_max < 0) throw std::invalid_argument("propagate_y: k_max must be >= 0");
  LaxWindow w{z, -1, {seed_minus, seed_zero}};
  Rational site = z;
  for (int k = 0; k < k_max; ++k, site *= params.q()) {
    const LaxTriple t = l1_coeffs(site, s, params);
    if (t.c_plus.is_zero()) throw NonGeneric("L1 coefficient of Y(qz) vanishes at offset " + std::to_string(k));
    const auto n = w.values.size();
    w.values.push_back(-(t.c_minus * w.values[n - 2] + t.c_zero * w.values[n - 1]) / t.c_plus);
  }
  return w;
}

LaxWindow ybar_from_y(const LaxWindow& window, const State& s, const ParamsE8& params, L2Variant variant) {
  LaxWindow out{window.base_z, window.first_offset, {}};
  for (int k = window.first_offset + 1; k <= window.last_offset(); ++k) {
    const Rational w = window.base_z * pow(params.q(), k);
    const L2Form form = l2_coeffs(w, s, params, variant);
    if (form.c.is_zero()) throw NonGeneric("L2 coefficient of Ybar vanishes at offset " + std::to_string(k));
    out.values.push_back(-(form.a * window.at(k - 1) + form.b * window.at(k)) / form.c);
  }
  return out;
}

LaxTriple l1u_coeffs(const Rational& z, const Rational& fbar, const Rational& g, const ParamsE8& params,
                     L1uVariant variant) {
  require_nonzero(z, "z = 0");
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const Rational zq = z / q;
  const Rational z2 = z * z;
  const Rational h1qz = h1 / (q * z);
  const Rational phi_u = phi(fbar, g, h1 / q, h2);

  const Rational d_minus = variant == L1uVariant::corrected ? z2 - h1 * q : z2 - h1 * q * q;
  const Rational fb_minus = fbar - params.fbar_at(zq);
  const Rational fb_zero = fbar - params.fbar_at(z);
  const Rational g_minus = g - params.g_at(zq);
  const Rational g_zero = g - params.g_at(z);
  const Rational g_h1z = g - params.g_at(h1 / z);
  const Rational u_minus = u_poly(zq, params);
  const Rational u_h1qz = u_poly(h1qz, params);
  require_nonzero(d_minus, "z^2 = h1 q");
  require_nonzero(q * z2 - h1, "q z^2 = h1");
  require_nonzero(fb_minus, "fbar = fbar(z/q)");
  require_nonzero(fb_zero, "fbar = fbar(z)");
  require_nonzero(g_minus, "g = g(z/q)");
  require_nonzero(g_zero, "g = g(z)");
  require_nonzero(g_h1z, "g = g(h1/z)");
  require_nonzero(g, "g = 0");
  require_nonzero(phi_u, "phi_u = 0");
  require_nonzero(u_minus, "U(z/q) = 0");
  require_nonzero(u_h1qz, "U(h1/(qz)) = 0");

  const Rational a = u_minus / (d_minus * fb_minus);
  const Rational b = pow(z, 8) * u_h1qz / ((q * z2 - h1) * pow(h1, 4) * fb_zero);
  const Rational c = (h1 - h2 * q) * z2 * (z2 - h1) * v_eval(fbar, params.f_at(z), g, params) /
                     (pow(h1, 3) * pow(h2, 3) * pow(q, 5) * g * phi_u * g_h1z * g_zero);
  const Rational zero = -a * pow(z, 8) / (pow(h1, 4) * pow(q, 4)) * u_poly(h1 / z, params) / u_minus * g_minus / g_h1z -
                        b * pow(h1, 4) / (pow(q, 4) * pow(z, 8)) * u_poly(z, params) / u_h1qz *
                            (g - params.g_at(h1qz)) / g_zero +
                        c;
  return {a, zero, b};
}

// ---------------------------------------------------------------------------

Rational compatibility_residual(const ParamsE8& params, const State& s, const Rational& z, const Rational& seed_minus,
                                const Rational& seed_zero, Perturbation perturbation, L2Variant variant) {
  const LaxWindow y = propagate_y(seed_minus, seed_zero, z, s, params, 3);
  const LaxWindow ybar = ybar_from_y(y, s, params, variant);
  auto [next_params, next] = core::evolve(params, s);
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
  return l1_coeffs(z, next, next_params).apply(ybar.at(-1), ybar.at(0), ybar.at(1));
}

namespace {

struct Seeds {
  Rational minus, zero;
};

/// Draws seeds whose Ybar window is not identically zero.
Seeds draw_seeds(const ParamsE8& params, const State& s, const Rational& z, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Seeds seeds{sample_rational(rng), sample_rational(rng)};
    const LaxWindow ybar = ybar_from_y(propagate_y(seeds.minus, seeds.zero, z, s, params, 3), s, params);
    if (!ybar.all_zero()) return seeds;
  }
  throw NonGeneric("vacuous: every seed pair produced Ybar = 0");
}

json draw_detail(const ParamsE8& params, const State& s, const Rational& z) {
  json u = json::array();
  for (const auto& x : params.u()) u.push_back(x.str());
  return {{"h1", params.h1().str()}, {"h2", params.h2().str()}, {"u", u},
          {"f", s.f.str()},          {"g", s.g.str()},          {"z", z.str()}};
}

}  // namespace

Report check_compatibility(const ParamsE8& params, const State& s, const Rational& z, Rng& rng, L2Variant variant) {
  Report r{"compatibility"};
  const Seeds seeds = draw_seeds(params, s, z, rng);
  const Rational residual = compatibility_residual(params, s, z, seeds.minus, seeds.zero, Perturbation::none, variant);
  json detail = draw_detail(params, s, z);
  detail["residual"] = residual.str();
  r.record(residual.is_zero(), detail);

  for (auto [p, name] : {std::pair{Perturbation::gbar_plus_one, "gbar+1"},
                         std::pair{Perturbation::fbar_times_two, "fbar*2"},
                         std::pair{Perturbation::stale_params, "stale parameters"}}) {
    const Rational res = compatibility_residual(params, s, z, seeds.minus, seeds.zero, p, variant);
    r.record_control(!res.is_zero(), {{"control", name}});
  }
  return r;
}

Rational lemma_ratio_lhs(const ParamsE8& params, const State& s, const Rational& x1, const Rational& x2) {
  const Rational fbar = core::step_f(s.f, s.g, params);
  const Rational den = (fbar - x2) * v_eval(fbar, x1, s.g, params);
  require_nonzero(den, "(fbar - x2) V(fbar, x1) = 0");
  return (s.f - x1) * v_eval(x2, s.f, s.g, params) / den;
}

Rational lemma_ratio_rhs(const ParamsE8& params, const State& s) {
  const Rational fbar = core::step_f(s.f, s.g, params);
  const Rational phi_u = phi(fbar, s.g, params.h1() / params.q(), params.h2());
  require_nonzero(phi_u, "phi_u = 0");
  return (params.h1() - params.h2() * params.q()) * phi(s, params) / ((params.h1() - params.h2()) * phi_u);
}

Report check_lemma_ratio(const ParamsE8& params, const State& s, const Rational& x1, const Rational& x2) {
  Report r{"lemma_ratio"};
  const Rational lhs = lemma_ratio_lhs(params, s, x1, x2);
  const Rational rhs = lemma_ratio_rhs(params, s);
  r.record(lhs == rhs, {{"x1", x1.str()}, {"x2", x2.str()}, {"lhs", lhs.str()}, {"rhs", rhs.str()}});

  // Control: the same expression with fbar replaced by fbar + 1.
  const Rational fbar = core::step_f(s.f, s.g, params) + 1;
  const Rational den = (fbar - x2) * v_eval(fbar, x1, s.g, params);
  const bool differs = den.is_zero() || (s.f - x1) * v_eval(x2, s.f, s.g, params) / den != rhs;
  r.record_control(differs, {{"control", "fbar+1"}});
  return r;
}

ChainResiduals proof_chain_residuals(const ParamsE8& params, const State& s, const Rational& z,
                                     const Rational& seed_minus, const Rational& seed_zero, const Rational& w_scale,
                                     L1uVariant variant) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const auto& f = s.f;
  const auto& g = s.g;

  const LaxWindow y = propagate_y(seed_minus, seed_zero, z, s, params, 3);
  const LaxWindow yb = ybar_from_y(y, s, params);
  const Rational fbar = core::step_f(f, g, params);
  const Rational phi_value = phi(s, params);
  const Rational phi_u = phi(fbar, g, h1 / q, h2);
  auto U = [&](const Rational& x) { return u_poly(x, params); };
  auto gp = [&](const Rational& x) { return params.g_at(x); };

  // Ybar at z q^k for k in {-1, 0, 1}.
  auto ybar_at = [&](const Rational& w) -> const Rational& {
    for (int k = -1; k <= 1; ++k)
      if (w == z * pow(q, k)) return yb.at(k);
    throw std::logic_error("Ybar requested outside the window");
  };
  // Coefficient of Y(w) in the V-term of L1 at spectral parameter w.
  auto v_term = [&](const Rational& w) {
    return (h1 - h2) * w * w * (w * w - h1 * q) * v_eval(params.fbar_at(w / q), f, g, params) /
           (pow(h1, 3) * pow(h2, 3) * q * g * phi_value * (g - gp(h1 / w)) * (g - gp(w / q)));
  };
  // W(w/q).
  auto w_at = [&](const Rational& w) {
    return w_scale * (ybar_at(w / q) - pow(w, 8) / (pow(h1, 4) * pow(q, 4)) * (g - gp(w / q)) / (g - gp(h1 / w)) *
                                           U(h1 / w) / U(w / q) * ybar_at(w));
  };

  ChainResiduals r;
  r.eliminated_l1 = pow(q, 3) * U(z / q) / (z * (g - gp(z / q))) * yb.at(-1) -
                    pow(z, 7) * U(h1 / z) / (pow(h1, 4) * q * (g - gp(h1 / z))) * yb.at(0) + v_term(z) * y.at(0);

  auto w_relation = [&](const Rational& w, const Rational& y_w) {
    return pow(q, 3) * U(w / q) / (w * (g - gp(w / q))) * w_at(w) + v_term(w) * y_w;
  };
  r.w_relation = w_relation(z, y.at(0));
  r.w_relation_up = w_relation(q * z, y.at(1));

  const Rational w_minus = w_at(z);
  const Rational w_zero = w_at(q * z);
  const Rational z2 = z * z;
  const Rational v_minus = v_eval(params.fbar_at(z / q), f, g, params);
  const Rational v_zero = v_eval(params.fbar_at(z), f, g, params);
  const Rational common = (h1 * q - z2) * (g - gp(h1 / (q * z))) * U(z) /
                          (pow(q, 4) * (q * z2 - h1) * (g - gp(z)) * U(z / q));
  r.w_pair = w_minus +
             (h1 - h2) * (h1 - z2) * (h1 * q - z2) * (f - params.f_at(z)) * v_minus * z2 /
                 (g * pow(h1, 3) * pow(h2, 3) * phi_value * pow(q, 5) * (g - gp(h1 / z)) * (g - gp(z)) * U(z / q)) *
                 yb.at(0) +
             common * v_minus / v_zero * w_zero;

  const Rational fb_minus = fbar - params.fbar_at(z / q);
  const Rational fb_zero = fbar - params.fbar_at(z);
  r.w_pair_rewritten =
      w_minus +
      (h1 - h2 * q) * (h1 - z2) * (h1 * q - z2) * fb_minus * v_eval(fbar, params.f_at(z), g, params) * z2 /
          (g * pow(h1, 3) * pow(h2, 3) * phi_u * pow(q, 5) * (g - gp(h1 / z)) * (g - gp(z)) * U(z / q)) * yb.at(0) +
      common * fb_minus / fb_zero * w_zero;

  r.l1u = l1u_coeffs(z, fbar, g, params, variant).apply(yb.at(-1), yb.at(0), yb.at(1));
  return r;
}

Report check_proof_chain(const ParamsE8& params, const State& s, const Rational& z, Rng& rng) {
  Report r{"proof_chain"};
  const Seeds seeds = draw_seeds(params, s, z, rng);
  const ChainResiduals c = proof_chain_residuals(params, s, z, seeds.minus, seeds.zero);
  json detail = draw_detail(params, s, z);
  std::string failed;
  if (!c.eliminated_l1.is_zero()) failed = "eliminated L1";
  else if (!c.w_relation.is_zero() || !c.w_relation_up.is_zero()) failed = "W relation";
  else if (!c.w_pair.is_zero() || !c.w_pair_rewritten.is_zero()) failed = "W pair relation";
  else if (!c.l1u.is_zero()) failed = "L1u";
  detail["stage"] = failed;
  r.record(failed.empty(), detail);

  const ChainResiduals bad = proof_chain_residuals(params, s, z, seeds.minus, seeds.zero, Rational(2));
  r.record_control(!bad.w_relation.is_zero(), {{"control", "W*2"}});
  return r;
}

// ---------------------------------------------------------------------------

Rational l1u_curve_value(const Rational& z, const ParamsE8& params, const YTriple& ybar, const Rational& fbar,
                         const Rational& g) {
  const auto& q = params.q();
  const Rational phi_u = phi(fbar, g, params.h1() / q, params.h2());
  return phi_u * (fbar - params.fbar_at(z / q)) * (fbar - params.fbar_at(z)) *
         ybar_triple_apply(l1u_coeffs(z, fbar, g, params), ybar);
}

Rational transformed_curve_value(const Rational& z, const ParamsE8& params, const YTriple& ybar,
                                 const Rational& fbar, const Rational& gbar) {
  const Rational beta = core::g_relation(fbar, gbar, 0, params);
  const Rational alpha = core::g_relation(fbar, gbar, 1, params) - beta;
  require_nonzero(alpha, "g-update relation has no g term");
  // alpha and beta share a factor fbar, so alpha^2 F carries fbar^2 besides the eight base factors.
  Rational base_factor = fbar * fbar;
  for (const auto& u : params.u()) base_factor *= fbar - params.fbar_at(u);
  require_nonzero(base_factor, "fbar = 0 or fbar = fbar(u_i)");
  const Rational g = -beta / alpha;
  return l1u_curve_value(z, params, ybar, fbar, g) * alpha * alpha / base_factor;
}

namespace {

struct Point {
  Rational f, g;
  std::string label;
};

/// Records one draw that passes iff `curve` vanishes at every point.
bool all_vanish(const CurveCoeffs32& curve, const std::vector<Point>& points, std::string& failed) {
  for (const auto& p : points)
    if (!curve.eval(p.f, p.g).is_zero()) {
      failed = p.label;
      return false;
    }
  return true;
}

/// True when a and b are nonzero multiples of each other.
bool proportional(const CurveCoeffs32& a, const CurveCoeffs32& b) {
  if (a.is_zero() || b.is_zero()) return false;
  std::optional<Rational> ratio;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 2; ++j) {
      const auto& x = a.at(i, j);
      const auto& y = b.at(i, j);
      if (x.is_zero() != y.is_zero()) return false;
      if (x.is_zero()) continue;
      if (!ratio) ratio = x / y;
      else if (*ratio != x / y) return false;
    }
  return true;
}

Matrix monomial_rows(const std::vector<Point>& points) {
  Matrix m;
  for (const auto& p : points) {
    std::vector<Rational> row;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 2; ++j) row.push_back(pow(p.f, i) * pow(p.g, j));
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

Report check_l1_curve(const ParamsE8& params, const Rational& z, const YTriple& y, Rng& rng) {
  Report r{"l1_curve"};
  json detail = {{"z", z.str()}};
  CurveCoeffs32 curve;
  try {
    curve = curve_from_l1(z, params, y, rng);
  } catch (const DegreeMismatch& e) {
    detail["stage"] = std::string("degree: ") + e.what();
    r.record(false, detail);
    return r;
  }

  const auto& q = params.q();
  std::vector<Point> points;
  for (int i = 0; i < 8; ++i)
    points.push_back({params.f_at(params.u(i)), params.g_at(params.u(i)), "P" + std::to_string(i + 1)});
  points.push_back({params.f_at(z), params.g_at(z), "P(z)"});
  const Rational w = params.h1() * q / z;
  points.push_back({params.f_at(w), params.g_at(w), "P(h1 q/z)"});
  points.push_back({params.f_at(z), q_point_g(z, y.zero, y.plus, params), "Q(z)"});
  points.push_back({params.f_at(z / q), q_point_g(z / q, y.minus, y.zero, params), "Q(z/q)"});

  std::string failed;
  bool ok = !curve.is_zero() && all_vanish(curve, points, failed);
  // Uniqueness: the 12 conditions have rank 11 on the 12-dim space of (3,2) polynomials.
  if (ok && matrix_rank(monomial_rows(points)) != 11) {
    ok = false;
    failed = "12 conditions do not cut out a unique curve";
  }
  detail["stage"] = failed;
  r.record(ok, detail);

  const Rational f_off = sample_rational(rng);
  const Rational g_off = sample_rational(rng);
  r.record_control(!curve.eval(f_off, g_off).is_zero(), {{"control", "random point"}});
  const Rational g_wrong = q_point_g(z, y.zero, 2 * y.plus, params);
  r.record_control(!curve.eval(params.f_at(z), g_wrong).is_zero(), {{"control", "Q(z) with doubled ratio"}});
  return r;
}

Report check_l1_structure(const ParamsE8& params, const Rational& z, Rng& rng, int samples) {
  Report r{"l1_structure"};
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  const auto& q = params.q();
  const auto& m = params.m();
  using core::pd_eval;
  using core::pn_eval;

  const Rational gzq = params.g_at(z / q);
  const Rational gh1z = params.g_at(h1 / z);
  const std::array<Rational, 4> residues = {
      pd_eval(h2, 0, m) - pow(h2, 4) * pn_eval(h2, 0, m),
      pd_eval(h2, gzq, m) + pow(h2, 3) * pow(z / q, 2) * pn_eval(h2, gzq, m) - pow(h2 * q / z, 3) * gzq * u_poly(z / q, params),
      pd_eval(h2, gh1z, m) + pow(h2, 3) * pow(h1 / z, 2) * pn_eval(h2, gh1z, m) -
          pow(h2 * z / h1, 3) * gh1z * u_poly(h1 / z, params),
      h1 * h1 * h2 * h2 * m[0] - q * m[8]};
  std::string failed;
  for (std::size_t k = 0; k < residues.size(); ++k)
    if (!residues[k].is_zero() && failed.empty()) failed = "residue expression " + std::to_string(k + 1);

  // Y(z) coefficient of F along the curve phi = 0.
  const CurveCoeffs32 coefficient = curve_from_l1(z, params, {0, 1, 0}, rng);
  std::optional<Rational> ratio;
  bool control_varies = false;
  std::optional<Rational> control_ratio;
  for (int k = 0; k < samples; ++k) {
    const Rational u = sample_rational(rng);
    const Rational gu = params.g_at(u);
    const Rational value = coefficient.eval(params.f_at(u), gu);
    const Rational rhs_poly = pd_eval(h2, gu, m) + pow(h2, 3) * u * u * pn_eval(h2, gu, m);
    const Rational closed = pow(h2 / u, 3) * gu * u_poly(u, params);
    if (rhs_poly != closed && failed.empty()) failed = "P_d + h2^3 u^2 P_n != (h2/u)^3 g(u) U(u)";
    // On the curve F carries an extra 1/(u^2 g(u)) from the 1/g of L1 and the f/g denominators.
    const Rational shape = (u - z) * (h1 * q - u * z) / (u * u * gu);
    if (closed.is_zero() || shape.is_zero()) continue;
    const Rational here = value / (shape * closed);
    if (here.is_zero() && failed.empty()) failed = "Y(z) coefficient vanishes identically on the curve";
    if (!ratio) ratio = here;
    else if (*ratio != here && failed.empty()) failed = "Y(z) coefficient not proportional";

    const Rational wrong_shape = (u - z / q) * (h1 * q - u * z) / (u * u * gu);
    if (!wrong_shape.is_zero()) {
      const Rational c = value / (wrong_shape * closed);
      if (control_ratio && *control_ratio != c) control_varies = true;
      control_ratio = c;
    }
  }
  r.record(failed.empty(), {{"stage", failed}, {"z", z.str()}});
  if (samples > 1) r.record_control(control_varies, {{"control", "(u - z/q) in place of (u - z)"}});
  return r;
}

Report check_l1u_geometry(const ParamsE8& params, const StepState& s, const Rational& z, const YTriple& ybar,
                          Rng& rng) {
  Report r{"l1u_geometry"};
  const auto& h1 = params.h1();
  const auto& q = params.q();
  json detail = {{"z", z.str()}};
  std::string failed;

  CurveCoeffs32 mixed;
  CurveCoeffs32 transformed;
  try {
    mixed = fit_bidegree32(
        [&](const Rational& fb, const Rational& g) { return l1u_curve_value(z, params, ybar, fb, g); }, rng);
    transformed = fit_bidegree32(
        [&](const Rational& fb, const Rational& gb) { return transformed_curve_value(z, params, ybar, fb, gb); }, rng);
  } catch (const DegreeMismatch& e) {
    detail["stage"] = std::string("degree: ") + e.what();
    r.record(false, detail);
    return r;
  }

  // Mixed coordinates (fbar, g): 10 configuration points and two Ybar-ratio points.
  std::vector<Point> mixed_points;
  for (int i = 0; i < 8; ++i)
    mixed_points.push_back({params.fbar_at(params.u(i)), params.g_at(params.u(i)), "(fbar, g)(u" + std::to_string(i + 1) + ")"});
  for (const auto& [u, label] : {std::pair{z / q, "z/q"}, std::pair{h1 / (q * z), "h1/(qz)"}})
    mixed_points.push_back({params.fbar_at(u), params.g_at(u), std::string("(fbar, g)(") + label + ")"});
  const std::array<Rational, 3> yb = {ybar.minus, ybar.zero, ybar.plus};
  for (int k = 0; k <= 1; ++k) {
    const Rational u = z * pow(q, k - 1);
    const Rational& y_u = yb[static_cast<std::size_t>(k)];
    const Rational& y_qu = yb[static_cast<std::size_t>(k + 1)];
    const Rational scale = pow(q, 4) * pow(u, 8) / pow(h1, 4) * u_poly(h1 / (q * u), params) / u_poly(u, params);
    // scale (g - g(u)) y_qu = y_u (g - g(h1/(qu)))
    const Rational slope = scale * y_qu - y_u;
    require_nonzero(slope, "Ybar-ratio point at g = infinity");
    const Rational g = (scale * params.g_at(u) * y_qu - y_u * params.g_at(h1 / (q * u))) / slope;
    mixed_points.push_back({params.fbar_at(u), g, k == 0 ? "Ybar point u=z/q" : "Ybar point u=z"});
  }
  if (mixed.is_zero()) failed = "L1u curve is identically zero";
  else all_vanish(mixed, mixed_points, failed);
  if (failed.empty() && !mixed.eval(s.fbar, s.g).is_zero()) failed = "state (fbar, g) off the L1u curve";

  // After the step: (fbar, gbar) coordinates.
  const ParamsE8 next(h1 / q, params.h2() * q, params.u());
  std::vector<Point> next_points;
  for (int i = 0; i < 8; ++i)
    next_points.push_back({params.fbar_at(params.u(i)), params.gbar_at(params.u(i)), "(fbar, gbar)(u" + std::to_string(i + 1) + ")"});
  for (const auto& [u, label] : {std::pair{z, "z"}, std::pair{h1 / z, "h1/z"}})
    next_points.push_back({params.fbar_at(u), params.gbar_at(u), std::string("(fbar, gbar)(") + label + ")"});
  next_points.push_back({next.f_at(z), q_point_g(z, ybar.zero, ybar.plus, next), "Qbar(z)"});
  next_points.push_back({next.f_at(z / q), q_point_g(z / q, ybar.minus, ybar.zero, next), "Qbar(z/q)"});
  if (failed.empty()) {
    if (transformed.is_zero()) failed = "transformed curve is identically zero";
    else all_vanish(transformed, next_points, failed);
  }
  if (failed.empty() && !transformed.eval(s.fbar, s.gbar).is_zero()) failed = "state (fbar, gbar) off the transformed curve";
  if (failed.empty() && !proportional(transformed, curve_from_l1(z, next, ybar, rng)))
    failed = "transformed curve differs from the evolved L1 curve";

  detail["stage"] = failed;
  r.record(failed.empty(), detail);

  const Rational g_wrong = q_point_g(z, ybar.zero, 2 * ybar.plus, next);
  r.record_control(!transformed.eval(next.f_at(z), g_wrong).is_zero(), {{"control", "Qbar(z) with doubled ratio"}});
  return r;
}

}  // namespace qlax::lax
