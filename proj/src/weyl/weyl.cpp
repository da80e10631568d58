#include "qlax/weyl/weyl.hpp"

#include <algorithm>
#include <cctype>

namespace qlax::weyl {

using nlohmann::json;

namespace {

Generator pair_generator(Kind kind, int i, int j) {
  if (i < 1 || i > 8 || j < 1 || j > 8 || i == j)
    throw std::invalid_argument("generator indices must be distinct and in 1..8");
  return {kind, std::min(i, j), std::max(i, j)};
}

std::size_t idx(int i) { return static_cast<std::size_t>(i - 1); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Generator Generator::c() { return {Kind::c, 0, 0}; }
Generator Generator::s(int i, int j) { return pair_generator(Kind::s, i, j); }
Generator Generator::mu(int i, int j) { return pair_generator(Kind::mu, i, j); }
Generator Generator::nu(int i, int j) { return pair_generator(Kind::nu, i, j); }

Generator Generator::parse(std::string_view text) {
  const std::string t = trim(text);
  if (t == "c") return c();
  std::string_view digits;
  Kind kind;
  if (t.starts_with("mu")) {
    kind = Kind::mu;
    digits = std::string_view(t).substr(2);
  } else if (t.starts_with("nu")) {
    kind = Kind::nu;
    digits = std::string_view(t).substr(2);
  } else if (t.starts_with("s")) {
    kind = Kind::s;
    digits = std::string_view(t).substr(1);
  } else {
    throw ParseError("unknown generator '" + t + "'");
  }
  if (digits.size() != 2 || !std::isdigit(static_cast<unsigned char>(digits[0])) ||
      !std::isdigit(static_cast<unsigned char>(digits[1])))
    throw ParseError("generator '" + t + "' needs two index digits");
  try {
    return pair_generator(kind, digits[0] - '0', digits[1] - '0');
  } catch (const std::invalid_argument& e) {
    throw ParseError("generator '" + t + "': " + e.what());
  }
}

std::string Generator::name() const {
  switch (kind) {
    case Kind::c:
      return "c";
    case Kind::s:
      return "s" + std::to_string(i) + std::to_string(j);
    case Kind::mu:
      return "mu" + std::to_string(i) + std::to_string(j);
    case Kind::nu:
      return "nu" + std::to_string(i) + std::to_string(j);
  }
  return {};
}

GroupWord parse_word(std::string_view text) {
  GroupWord w;
  if (trim(text).empty()) return w;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    w.push_back(Generator::parse(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

std::string word_name(const GroupWord& w) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += ',';
    out += g.name();
  }
  return out;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

GroupWord power(const GroupWord& w, int n) {
  GroupWord out;
  for (int k = 0; k < n; ++k) out = out * w;
  return out;
}

Point apply_generator(const Generator& gen, const ParamsE8& params, const State& s) {
  const auto& h1 = params.h1();
  const auto& h2 = params.h2();
  auto u = params.u();
  if (gen.kind == Kind::c) return {ParamsE8(h2, h1, u), State{s.g, s.f}};
  const std::size_t i = idx(gen.i);
  const std::size_t j = idx(gen.j);
  if (gen.kind == Kind::s) {
    std::swap(u[i], u[j]);
    return {ParamsE8(h1, h2, u), s};
  }

  const Rational& ui = u[i];
  const Rational& uj = u[j];
  const Rational fi = params.f_at(ui), fj = params.f_at(uj);
  const Rational gi = params.g_at(ui), gj = params.g_at(uj);
  // rho = (x - x_i)/(x - x_j) for the moved coordinate x, read off the fixed one.
  Rational num, den, a_i, a_j;
  if (gen.kind == Kind::mu) {
    num = (s.f - fi) * (s.g - gj);
    den = (s.f - fj) * (s.g - gi);
    a_i = h1 / ui + h2 / uj;
    a_j = h1 / uj + h2 / ui;
  } else {
    num = (s.g - gi) * (s.f - fj);
    den = (s.g - gj) * (s.f - fi);
    a_i = h2 / ui + h1 / uj;
    a_j = h2 / uj + h1 / ui;
  }
  if (den.is_zero()) throw NonGeneric(gen.name() + ": cross-ratio denominator vanishes");
  const Rational rho = num / den;
  if (rho == Rational(1)) throw NonGeneric(gen.name() + ": image coordinate at infinity");
  const Rational moved = (a_i - rho * a_j) / (1 - rho);

  const Rational hh = h1 * h2 / (ui * uj);
  std::array<Rational, 8> nu = u;
  if (gen.kind == Kind::mu) {
    nu[i] = h2 / uj;
    nu[j] = h2 / ui;
    return {ParamsE8(hh, h2, nu), State{moved, s.g}};
  }
  nu[i] = h1 / uj;
  nu[j] = h1 / ui;
  return {ParamsE8(h1, hh, nu), State{s.f, moved}};
}

Point apply_word(const GroupWord& w, const ParamsE8& params, const State& s) {
  Point p{params, s};
  for (std::size_t k = w.size(); k-- > 0;) {
    try {
      p = apply_generator(w[k], p.first, p.second);
    } catch (const NonGeneric& e) {
      throw NonGeneric("word position " + std::to_string(k) + " (" + w[k].name() + "): " + e.what());
    }
  }
  return p;
}

const std::vector<Generator>& simple_reflections() {
  static const std::vector<Generator> nodes = {Generator::c(),      Generator::mu(1, 2), Generator::s(2, 3),
                                               Generator::s(3, 4),  Generator::s(4, 5),  Generator::s(5, 6),
                                               Generator::s(6, 7),  Generator::s(7, 8),  Generator::s(1, 2)};
  return nodes;
}

bool dynkin_adjacent(const Generator& a, const Generator& b) {
  const auto& n = simple_reflections();
  const auto pos = [&](const Generator& g) { return std::find(n.begin(), n.end(), g) - n.begin(); };
  const auto pa = pos(a), pb = pos(b);
  if (pa == static_cast<long>(n.size()) || pb == static_cast<long>(n.size())) return false;
  const auto lo = std::min(pa, pb), hi = std::max(pa, pb);
  if (hi == 8) return lo == 2;  // s12 - s23
  return hi - lo == 1;          // chain c - mu12 - s23 - ... - s78
}

GroupWord r_word() { return parse_word("s12,mu12,s34,mu34,s56,mu56,s78,mu78"); }

GroupWord t1_word() {
  const GroupWord c{Generator::c()};
  return c * r_word() * c * r_word();
}

Rational v_scale(const ParamsE8& params) { return params.q() * params.h2() / params.h1(); }

namespace {

bool same(const Point& a, const ParamsE8& p, const State& s) { return a.first == p && a.second == s; }

/// Relation residual: true when w acts as the identity at (p, s).
bool is_identity(const GroupWord& w, const ParamsE8& p, const State& s) { return same(apply_word(w, p, s), p, s); }

}  // namespace

Report check_coxeter(const ParamsE8& params, const State& s, Rng& rng) {
  Report r("coxeter");
  const auto& nodes = simple_reflections();
  const State other{sample_rational(rng), sample_rational(rng)};
  for (const State& st : {s, other}) {
    std::string failed;
    for (std::size_t a = 0; a < nodes.size() && failed.empty(); ++a)
      for (std::size_t b = a; b < nodes.size() && failed.empty(); ++b) {
        const int m = a == b ? 1 : (dynkin_adjacent(nodes[a], nodes[b]) ? 3 : 2);
        const GroupWord w = power(GroupWord{nodes[a], nodes[b]}, m);
        if (!is_identity(w, params, st)) failed = "(" + nodes[a].name() + " " + nodes[b].name() + ")^" + std::to_string(m);
      }
    r.record(failed.empty(), {{"relation", failed}, {"f", st.f.str()}, {"g", st.g.str()}});
  }
  r.record_control(!is_identity(power(parse_word("c,mu12"), 2), params, s), {{"control", "(c mu12)^2"}});
  return r;
}

Report check_translation(const ParamsE8& params, const State& s) {
  Report r("translation");
  const Rational v = v_scale(params);
  const auto& q = params.q();
  const auto [evolved, next] = core::evolve(params, s);

  std::array<Rational, 8> uv = params.u();
  for (auto& x : uv) x *= v;
  const ParamsE8 expected(params.h1() / q * v * v, q * params.h2() * v * v, uv);
  const State expected_state{next.f * v, next.g * v};
  const Point t1 = apply_word(t1_word(), params, s);
  json detail = {{"T1(f)", t1.second.f.str()}, {"fbar v", expected_state.f.str()}};
  std::string failed;
  if (t1.first != expected) failed = "parameters";
  else if (t1.first.q() != q) failed = "q";
  else if (t1.second != expected_state) failed = "(f, g)";

  std::array<Rational, 8> ur = params.u();
  for (auto& x : ur) x = params.h2() / x;
  const Point rp = apply_word(r_word(), params, s);
  if (failed.empty() && (rp.first != ParamsE8(v * params.h2(), params.h2(), ur) ||
                         rp.second != State{next.f * v, s.g}))
    failed = "r row";
  detail["stage"] = failed;
  r.record(failed.empty(), detail);

  r.record_control(t1.second != next, {{"control", "T1 without v rescaling"}});
  const GroupWord reversed = r_word() * GroupWord{Generator::c()} * r_word() * GroupWord{Generator::c()};
  r.record_control(!same(apply_word(reversed, params, s), expected, expected_state), {{"control", "r c r c"}});
  return r;
}

Report check_generator(const Generator& gen, const ParamsE8& params, const State& s, Rng& rng) {
  Report r("generator " + gen.name());
  const ParamsE8 image_params = apply_generator(gen, params, s).first;
  std::string failed;
  if (image_params.q() != params.q()) failed = "q not invariant";
  if (failed.empty() && !same(apply_word({gen, gen}, params, s), params, s)) failed = "not an involution";

  // Label of the image configuration point hit by source point k.
  auto image_label = [&](int k) {
    if (gen.kind == Kind::s && (k == gen.i || k == gen.j)) return k == gen.i ? gen.j : gen.i;
    return k;
  };
  const bool blown_up = gen.kind == Kind::mu || gen.kind == Kind::nu;
  int checked = 0;
  for (int k = 1; k <= 8 && failed.empty(); ++k) {
    if (blown_up && (k == gen.i || k == gen.j)) continue;
    const State pk = core::point_on_curve(params.u(k - 1), params);
    const State mapped = apply_generator(gen, params, pk).second;
    const State target = core::point_on_curve(image_params.u(image_label(k) - 1), image_params);
    if (mapped != target) failed = "P" + std::to_string(k) + " not mapped to the image configuration";
    ++checked;
  }
  if (failed.empty()) {
    const State on_curve = core::point_on_curve(sample_rational(rng), params);
    const State mapped = apply_generator(gen, params, on_curve).second;
    if (!core::phi(mapped, image_params).is_zero()) failed = "curve point not mapped to the image curve";
  }
  r.record(failed.empty(), {{"stage", failed}, {"points_checked", checked}});

  // Control: the image of P_k compared against the wrong image point.
  const int k = blown_up && gen.i == 1 ? (gen.j == 2 ? 3 : 2) : 1;
  const State mapped = apply_generator(gen, params, core::point_on_curve(params.u(k - 1), params)).second;
  const int wrong = image_label(k) % 8 + 1;
  r.record_control(mapped != core::point_on_curve(image_params.u(wrong - 1), image_params),
                   {{"control", "P" + std::to_string(k) + " against image P" + std::to_string(wrong)}});
  return r;
}

}  // namespace qlax::weyl
