#include "qlax/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "qlax/core/checks.hpp"
#include "qlax/lax/lax.hpp"
#include "qlax/weyl/weyl.hpp"

namespace qlax::cli {

using nlohmann::json;

namespace {

constexpr int kResampleAttempts = 64;
constexpr int kParamsAttempts = 1000;

std::string lower(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.emplace_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

degen::System deg_system(SystemId s) {
  switch (s) {
    case SystemId::E7:
      return degen::System::E7;
    case SystemId::E6:
      return degen::System::E6;
    case SystemId::D5:
      return degen::System::D5;
    case SystemId::E8:
      break;
  }
  throw std::invalid_argument("e8 is not a degenerate system");
}

SystemId system_id(degen::System s) {
  switch (s) {
    case degen::System::E7:
      return SystemId::E7;
    case degen::System::E6:
      return SystemId::E6;
    case degen::System::D5:
      return SystemId::D5;
  }
  return SystemId::E8;
}

std::string variant_name(degen::Variant v) { return v == degen::Variant::corrected ? "corrected" : "printed"; }

Rational read_rational(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("parameter file: missing \"" + key + "\"");
  const json& v = j.at(key);
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const Error& e) {
    throw ConfigError("parameter file: \"" + key + "\": " + e.what());
  }
  throw ConfigError("parameter file: \"" + key + "\" must be a \"p/q\" string");
}

template <std::size_t N>
std::array<Rational, N> read_rationals(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != N)
    throw ConfigError("parameter file: \"" + key + "\" must be an array of " + std::to_string(N) + " rationals");
  std::array<Rational, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = read_rational(json{{"v", j.at(key)[i]}}, "v");
  return out;
}

json strings(const auto& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

std::size_t state_bits(const AnyPoint& p) {
  return std::visit([](const auto& x) { return std::max(x.state.f.bit_size(), x.state.g.bit_size()); }, p);
}

AnyPoint step_point(const AnyPoint& p, bool forward, degen::Variant variant) {
  if (const auto* e = std::get_if<E8Point>(&p)) {
    auto [params, s] = forward ? core::evolve(e->params, e->state) : core::evolve_inverse(e->params, e->state);
    return E8Point{params, s};
  }
  const auto& d = std::get<DegPoint>(p);
  auto [params, s] = forward ? degen::deg_evolve(d.params, d.state, variant)
                             : degen::deg_evolve_inverse(d.params, d.state, variant);
  return DegPoint{params, s};
}

}  // namespace

SystemId parse_system_id(std::string_view text) {
  const std::string s = lower(text);
  if (s == "e8") return SystemId::E8;
  if (s == "e7") return SystemId::E7;
  if (s == "e6") return SystemId::E6;
  if (s == "d5") return SystemId::D5;
  throw ConfigError("unknown system '" + std::string(text) + "' (expected e8, e7, e6 or d5)");
}

std::string system_id_name(SystemId s) {
  switch (s) {
    case SystemId::E8:
      return "e8";
    case SystemId::E7:
      return "e7";
    case SystemId::E6:
      return "e6";
    case SystemId::D5:
      return "d5";
  }
  return {};
}

Suite parse_suite(std::string_view text) {
  const std::string s = lower(text);
  if (s == "core") return Suite::core;
  if (s == "lax") return Suite::lax;
  if (s == "weyl") return Suite::weyl;
  if (s == "degeneration") return Suite::degeneration;
  if (s == "all") return Suite::all;
  throw ConfigError("unknown suite '" + std::string(text) + "' (expected core, lax, weyl, degeneration or all)");
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::core:
      return "core";
    case Suite::lax:
      return "lax";
    case Suite::weyl:
      return "weyl";
    case Suite::degeneration:
      return "degeneration";
    case Suite::all:
      return "all";
  }
  return {};
}

long sampling_bound() {
  const char* env = std::getenv("QLAX_BOUND");
  if (env == nullptr || *env == '\0') return kDefaultBound;
  const std::string text(env);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 2) throw ConfigError("QLAX_BOUND must be an integer >= 2, got '" + text + "'");
  return v;
}

std::vector<Rational> parse_epsilons(std::string_view text) {
  std::vector<Rational> eps;
  for (const auto& raw : split_commas(text)) {
    const std::string part = lower(raw);
    Rational e;
    try {
      const auto pos = part.find("e-");
      if (pos != std::string::npos) {
        if (part.substr(0, pos) != "1" || pos + 2 >= part.size() ||
            !std::all_of(part.begin() + static_cast<long>(pos) + 2, part.end(),
                         [](unsigned char c) { return std::isdigit(c); }))
          throw ConfigError("epsilon '" + raw + "' must look like 1e-k");
        e = pow10_neg(static_cast<unsigned>(std::stoul(part.substr(pos + 2))));
      } else {
        e = Rational::parse(part);
      }
    } catch (const ParseError& err) {
      throw ConfigError("epsilon '" + raw + "': " + err.what());
    } catch (const ZeroDenominator&) {
      throw ConfigError("epsilon '" + raw + "' has a zero denominator");
    }
    if (e.sign() <= 0 || e >= Rational(1)) throw ConfigError("epsilon '" + raw + "' must lie in (0, 1)");
    if (!eps.empty() && e >= eps.back()) throw ConfigError("epsilons must be strictly decreasing");
    eps.push_back(e);
  }
  if (eps.size() < 2) throw ConfigError("at least two epsilons are needed");
  return eps;
}

void require_guards(const AnyPoint& p) {
  if (const auto* e = std::get_if<E8Point>(&p)) {
    e->params.require_generic();
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = i + 1; j < 8; ++j)
        if (e->params.u()[i] == e->params.u()[j]) throw NonGeneric("repeated u_i");
    core::evolve(e->params, e->state);
    core::evolve_inverse(e->params, e->state);
    return;
  }
  const auto& d = std::get<DegPoint>(p);
  if (d.params.q() == Rational(1)) throw NonGeneric("q = 1");
  degen::deg_evolve(d.params, d.state);
  degen::deg_evolve_inverse(d.params, d.state);
}

E8Point draw_e8(Rng& rng, long bound) {
  std::array<Rational, 8> u;
  for (auto& x : u) x = sample_rational(rng, bound);
  const Rational h1 = sample_rational(rng, bound);
  const Rational h2 = sample_rational(rng, bound);
  E8Point p{core::ParamsE8(h1, h2, u), core::State{sample_rational(rng, bound), sample_rational(rng, bound)}};
  require_guards(p);
  return p;
}

DegPoint draw_deg(degen::System system, Rng& rng, long bound) {
  std::array<Rational, 8> b;
  for (auto& x : b) x = sample_rational(rng, bound);
  const Rational t = sample_rational(rng, bound);
  DegPoint p{degen::ParamsDeg(system, b, t), degen::DegState{sample_rational(rng, bound), sample_rational(rng, bound)}};
  require_guards(p);
  return p;
}

AnyPoint draw_point(SystemId system, Rng& rng, long bound) {
  if (system == SystemId::E8) return draw_e8(rng, bound);
  return draw_deg(deg_system(system), rng, bound);
}

json point_to_json(const AnyPoint& p, bool state) {
  json j;
  if (const auto* e = std::get_if<E8Point>(&p)) {
    j["system"] = "e8";
    j["h1"] = e->params.h1().str();
    j["h2"] = e->params.h2().str();
    j["u"] = strings(e->params.u());
  } else {
    const auto& d = std::get<DegPoint>(p);
    j["system"] = degen::system_name(d.params.system());
    j["b"] = strings(d.params.b());
    j["t"] = d.params.t().str();
  }
  if (state) {
    std::visit(
        [&](const auto& x) {
          j["f"] = x.state.f.str();
          j["g"] = x.state.g.str();
        },
        p);
  }
  return j;
}

AnyPoint point_from_json(const json& j, Rng& rng, long bound) {
  if (!j.is_object()) throw ConfigError("parameter file must hold a JSON object");
  if (!j.contains("system") || !j.at("system").is_string()) throw ConfigError("parameter file: missing \"system\"");
  const SystemId sys = parse_system_id(j.at("system").get<std::string>());
  auto coordinate = [&](const char* key) {
    return j.contains(key) ? read_rational(j, key) : sample_rational(rng, bound);
  };
  try {
    if (sys == SystemId::E8) {
      core::ParamsE8 params(read_rational(j, "h1"), read_rational(j, "h2"), read_rationals<8>(j, "u"));
      const Rational f = coordinate("f");
      const Rational g = coordinate("g");
      return E8Point{params, core::State{f, g}};
    }
    degen::ParamsDeg params(deg_system(sys), read_rationals<8>(j, "b"), read_rational(j, "t"));
    const Rational f = coordinate("f");
    const Rational g = coordinate("g");
    return DegPoint{params, degen::DegState{f, g}};
  } catch (const NonGeneric& e) {
    throw ConfigError(std::string("parameter file: ") + e.what());
  } catch (const ZeroDenominator&) {
    throw ConfigError("parameter file: zero denominator in derived parameters");
  }
}

// ---------------------------------------------------------------------------
// verify

namespace {

/// Reports keyed by (suite, check) in first-seen order.
class Aggregate {
 public:
  void add(const std::string& suite, const Report& r) {
    const std::string key = suite + "\n" + r.check;
    const auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, entries_.size());
      entries_.emplace_back(suite, r);
    } else {
      entries_[it->second].second.merge(r);
    }
  }

  bool ok() const {
    return !entries_.empty() &&
           std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.ok(); });
  }

  json to_json() const {
    json a = json::array();
    for (const auto& [suite, r] : entries_) {
      json j = r.to_json();
      j["suite"] = suite;
      j["ok"] = r.ok();
      a.push_back(j);
    }
    return a;
  }

 private:
  std::vector<std::pair<std::string, Report>> entries_;
  std::map<std::string, std::size_t> index_;
};

/// One trial of one suite; each check gets its own child stream and
/// resamples its draw on a genericity failure.
class TrialRunner {
 public:
  TrialRunner(Aggregate& agg, const VerifyConfig& cfg, Rng trial) : agg_(agg), cfg_(cfg), trial_(trial) {}

  void run(const std::string& suite, const std::string& name, const std::function<Report(Rng&)>& fn) {
    Rng rng = trial_.split(slot_++);
    std::string last_error;
    for (int attempt = 0; attempt < kResampleAttempts; ++attempt) {
      try {
        agg_.add(suite, fn(rng));
        return;
      } catch (const NonGeneric& e) {
        last_error = e.what();
      } catch (const ZeroDenominator& e) {
        last_error = e.what();
      }
    }
    Report r(name);
    r.record(false, {{"error", "resampling exhausted"}, {"last", last_error}});
    agg_.add(suite, r);
  }

  const VerifyConfig& cfg() const { return cfg_; }

 private:
  Aggregate& agg_;
  const VerifyConfig& cfg_;
  Rng trial_;
  std::uint64_t slot_ = 0;
};

lax::L2Variant l2_variant(degen::Variant v) {
  return v == degen::Variant::corrected ? lax::L2Variant::corrected : lax::L2Variant::printed;
}

void core_suite(TrialRunner& t) {
  const long bound = t.cfg().bound;
  if (t.cfg().system != SystemId::E8) {
    const auto sys = deg_system(t.cfg().system);
    t.run("core", "evolution " + degen::system_name(sys), [&](Rng& rng) {
      const DegPoint p = draw_deg(sys, rng, bound);
      return degen::deg_check_evolution(p.params, p.state, t.cfg().variant);
    });
    return;
  }
  t.run("core", "identities", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return core::check_identities(p.params, rng, bound);
  });
  t.run("core", "evolution", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return core::check_evolution(p.params, p.state);
  });
}

lax::YTriple y_triple(const E8Point& p, const Rational& z, Rng& rng, long bound) {
  const auto w = lax::propagate_y(sample_rational(rng, bound), sample_rational(rng, bound), z, p.state, p.params, 1);
  return {w.at(-1), w.at(0), w.at(1)};
}

void lax_suite(TrialRunner& t) {
  const long bound = t.cfg().bound;
  const auto variant = t.cfg().variant;
  if (t.cfg().system != SystemId::E8) {
    const auto sys = deg_system(t.cfg().system);
    t.run("lax", "compatibility " + degen::system_name(sys), [&](Rng& rng) {
      const DegPoint p = draw_deg(sys, rng, bound);
      return degen::deg_check_compatibility(p.params, p.state, sample_rational(rng, bound), rng, variant);
    });
    return;
  }
  t.run("lax", "compatibility", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return lax::check_compatibility(p.params, p.state, sample_rational(rng, bound), rng, l2_variant(variant));
  });
  t.run("lax", "lemma_ratio", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    const Rational x1 = sample_rational(rng, bound);
    return lax::check_lemma_ratio(p.params, p.state, x1, sample_rational(rng, bound));
  });
  t.run("lax", "proof_chain", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return lax::check_proof_chain(p.params, p.state, sample_rational(rng, bound), rng);
  });
  t.run("lax", "l1_curve", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    const Rational z = sample_rational(rng, bound);
    return lax::check_l1_curve(p.params, z, y_triple(p, z, rng, bound), rng);
  });
  t.run("lax", "l1_structure", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return lax::check_l1_structure(p.params, sample_rational(rng, bound), rng);
  });
  t.run("lax", "l1u_geometry", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    const Rational z = sample_rational(rng, bound);
    const auto w =
        lax::propagate_y(sample_rational(rng, bound), sample_rational(rng, bound), z, p.state, p.params, 3);
    const auto yb = lax::ybar_from_y(w, p.state, p.params);
    if (yb.all_zero()) throw NonGeneric("Ybar vanishes");
    const auto next = core::evolve(p.params, p.state).second;
    return lax::check_l1u_geometry(p.params, {p.state.f, p.state.g, next.f, next.g}, z,
                                   {yb.at(-1), yb.at(0), yb.at(1)}, rng);
  });
}

void weyl_suite(TrialRunner& t) {
  const long bound = t.cfg().bound;
  t.run("weyl", "coxeter", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return weyl::check_coxeter(p.params, p.state, rng);
  });
  t.run("weyl", "translation", [&](Rng& rng) {
    const E8Point p = draw_e8(rng, bound);
    return weyl::check_translation(p.params, p.state);
  });
  for (const char* kind : {"c", "s", "mu", "nu"}) {
    const std::string name = std::string("generator ") + kind;
    t.run("weyl", name, [&](Rng& rng) {
      weyl::Generator gen = weyl::Generator::c();
      if (std::string_view(kind) != "c") {
        const int i = static_cast<int>(rng.uniform(1, 8));
        int j = static_cast<int>(rng.uniform(1, 7));
        if (j >= i) ++j;
        gen = weyl::Generator::parse(kind + std::to_string(i) + std::to_string(j));
      }
      const E8Point p = draw_e8(rng, bound);
      Report r = weyl::check_generator(gen, p.params, p.state, rng);
      r.check = name;
      if (r.first_failure) (*r.first_failure)["generator"] = gen.name();
      return r;
    });
  }
}

void degeneration_suite(TrialRunner& t) {
  const long bound = t.cfg().bound;
  const auto variant = t.cfg().variant;
  std::vector<degen::System> targets;
  if (t.cfg().target) targets = {*t.cfg().target};
  else if (t.cfg().system != SystemId::E8) targets = {deg_system(t.cfg().system)};
  else targets = {degen::System::E7, degen::System::E6, degen::System::D5};

  for (const auto sys : targets) {
    const std::string n = degen::system_name(sys);
    t.run("degeneration", "evolution " + n, [&](Rng& rng) {
      const DegPoint p = draw_deg(sys, rng, bound);
      return degen::deg_check_evolution(p.params, p.state, variant);
    });
    t.run("degeneration", "compatibility " + n, [&](Rng& rng) {
      const DegPoint p = draw_deg(sys, rng, bound);
      return degen::deg_check_compatibility(p.params, p.state, sample_rational(rng, bound), rng, variant);
    });
    if (sys == degen::System::E7) {
      t.run("degeneration", "e7 configuration", [&](Rng& rng) {
        return degen::check_e7_configuration(draw_deg(sys, rng, bound).params);
      });
    }
    t.run("degeneration", "limit " + n,
          [&](Rng& rng) { return degen::check_limit(sys, t.cfg().epsilons, rng, variant, bound); });
  }
}

}  // namespace

json verify(const VerifyConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("--trials must be at least 1");
  if (cfg.system != SystemId::E8 && cfg.suite == Suite::weyl)
    throw ConfigError("the weyl suite acts on e8 parameters only");
  if (cfg.target && cfg.system != SystemId::E8 && system_id(*cfg.target) != cfg.system)
    throw ConfigError("--target disagrees with --system");
  VerifyConfig run_cfg = cfg;
  if (run_cfg.epsilons.empty()) run_cfg.epsilons = parse_epsilons("1e-3,1e-4,1e-5,1e-6");

  Aggregate agg;
  const Rng root(cfg.seed);
  const bool all = cfg.suite == Suite::all;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const Rng trial_rng = root.split(static_cast<std::uint64_t>(trial));
    // Each suite has its own stream so selecting one suite reproduces its part of "all".
    auto runner = [&](std::uint64_t k) { return TrialRunner(agg, run_cfg, trial_rng.split(k)); };
    if (all || cfg.suite == Suite::core) {
      auto t = runner(0);
      core_suite(t);
    }
    if (all || cfg.suite == Suite::lax) {
      auto t = runner(1);
      lax_suite(t);
    }
    if ((all && cfg.system == SystemId::E8) || cfg.suite == Suite::weyl) {
      auto t = runner(2);
      weyl_suite(t);
    }
    if (all || cfg.suite == Suite::degeneration) {
      auto t = runner(3);
      degeneration_suite(t);
    }
  }

  json eps = json::array();
  for (const auto& e : run_cfg.epsilons) eps.push_back(e.str());
  json report;
  report["command"] = "verify";
  report["system"] = system_id_name(cfg.system);
  report["suite"] = suite_name(cfg.suite);
  report["seed"] = cfg.seed;
  report["trials"] = cfg.trials;
  report["bound"] = cfg.bound;
  report["variant"] = variant_name(cfg.variant);
  report["target"] = cfg.target ? json(degen::system_name(*cfg.target)) : json(nullptr);
  report["epsilons"] = eps;
  report["checks"] = agg.to_json();
  report["ok"] = agg.ok();
  return report;
}

// ---------------------------------------------------------------------------
// command line

namespace {

struct Options {
  std::string system = "e8";
  std::string suite = "all";
  int trials = 1;
  std::uint64_t seed = 0;
  long steps = 0;
  std::string params_path;
  std::string out_path;
  std::string target;
  std::string epsilons;
  std::string variant = "corrected";
};

degen::Variant parse_variant(const std::string& text) {
  const std::string s = lower(text);
  if (s == "corrected") return degen::Variant::corrected;
  if (s == "printed") return degen::Variant::printed;
  throw ConfigError("unknown variant '" + text + "' (expected corrected or printed)");
}

/// Writes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig cfg;
  cfg.system = parse_system_id(o.system);
  cfg.suite = parse_suite(o.suite);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.bound = sampling_bound();
  cfg.variant = parse_variant(o.variant);
  if (!o.target.empty()) {
    const SystemId t = parse_system_id(o.target);
    if (t == SystemId::E8) throw ConfigError("--target must be e7, e6 or d5");
    cfg.target = deg_system(t);
  }
  if (!o.epsilons.empty()) cfg.epsilons = parse_epsilons(o.epsilons);
  const json report = verify(cfg);
  Sink sink(o.out_path, out);
  sink.get() << report.dump(2) << '\n';
  return report.at("ok").get<bool>() ? kOk : kFailure;
}

AnyPoint load_or_draw(const Options& o, SystemId system, Rng& rng, long bound) {
  if (o.params_path.empty()) {
    for (int attempt = 0; attempt < kParamsAttempts; ++attempt) {
      try {
        return draw_point(system, rng, bound);
      } catch (const NonGeneric&) {
      } catch (const ZeroDenominator&) {
      }
    }
    throw NonGeneric("no generic draw in " + std::to_string(kParamsAttempts) + " attempts");
  }
  std::ifstream in(o.params_path);
  if (!in) throw ConfigError("cannot read parameter file '" + o.params_path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parameter file is not valid JSON: ") + e.what());
  }
  return point_from_json(j, rng, bound);
}

int cmd_orbit(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const long bound = sampling_bound();
  const auto variant = parse_variant(o.variant);
  SystemId system = parse_system_id(o.system);
  Rng rng(o.seed);
  AnyPoint p = [&] {
    if (!o.params_path.empty()) {
      AnyPoint loaded = load_or_draw(o, system, rng, bound);
      const SystemId file_system =
          std::holds_alternative<E8Point>(loaded) ? SystemId::E8
                                                  : system_id(std::get<DegPoint>(loaded).params.system());
      if (sub.count("--system") > 0 && file_system != system)
        throw ConfigError("--system disagrees with the parameter file");
      system = file_system;
      return loaded;
    }
    return load_or_draw(o, system, rng, bound);
  }();

  Sink sink(o.out_path, out);
  auto record = [&](long step) {
    json j = point_to_json(p);
    j["step"] = step;
    j["q"] = std::visit([](const auto& x) { return x.params.q().str(); }, p);
    j["bits"] = state_bits(p);
    sink.get() << j.dump() << '\n';
    sink.get().flush();
  };
  record(0);
  const bool forward = o.steps >= 0;
  const long n = forward ? o.steps : -o.steps;
  for (long k = 1; k <= n; ++k) {
    const long last_good = forward ? k - 1 : -(k - 1);
    try {
      p = step_point(p, forward, variant);
    } catch (const Error& e) {
      err << json{{"error", e.what()}, {"last_good_step", last_good}}.dump() << '\n';
      return kFailure;
    }
    record(forward ? k : -k);
  }
  return kOk;
}

int cmd_params(const Options& o, std::ostream& out, std::ostream& err) {
  const long bound = sampling_bound();
  const SystemId system = parse_system_id(o.system);
  Rng rng(o.seed);
  for (int attempt = 0; attempt < kParamsAttempts; ++attempt) {
    try {
      const AnyPoint p = draw_point(system, rng, bound);
      json j = point_to_json(p);
      j["seed"] = o.seed;
      Sink sink(o.out_path, out);
      sink.get() << j.dump(2) << '\n';
      return kOk;
    } catch (const NonGeneric&) {
    } catch (const ZeroDenominator&) {
    }
  }
  err << "no generic parameters after " << kParamsAttempts << " attempts\n";
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the E8 q-Painleve system, its Lax pair and degenerations", "qlax"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--system", o.system, "e8, e7, e6 or d5")->capture_default_str();
    sub->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--out", o.out_path, "output file (default stdout)");
    sub->add_option("--variant", o.variant, "corrected or printed formulas")->capture_default_str();
  };
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites and write a JSON report");
  common(verify_cmd);
  verify_cmd->add_option("--suite", o.suite, "core, lax, weyl, degeneration or all")->capture_default_str();
  verify_cmd->add_option("--trials", o.trials, "independent draws per check")->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--target", o.target, "restrict degeneration to e7, e6 or d5");
  verify_cmd->add_option("--epsilons", o.epsilons, "limit ladder, e.g. 1e-3,1e-4,1e-5,1e-6");

  auto* orbit_cmd = app.add_subcommand("orbit", "iterate the evolution and write JSON lines");
  common(orbit_cmd);
  orbit_cmd->add_option("--steps", o.steps, "number of steps; negative steps go backward")->capture_default_str();
  orbit_cmd->add_option("--params", o.params_path, "parameter file (default: drawn from the seed)");

  auto* params_cmd = app.add_subcommand("params", "write a random generic parameter file");
  common(params_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (orbit_cmd->parsed()) return cmd_orbit(o, *orbit_cmd, out, err);
    return cmd_params(o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NonGeneric& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace qlax::cli
