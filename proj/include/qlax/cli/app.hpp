#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qlax/core/painleve.hpp"
#include "qlax/degen/degen.hpp"
#include "qlax/exact/rng.hpp"

namespace qlax::cli {

enum class SystemId { E8, E7, E6, D5 };
enum class Suite { core, lax, weyl, degeneration, all };

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kConfigError = 2;

/// Invalid flags, parameter files or environment.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

SystemId parse_system_id(std::string_view text);
std::string system_id_name(SystemId s);
Suite parse_suite(std::string_view text);
std::string suite_name(Suite s);

/// QLAX_BOUND, or the default when unset. ConfigError unless an integer >= 2.
long sampling_bound();

/// "1e-3,1e-4" or "1/1000,1/10000": exact, in (0, 1), strictly decreasing.
std::vector<Rational> parse_epsilons(std::string_view text);

struct E8Point {
  core::ParamsE8 params;
  core::State state;
};

struct DegPoint {
  degen::ParamsDeg params;
  degen::DegState state;
};

using AnyPoint = std::variant<E8Point, DegPoint>;

/// A random generic draw: the guards hold and one forward and one backward
/// step are defined. NonGeneric when this draw fails them.
E8Point draw_e8(Rng& rng, long bound);
DegPoint draw_deg(degen::System system, Rng& rng, long bound);
AnyPoint draw_point(SystemId system, Rng& rng, long bound);

/// Throws NonGeneric when a guard fails.
void require_guards(const AnyPoint& p);

/// Parameter file object; rationals as "p/q" strings, q never written for E8
/// as an input. With `state`, f and g are included.
nlohmann::json point_to_json(const AnyPoint& p, bool state = true);
/// Missing f or g are drawn from rng. ConfigError on a malformed file.
AnyPoint point_from_json(const nlohmann::json& j, Rng& rng, long bound);

struct VerifyConfig {
  SystemId system = SystemId::E8;
  Suite suite = Suite::all;
  int trials = 1;
  std::uint64_t seed = 0;
  long bound = kDefaultBound;
  std::optional<degen::System> target;
  std::vector<Rational> epsilons;
  degen::Variant variant = degen::Variant::corrected;
};

/// Runs the suites and returns the report; "ok" is true iff every check
/// passed on every draw and every control failed.
nlohmann::json verify(const VerifyConfig& cfg);

/// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlax::cli
