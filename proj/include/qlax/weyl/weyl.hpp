#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlax/core/painleve.hpp"
#include "qlax/exact/rng.hpp"
#include "qlax/exact/report.hpp"

namespace qlax::weyl {

using core::ParamsE8;
using core::State;

enum class Kind { s, c, mu, nu };

/// One generator of the affine Weyl group. Indices are 1-based and stored
/// with i < j; s, mu and nu depend only on the unordered pair.
struct Generator {
  Kind kind = Kind::c;
  int i = 0;
  int j = 0;

  static Generator c();
  static Generator s(int i, int j);
  static Generator mu(int i, int j);
  static Generator nu(int i, int j);

  /// "c", "s12", "mu34", "nu56". Throws ParseError.
  static Generator parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Generators in written order; the rightmost acts first.
using GroupWord = std::vector<Generator>;

/// Comma-separated generator names; the empty string is the empty word.
GroupWord parse_word(std::string_view text);
std::string word_name(const GroupWord& w);

/// Concatenation a b (b acts first).
GroupWord operator*(const GroupWord& a, const GroupWord& b);
/// w repeated n times.
GroupWord power(const GroupWord& w, int n);

using Point = std::pair<ParamsE8, State>;

/// Action on (h1, h2, u; f, g). NonGeneric on a vanishing denominator of
/// the cross-ratio relation.
Point apply_generator(const Generator& gen, const ParamsE8& params, const State& s);

/// Right-to-left composition. NonGeneric messages carry the failing position.
Point apply_word(const GroupWord& w, const ParamsE8& params, const State& s);

/// c, mu12, s23, s34, s45, s56, s67, s78, s12.
const std::vector<Generator>& simple_reflections();

/// Edges of the affine E8 diagram: the chain c - mu12 - s23 - ... - s78 with
/// s12 attached to s23.
bool dynkin_adjacent(const Generator& a, const Generator& b);

/// r = s12 mu12 s34 mu34 s56 mu56 s78 mu78.
GroupWord r_word();
/// T1 = c r c r.
GroupWord t1_word();

/// v = q h2 / h1.
Rational v_scale(const ParamsE8& params);

/// Involutions and the full Coxeter matrix at (params, s) and at a second
/// random state; control (c mu12)^2 != 1.
Report check_coxeter(const ParamsE8& params, const State& s, Rng& rng);

/// T1 against the evolution with the v rescaling, and the r row.
/// Controls: T1 without the v rescaling, the reversed word r c r c.
Report check_translation(const ParamsE8& params, const State& s);

/// q invariance and the mapping of configuration points onto the image
/// configuration for one generator. For mu_ij and nu_ij the points P_i, P_j
/// are blown up and skipped; a random point of the curve phi = 0 is checked
/// to land on the image curve instead.
Report check_generator(const Generator& gen, const ParamsE8& params, const State& s, Rng& rng);

}  // namespace qlax::weyl
