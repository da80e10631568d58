#pragma once

#include <string>
#include <utility>

#include "qlax/exact/rational.hpp"

namespace qlax {

/// Root of an expression known to be affine in one unknown, found from its
/// values at 0 and 1. Throws NonGeneric(`what`) if the linear coefficient
/// vanishes (the root is at infinity).
template <class Fn>
Rational solve_affine(Fn&& fn, const std::string& what) {
  const Rational at0 = fn(Rational(0));
  const Rational slope = fn(Rational(1)) - at0;
  if (slope.is_zero()) throw NonGeneric(what);
  return -at0 / slope;
}

}  // namespace qlax
