#pragma once

#include <stdexcept>
#include <string>

namespace qlax {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("zero denominator") {}
};

/// A formula hit a vanishing denominator or linear coefficient; the draw is
/// off the generic stratum and callers are expected to resample.
class NonGeneric : public Error {
 public:
  explicit NonGeneric(const std::string& what) : Error("non-generic: " + what) {}
};

class DegenerateNodes : public Error {
 public:
  explicit DegenerateNodes(const std::string& what) : Error("degenerate interpolation nodes: " + what) {}
};

class DegreeMismatch : public Error {
 public:
  explicit DegreeMismatch(const std::string& what) : Error("degree mismatch: " + what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace qlax
