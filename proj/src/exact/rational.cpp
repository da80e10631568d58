#include "qlax/exact/rational.hpp"

#include <algorithm>
#include <cctype>

namespace qlax {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::from_integers(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ZeroDenominator();
  mpq_class q(num, den);
  return Rational(q);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_integers(parse_integer(text), 1);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("sign in denominator: '" + std::string(text) + "'");
  return from_integers(parse_integer(text.substr(0, slash)), parse_integer(den_text));
}

std::size_t Rational::bit_size() const {
  const std::size_t nb = v_.get_num() == 0 ? 0 : mpz_sizeinbase(v_.get_num_mpz_t(), 2);
  const std::size_t db = mpz_sizeinbase(v_.get_den_mpz_t(), 2);
  return std::max(nb, db);
}

Rational rat(long num, long den) { return Rational::from_integers(num, den); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational inv(const Rational& x) { return Rational(1) / x; }

Rational pow(const Rational& x, int n) {
  if (n < 0) return pow(inv(x), -n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.raw().get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), x.raw().get_den_mpz_t(), static_cast<unsigned long>(n));
  return Rational::from_integers(num, den);
}

Rational pow10_neg(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, k);
  return Rational::from_integers(1, den);
}

}  // namespace qlax
