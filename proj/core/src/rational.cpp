#include "fractarc/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace fractarc {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

Rational power(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational dyadic(unsigned exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return Rational(mpz_class(1), den);
}

namespace {

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  mpz_class z;
  if (z.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
  }
  return z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    mpz_class num = parse_integer(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

std::pair<std::string, std::string> to_string_pair(const Rational& value) {
  return {value.get_num().get_str(), value.get_den().get_str()};
}

Rational from_string_pair(const std::string& numerator, const std::string& denominator) {
  mpz_class num = parse_integer(numerator);
  mpz_class den = parse_integer(denominator);
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<double> to_doubles(const ExactPoint& point) {
  std::vector<double> out;
  out.reserve(point.size());
  for (const auto& c : point) out.push_back(c.get_d());
  return out;
}

Rational squared_norm(const ExactPoint& point) {
  Rational sum = 0;
  for (const auto& c : point) sum += c * c;
  return sum;
}

Rational squared_distance(const ExactPoint& a, const ExactPoint& b) {
  Rational sum = 0;
  Rational d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace fractarc
