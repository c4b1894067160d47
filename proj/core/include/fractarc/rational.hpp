#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fractarc {

/// Exact rational number. All interval endpoints, cell corners and connector
/// vertices are carried in this type.
using Rational = mpq_class;

/// A point with exact rational coordinates.
using ExactPoint = std::vector<Rational>;

Rational make_rational(long numerator, long denominator = 1);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

Rational power(const Rational& base, unsigned exponent);

/// 2^{-exponent}, exact.
Rational dyadic(unsigned exponent);

/// Parses "p/q", "p" or a plain decimal such as "0.25" (decimal strings are read
/// exactly, not through a double).
Rational parse_rational(std::string_view text);

/// Numerator/denominator as decimal strings; the JSON wire form of a rational.
std::pair<std::string, std::string> to_string_pair(const Rational& value);
Rational from_string_pair(const std::string& numerator, const std::string& denominator);

inline double to_double(const Rational& value) { return value.get_d(); }

std::vector<double> to_doubles(const ExactPoint& point);

/// Squared Euclidean norm, exact.
Rational squared_norm(const ExactPoint& point);
Rational squared_distance(const ExactPoint& a, const ExactPoint& b);

/// Walks the continued-fraction convergents of `value` and returns the first one
/// accepted by `good_enough`. Falls back to the exact binary value of `value`.
template <class Predicate>
Rational rationalize(double value, Predicate good_enough, int max_terms = 64);

}  // namespace fractarc

#include <cmath>

namespace fractarc {

template <class Predicate>
Rational rationalize(double value, Predicate good_enough, int max_terms) {
  const Rational exact = rational_from_double(value);
  // Convergents h_k / k_k of the exact binary value.
  mpz_class h_prev = 1, h_prev2 = 0;
  mpz_class k_prev = 0, k_prev2 = 1;
  Rational rest = exact;
  for (int term = 0; term < max_terms; ++term) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    Rational candidate(h, k);
    candidate.canonicalize();
    if (good_enough(candidate)) return candidate;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return exact;
}

}  // namespace fractarc
