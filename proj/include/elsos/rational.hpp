#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace elsos {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den with the sign moved to the numerator; den must be nonzero.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const BigInt& r) { return r.str(); }

inline BigInt factorial(std::int64_t n) {
  BigInt out = 1;
  for (std::int64_t k = 2; k <= n; ++k) out *= k;
  return out;
}

/// Generalized binomial coefficient a(a-1)...(a-k+1)/k! for any integer a.
inline Rational binomial(std::int64_t a, std::int64_t k) {
  if (k < 0) return 0;
  BigInt num = 1;
  for (std::int64_t t = 0; t < k; ++t) num *= (a - t);
  return Rational(num, factorial(k));
}

}  // namespace elsos
