#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include "einstab/errors.hpp"

namespace einstab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always stored in canonical form: positive
/// denominator, gcd(|num|, den) = 1 (maintained by the backend after
/// every operation). Expression templates are disabled so that every
/// arithmetic operation yields a plain Rational; the generic numeric
/// code here is templated over the scalar type and relies on that.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// p/q as a scalar of type T. The workhorse for formula coefficients
/// such as 2(n+r)/n^2.
template <class T>
T ratio(long long num, long long den) {
  if constexpr (is_exact_v<T>) {
    return Rational(BigInt(num), BigInt(den));
  } else {
    return static_cast<T>(num) / static_cast<T>(den);
  }
}

template <class T>
T scalar_abs(const T& v) {
  if constexpr (is_exact_v<T>) {
    return v < 0 ? Rational(-v) : v;
  } else {
    return std::abs(v);
  }
}

inline int sign(const Rational& v) { return v.sign(); }
inline int sign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline double to_double(const Rational& v) {
  return v.convert_to<double>();
}
inline double to_double(double v) { return v; }

/// Parses "p", "p/q", or a decimal literal into an exact rational.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(s.substr(0, slash));
      const BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("rational with zero denominator: " + s);
      return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) {
      return Rational(BigInt(s));
    }
    // Decimal literal: digits after the dot scale the denominator. The
    // cpp_int string constructor treats a leading 0 as octal, so strip
    // leading zeros explicitly.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string sign;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
      if (digits.front() == '-') sign = "-";
      digits.erase(digits.begin());
    }
    const auto first_nonzero = digits.find_first_not_of('0');
    digits = first_nonzero == std::string::npos ? "0"
                                                : digits.substr(first_nonzero);
    const auto frac_len = s.size() - dot - 1;
    BigInt den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(BigInt(sign + digits), den);
  } catch (const std::exception& e) {
    throw ParseError("cannot parse rational '" + s + "': " + e.what());
  }
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& v) {
  std::string s = numerator(v).str();
  if (denominator(v) != 1) {
    s += "/";
    s += denominator(v).str();
  }
  return s;
}

/// Exact conversion from a double (doubles are dyadic rationals).
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw ParseError("non-finite number in exact mode");
  return Rational(v);
}

/// Shortest faithful text form of a double (17 significant digits).
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline std::string format_scalar(const Rational& v) { return to_string(v); }
inline std::string format_scalar(double v) { return format_double(v); }

}  // namespace einstab
