#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "ordrep/common.hpp"

namespace ordrep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool fits_int64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& x) {
  if (!fits_int64(x)) throw precondition_error("value does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Accepts "p/q", plain integers and finite decimal strings ("1.5", "-0.25");
// the conversion is exact.
inline Rational parse_rational(std::string_view s) {
  auto fail = [&]() -> Rational {
    throw parse_error("cannot parse rational: '" + std::string(s) + "'");
  };
  if (s.empty()) return fail();
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (num.empty() || den.empty()) return fail();
    try {
      return Rational{BigInt(num), BigInt(den)};
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      return fail();
    }
  }
  auto dot = s.find('.');
  std::string digits;
  std::size_t frac_len = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (i == 0 && (c == '+' || c == '-')) {
      digits += c;
      continue;
    }
    if (c == '.') {
      if (i != dot) return fail();
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    digits += c;
    if (dot != std::string_view::npos && i > dot) ++frac_len;
  }
  if (digits.empty() || digits == "+" || digits == "-") return fail();
  BigInt scaled(digits);
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational{scaled, den};
}

inline std::string rational_to_string(const Rational& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

}  // namespace ordrep
