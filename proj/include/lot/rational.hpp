#pragma once

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "lot/errors.hpp"

namespace lot {

/// Exact arbitrary-precision rational. All measure weights, graph edge
/// weights and feasibility decisions use this type; floating point only
/// enters through Lorentzian distances and LP costs.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

/// Parses "2", "-3", "1/3", "0.25", "-1.5e2" style literals exactly.
/// Decimal strings become the exact fraction they denote ("0.25" -> 1/4).
inline Rational parse_rational(std::string_view text) {
  const std::string input(text);
  auto fail = [&]() -> Rational {
    throw InputError("not a rational literal: '" + input + "'");
  };

  std::size_t pos = 0;
  auto eat_sign = [&]() -> bool {
    bool negative = false;
    if (pos < input.size() && (input[pos] == '+' || input[pos] == '-')) {
      negative = input[pos] == '-';
      ++pos;
    }
    return negative;
  };
  auto eat_digits = [&]() -> std::string {
    std::string digits;
    while (pos < input.size() && std::isdigit(static_cast<unsigned char>(input[pos]))) {
      digits.push_back(input[pos++]);
    }
    return digits;
  };

  const bool negative = eat_sign();
  const std::string whole = eat_digits();

  std::string frac;
  bool has_point = false;
  if (pos < input.size() && input[pos] == '.') {
    has_point = true;
    ++pos;
    frac = eat_digits();
  }
  if (whole.empty() && frac.empty()) return fail();

  BigInt exponent10 = 0;
  if (pos < input.size() && (input[pos] == 'e' || input[pos] == 'E')) {
    ++pos;
    const bool exp_negative = eat_sign();
    const std::string exp_digits = eat_digits();
    if (exp_digits.empty()) return fail();
    exponent10 = BigInt(exp_digits);
    if (exp_negative) exponent10 = -exponent10;
  } else if (!has_point && pos < input.size() && input[pos] == '/') {
    ++pos;
    const std::string den_digits = eat_digits();
    if (den_digits.empty() || pos != input.size()) return fail();
    const BigInt num(whole);
    const BigInt den(den_digits);
    if (den == 0) throw InputError("zero denominator in '" + input + "'");
    Rational r(num, den);
    return negative ? -r : r;
  }
  if (pos != input.size()) return fail();

  BigInt mantissa(whole.empty() ? "0" : whole);
  for (char c : frac) {
    mantissa *= 10;
    mantissa += c - '0';
  }
  Rational r(mantissa);
  BigInt shift = exponent10 - BigInt(frac.size());
  if (shift > 0) {
    for (BigInt i = 0; i < shift; ++i) r *= 10;
  } else {
    for (BigInt i = 0; i < -shift; ++i) r /= 10;
  }
  return negative ? -r : r;
}

/// "p/q" with q omitted when 1; inverse of parse_rational on its output.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// 12 significant digits, the CLI convention for floating-point distances.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::string(buf);
}

}  // namespace lot
