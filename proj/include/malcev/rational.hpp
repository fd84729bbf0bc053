#ifndef MALCEV_RATIONAL_HPP_
#define MALCEV_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "malcev/common.hpp"

namespace malcev {

// All interval/arc arithmetic is exact rational arithmetic; no floating point
// exists anywhere in the library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "n" or "n/d" with optional leading '-'. Normalization (sign, gcd)
// is done by the backend.
inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw input_error("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
    BigInt num{std::string(s.substr(0, slash))};
    BigInt den{std::string(s.substr(slash + 1))};
    if (den == 0) throw input_error("rational with zero denominator: " + std::string(s));
    return Rational(num, den);
  } catch (const std::exception&) {
    throw input_error("bad rational literal: " + std::string(s));
  }
}

// Canonical lowest-terms form: "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) { return r.str(); }

}  // namespace malcev

#endif  // MALCEV_RATIONAL_HPP_
