#ifndef MALCEV_PADIC_HPP_
#define MALCEV_PADIC_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "malcev/common.hpp"

namespace malcev {

// A p-adic integer known exactly modulo p^k, stored as little-endian digits
// (digit of p^0 first); k = digits.size() is the tracked precision. The prime
// is carried by the enclosing instance, not the element.
struct PadicDigits {
  std::vector<std::uint16_t> d;

  std::size_t precision() const { return d.size(); }
  bool operator==(const PadicDigits&) const = default;
  auto operator<=>(const PadicDigits&) const = default;
};

inline PadicDigits padic_zero(std::size_t precision) {
  return PadicDigits{std::vector<std::uint16_t>(precision, 0)};
}

inline bool padic_is_zero(const PadicDigits& a) {
  for (auto x : a.d)
    if (x != 0) return false;
  return true;
}

// Exact addition modulo p^min(ka, kb). Zero available precision is an error
// distinct from "product undefined": there is no digit to compute.
inline PadicDigits padic_add(std::uint32_t p, const PadicDigits& a, const PadicDigits& b) {
  const std::size_t k = std::min(a.precision(), b.precision());
  if (k == 0) throw precision_error("p-adic addition at precision 0");
  PadicDigits out{std::vector<std::uint16_t>(k, 0)};
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(a.d[i]) + b.d[i] + carry;
    out.d[i] = static_cast<std::uint16_t>(s % p);
    carry = s / p;
  }
  return out;
}

// Additive inverse modulo p^k, same precision.
inline PadicDigits padic_neg(std::uint32_t p, const PadicDigits& a) {
  if (a.precision() == 0) throw precision_error("p-adic negation at precision 0");
  PadicDigits out{std::vector<std::uint16_t>(a.precision(), 0)};
  std::uint32_t borrow = 0;
  for (std::size_t i = 0; i < a.precision(); ++i) {
    std::uint32_t v = a.d[i] + borrow;
    out.d[i] = static_cast<std::uint16_t>(v == 0 ? 0 : p - v);
    borrow = v == 0 ? 0 : 1;
  }
  return out;
}

// Multiplication by p: prepend a zero digit. x mod p^k determines px mod
// p^(k+1), so the result is exact with precision k+1.
inline PadicDigits padic_shift(const PadicDigits& a) {
  PadicDigits out;
  out.d.reserve(a.precision() + 1);
  out.d.push_back(0);
  out.d.insert(out.d.end(), a.d.begin(), a.d.end());
  return out;
}

// Index of the lowest nonzero digit; nullopt means "zero at the available
// precision" (valuation >= k, exact value unknown).
inline std::optional<std::size_t> padic_valuation(const PadicDigits& a) {
  for (std::size_t i = 0; i < a.precision(); ++i)
    if (a.d[i] != 0) return i;
  return std::nullopt;
}

// Decides v(x) >= m when the digits allow it; throws when they do not.
inline bool padic_in_ball(const PadicDigits& a, std::size_t m) {
  auto v = padic_valuation(a);
  if (v) return *v >= m;
  if (a.precision() >= m) return true;
  throw precision_error("p-adic ball membership undecidable at tracked precision");
}

}  // namespace malcev

#endif  // MALCEV_PADIC_HPP_
