#ifndef MALCEV_VIEW_HPP_
#define MALCEV_VIEW_HPP_

#include <concepts>
#include <optional>

namespace malcev {

// Uniform read interface over any partial-group structure: finite tables and
// exact symbolic instances alike. product/inverse return nullopt exactly when
// the pair/element is outside the respective domain, so "defined" tests and
// values come from one call.
//
// Elements must be regular and totally ordered; the word calculus keeps value
// sets as sorted vectors.
template <class V>
concept LocalGroupView = requires(const V& v, const typename V::element& x,
                                  const typename V::element& y) {
  typename V::element;
  requires std::equality_comparable<typename V::element>;
  requires std::totally_ordered<typename V::element>;
  { v.identity() } -> std::convertible_to<typename V::element>;
  { v.product(x, y) } -> std::convertible_to<std::optional<typename V::element>>;
  { v.inverse(x) } -> std::convertible_to<std::optional<typename V::element>>;
};

// A total group seen the same way (used as extension target: every product
// and inverse is defined).
template <class T>
concept GroupView = requires(const T& t, const typename T::element& x,
                             const typename T::element& y) {
  typename T::element;
  requires std::equality_comparable<typename T::element>;
  { t.identity() } -> std::convertible_to<typename T::element>;
  { t.op(x, y) } -> std::convertible_to<typename T::element>;
  { t.inv(x) } -> std::convertible_to<typename T::element>;
};

}  // namespace malcev

#endif  // MALCEV_VIEW_HPP_
