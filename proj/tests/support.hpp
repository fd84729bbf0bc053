#ifndef MALCEV_TESTS_SUPPORT_HPP_
#define MALCEV_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/local_group.hpp"

namespace malcev::testsupport {

inline FiniteGroup cyclic_group(std::uint32_t n) {
  std::vector<Label> labels;
  for (std::uint32_t i = 0; i < n; ++i) labels.push_back(int_label(i));
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) table[x * n + y] = (x + y) % n;
  return FiniteGroup(std::move(labels), 0, std::move(table));
}

// Dihedral group of order 2n; element i + n*j is r^i s^j.
inline FiniteGroup dihedral_group(std::uint32_t n) {
  const std::uint32_t sz = 2 * n;
  std::vector<Label> labels;
  for (std::uint32_t i = 0; i < sz; ++i)
    labels.push_back(Label{std::string(i < n ? "r" : "rs") + std::to_string(i % n)});
  std::vector<std::uint32_t> table(sz * sz);
  for (std::uint32_t a = 0; a < sz; ++a)
    for (std::uint32_t b = 0; b < sz; ++b) {
      const std::uint32_t i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
      const std::uint32_t i = j1 == 0 ? (i1 + i2) % n : (i1 + n - i2 % n) % n;
      table[a * sz + b] = i + n * ((j1 + j2) % 2);
    }
  return FiniteGroup(std::move(labels), 0, std::move(table));
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::uint32_t na = static_cast<std::uint32_t>(a.size());
  const std::uint32_t nb = static_cast<std::uint32_t>(b.size());
  std::vector<Label> labels;
  for (std::uint32_t i = 0; i < na; ++i)
    for (std::uint32_t j = 0; j < nb; ++j)
      labels.push_back(Label{label_text(a.labels()[i]) + "|" + label_text(b.labels()[j])});
  std::vector<std::uint32_t> table(labels.size() * labels.size());
  const std::uint32_t sz = na * nb;
  for (std::uint32_t x = 0; x < sz; ++x)
    for (std::uint32_t y = 0; y < sz; ++y) {
      const std::uint32_t xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      table[x * sz + y] = a.op(xa, ya) * nb + b.op(xb, yb);
    }
  return FiniteGroup(std::move(labels), a.identity_index() * nb + b.identity_index(),
                     std::move(table));
}

// S4 as permutations of {0,1,2,3} in lexicographic order.
inline FiniteGroup symmetric4() {
  std::vector<std::array<std::uint8_t, 4>> perms;
  std::array<std::uint8_t, 4> p{0, 1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&perms](const std::array<std::uint8_t, 4>& q) -> std::uint32_t {
    for (std::uint32_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return i;
    return 0;
  };
  std::vector<Label> labels;
  for (const auto& q : perms) {
    std::string s;
    for (auto v : q) s += static_cast<char>('0' + v);
    labels.push_back(Label{s});
  }
  const std::uint32_t n = 24;
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      std::array<std::uint8_t, 4> comp{};
      for (int i = 0; i < 4; ++i) comp[i] = perms[x][perms[y][i]];
      table[x * n + y] = index_of(comp);
    }
  return FiniteGroup(std::move(labels), index_of({0, 1, 2, 3}), std::move(table));
}

inline FiniteLocalGroup c5arc() {
  return from_group_restriction(cyclic_group(5), std::vector<std::uint32_t>{0, 1, 4}).local;
}

inline FiniteLocalGroup z6arc() {
  return from_group_restriction(cyclic_group(6), std::vector<std::uint32_t>{0, 1, 5}).local;
}

// A valid 5-element local group on which the word (a,b,c,d) has two values:
// ((ab)c)d = a via ab=c, cc=d, dd=a, while a(b(cd)) = b via cd=a, ba=c, ac=b.
// Every local-associativity quadruple is vacuous (some factor undefined), so
// the axioms pass; the structure is not globally associative and hence not
// globalizable by an injective morphism.
inline FiniteLocalGroup nonassoc5() {
  std::vector<Label> labels{Label{std::string("e")}, Label{std::string("a")},
                            Label{std::string("b")}, Label{std::string("c")},
                            Label{std::string("d")}};
  std::vector<std::array<std::uint32_t, 3>> prods;
  for (std::uint32_t x = 0; x < 5; ++x) {
    prods.push_back({0, x, x});
    if (x != 0) prods.push_back({x, 0, x});
  }
  const std::uint32_t a = 1, b = 2, c = 3, d = 4;
  prods.push_back({a, b, c});
  prods.push_back({b, a, c});
  prods.push_back({a, c, b});
  prods.push_back({c, c, d});
  prods.push_back({c, d, a});
  prods.push_back({d, d, a});
  return FiniteLocalGroup::from_triples(std::move(labels), 0, prods, {{0, 0}});
}

// Seeded pick from a small catalogue of groups of order <= 24.
inline FiniteGroup random_group(SplitMix64& rng) {
  switch (rng.below(6)) {
    case 0: return cyclic_group(2 + static_cast<std::uint32_t>(rng.below(23)));
    case 1: return dihedral_group(2 + static_cast<std::uint32_t>(rng.below(11)));
    case 2:
      return direct_product(cyclic_group(2 + static_cast<std::uint32_t>(rng.below(3))),
                            cyclic_group(2 + static_cast<std::uint32_t>(rng.below(5))));
    case 3: return symmetric4();
    case 4:
      return direct_product(cyclic_group(2), dihedral_group(2 + static_cast<std::uint32_t>(
                                                 rng.below(4))));
    default: return cyclic_group(2 + static_cast<std::uint32_t>(rng.below(23)));
  }
}

// Random symmetric identity-containing subset with |U| <= max_size (inverse
// pairs enter together, so the bound may overshoot by one).
inline std::vector<std::uint32_t> random_symmetric_subset(const FiniteGroup& g, SplitMix64& rng,
                                                          std::size_t max_size) {
  std::vector<bool> in(g.size(), false);
  in[g.identity_index()] = true;
  std::size_t count = 1;
  for (std::size_t tries = 0; tries < 4 * max_size && count + 1 < max_size; ++tries) {
    const auto x = static_cast<std::uint32_t>(rng.below(g.size()));
    if (in[x]) continue;
    in[x] = true;
    ++count;
    if (!in[g.inv(x)]) {
      in[g.inv(x)] = true;
      ++count;
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

// Random valid-identity partial table (not necessarily associative); used by
// the bracketing-oracle equivalence tests, which only need a partial product.
inline FiniteLocalGroup random_partial_table(SplitMix64& rng, std::uint32_t size,
                                             std::uint32_t density_percent) {
  std::vector<Label> labels;
  for (std::uint32_t i = 0; i < size; ++i) labels.push_back(int_label(i));
  std::vector<std::int32_t> prod(size * size, FiniteLocalGroup::kUndef);
  std::vector<std::int32_t> inv(size, FiniteLocalGroup::kUndef);
  for (std::uint32_t x = 0; x < size; ++x) {
    prod[0 * size + x] = static_cast<std::int32_t>(x);
    prod[x * size + 0] = static_cast<std::int32_t>(x);
  }
  inv[0] = 0;
  for (std::uint32_t x = 1; x < size; ++x)
    for (std::uint32_t y = 1; y < size; ++y)
      if (rng.below(100) < density_percent)
        prod[x * size + y] = static_cast<std::int32_t>(rng.below(size));
  return FiniteLocalGroup(std::move(labels), 0, std::move(prod), std::move(inv));
}

}  // namespace malcev::testsupport

#endif  // MALCEV_TESTS_SUPPORT_HPP_
