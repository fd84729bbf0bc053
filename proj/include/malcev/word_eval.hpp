#ifndef MALCEV_WORD_EVAL_HPP_
#define MALCEV_WORD_EVAL_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/local_group.hpp"
#include "malcev/view.hpp"

namespace malcev {

// Set of all values reachable by some bracketing of w ("some" relation).
// Interval DP: V[i][i] = {w_i}; V[i][j] = union over splits of the defined
// products V[i][k] x V[k+1][j]. Empty word evaluates to {identity}. The
// result is sorted; a size above 1 is a global-associativity witness.
template <LocalGroupView V>
std::vector<typename V::element> eval_some(const V& g,
                                           std::span<const typename V::element> w) {
  using E = typename V::element;
  const std::size_t n = w.size();
  if (n == 0) return {g.identity()};
  // cell(i, len): values of w[i .. i+len-1]
  std::vector<std::vector<std::vector<E>>> cell(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell[i].resize(n - i + 1);
    cell[i][1] = {w[i]};
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::vector<E>& out = cell[i][len];
      for (std::size_t k = 1; k < len; ++k) {
        for (const E& a : cell[i][k])
          for (const E& b : cell[i + k][len - k])
            if (auto p = g.product(a, b)) out.push_back(*p);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  return cell[0][n];
}

// The "all" relation: defined iff every split succeeds and all splits agree
// on the value; then that value. Undefined otherwise.
template <LocalGroupView V>
std::optional<typename V::element> eval_all(const V& g,
                                            std::span<const typename V::element> w) {
  using E = typename V::element;
  const std::size_t n = w.size();
  if (n == 0) return g.identity();
  std::vector<std::vector<std::optional<E>>> cell(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell[i].resize(n - i + 1);
    cell[i][1] = w[i];
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::optional<E> agreed;
      bool ok = true;
      for (std::size_t k = 1; k < len && ok; ++k) {
        const auto& a = cell[i][k];
        const auto& b = cell[i + k][len - k];
        if (!a || !b) {
          ok = false;
          break;
        }
        auto p = g.product(*a, *b);
        if (!p || (agreed && *agreed != *p)) {
          ok = false;
          break;
        }
        agreed = *p;
      }
      if (ok) cell[i][len] = agreed;
    }
  }
  return cell[0][n];
}

template <class E>
struct AssocWitness {
  std::vector<E> word;
  E value_a;
  E value_b;
};

enum class CheckMode { exhaustive, sampled };

template <class E>
struct AssocVerdict {
  bool pass = true;
  CheckMode mode = CheckMode::exhaustive;
  std::optional<AssocWitness<E>> witness;
};

// Exhaustive bounded global-associativity check over a finite table: every
// word of length <= max_len has at most one value. Pass is a certificate for
// the stated bound only. Words of each length are enumerated lexicographically
// and share their sub-word value sets through per-length layers, so the
// witness (if any) is the lexicographically least at the shortest failing
// length.
//
// Layer cells hold one byte: a value index, kEmpty, or kMulti with the full
// set in a side table. cell_budget caps total layer memory.
inline AssocVerdict<std::uint32_t> check_global_assoc(const FiniteLocalGroup& g, int max_len,
                                                      std::uint64_t cell_budget = (1ull << 26)) {
  if (max_len < 0) throw precondition_error("max_len must be nonnegative");
  const std::uint64_t m = g.size();
  if (m > 250) throw limit_error("carrier too large for the layer encoding");
  constexpr std::uint8_t kEmpty = 0xFF, kMulti = 0xFE;

  std::uint64_t total = 0, pw = 1;
  for (int len = 1; len <= max_len; ++len) {
    pw *= m;
    total += pw;
    if (total > cell_budget)
      throw limit_error("word space exceeds cell budget; lower max_len or the carrier size");
  }

  std::vector<std::vector<std::uint8_t>> layer(static_cast<std::size_t>(max_len) + 1);
  std::vector<std::map<std::uint64_t, std::vector<std::uint8_t>>> multi(
      static_cast<std::size_t>(max_len) + 1);
  layer[0] = {};  // length 0: the single empty word evaluates to {identity}

  // values of the word encoded by index idx at length len
  auto values_of = [&](int len, std::uint64_t idx, std::vector<std::uint8_t>& out) {
    out.clear();
    if (len == 0) {
      out.push_back(static_cast<std::uint8_t>(g.identity()));
      return;
    }
    const std::uint8_t c = layer[len][idx];
    if (c == kEmpty) return;
    if (c == kMulti) {
      out = multi[len].at(idx);
      return;
    }
    out.push_back(c);
  };

  std::vector<std::uint8_t> va, vb, acc;
  std::vector<std::uint64_t> pow(static_cast<std::size_t>(max_len) + 1, 1);
  for (int i = 1; i <= max_len; ++i) pow[i] = pow[i - 1] * m;

  for (int len = 1; len <= max_len; ++len) {
    layer[len].assign(pow[len], kEmpty);
    for (std::uint64_t idx = 0; idx < pow[len]; ++idx) {
      acc.clear();
      if (len == 1) {
        acc.push_back(static_cast<std::uint8_t>(idx));
      } else {
        for (int k = 1; k < len; ++k) {
          const std::uint64_t pre = idx / pow[len - k];
          const std::uint64_t suf = idx % pow[len - k];
          values_of(k, pre, va);
          values_of(len - k, suf, vb);
          for (auto a : va)
            for (auto b : vb) {
              const std::int32_t z = g.product_index(a, b);
              if (z != FiniteLocalGroup::kUndef) acc.push_back(static_cast<std::uint8_t>(z));
            }
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      }
      if (acc.empty()) continue;
      if (acc.size() == 1) {
        layer[len][idx] = acc[0];
        continue;
      }
      layer[len][idx] = kMulti;
      multi[len][idx] = acc;
      // first multi-valued word in (length, lex) order is the witness
      std::vector<std::uint32_t> word(len);
      std::uint64_t rest = idx;
      for (int i = len - 1; i >= 0; --i) {
        word[i] = static_cast<std::uint32_t>(rest % m);
        rest /= m;
      }
      return {false, CheckMode::exhaustive,
              AssocWitness<std::uint32_t>{std::move(word), acc[0], acc[1]}};
    }
  }
  return {};
}

// Sampled variant for infinite carriers: draws words_per_len words of each
// length from the supplied element sampler. A pass is labeled sampled, never
// exhaustive.
template <LocalGroupView V, class Sampler>
AssocVerdict<typename V::element> check_global_assoc_sampled(const V& g, Sampler&& sample,
                                                             int max_len,
                                                             std::size_t words_per_len,
                                                             std::uint64_t seed) {
  if (max_len < 0) throw precondition_error("max_len must be nonnegative");
  using E = typename V::element;
  SplitMix64 rng(seed);
  for (int len = 1; len <= max_len; ++len) {
    for (std::size_t s = 0; s < words_per_len; ++s) {
      std::vector<E> w;
      w.reserve(len);
      for (int i = 0; i < len; ++i) w.push_back(sample(rng));
      auto vals = eval_some(g, std::span<const E>(w));
      if (vals.size() > 1)
        return {false, CheckMode::sampled, AssocWitness<E>{std::move(w), vals[0], vals[1]}};
    }
  }
  return {true, CheckMode::sampled, std::nullopt};
}

struct StrongDomain {
  int n = 0;
  // all n-tuples (as index words) on which every bracketing is defined and
  // agrees -- the finite stand-in for a strong-evaluation neighborhood
  std::vector<std::vector<std::uint32_t>> tuples;
  // greedy identity-containing core S (carrier index order) with S^n inside
  // the tuple set
  std::vector<std::uint32_t> core;
};

inline StrongDomain strong_domain(const FiniteLocalGroup& g, int n,
                                  std::uint64_t tuple_budget = (1ull << 22)) {
  if (n < 1) throw precondition_error("strong_domain needs n >= 1");
  const std::uint64_t m = g.size();
  std::uint64_t cnt = 1;
  for (int i = 0; i < n; ++i) {
    cnt *= m;
    if (cnt > tuple_budget) throw limit_error("tuple space exceeds budget");
  }
  StrongDomain out;
  out.n = n;
  FiniteView view{&g};
  std::vector<std::uint32_t> w(n);
  for (std::uint64_t idx = 0; idx < cnt; ++idx) {
    std::uint64_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      w[i] = static_cast<std::uint32_t>(rest % m);
      rest /= m;
    }
    if (eval_all(view, std::span<const std::uint32_t>(w))) out.tuples.push_back(w);
  }

  auto all_defined = [&](const std::vector<std::uint32_t>& s) {
    std::vector<std::uint32_t> t(n);
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      for (int i = 0; i < n; ++i) t[i] = s[pick[i]];
      if (!eval_all(view, std::span<const std::uint32_t>(t))) return false;
      int i = n - 1;
      while (i >= 0 && ++pick[i] == s.size()) pick[i--] = 0;
      if (i < 0) return true;
    }
  };
  out.core = {g.identity()};
  for (std::uint32_t x = 0; x < m; ++x) {
    if (x == g.identity()) continue;
    std::vector<std::uint32_t> cand = out.core;
    cand.push_back(x);
    if (all_defined(cand)) out.core = std::move(cand);
  }
  std::sort(out.core.begin(), out.core.end());
  return out;
}

}  // namespace malcev

#endif  // MALCEV_WORD_EVAL_HPP_
