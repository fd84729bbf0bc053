#ifndef MALCEV_REWRITE_HPP_
#define MALCEV_REWRITE_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "malcev/common.hpp"

namespace malcev {

// Words over the generator alphabet; one char32_t per symbol index.
using SymWord = std::u32string;

inline SymWord sym_word(std::initializer_list<std::uint32_t> syms) {
  SymWord w;
  for (auto s : syms) w.push_back(static_cast<char32_t>(s));
  return w;
}

// Total reduction order: length first, then lexicographic by symbol index.
inline bool shortlex_less(const SymWord& a, const SymWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Rule {
  SymWord lhs, rhs;  // invariant: shortlex_less(rhs, lhs)
};

// An ordered string-rewriting system. `complete` is set only after exhaustive
// critical-pair certification; normal_form requires it, reduce does not.
class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(std::vector<std::string> symbol_names, std::vector<Rule> rules, bool complete)
      : names_(std::move(symbol_names)), rules_(std::move(rules)), complete_(complete) {
    for (const auto& r : rules_) {
      if (!shortlex_less(r.rhs, r.lhs)) throw input_error("rule does not decrease shortlex");
      max_lhs_ = std::max(max_lhs_, r.lhs.size());
      for (auto c : r.lhs)
        if (static_cast<std::size_t>(c) >= names_.size())
          throw input_error("rule symbol out of alphabet");
      for (auto c : r.rhs)
        if (static_cast<std::size_t>(c) >= names_.size())
          throw input_error("rule symbol out of alphabet");
    }
  }

  const std::vector<std::string>& symbol_names() const { return names_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool complete() const { return complete_; }

  // Deterministic reduction: leftmost redex, first matching rule in stored
  // order; after a replacement, rescan from just far enough left to catch
  // newly created redexes. Terminates because every step decreases shortlex.
  SymWord reduce(SymWord w) const {
    if (rules_.empty() || max_lhs_ == 0) return w;
    std::size_t i = 0;
    while (i < w.size()) {
      bool fired = false;
      for (const Rule& r : rules_) {
        if (r.lhs.size() > w.size() - i) continue;
        if (w.compare(i, r.lhs.size(), r.lhs) == 0) {
          w.replace(i, r.lhs.size(), r.rhs);
          i = i >= max_lhs_ - 1 ? i - (max_lhs_ - 1) : 0;
          fired = true;
          break;
        }
      }
      if (!fired) ++i;
    }
    return w;
  }

  // Unique irreducible descendant; caller must hold a completeness
  // certificate for uniqueness to be meaningful.
  SymWord normal_form(const SymWord& w) const {
    if (!complete_) throw precondition_error("normal_form requires a complete system");
    return reduce(w);
  }

  std::string render(const SymWord& w) const {
    if (w.empty()) return "<e>";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += '.';
      out += names_.at(static_cast<std::size_t>(w[i]));
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Rule> rules_;
  bool complete_ = false;
  std::size_t max_lhs_ = 0;
};

enum class CompletionStatus { complete, rule_limit, length_limit };

struct CompletionResult {
  RewriteSystem system;  // partial on limit failure, still usable via reduce
  CompletionStatus status = CompletionStatus::complete;
};

namespace detail {

struct KbRule {
  SymWord lhs, rhs;
  bool active = true;
};

inline SymWord kb_reduce(const std::vector<KbRule>& rules, std::size_t max_lhs, SymWord w) {
  std::size_t i = 0;
  while (i < w.size()) {
    bool fired = false;
    for (const KbRule& r : rules) {
      if (!r.active || r.lhs.size() > w.size() - i) continue;
      if (w.compare(i, r.lhs.size(), r.lhs) == 0) {
        w.replace(i, r.lhs.size(), r.rhs);
        i = (max_lhs > 0 && i >= max_lhs - 1) ? i - (max_lhs - 1) : 0;
        fired = true;
        break;
      }
    }
    if (!fired) ++i;
  }
  return w;
}

// Pushes the critical pairs of (l1->r1, l2->r2) onto the queue: proper
// overlaps (a suffix of l1 equals a prefix of l2) and containments (l2 a
// factor of l1).
inline void kb_critical_pairs(const KbRule& a, const KbRule& b,
                              std::deque<std::pair<SymWord, SymWord>>& out) {
  const std::size_t la = a.lhs.size(), lb = b.lhs.size();
  for (std::size_t o = 1; o < std::min(la, lb); ++o) {
    // a.lhs = x . s with |s| = o, b.lhs = s . y
    if (a.lhs.compare(la - o, o, b.lhs, 0, o) != 0) continue;
    SymWord left = a.rhs + b.lhs.substr(o);
    SymWord right = a.lhs.substr(0, la - o) + b.rhs;
    out.emplace_back(std::move(left), std::move(right));
  }
  if (lb <= la) {
    for (std::size_t at = 0; at + lb <= la; ++at) {
      if (&a == &b && lb == la) break;  // identical overlap of a rule with itself
      if (a.lhs.compare(at, lb, b.lhs) != 0) continue;
      SymWord right = a.lhs.substr(0, at) + b.rhs + a.lhs.substr(at + lb);
      out.emplace_back(a.rhs, std::move(right));
    }
  }
}

}  // namespace detail

// Knuth-Bendix completion over the shortlex order. Deterministic: equations
// are processed FIFO, rules are kept interreduced, and the final rule list is
// sorted canonically. Completeness is certified by re-deriving every critical
// pair of the final system and checking joinability.
inline CompletionResult complete(std::vector<std::string> symbol_names,
                                 std::vector<std::pair<SymWord, SymWord>> relations,
                                 std::size_t max_rules, std::size_t max_len) {
  if (max_rules == 0 || max_len == 0) throw precondition_error("completion limits must be positive");
  using detail::KbRule;
  std::vector<KbRule> rules;
  std::deque<std::pair<SymWord, SymWord>> pending(relations.begin(), relations.end());

  auto max_lhs = [&rules]() {
    std::size_t m = 0;
    for (const auto& r : rules)
      if (r.active) m = std::max(m, r.lhs.size());
    return m;
  };
  auto active_count = [&rules]() {
    std::size_t c = 0;
    for (const auto& r : rules) c += r.active ? 1 : 0;
    return c;
  };
  auto finish = [&](CompletionStatus st) {
    std::vector<Rule> out;
    for (auto& r : rules)
      if (r.active) out.push_back({std::move(r.lhs), std::move(r.rhs)});
    std::sort(out.begin(), out.end(), [](const Rule& x, const Rule& y) {
      if (x.lhs != y.lhs) return shortlex_less(x.lhs, y.lhs);
      return shortlex_less(x.rhs, y.rhs);
    });
    return CompletionResult{
        RewriteSystem(std::move(symbol_names), std::move(out), st == CompletionStatus::complete),
        st};
  };

  while (true) {
    while (!pending.empty()) {
      auto [l, r] = std::move(pending.front());
      pending.pop_front();
      const std::size_t ml = max_lhs();
      SymWord a = detail::kb_reduce(rules, ml, std::move(l));
      SymWord b = detail::kb_reduce(rules, ml, std::move(r));
      if (a == b) continue;
      if (shortlex_less(a, b)) std::swap(a, b);
      if (a.size() > max_len) return finish(CompletionStatus::length_limit);
      rules.push_back(KbRule{std::move(a), std::move(b), true});
      KbRule& fresh = rules.back();
      if (active_count() > max_rules) return finish(CompletionStatus::rule_limit);

      // Interreduce: rules whose lhs contains the new lhs return to the
      // queue; reducible right-hand sides are rewritten in place.
      const std::size_t ml2 = max_lhs();
      for (auto& r2 : rules) {
        if (!r2.active || &r2 == &fresh) continue;
        if (r2.lhs.find(fresh.lhs) != SymWord::npos) {
          r2.active = false;
          pending.emplace_back(r2.lhs, r2.rhs);
        } else {
          r2.rhs = detail::kb_reduce(rules, ml2, r2.rhs);
        }
      }
      for (auto& r2 : rules) {
        if (!r2.active) continue;
        detail::kb_critical_pairs(r2, fresh, pending);
        if (&r2 != &fresh) detail::kb_critical_pairs(fresh, r2, pending);
      }
    }

    // Certification pass over the final system; any non-joinable pair goes
    // back to the queue (none is expected, the loop makes the claim honest).
    const std::size_t ml = max_lhs();
    bool certified = true;
    for (auto& r1 : rules) {
      if (!r1.active) continue;
      for (auto& r2 : rules) {
        if (!r2.active) continue;
        std::deque<std::pair<SymWord, SymWord>> cps;
        detail::kb_critical_pairs(r1, r2, cps);
        for (auto& [u, v] : cps)
          if (detail::kb_reduce(rules, ml, u) != detail::kb_reduce(rules, ml, v)) {
            pending.emplace_back(std::move(u), std::move(v));
            certified = false;
          }
      }
      if (!certified) break;
    }
    if (certified) return finish(CompletionStatus::complete);
  }
}

}  // namespace malcev

#endif  // MALCEV_REWRITE_HPP_
