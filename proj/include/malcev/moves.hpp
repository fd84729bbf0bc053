#ifndef MALCEV_MOVES_HPP_
#define MALCEV_MOVES_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/local_group.hpp"
#include "malcev/view.hpp"

namespace malcev {

enum class MoveKind { contract_i, contract_ii, expand_i, expand_ii };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::contract_i: return "contract-I";
    case MoveKind::contract_ii: return "contract-II";
    case MoveKind::expand_i: return "expand-I";
    case MoveKind::expand_ii: return "expand-II";
  }
  return "?";
}

inline bool is_contraction(MoveKind k) {
  return k == MoveKind::contract_i || k == MoveKind::contract_ii;
}

// One rewrite step on a word. Slot positions are 1-based (contractions act on
// the pair (pos, pos+1); expand-I splits the entry at pos); expand-II inserts
// at a 0-based gap in 0..len.
template <class E>
struct Move {
  MoveKind kind;
  std::size_t pos;
  std::optional<E> a, b;  // expand-I carries (a, b); expand-II carries a
};

template <class E>
using Word = std::vector<E>;

template <LocalGroupView V>
Word<typename V::element> apply_move(const V& g, const Word<typename V::element>& w,
                                     const Move<typename V::element>& m) {
  using E = typename V::element;
  const std::size_t n = w.size();
  Word<E> out;
  switch (m.kind) {
    case MoveKind::contract_i: {
      if (m.pos < 1 || m.pos >= n) throw precondition_error("contract-I position out of range");
      auto p = g.product(w[m.pos - 1], w[m.pos]);
      if (!p) throw precondition_error("contract-I: pair not in Omega");
      out.assign(w.begin(), w.begin() + (m.pos - 1));
      out.push_back(*p);
      out.insert(out.end(), w.begin() + (m.pos + 1), w.end());
      return out;
    }
    case MoveKind::contract_ii: {
      if (m.pos < 1 || m.pos >= n) throw precondition_error("contract-II position out of range");
      if (!g.product(w[m.pos - 1], w[m.pos]))
        throw precondition_error("contract-II: pair not in Omega");
      auto inv = g.inverse(w[m.pos - 1]);
      if (!inv || !(*inv == w[m.pos]))
        throw precondition_error("contract-II: second entry is not the inverse of the first");
      out.assign(w.begin(), w.begin() + (m.pos - 1));
      out.insert(out.end(), w.begin() + (m.pos + 1), w.end());
      return out;
    }
    case MoveKind::expand_i: {
      if (m.pos < 1 || m.pos > n) throw precondition_error("expand-I position out of range");
      if (!m.a || !m.b) throw precondition_error("expand-I needs parameters (a, b)");
      auto p = g.product(*m.a, *m.b);
      if (!p || !(*p == w[m.pos - 1]))
        throw precondition_error("expand-I: (a, b) not an Omega-splitting of the entry");
      out.assign(w.begin(), w.begin() + (m.pos - 1));
      out.push_back(*m.a);
      out.push_back(*m.b);
      out.insert(out.end(), w.begin() + m.pos, w.end());
      return out;
    }
    case MoveKind::expand_ii: {
      if (m.pos > n) throw precondition_error("expand-II gap out of range");
      if (!m.a) throw precondition_error("expand-II needs parameter a");
      auto inv = g.inverse(*m.a);
      if (!inv) throw precondition_error("expand-II: a has no inverse");
      out.assign(w.begin(), w.begin() + m.pos);
      out.push_back(*m.a);
      out.push_back(*inv);
      out.insert(out.end(), w.begin() + m.pos, w.end());
      return out;
    }
  }
  throw precondition_error("bad move kind");
}

// All applicable moves in a fixed order: contractions by position (I before
// II), then expand-I by (position, alphabet pair order), then expand-II by
// (gap, alphabet order). Expansions draw only on the supplied alphabet, in
// the order given, so searches stay finite and reproducible.
template <LocalGroupView V>
std::vector<std::pair<Move<typename V::element>, Word<typename V::element>>> enumerate_moves(
    const V& g, const Word<typename V::element>& w,
    std::span<const typename V::element> expand_alphabet) {
  using E = typename V::element;
  std::vector<std::pair<Move<E>, Word<E>>> out;
  auto push = [&](Move<E> m) {
    out.emplace_back(m, apply_move(g, w, m));
  };
  for (std::size_t i = 1; i < w.size(); ++i)
    if (g.product(w[i - 1], w[i])) push({MoveKind::contract_i, i, std::nullopt, std::nullopt});
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto inv = g.inverse(w[i - 1]);
    if (inv && *inv == w[i] && g.product(w[i - 1], w[i]))
      push({MoveKind::contract_ii, i, std::nullopt, std::nullopt});
  }
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (const E& a : expand_alphabet)
      for (const E& b : expand_alphabet) {
        auto p = g.product(a, b);
        if (p && *p == w[i - 1]) push({MoveKind::expand_i, i, a, b});
      }
  for (std::size_t gap = 0; gap <= w.size(); ++gap)
    for (const E& a : expand_alphabet)
      if (g.inverse(a)) push({MoveKind::expand_ii, gap, a, std::nullopt});
  return out;
}

// An admissible sequence: words[k+1] = apply_move(words[k], moves[k]).
template <class E>
struct MoveTrace {
  std::vector<Word<E>> words;
  std::vector<Move<E>> moves;
};

template <LocalGroupView V>
void validate_trace(const V& g, const MoveTrace<typename V::element>& t) {
  if (t.words.empty() || t.moves.size() + 1 != t.words.size())
    throw precondition_error("trace shape mismatch");
  for (std::size_t k = 0; k < t.moves.size(); ++k)
    if (apply_move(g, t.words[k], t.moves[k]) != t.words[k + 1])
      throw precondition_error("trace does not replay at step " + std::to_string(k));
}

// Special: all expansions precede all contractions.
template <class E>
bool is_special(const MoveTrace<E>& t) {
  bool contracting = false;
  for (const auto& m : t.moves) {
    if (is_contraction(m.kind))
      contracting = true;
    else if (contracting)
      return false;
  }
  return true;
}

namespace detail {

// Neatness-backed overlap resolution: x --contract-I@i--> y --expand-I@i-->
// z is replaced by two type-I expansions and one type-II contraction. All
// other contraction/expansion interleavings commute by position arithmetic;
// the disjoint cases are enumerated in commute_step below.
template <LocalGroupView V>
MoveTrace<typename V::element> overlap_resolution(const V& g,
                                                  const Word<typename V::element>& x,
                                                  std::size_t i,
                                                  const typename V::element& a,
                                                  const typename V::element& b) {
  using E = typename V::element;
  const E t = x[i];  // second entry of the contracted pair (1-based slot i+1)
  auto prod = g.product(x[i - 1], t);
  if (!prod) throw precondition_error("overlap: pair not in Omega");
  const E combined = *prod;
  auto ti = g.inverse(t);
  if (!ti)
    throw precondition_error(
        "commute_step needs a neat structure: entry without inverse");
  auto back = g.product(combined, *ti);
  if (!back || !(*back == x[i - 1]))
    throw precondition_error(
        "commute_step needs a neat structure: (xy, y^-1) not in Omega");

  MoveTrace<E> tr;
  tr.words.push_back(x);
  Move<E> m1{MoveKind::expand_i, i, combined, *ti};
  tr.words.push_back(apply_move(g, tr.words.back(), m1));
  tr.moves.push_back(m1);
  Move<E> m2{MoveKind::expand_i, i, a, b};
  tr.words.push_back(apply_move(g, tr.words.back(), m2));
  tr.moves.push_back(m2);
  Move<E> m3{MoveKind::contract_ii, i + 2, std::nullopt, std::nullopt};
  tr.words.push_back(apply_move(g, tr.words.back(), m3));
  tr.moves.push_back(m3);
  return tr;
}

}  // namespace detail

// Given x --c--> y --e--> z with c a contraction and e an expansion, produces
// an expansions-then-one-contraction trace from x to z. Disjoint positions
// and every type-II case just interchange the two moves [with the index
// shifts spelled out case by case]; the genuinely overlapping case
// (contract-I then expand-I at the same slot) is the neatness construction.
template <LocalGroupView V>
MoveTrace<typename V::element> commute_step(const V& g, const Word<typename V::element>& x,
                                            const Move<typename V::element>& c,
                                            const Move<typename V::element>& e) {
  using E = typename V::element;
  if (!is_contraction(c.kind) || is_contraction(e.kind))
    throw precondition_error("commute_step expects (contraction, expansion)");
  const Word<E> y = apply_move(g, x, c);
  const Word<E> z = apply_move(g, y, e);

  const std::size_t i = c.pos;
  const bool c_type_i = c.kind == MoveKind::contract_i;
  Move<E> e2 = e;  // the expansion, repositioned to act on x
  Move<E> c2 = c;  // the contraction, repositioned to act on e2(x)

  if (e.kind == MoveKind::expand_i) {
    if (c_type_i && e.pos == i)
      return detail::overlap_resolution(g, x, i, *e.a, *e.b);
    if (e.pos < i) {
      c2.pos = i + 1;
    } else {
      e2.pos = e.pos + (c_type_i ? 1 : 2);
    }
  } else {  // expand-II at a gap
    if (e.pos <= i - 1) {
      c2.pos = i + 2;
    } else {
      e2.pos = e.pos + (c_type_i ? 1 : 2);
    }
  }

  MoveTrace<E> tr;
  tr.words.push_back(x);
  tr.words.push_back(apply_move(g, x, e2));
  tr.moves.push_back(e2);
  tr.words.push_back(apply_move(g, tr.words.back(), c2));
  tr.moves.push_back(c2);
  if (tr.words.back() != z) throw precondition_error("commute_step: interchange mismatch");
  return tr;
}

// Normalizes an admissible sequence to a special one by repeatedly resolving
// the largest index where a contraction is immediately followed by an
// expansion. Returns the special trace and the number of commute_step
// invocations.
template <LocalGroupView V>
std::pair<MoveTrace<typename V::element>, std::size_t> make_special(
    const V& g, MoveTrace<typename V::element> t, std::size_t step_cap = 1000000) {
  validate_trace(g, t);
  std::size_t steps = 0;
  while (true) {
    std::size_t k = t.moves.size();  // sentinel: none found
    for (std::size_t j = 0; j + 1 < t.moves.size(); ++j)
      if (is_contraction(t.moves[j].kind) && !is_contraction(t.moves[j + 1].kind)) k = j;
    if (k == t.moves.size()) break;
    auto sub = commute_step(g, t.words[k], t.moves[k], t.moves[k + 1]);
    t.words.erase(t.words.begin() + k, t.words.begin() + k + 3);
    t.words.insert(t.words.begin() + k, sub.words.begin(), sub.words.end());
    t.moves.erase(t.moves.begin() + k, t.moves.begin() + k + 2);
    t.moves.insert(t.moves.begin() + k, sub.moves.begin(), sub.moves.end());
    if (++steps > step_cap) throw limit_error("make_special exceeded its step cap");
  }
  return {std::move(t), steps};
}

enum class Reach { yes, no_within_bounds, unknown };

struct ReachResult {
  Reach verdict = Reach::unknown;
  std::optional<MoveTrace<std::uint32_t>> trace;
  std::size_t explored = 0;
};

// Breadth-first search over the move graph with word length capped at
// max_word_len and at most max_steps dequeued words. "yes" carries a trace;
// "no_within_bounds" means the whole bounded reachable set was seen and y is
// not in it; hitting max_steps yields "unknown".
inline ReachResult equivalent_bounded(const FiniteLocalGroup& g,
                                      const Word<std::uint32_t>& x, const Word<std::uint32_t>& y,
                                      std::size_t max_word_len, std::size_t max_steps,
                                      std::optional<std::vector<std::uint32_t>> alphabet =
                                          std::nullopt) {
  FiniteView view{&g};
  std::vector<std::uint32_t> ab;
  if (alphabet) {
    ab = *alphabet;
  } else {
    ab.resize(g.size());
    for (std::uint32_t i = 0; i < g.size(); ++i) ab[i] = i;
  }

  ReachResult res;
  if (x == y) {
    res.verdict = Reach::yes;
    res.trace = MoveTrace<std::uint32_t>{{x}, {}};
    return res;
  }
  std::map<Word<std::uint32_t>, std::pair<Word<std::uint32_t>, Move<std::uint32_t>>> parent;
  std::deque<Word<std::uint32_t>> frontier{x};
  parent[x] = {x, Move<std::uint32_t>{MoveKind::contract_i, 0, std::nullopt, std::nullopt}};
  bool truncated = false;

  while (!frontier.empty()) {
    if (res.explored >= max_steps) {
      truncated = true;
      break;
    }
    Word<std::uint32_t> w = std::move(frontier.front());
    frontier.pop_front();
    ++res.explored;
    for (auto& [mv, next] : enumerate_moves(view, w, std::span<const std::uint32_t>(ab))) {
      if (next.size() > max_word_len) continue;
      if (parent.count(next)) continue;
      parent[next] = {w, mv};
      if (next == y) {
        MoveTrace<std::uint32_t> tr;
        Word<std::uint32_t> cur = next;
        std::vector<Word<std::uint32_t>> rwords{cur};
        std::vector<Move<std::uint32_t>> rmoves;
        while (cur != x) {
          auto& [pw, pm] = parent.at(cur);
          rmoves.push_back(pm);
          cur = pw;
          rwords.push_back(cur);
        }
        tr.words.assign(rwords.rbegin(), rwords.rend());
        tr.moves.assign(rmoves.rbegin(), rmoves.rend());
        res.verdict = Reach::yes;
        res.trace = std::move(tr);
        return res;
      }
      frontier.push_back(std::move(next));
    }
  }
  res.verdict = truncated ? Reach::unknown : Reach::no_within_bounds;
  return res;
}

}  // namespace malcev

#endif  // MALCEV_MOVES_HPP_
