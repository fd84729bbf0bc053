#ifndef MALCEV_CONTRACTIVE_HPP_
#define MALCEV_CONTRACTIVE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/globalization.hpp"
#include "malcev/instances.hpp"
#include "malcev/local_group.hpp"
#include "malcev/word_eval.hpp"

namespace malcev {

enum class CheckStatus { pass, fail, unknown };

inline const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::unknown: return "unknown";
  }
  return "?";
}

struct PseudoAutoPart {
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct PseudoAutoReport {
  PseudoAutoPart morphism, injective, open, contraction;

  CheckStatus status() const {
    CheckStatus worst = CheckStatus::pass;
    for (const auto* p : {&morphism, &injective, &open, &contraction}) {
      if (p->status == CheckStatus::fail) return CheckStatus::fail;
      if (p->status == CheckStatus::unknown) worst = CheckStatus::unknown;
    }
    return worst;
  }
  bool pass() const { return status() == CheckStatus::pass; }
};

// Finite-discrete pseudo-automorphism check: morphism laws and injectivity
// are exhaustive on U, openness is automatic in the discrete topology (and
// reported as such), contraction means every orbit from U reaches the
// identity within the budget.
inline PseudoAutoReport check_pseudo_automorphism(const FiniteLocalGroup& g,
                                                  std::span<const std::uint32_t> phi,
                                                  std::span<const std::uint32_t> witness_u,
                                                  std::size_t budget = 0) {
  if (budget == 0) budget = g.size() + 1;
  PseudoAutoReport rep;
  {
    MorphismReport m = check_morphism(g, g, phi);
    if (!m.pass) {
      rep.morphism = {CheckStatus::fail, "law '" + m.law + "' fails"};
    }
  }
  bool identity_in_u = false;
  for (auto x : witness_u) identity_in_u = identity_in_u || x == g.identity();
  if (!identity_in_u) throw precondition_error("witness neighborhood must contain the identity");
  for (std::size_t i = 0; i < witness_u.size() && rep.injective.status == CheckStatus::pass; ++i)
    for (std::size_t j = i + 1; j < witness_u.size(); ++j)
      if (witness_u[i] != witness_u[j] && phi[witness_u[i]] == phi[witness_u[j]]) {
        rep.injective = {CheckStatus::fail,
                         "phi collides on " + label_text(g.label(witness_u[i])) + ", " +
                             label_text(g.label(witness_u[j]))};
        break;
      }
  rep.open = {CheckStatus::pass, "discrete carrier: every map is open"};
  for (auto x : witness_u) {
    std::uint32_t cur = x;
    bool reached = false;
    for (std::size_t n = 0; n <= budget; ++n) {
      if (cur == g.identity()) {
        reached = true;
        break;
      }
      cur = phi[cur];
    }
    if (!reached) {
      rep.contraction = {CheckStatus::fail,
                         "orbit of " + label_text(g.label(x)) + " never reaches the identity"};
      break;
    }
  }
  return rep;
}

// The documented cofinal target family for contraction certificates:
// interval/arc use open balls of radius bound/2^t, p-adic uses p^(e+t) Z_p,
// products are componentwise. Cofinal among identity neighborhoods of these
// carriers, which is what the contraction definition quantifies over.
inline Ball target_ball(const Instance& inst, std::uint32_t t) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc: {
      Rational r = inst.bound();
      for (std::uint32_t i = 0; i < t; ++i) r /= 2;
      return Ball::rational_ball(r, false);
    }
    case Family::padic: return Ball::padic_ball(inst.ball_exponent() + t);
    case Family::product:
      return Ball::pair(target_ball(inst.left(), t), target_ball(inst.right(), t));
  }
  throw input_error("bad family");
}

namespace detail {

inline std::string injectivity_certificate(const Instance& inst, const Endo& phi) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc:
      return "x -> " + format_rational(phi.scale_factor()) +
             "*x is injective on Q (nonzero scale)";
    case Family::padic: return "digit shift x -> p*x is injective (valuation bookkeeping)";
    case Family::product:
      return injectivity_certificate(inst.left(), phi.left()) + "; " +
             injectivity_certificate(inst.right(), phi.right());
  }
  return "";
}

}  // namespace detail

// Instance-level pseudo-automorphism check, exact per family: morphism laws
// and injectivity on sampled points (with the family-level certificate
// recorded), openness as exact ball-to-ball arithmetic, contraction against
// the documented monotone target family. An exhausted budget yields unknown,
// never a pass.
inline PseudoAutoReport check_pseudo_automorphism(const Instance& inst, const Endo& phi,
                                                  const Ball& witness_u, std::size_t samples,
                                                  std::uint64_t seed, std::uint32_t target_levels,
                                                  std::size_t budget) {
  phi.validate_for(inst);
  witness_u.validate_for(inst);
  PseudoAutoReport rep;
  SplitMix64 rng(seed);

  // morphism laws, exact on each sampled pair
  for (std::size_t i = 0; i < samples; ++i) {
    Elem x = inst.sample_one(rng), y = inst.sample_one(rng);
    Elem fx = phi.apply(inst, x), fy = phi.apply(inst, y);
    if (!inst.contains(fx)) {
      rep.morphism = {CheckStatus::fail, "phi leaves the carrier"};
      break;
    }
    auto xy = inst.product(x, y);
    if (xy) {
      auto fxy = inst.product(fx, fy);
      if (!fxy || !(*fxy == phi.apply(inst, *xy))) {
        rep.morphism = {CheckStatus::fail, "phi(xy) != phi(x)phi(y) at a sampled pair"};
        break;
      }
    }
    if (!(phi.apply(inst, *inst.inverse(x)) == *inst.inverse(fx))) {
      rep.morphism = {CheckStatus::fail, "phi(x^-1) != phi(x)^-1 at a sampled point"};
      break;
    }
    if (!(x == y) && phi.apply(inst, x) == phi.apply(inst, y)) {
      rep.injective = {CheckStatus::fail, "sampled collision"};
    }
  }
  if (!(phi.apply(inst, inst.identity()) == inst.identity()))
    rep.morphism = {CheckStatus::fail, "phi(1) != 1"};
  if (rep.injective.status == CheckStatus::pass)
    rep.injective.note = detail::injectivity_certificate(inst, phi);

  // openness: the image of the witness ball is again a ball, exactly
  Ball img = witness_u.image(inst, phi);
  rep.open = {CheckStatus::pass,
              "ball maps to ball: " + witness_u.describe(inst) + " -> " + img.describe(inst)};

  // contraction: each sampled point of U enters every target ball within the
  // budget and stays (radii scale monotonically, so entry is permanent; the
  // next iterate is still checked)
  for (std::size_t i = 0; i < samples && rep.contraction.status == CheckStatus::pass; ++i) {
    Elem x = inst.sample_one(rng);
    if (!witness_u.contains(inst, x)) continue;
    for (std::uint32_t t = 1; t <= target_levels; ++t) {
      const Ball b = target_ball(inst, t);
      Elem cur = x;
      std::optional<std::size_t> entered;
      for (std::size_t n = 0; n <= budget; ++n) {
        if (b.contains(inst, cur)) {
          entered = n;
          break;
        }
        cur = phi.apply(inst, cur);
      }
      if (!entered) {
        rep.contraction = {CheckStatus::unknown,
                           "budget exhausted before entering " + b.describe(inst)};
        break;
      }
      if (!b.contains(inst, phi.apply(inst, cur))) {
        rep.contraction = {CheckStatus::fail, "orbit left " + b.describe(inst) + " after entry"};
        break;
      }
    }
  }
  return rep;
}

struct DegeneracyReport {
  // Which hypothesis of (injective morphism, eventual identity) fails, empty
  // if none. On a finite carrier the pair of hypotheses forces a trivial
  // carrier: an injective self-map of a finite set is a bijection, and
  // phi^n(x) = 1 = phi^n(1) then pulls back to x = 1.
  std::string failed_hypothesis;
  std::vector<std::uint32_t> witness;
  bool hypotheses_hold = false;
  bool consistent = true;  // hypotheses_hold implies trivial carrier
};

inline DegeneracyReport finite_contractive_degeneracy(const FiniteLocalGroup& g,
                                                      std::span<const std::uint32_t> phi) {
  DegeneracyReport rep;
  MorphismReport m = check_morphism(g, g, phi);
  if (!m.pass) {
    rep.failed_hypothesis = "morphism (" + m.law + ")";
    rep.witness = m.witness;
    return rep;
  }
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = x + 1; y < g.size(); ++y)
      if (phi[x] == phi[y]) {
        rep.failed_hypothesis = "injectivity";
        rep.witness = {x, y};
        return rep;
      }
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    std::uint32_t cur = x;
    bool reached = false;
    for (std::size_t n = 0; n <= g.size(); ++n) {
      if (cur == g.identity()) {
        reached = true;
        break;
      }
      cur = phi[cur];
    }
    if (!reached) {
      rep.failed_hypothesis = "eventual-identity";
      rep.witness = {x};
      return rep;
    }
  }
  rep.hypotheses_hold = true;
  rep.consistent = g.size() == 1;
  return rep;
}

template <class E>
struct EvalPreservationReport {
  bool pass = true;
  std::optional<E> failing_value;
};

// phi carries the "some bracketing" relation along: every value of w maps to
// a value of the image word. Exact on both sides.
template <LocalGroupView V, class F>
EvalPreservationReport<typename V::element> phi_preserves_eval(
    const V& g, F&& phi, std::span<const typename V::element> w) {
  using E = typename V::element;
  std::vector<E> image_word;
  image_word.reserve(w.size());
  for (const E& x : w) image_word.push_back(phi(x));
  const auto values = eval_some(g, w);
  const auto image_values = eval_some(g, std::span<const E>(image_word));
  for (const E& b : values) {
    const E fb = phi(b);
    bool found = false;
    for (const E& c : image_values) found = found || c == fb;
    if (!found) return {false, fb};
  }
  return {};
}

// The strong-evaluation ball for words of a given length: entries inside it
// make every bracketing defined (partial sums stay below the carrier bound;
// p-adic addition is total anyway).
inline Ball strong_eval_ball(const Instance& inst, std::size_t word_len) {
  const std::size_t n = std::max<std::size_t>(word_len, 1);
  switch (inst.family()) {
    case Family::interval:
    case Family::arc:
      return Ball::rational_ball(inst.bound() / static_cast<std::int64_t>(n), false);
    case Family::padic: return Ball::carrier(inst);
    case Family::product:
      return Ball::pair(strong_eval_ball(inst.left(), word_len),
                        strong_eval_ball(inst.right(), word_len));
  }
  throw input_error("bad family");
}

struct ContractiveAssocReport {
  AssocVerdict<Elem> assoc;
  // proof-mechanism replay: per sampled word, entries were pushed by phi^m
  // into the strong-evaluation ball, where every bracketing is defined and
  // agrees with phi^m of each original value
  bool replay_pass = true;
  std::size_t replayed_words = 0;
  std::string note;
};

inline ContractiveAssocReport contractive_implies_assoc(const Instance& inst, const Endo& phi,
                                                        int max_len, std::size_t words_per_len,
                                                        std::uint64_t seed,
                                                        std::size_t push_budget = 256) {
  InstanceView view{&inst};
  ContractiveAssocReport rep;
  SplitMix64 word_rng(seed);
  rep.assoc = check_global_assoc_sampled(
      view, [&inst](SplitMix64& r) { return inst.sample_one(r); }, max_len, words_per_len, seed);
  if (!rep.assoc.pass) return rep;

  for (int len = 1; len <= max_len && rep.replay_pass; ++len) {
    const Ball strong = strong_eval_ball(inst, static_cast<std::size_t>(len));
    for (std::size_t s = 0; s < words_per_len; ++s) {
      std::vector<Elem> w;
      for (int i = 0; i < len; ++i) w.push_back(inst.sample_one(word_rng));
      const auto values = eval_some(view, std::span<const Elem>(w));
      if (values.empty()) continue;
      std::size_t m = 0;
      bool inside = false;
      for (; m <= push_budget; ++m) {
        inside = true;
        for (const Elem& x : w) inside = inside && strong.contains(inst, phi.apply(inst, x, m));
        if (inside) break;
      }
      if (!inside) {
        rep.replay_pass = false;
        rep.note = "push budget exhausted";
        break;
      }
      std::vector<Elem> pushed;
      for (const Elem& x : w) pushed.push_back(phi.apply(inst, x, m));
      const auto forced = eval_all(view, std::span<const Elem>(pushed));
      if (!forced) {
        rep.replay_pass = false;
        rep.note = "strong evaluation failed inside the strong ball";
        break;
      }
      for (const Elem& b : values)
        if (!(phi.apply(inst, b, m) == *forced)) {
          rep.replay_pass = false;
          rep.note = "phi^m(value) disagrees with the forced evaluation";
          break;
        }
      ++rep.replayed_words;
    }
  }
  return rep;
}

enum class Membership { member, non_member, unknown };

struct KernelQueryResult {
  Membership verdict = Membership::unknown;
  std::optional<std::size_t> level;  // least n with the n-th iterate trivial
  std::string note;
};

// The induced endomorphism on generator words: substitute each generator by
// the image's generator and each formal inverse by the image's inverse word.
inline SymWord phi_tilde_word(const Presentation& p, std::span<const std::uint32_t> phi,
                              const SymWord& w) {
  SymWord out;
  for (auto c : w) {
    const std::size_t s = static_cast<std::size_t>(c);
    const std::uint32_t x = p.symbol_element.at(s);
    if (x != Presentation::kNone) {
      out += p.iota(phi[x]);
    } else {
      const std::uint32_t gsym = p.symbol_inverse.at(s);
      out += p.inverse_word(p.iota(phi[p.symbol_element.at(gsym)]));
    }
  }
  return out;
}

// Membership in the kernel tower D = union of ker(phi~^n). Member when some
// iterate up to n_max reduces to the empty word. Non-membership is certified
// only when phi is a carrier automorphism whose inverse is again a morphism:
// then phi~ is an automorphism of the presented group, every kernel is
// trivial, and membership degenerates to "reduces to the empty word".
// Otherwise the query is a semi-decision and returns unknown.
inline KernelQueryResult kernel_tower_membership(const FiniteLocalGroup& g, const Presentation& p,
                                                 const RewriteSystem& rs,
                                                 std::span<const std::uint32_t> phi,
                                                 const SymWord& word, std::size_t n_max) {
  if (!rs.complete())
    throw precondition_error("kernel_tower_membership requires a complete system");
  {
    MorphismReport m = check_morphism(g, g, phi);
    if (!m.pass) throw precondition_error("phi is not a morphism (law '" + m.law + "')");
  }
  SymWord cur = rs.normal_form(word);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (cur.empty()) return {Membership::member, n, ""};
    cur = rs.normal_form(phi_tilde_word(p, phi, cur));
  }

  bool automorphism = false;
  {
    std::vector<std::uint32_t> inv_map(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    bool bijective = true;
    for (std::uint32_t x = 0; x < g.size() && bijective; ++x) {
      if (seen[phi[x]]) bijective = false;
      seen[phi[x]] = true;
      inv_map[phi[x]] = x;
    }
    if (bijective) automorphism = check_morphism(g, g, inv_map).pass;
  }
  if (automorphism)
    return {Membership::non_member, std::nullopt,
            "phi is a carrier automorphism, so the induced map is injective and D is trivial"};
  return {Membership::unknown, std::nullopt, "iterates exhausted without certificate"};
}

struct ShrinkReport {
  bool symmetric = true;         // every V_l is a symmetric ball
  bool nested = true;            // V_{l+1} subset of V_l across the range
  bool image_steps = true;       // phi(V_l) subset of V_{l+1}
  bool covers_carrier = true;    // some queried V_l is the whole carrier
  bool base_of_identity = true;  // every target ball contains some V_l
  bool u_symmetric = true;
  bool u_times_u_in_omega = true;
  bool phi_u_in_u = true;
  std::string phi_injective_on_u;  // family certificate text
};

struct ShrinkResult {
  Ball u;
  std::vector<std::pair<int, Ball>> levels;  // (l, V_l) for l in [l_min, l_max]
  ShrinkReport report;

  bool pass() const {
    return report.symmetric && report.nested && report.image_steps && report.covers_carrier &&
           report.base_of_identity && report.u_symmetric && report.u_times_u_in_omega &&
           report.phi_u_in_u;
  }
};

namespace detail {

// U x U inside Omega, decided per family: an open rational ball of radius
// rho qualifies iff 2*rho <= bound (sum of two entries stays strictly below
// the bound); closed balls need 2*rho < bound; p-adic addition is total.
inline bool ball_square_in_omega(const Instance& inst, const Ball& u) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc: {
      const Rational two_rho = u.radius() * 2;
      return u.closed() ? two_rho < inst.bound() : two_rho <= inst.bound();
    }
    case Family::padic: return true;
    case Family::product:
      return ball_square_in_omega(inst.left(), u.left()) &&
             ball_square_in_omega(inst.right(), u.right());
  }
  return false;
}

inline void require_compact_ball(const Instance& inst, const Ball& v) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc:
      if (!v.closed())
        throw precondition_error("shrink_neighborhood needs a closed (compact) starting ball");
      return;
    case Family::padic: return;  // p-adic balls are compact
    case Family::product:
      require_compact_ball(inst.left(), v.left());
      require_compact_ball(inst.right(), v.right());
      return;
  }
}

}  // namespace detail

// The V_l construction: V_l = intersection of phi^k(V) over k <= l. On these
// families the chain phi^k(V) is nested (images shrink, preimages grow up to
// the carrier cap), so V_l = phi^l(V); the nesting is machine-checked across
// the queried range rather than assumed. U is the interior of V_0.
inline ShrinkResult shrink_neighborhood(const Instance& inst, const Endo& phi, const Ball& v,
                                        int l_min, int l_max,
                                        std::uint32_t base_levels = 0) {
  if (l_min > l_max) throw precondition_error("empty level range");
  phi.validate_for(inst);
  v.validate_for(inst);
  detail::require_compact_ball(inst, v);
  // The base-of-identity check compares against as many target balls as the
  // queried range can reach.
  if (base_levels == 0) base_levels = static_cast<std::uint32_t>(std::max(1, l_max));

  auto level = [&](int l) {
    Ball b = v;
    for (int k = 0; k < l; ++k) b = b.image(inst, phi);
    for (int k = 0; k > l; --k) b = b.preimage(inst, phi);
    return b;
  };

  ShrinkResult res{level(0).interior(inst), {}, {}};
  for (int l = l_min; l <= l_max; ++l) res.levels.emplace_back(l, level(l));

  const Ball carrier = Ball::carrier(inst);
  bool covered = false;
  for (std::size_t i = 0; i < res.levels.size(); ++i) {
    const Ball& b = res.levels[i].second;
    if (carrier.subset_of(b)) covered = true;
    if (i + 1 < res.levels.size()) {
      const Ball& next = res.levels[i + 1].second;
      res.report.nested = res.report.nested && next.subset_of(b);
      res.report.image_steps = res.report.image_steps && b.image(inst, phi).subset_of(next);
    }
  }
  res.report.covers_carrier = covered;
  for (std::uint32_t t = 1; t <= base_levels; ++t) {
    const Ball target = target_ball(inst, t);
    bool some_inside = false;
    for (const auto& [l, b] : res.levels) some_inside = some_inside || b.subset_of(target);
    res.report.base_of_identity = res.report.base_of_identity && some_inside;
  }

  res.report.u_times_u_in_omega = detail::ball_square_in_omega(inst, res.u);
  res.report.phi_u_in_u = res.u.image(inst, phi).subset_of(res.u);
  res.report.phi_injective_on_u = detail::injectivity_certificate(inst, phi);
  return res;
}

struct PipelineStage {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct StructureFactor {
  Family family = Family::interval;
  std::string description;
};

struct StructureReport {
  std::vector<PipelineStage> stages;
  std::vector<StructureFactor> connected;     // one-dimensional connected factors
  std::vector<StructureFactor> disconnected;  // totally disconnected factors

  CheckStatus status() const {
    CheckStatus worst = CheckStatus::pass;
    for (const auto& s : stages) {
      if (s.status == CheckStatus::fail) return CheckStatus::fail;
      if (s.status == CheckStatus::unknown) worst = CheckStatus::unknown;
    }
    return worst;
  }
};

// Default compact starting neighborhood for the pipeline: half-radius closed
// balls on interval/arc, the (compact) carrier ball on p-adics.
inline Ball default_compact_ball(const Instance& inst) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc: return Ball::rational_ball(inst.bound() / 2, true);
    case Family::padic: return Ball::carrier(inst);
    case Family::product:
      return Ball::pair(default_compact_ball(inst.left()), default_compact_ball(inst.right()));
  }
  throw input_error("bad family");
}

namespace detail {

inline void collect_factors(const Instance& inst, const Endo& phi, StructureReport& rep) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc:
      rep.connected.push_back(
          {inst.family(), std::string(family_name(inst.family())) +
                              " factor: connected, dimension 1, contraction by scale " +
                              format_rational(phi.scale_factor())});
      return;
    case Family::padic:
      rep.disconnected.push_back(
          {Family::padic, "Z_" + std::to_string(inst.prime()) + " ball p^" +
                              std::to_string(inst.ball_exponent()) +
                              ": totally disconnected, near-automorphism x -> p*x"});
      return;
    case Family::product:
      collect_factors(inst.left(), phi.left(), rep);
      collect_factors(inst.right(), phi.right(), rep);
      return;
  }
}

}  // namespace detail

// Chains the structure verification on an exact instance: pseudo-automorphism
// certificate, the V_l shrinking construction, neatness of the restriction to
// U, sampled global associativity with the proof-mechanism replay, and the
// family-level splitting into a connected factor and a totally disconnected
// factor. The identification of the connected factor as a Lie group is
// analytic knowledge per family and is reported as such, not computed.
inline StructureReport structure_pipeline(const Instance& inst, const Endo& phi,
                                          std::size_t samples = 64, std::uint64_t seed = 0,
                                          int assoc_max_len = 5) {
  StructureReport rep;
  auto stage_fail = [&rep](const std::string& name, CheckStatus st, std::string note) {
    rep.stages.push_back({name, st, std::move(note)});
  };

  PseudoAutoReport pa =
      check_pseudo_automorphism(inst, phi, Ball::carrier(inst), samples, seed, 6, 512);
  stage_fail("pseudo-automorphism", pa.status(),
             pa.pass() ? "morphism, injectivity, openness, contraction verified"
                       : pa.contraction.note + pa.morphism.note);
  if (pa.status() == CheckStatus::fail) return rep;

  ShrinkResult sh = shrink_neighborhood(inst, phi, default_compact_ball(inst), -6, 6);
  stage_fail("shrink-neighborhood", sh.pass() ? CheckStatus::pass : CheckStatus::fail,
             "U = " + sh.u.describe(inst));
  if (!sh.pass()) return rep;

  // Neatness of the restriction to U: inversion is total on the symmetric
  // ball, and for x, y in U with x+y in U the pair (x+y, -y) lands back in U
  // on the element x; exact on samples.
  {
    bool neat = true;
    SplitMix64 rng(seed ^ 0x9e3779b9ULL);
    for (std::size_t i = 0; i < samples; ++i) {
      Elem x = inst.sample_one(rng), y = inst.sample_one(rng);
      if (!sh.u.contains(inst, x) || !sh.u.contains(inst, y)) continue;
      auto xy = inst.product(x, y);
      if (!xy || !sh.u.contains(inst, *xy)) continue;
      auto back = inst.product(*xy, *inst.inverse(y));
      neat = neat && back && *back == x && sh.u.contains(inst, *back);
    }
    stage_fail("neat-on-U", neat ? CheckStatus::pass : CheckStatus::fail,
               "restriction to U is symmetric with closed (xy, y^-1) products");
    if (!neat) return rep;
  }

  ContractiveAssocReport ca = contractive_implies_assoc(inst, phi, assoc_max_len, samples, seed);
  const bool ca_ok = ca.assoc.pass && ca.replay_pass;
  stage_fail("global-associativity", ca_ok ? CheckStatus::pass : CheckStatus::fail,
             ca_ok ? "sampled words single-valued; proof mechanism replayed on " +
                         std::to_string(ca.replayed_words) + " words"
                   : ca.note);
  if (!ca_ok) return rep;

  detail::collect_factors(inst, phi, rep);
  stage_fail("factorization", CheckStatus::pass,
             std::to_string(rep.connected.size()) + " connected factor(s), " +
                 std::to_string(rep.disconnected.size()) + " totally disconnected factor(s); "
                 "Lie identification of connected factors is analytic per family");
  return rep;
}

}  // namespace malcev

#endif  // MALCEV_CONTRACTIVE_HPP_
