#ifndef MALCEV_GLOBALIZATION_HPP_
#define MALCEV_GLOBALIZATION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/local_group.hpp"
#include "malcev/rewrite.hpp"
#include "malcev/view.hpp"
#include "malcev/word_eval.hpp"

namespace malcev {

// Group presentation of the globalization: one generator per non-identity
// carrier element, a formal inverse symbol only for elements outside Lambda
// (elements with a carrier inverse reuse its generator), and one relation
// g_x g_y = g_z per Omega pair of non-identity elements (g_identity is the
// empty word) plus cancellation relations for the formal symbols.
//
// Symbol order is carrier index order with each formal inverse immediately
// after its generator; this is the shortlex symbol order everywhere.
struct Presentation {
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  std::vector<std::string> symbol_names;
  std::vector<std::uint32_t> symbol_inverse;           // symbol -> inverse symbol
  std::vector<std::uint32_t> symbol_element;           // symbol -> carrier index (kNone for formal)
  std::vector<std::pair<SymWord, SymWord>> relations;  // deterministic order
  std::vector<std::uint32_t> gen_of;                   // carrier index -> symbol (kNone at identity)
  std::vector<std::uint32_t> formal_inv_of;            // carrier index -> formal symbol or kNone

  // iota(x) as a generator word: empty for the identity.
  SymWord iota(std::uint32_t x) const {
    SymWord w;
    if (gen_of.at(x) != kNone) w.push_back(static_cast<char32_t>(gen_of[x]));
    return w;
  }

  SymWord word_of(std::span<const std::uint32_t> elements) const {
    SymWord w;
    for (auto x : elements)
      if (gen_of.at(x) != kNone) w.push_back(static_cast<char32_t>(gen_of[x]));
    return w;
  }

  // Formal group inverse of a generator word: reversed with symbols inverted.
  SymWord inverse_word(const SymWord& w) const {
    SymWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      out.push_back(static_cast<char32_t>(symbol_inverse.at(static_cast<std::size_t>(*it))));
    return out;
  }
};

inline Presentation present(const FiniteLocalGroup& g) {
  {
    AxiomReport rep = check_axioms(g);
    if (!rep.pass)
      throw precondition_error("present() requires a valid local group (axiom '" +
                               rep.violations.front().axiom + "' fails)");
  }
  Presentation p;
  const std::uint32_t n = static_cast<std::uint32_t>(g.size());
  p.gen_of.assign(n, Presentation::kNone);
  p.formal_inv_of.assign(n, Presentation::kNone);

  for (std::uint32_t x = 0; x < n; ++x) {
    if (x == g.identity()) continue;
    p.gen_of[x] = static_cast<std::uint32_t>(p.symbol_names.size());
    p.symbol_names.push_back(label_text(g.label(x)));
    p.symbol_element.push_back(x);
    if (!g.has_inverse(x)) {
      p.formal_inv_of[x] = static_cast<std::uint32_t>(p.symbol_names.size());
      p.symbol_names.push_back(label_text(g.label(x)) + "^-1");
      p.symbol_element.push_back(Presentation::kNone);
    }
  }
  p.symbol_inverse.assign(p.symbol_names.size(), Presentation::kNone);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (x == g.identity()) continue;
    if (g.has_inverse(x)) {
      const std::uint32_t xi = static_cast<std::uint32_t>(g.inverse_index(x));
      // non-identity x in Lambda has non-identity inverse in a valid table
      p.symbol_inverse[p.gen_of[x]] = p.gen_of[xi];
    } else {
      p.symbol_inverse[p.gen_of[x]] = p.formal_inv_of[x];
      p.symbol_inverse[p.formal_inv_of[x]] = p.gen_of[x];
    }
  }

  // Omega relations over non-identity pairs; identity pairs are trivial.
  for (std::uint32_t x = 0; x < n; ++x) {
    if (x == g.identity()) continue;
    for (std::uint32_t y = 0; y < n; ++y) {
      if (y == g.identity()) continue;
      const std::int32_t z = g.product_index(x, y);
      if (z == FiniteLocalGroup::kUndef) continue;
      SymWord lhs = sym_word({p.gen_of[x], p.gen_of[y]});
      p.relations.emplace_back(std::move(lhs), p.iota(static_cast<std::uint32_t>(z)));
    }
  }
  // Cancellation for formal inverse symbols.
  for (std::uint32_t x = 0; x < n; ++x) {
    if (p.formal_inv_of[x] == Presentation::kNone) continue;
    p.relations.emplace_back(sym_word({p.gen_of[x], p.formal_inv_of[x]}), SymWord{});
    p.relations.emplace_back(sym_word({p.formal_inv_of[x], p.gen_of[x]}), SymWord{});
  }
  return p;
}

inline CompletionResult complete(const Presentation& p, std::size_t max_rules,
                                 std::size_t max_len) {
  return complete(p.symbol_names, p.relations, max_rules, max_len);
}

struct IotaReport {
  bool pass = true;
  std::string detail;  // first failure, empty on pass
};

// iota is an injective morphism into the presented group: distinct normal
// forms for distinct elements, identity to the empty word, inverses to
// inverse words, and multiplicativity on every Omega pair.
inline IotaReport verify_iota(const FiniteLocalGroup& g, const Presentation& p,
                              const RewriteSystem& rs) {
  if (!rs.complete()) throw precondition_error("verify_iota requires a complete system");
  std::vector<SymWord> nf(g.size());
  for (std::uint32_t x = 0; x < g.size(); ++x) nf[x] = rs.normal_form(p.iota(x));
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = x + 1; y < g.size(); ++y)
      if (nf[x] == nf[y])
        return {false, "iota images of " + label_text(g.label(x)) + " and " +
                           label_text(g.label(y)) + " collide"};
  if (!nf[g.identity()].empty()) return {false, "iota(identity) does not reduce to the empty word"};
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (!g.has_inverse(x)) continue;
    const auto xi = static_cast<std::uint32_t>(g.inverse_index(x));
    if (rs.normal_form(p.inverse_word(p.iota(x))) != nf[xi])
      return {false, "iota(x^-1) != iota(x)^-1 at " + label_text(g.label(x))};
  }
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      const std::int32_t z = g.product_index(x, y);
      if (z == FiniteLocalGroup::kUndef) continue;
      if (rs.normal_form(p.iota(x) + p.iota(y)) != nf[static_cast<std::uint32_t>(z)])
        return {false, "iota not multiplicative at (" + label_text(g.label(x)) + ", " +
                           label_text(g.label(y)) + ")"};
    }
  return {};
}

// Extension of a local-group morphism G -> T (T a group) to the presented
// group: evaluates generator words by folding the symbol images in T. The
// construction is Claim-3 style; consistency on equivalence classes is
// certified by checking every rewrite rule (and every defining relation)
// evaluates to equal elements.
template <GroupView T>
class Extension {
 public:
  enum class Fold { left, right };

  Extension(const T& target, std::vector<typename T::element> symbol_images,
            Fold fold = Fold::left)
      : target_(&target), images_(std::move(symbol_images)), fold_(fold) {}

  typename T::element eval(const SymWord& w) const {
    typename T::element acc = target_->identity();
    if (fold_ == Fold::left) {
      for (auto c : w) acc = target_->op(acc, images_.at(static_cast<std::size_t>(c)));
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        acc = target_->op(images_.at(static_cast<std::size_t>(*it)), acc);
    }
    return acc;
  }

  bool in_kernel(const SymWord& w) const { return eval(w) == target_->identity(); }

 private:
  const T* target_;
  std::vector<typename T::element> images_;
  Fold fold_;
};

// Validates the morphism laws of `images` on all of Omega and Lambda, then
// builds the extension evaluator and certifies it respects every rule of the
// rewrite system. Throws precondition_error with the violated instance.
template <GroupView T>
Extension<T> extend_morphism(const FiniteLocalGroup& g, const Presentation& p,
                             const RewriteSystem& rs, const T& target,
                             std::span<const typename T::element> images,
                             typename Extension<T>::Fold fold = Extension<T>::Fold::left) {
  if (images.size() != g.size()) throw input_error("image list size mismatch");
  if (!(images[g.identity()] == target.identity()))
    throw precondition_error("morphism law f(1)=1 fails");
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      const std::int32_t z = g.product_index(x, y);
      if (z == FiniteLocalGroup::kUndef) continue;
      if (!(target.op(images[x], images[y]) == images[static_cast<std::uint32_t>(z)]))
        throw precondition_error("morphism law f(xy)=f(x)f(y) fails at (" +
                                 label_text(g.label(x)) + ", " + label_text(g.label(y)) + ")");
    }
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    const std::int32_t xi = g.inverse_index(x);
    if (xi == FiniteLocalGroup::kUndef) continue;
    if (!(target.inv(images[x]) == images[static_cast<std::uint32_t>(xi)]))
      throw precondition_error("morphism law f(x^-1)=f(x)^-1 fails at " +
                               label_text(g.label(x)));
  }

  std::vector<typename T::element> sym_images;
  sym_images.reserve(p.symbol_names.size());
  for (std::size_t s = 0; s < p.symbol_names.size(); ++s) {
    const std::uint32_t x = p.symbol_element.at(s);
    if (x != Presentation::kNone) {
      sym_images.push_back(images[x]);
    } else {
      // formal inverse symbol: image is the target inverse of its generator
      const std::uint32_t gsym = p.symbol_inverse.at(s);
      sym_images.push_back(target.inv(images[p.symbol_element.at(gsym)]));
    }
  }
  Extension<T> ext(target, std::move(sym_images), fold);
  for (const Rule& r : rs.rules())
    if (!(ext.eval(r.lhs) == ext.eval(r.rhs)))
      throw precondition_error("extension does not respect rule " + rs.render(r.lhs) + " -> " +
                               rs.render(r.rhs));
  for (const auto& [l, r] : p.relations)
    if (!(ext.eval(l) == ext.eval(r)))
      throw precondition_error("extension does not respect a defining relation");
  return ext;
}

// Word-class image under the extension induced by a morphism f from any
// local-group source into a group target: the fold of f over the entries.
// Well-defined on equivalence classes of words whenever f satisfies the
// morphism laws (each move preserves the fold).
template <GroupView T, class SrcElem, class F>
typename T::element morphism_word_image(const T& target, F&& f, std::span<const SrcElem> w) {
  typename T::element acc = target.identity();
  for (const auto& x : w) acc = target.op(acc, f(x));
  return acc;
}

// Sampled check of the three morphism laws for maps out of infinite sources;
// each sampled instance is exact. Returns false on the first violation.
template <LocalGroupView S, GroupView T, class F, class Sampler>
bool morphism_laws_sampled(const S& src, const T& target, F&& f, Sampler&& sample,
                           std::size_t n, std::uint64_t seed) {
  if (!(f(src.identity()) == target.identity())) return false;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = sample(rng);
    const auto y = sample(rng);
    if (auto xy = src.product(x, y))
      if (!(f(*xy) == target.op(f(x), f(y)))) return false;
    if (auto xi = src.inverse(x))
      if (!(f(*xi) == target.inv(f(x)))) return false;
  }
  return true;
}

struct LocalEqualityReport {
  bool pass = true;
  std::string detail;
};

// For symmetric U with U x U inside Omega: the product of iota(x), iota(y) in
// the globalization lies in iota(U) exactly when xy lands in U, and then
// equals iota(xy). Hypothesis violations are precondition errors, not lemma
// falsifications.
inline LocalEqualityReport check_local_equality(const FiniteLocalGroup& g,
                                                std::span<const std::uint32_t> subset,
                                                const Presentation& p, const RewriteSystem& rs) {
  if (!rs.complete())
    throw precondition_error("check_local_equality requires a complete system");
  std::vector<std::uint32_t> u(subset.begin(), subset.end());
  {
    auto sym = symmetrize(g, u);
    if (sym.size() != u.size())
      throw precondition_error("hypothesis violation: U is not symmetric");
    bool has_identity = false;
    for (auto x : u) has_identity = has_identity || x == g.identity();
    if (!has_identity) throw precondition_error("hypothesis violation: U misses the identity");
    for (auto x : u)
      for (auto y : u)
        if (!g.has_product(x, y))
          throw precondition_error("hypothesis violation: U x U not inside Omega");
  }

  std::vector<SymWord> iota_u;
  for (auto x : u) iota_u.push_back(rs.normal_form(p.iota(x)));
  for (auto x : u)
    for (auto y : u) {
      const SymWord h = rs.normal_form(p.iota(x) + p.iota(y));
      const std::uint32_t z = static_cast<std::uint32_t>(g.product_index(x, y));
      const bool in_u = [&] {
        for (auto v : u)
          if (v == z) return true;
        return false;
      }();
      const bool h_in_iota_u = [&] {
        for (const auto& w : iota_u)
          if (w == h) return true;
        return false;
      }();
      if (in_u != h_in_iota_u)
        return {false, "membership mismatch at (" + label_text(g.label(x)) + ", " +
                           label_text(g.label(y)) + ")"};
      if (in_u && h != rs.normal_form(p.iota(z)))
        return {false, "product mismatch at (" + label_text(g.label(x)) + ", " +
                           label_text(g.label(y)) + ")"};
    }
  return {};
}

}  // namespace malcev

#endif  // MALCEV_GLOBALIZATION_HPP_
