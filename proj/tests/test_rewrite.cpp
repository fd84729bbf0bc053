#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "malcev/globalization.hpp"
#include "malcev/rewrite.hpp"
#include "support.hpp"

using namespace malcev;
using namespace malcev::testsupport;

TEST_CASE("shortlex order") {
  REQUIRE(shortlex_less(sym_word({}), sym_word({0})));
  REQUIRE(shortlex_less(sym_word({1, 1}), sym_word({0, 0, 0})));
  REQUIRE(shortlex_less(sym_word({0, 1}), sym_word({1, 0})));
  REQUIRE_FALSE(shortlex_less(sym_word({0}), sym_word({0})));
}

TEST_CASE("c5arc completes to the two cancellation rules") {
  const Presentation p = present(c5arc());
  REQUIRE(p.symbol_names == std::vector<std::string>{"1", "4"});
  REQUIRE(p.relations.size() == 2);  // ab = e, ba = e; no formal inverses needed

  const CompletionResult res = complete(p, 64, 16);
  REQUIRE(res.status == CompletionStatus::complete);
  REQUIRE(res.system.rules().size() == 2);

  const RewriteSystem& rs = res.system;
  REQUIRE(rs.normal_form(sym_word({0, 0, 1})) == sym_word({0}));      // a a b -> a
  REQUIRE(rs.normal_form(sym_word({})) == sym_word({}));              // e -> e
  REQUIRE(rs.normal_form(sym_word({0, 1, 0, 1})) == sym_word({}));    // abab -> e
  // normal forms are powers of a single generator: a^5 is irreducible
  REQUIRE(rs.normal_form(sym_word({0, 0, 0, 0, 0})) == sym_word({0, 0, 0, 0, 0}));
}

TEST_CASE("trivial local group presents the trivial group") {
  const FiniteLocalGroup trivial =
      restrict_to(c5arc(), std::vector<std::uint32_t>{0});
  const Presentation p = present(trivial);
  REQUIRE(p.symbol_names.empty());
  REQUIRE(p.relations.empty());
  const CompletionResult res = complete(p, 8, 8);
  REQUIRE(res.status == CompletionStatus::complete);
  REQUIRE(res.system.rules().empty());
}

TEST_CASE("a full group table completes with one normal form per element") {
  const FiniteGroup z6 = cyclic_group(6);
  const Presentation p = present(z6.as_local_group());
  REQUIRE(p.symbol_names.size() == 5);
  const CompletionResult res = complete(p, 256, 32);
  REQUIRE(res.status == CompletionStatus::complete);
  const RewriteSystem& rs = res.system;

  // every length-2 word reduces, so the irreducible words are the empty word
  // and the five generators: exactly |Z6| normal forms
  std::set<SymWord> nfs;
  for (std::uint32_t a = 0; a < 5; ++a) {
    nfs.insert(rs.normal_form(sym_word({a})));
    for (std::uint32_t b = 0; b < 5; ++b)
      for (std::uint32_t c = 0; c < 5; ++c)
        nfs.insert(rs.normal_form(sym_word({a, b, c})));
  }
  nfs.insert(rs.normal_form(sym_word({})));
  REQUIRE(nfs.size() == 6);
  for (const auto& w : nfs) REQUIRE(w.size() <= 1);
}

TEST_CASE("formal inverse symbols appear exactly for elements outside Lambda") {
  const auto r = from_group_restriction(cyclic_group(5), std::vector<std::uint32_t>{0, 1, 2});
  const Presentation p = present(r.local);
  // generators 1, 2 with formal inverses right after each
  REQUIRE(p.symbol_names == std::vector<std::string>{"1", "1^-1", "2", "2^-1"});
  REQUIRE(p.symbol_inverse == std::vector<std::uint32_t>{1, 0, 3, 2});

  const CompletionResult res = complete(p, 64, 16);
  REQUIRE(res.status == CompletionStatus::complete);
  const RewriteSystem& rs = res.system;
  // the only non-cancellation relation is 1*1 = 2, so H is free on one
  // generator with g2 = g1^2
  REQUIRE(rs.normal_form(sym_word({2})) == rs.normal_form(sym_word({0, 0})));
  REQUIRE(rs.normal_form(sym_word({0, 1})) == sym_word({}));
  REQUIRE(rs.normal_form(sym_word({1, 0})) == sym_word({}));
  REQUIRE(rs.normal_form(sym_word({2, 1})) == sym_word({0}));  // g2 g1^-1 -> g1
}

TEST_CASE("completion limits surface as statuses with usable partial systems") {
  const FiniteGroup z6 = cyclic_group(6);
  const Presentation p = present(z6.as_local_group());
  const CompletionResult res = complete(p, 3, 32);
  REQUIRE(res.status == CompletionStatus::rule_limit);
  REQUIRE_FALSE(res.system.complete());
  REQUIRE_THROWS_AS(res.system.normal_form(sym_word({0})), precondition_error);
  // reduce still works as a semi-decision
  (void)res.system.reduce(sym_word({0, 1, 2}));
}

TEST_CASE("normal forms are idempotent and shortlex-nonincreasing") {
  const Presentation p = present(z6arc());
  const CompletionResult res = complete(p, 64, 16);
  REQUIRE(res.status == CompletionStatus::complete);
  const RewriteSystem& rs = res.system;
  SplitMix64 rng(71);
  for (int i = 0; i < 300; ++i) {
    SymWord w;
    const std::size_t len = rng.below(10);
    for (std::size_t k = 0; k < len; ++k)
      w.push_back(static_cast<char32_t>(rng.below(p.symbol_names.size())));
    const SymWord n = rs.normal_form(w);
    REQUIRE(rs.normal_form(n) == n);
    REQUIRE((n == w || shortlex_less(n, w)));
  }
}

TEST_CASE("every defining relation reduces to a common normal form") {
  for (const FiniteLocalGroup& g :
       {c5arc(), z6arc(), cyclic_group(6).as_local_group(),
        from_group_restriction(cyclic_group(5), std::vector<std::uint32_t>{0, 1, 2}).local}) {
    const Presentation p = present(g);
    const CompletionResult res = complete(p, 256, 32);
    REQUIRE(res.status == CompletionStatus::complete);
    for (const auto& [l, r] : p.relations)
      REQUIRE(res.system.normal_form(l) == res.system.normal_form(r));
    for (const Rule& r : res.system.rules())
      REQUIRE(res.system.normal_form(r.lhs) == res.system.normal_form(r.rhs));
  }
}

TEST_CASE("reduction is confluent on random joins") {
  // dihedral restriction exercises non-abelian completion
  const FiniteGroup d4 = dihedral_group(4);
  const Presentation p = present(d4.as_local_group());
  const CompletionResult res = complete(p, 512, 32);
  REQUIRE(res.status == CompletionStatus::complete);
  const RewriteSystem& rs = res.system;
  SplitMix64 rng(83);
  for (int i = 0; i < 200; ++i) {
    SymWord w;
    const std::size_t len = rng.below(12);
    for (std::size_t k = 0; k < len; ++k)
      w.push_back(static_cast<char32_t>(rng.below(p.symbol_names.size())));
    // inserting a defining relation's two sides at a random cut preserves nf
    const auto& [l, r] = p.relations[rng.below(p.relations.size())];
    const std::size_t cut = rng.below(w.size() + 1);
    SymWord wl = w.substr(0, cut) + l + w.substr(cut);
    SymWord wr = w.substr(0, cut) + r + w.substr(cut);
    REQUIRE(rs.normal_form(wl) == rs.normal_form(wr));
  }
}
