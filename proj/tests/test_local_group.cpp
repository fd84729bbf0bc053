#include <catch2/catch_amalgamated.hpp>

#include "malcev/local_group.hpp"
#include "support.hpp"

using namespace malcev;
using namespace malcev::testsupport;

TEST_CASE("c5arc restriction has exactly the derived table") {
  const FiniteLocalGroup g = c5arc();
  REQUIRE(g.size() == 3);
  // carrier order 0, 1, 4 -> indices 0, 1, 2
  REQUIRE(g.label(0) == int_label(0));
  REQUIRE(g.label(1) == int_label(1));
  REQUIRE(g.label(2) == int_label(4));
  const auto omega = g.omega_pairs();
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected{
      {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  REQUIRE(omega == expected);
  REQUIRE(g.product_index(1, 2) == 0);  // 1 + 4 = 0
  REQUIRE(g.product_index(2, 1) == 0);
  REQUIRE(g.inverse_index(1) == 2);
  REQUIRE(g.inverse_index(2) == 1);
}

TEST_CASE("check_axioms passes on c5arc and the z6 arc") {
  REQUIRE(check_axioms(c5arc()).pass);
  REQUIRE(check_axioms(z6arc()).pass);
  REQUIRE(check_axioms(nonassoc5()).pass);  // valid local group, not globalizable
}

TEST_CASE("check_axioms reports identity-law violations with a witness") {
  // product(identity, a) = b != a
  std::vector<Label> labels{int_label(0), int_label(1), int_label(2)};
  std::vector<std::int32_t> prod(9, FiniteLocalGroup::kUndef);
  std::vector<std::int32_t> inv(3, FiniteLocalGroup::kUndef);
  auto set = [&prod](std::uint32_t x, std::uint32_t y, std::uint32_t z) { prod[x * 3 + y] = z; };
  set(0, 0, 0);
  set(0, 1, 2);  // broken: 0 * 1 should be 1
  set(1, 0, 1);
  set(0, 2, 2);
  set(2, 0, 2);
  inv[0] = 0;
  const FiniteLocalGroup g(labels, 0, prod, inv);
  const AxiomReport rep = check_axioms(g);
  REQUIRE_FALSE(rep.pass);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "identity-law" && v.witness == std::vector<std::uint32_t>{1}) found = true;
  REQUIRE(found);
}

TEST_CASE("check_axioms reports inverse entries outside Omega") {
  // inverse(a) = b but (a, b) not in Omega
  std::vector<Label> labels{int_label(0), int_label(1), int_label(2)};
  std::vector<std::int32_t> prod(9, FiniteLocalGroup::kUndef);
  std::vector<std::int32_t> inv(3, FiniteLocalGroup::kUndef);
  auto set = [&prod](std::uint32_t x, std::uint32_t y, std::uint32_t z) { prod[x * 3 + y] = z; };
  for (std::uint32_t x = 0; x < 3; ++x) {
    set(0, x, x);
    set(x, 0, x);
  }
  inv[0] = 0;
  inv[1] = 2;  // (1, 2) not in Omega
  const FiniteLocalGroup g(labels, 0, prod, inv);
  const AxiomReport rep = check_axioms(g);
  REQUIRE_FALSE(rep.pass);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "inverse-law" && v.witness == std::vector<std::uint32_t>{1}) found = true;
  REQUIRE(found);
}

TEST_CASE("check_axioms catches local associativity breaks") {
  // aa = b, ba = c, ab = d with c != d and all four pieces defined
  std::vector<Label> labels{int_label(0), int_label(1), int_label(2), int_label(3), int_label(4)};
  std::vector<std::int32_t> prod(25, FiniteLocalGroup::kUndef);
  std::vector<std::int32_t> inv(5, FiniteLocalGroup::kUndef);
  auto set = [&prod](std::uint32_t x, std::uint32_t y, std::uint32_t z) { prod[x * 5 + y] = z; };
  for (std::uint32_t x = 0; x < 5; ++x) {
    set(0, x, x);
    set(x, 0, x);
  }
  inv[0] = 0;
  set(1, 1, 2);
  set(2, 1, 3);
  set(1, 2, 4);
  const FiniteLocalGroup g(labels, 0, prod, inv);
  const AxiomReport rep = check_axioms(g);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.violations.front().axiom == "local-associativity");
  REQUIRE(rep.violations.front().witness == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("malformed tables are format errors, not axiom failures") {
  std::vector<Label> labels{int_label(0), int_label(1)};
  REQUIRE_THROWS_AS(
      FiniteLocalGroup::from_triples(labels, 0, {{0, 0, 5}}, {}),
      input_error);
  REQUIRE_THROWS_AS(
      FiniteLocalGroup::from_triples(labels, 0, {{0, 1, 1}, {0, 1, 0}}, {}),
      input_error);
}

TEST_CASE("symmetrize computes the largest symmetric subset") {
  const FiniteGroup z5 = cyclic_group(5);
  const auto r = from_group_restriction(z5, std::vector<std::uint32_t>{0, 1, 2});
  // inverses of 1, 2 are 4, 3, both outside U
  std::vector<std::uint32_t> all{0, 1, 2};
  REQUIRE(symmetrize(r.local, all) == std::vector<std::uint32_t>{0});

  const FiniteLocalGroup arc = c5arc();
  std::vector<std::uint32_t> sym{0, 1, 2};
  REQUIRE(symmetrize(arc, sym) == sym);  // already symmetric: fixed point

  std::vector<std::uint32_t> only_id{arc.identity()};
  REQUIRE(symmetrize(arc, only_id) == only_id);
}

TEST_CASE("symmetrize is idempotent and shrinking on random subsets") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const FiniteGroup h = random_group(rng);
    std::vector<std::uint32_t> u;
    for (std::uint32_t i = 0; i < h.size(); ++i)
      if (rng.coin()) u.push_back(i);
    u.push_back(h.identity_index());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    const FiniteLocalGroup g = restrict_to(h.as_local_group(), u);
    std::vector<std::uint32_t> x;
    for (std::uint32_t i = 0; i < g.size(); ++i)
      if (rng.coin()) x.push_back(i);
    const auto xs = symmetrize(g, x);
    for (auto v : xs) REQUIRE(std::find(x.begin(), x.end(), v) != x.end());
    REQUIRE(symmetrize(g, xs) == xs);
  }
}

TEST_CASE("restrict_to keeps only products landing inside") {
  const FiniteGroup z5 = cyclic_group(5);
  const FiniteLocalGroup full = z5.as_local_group();
  const FiniteLocalGroup arc = restrict_to(full, std::vector<std::uint32_t>{0, 1, 4});
  REQUIRE(arc == c5arc());

  // full restriction is the identity operation
  std::vector<std::uint32_t> everything{0, 1, 2, 3, 4};
  REQUIRE(restrict_to(full, everything) == full);

  // restriction to the identity alone is the trivial local group
  const FiniteLocalGroup trivial = restrict_to(arc, std::vector<std::uint32_t>{0});
  REQUIRE(trivial.size() == 1);
  REQUIRE(check_axioms(trivial).pass);

  REQUIRE_THROWS_AS(restrict_to(full, std::vector<std::uint32_t>{1, 2}), precondition_error);
}

TEST_CASE("nested restriction collapses") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteGroup h = random_group(rng);
    const FiniteLocalGroup g = h.as_local_group();
    std::vector<std::uint32_t> u;
    for (std::uint32_t i = 0; i < h.size(); ++i)
      if (rng.below(3) > 0) u.push_back(i);
    u.push_back(h.identity_index());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<std::uint32_t> v_orig;  // subset of u, in original indices
    for (auto x : u)
      if (rng.coin()) v_orig.push_back(x);
    v_orig.push_back(h.identity_index());
    std::sort(v_orig.begin(), v_orig.end());
    v_orig.erase(std::unique(v_orig.begin(), v_orig.end()), v_orig.end());
    // re-express v in the indexing of restrict_to(g, u)
    const FiniteLocalGroup gu = restrict_to(g, u);
    std::vector<std::uint32_t> v_in_u;
    for (std::uint32_t i = 0; i < u.size(); ++i)
      if (std::find(v_orig.begin(), v_orig.end(), u[i]) != v_orig.end()) v_in_u.push_back(i);
    REQUIRE(restrict_to(gu, v_in_u) == restrict_to(g, v_orig));
  }
}

TEST_CASE("is_neat on the worked fixtures") {
  REQUIRE(is_neat(c5arc()).pass);

  const auto r = from_group_restriction(cyclic_group(5), std::vector<std::uint32_t>{0, 1, 2});
  const NeatReport rep = is_neat(r.local);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.reason == "lambda");
}

TEST_CASE("symmetric restrictions of groups are neat") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteGroup h = random_group(rng);
    const auto u = random_symmetric_subset(h, rng, 2 + rng.below(8));
    const auto r = from_group_restriction(h, u);
    REQUIRE(is_neat(r.local).pass);
  }
}

TEST_CASE("from_group_restriction validates the ambient group") {
  std::vector<Label> labels{int_label(0), int_label(1), int_label(2)};
  std::vector<std::uint32_t> bad(9, 0);
  for (std::uint32_t x = 0; x < 3; ++x) {
    bad[0 * 3 + x] = x;
    bad[x * 3 + 0] = x;
  }
  bad[1 * 3 + 1] = 0;
  bad[1 * 3 + 2] = 0;
  bad[2 * 3 + 1] = 0;
  bad[2 * 3 + 2] = 1;  // not associative / no consistent inverse structure
  REQUIRE_THROWS_AS(FiniteGroup(labels, 0, bad), input_error);
}

TEST_CASE("from_group_restriction examples") {
  const auto full = from_group_restriction(cyclic_group(4), std::vector<std::uint32_t>{0, 1, 2, 3});
  REQUIRE(full.local.omega_pairs().size() == 16);  // total Omega

  const auto z6 = from_group_restriction(cyclic_group(6), std::vector<std::uint32_t>{0, 1, 5});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nonid;
  for (auto [x, y] : z6.local.omega_pairs())
    if (x != 0 && y != 0) nonid.emplace_back(x, y);
  // indices: 0->0, 1->1, 2->5; the only non-identity pairs are (1,5), (5,1)
  REQUIRE(nonid == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 2}, {2, 1}});
}

TEST_CASE("restrictions of groups always satisfy the axioms") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteGroup h = random_group(rng);
    std::vector<std::uint32_t> u{h.identity_index()};
    for (std::uint32_t i = 0; i < h.size(); ++i)
      if (rng.coin()) u.push_back(i);
    const auto r = from_group_restriction(h, u);
    REQUIRE(check_axioms(r.local).pass);
  }
}

TEST_CASE("morphism law checker") {
  const FiniteLocalGroup arc = c5arc();
  const FiniteLocalGroup full = cyclic_group(5).as_local_group();
  // inclusion c5arc -> Z5 as index map 0->0, 1->1, 4->4
  std::vector<std::uint32_t> inc{0, 1, 4};
  REQUIRE(check_morphism(arc, full, inc).pass);
  std::vector<std::uint32_t> broken{0, 1, 3};
  REQUIRE_FALSE(check_morphism(arc, full, broken).pass);
}
