#include <algorithm>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "malcev/contractive.hpp"
#include "support.hpp"

using namespace malcev;
using namespace malcev::testsupport;

namespace {

std::vector<std::uint32_t> full_subset(const FiniteLocalGroup& g) {
  std::vector<std::uint32_t> u(g.size());
  std::iota(u.begin(), u.end(), 0);
  return u;
}

Elem q(const char* s) { return Elem::rational(parse_rational(s)); }

}  // namespace

TEST_CASE("identity map on a nontrivial finite fixture fails contraction") {
  const FiniteLocalGroup g = c5arc();
  const std::vector<std::uint32_t> id{0, 1, 2};
  const auto rep = check_pseudo_automorphism(g, id, full_subset(g));
  REQUIRE(rep.morphism.status == CheckStatus::pass);
  REQUIRE(rep.injective.status == CheckStatus::pass);
  REQUIRE(rep.contraction.status == CheckStatus::fail);
  REQUIRE(rep.status() == CheckStatus::fail);
}

TEST_CASE("the trivial fixture admits the identity as pseudo-automorphism") {
  const FiniteLocalGroup trivial = restrict_to(c5arc(), std::vector<std::uint32_t>{0});
  const std::vector<std::uint32_t> id{0};
  REQUIRE(check_pseudo_automorphism(trivial, id, full_subset(trivial)).pass());
}

TEST_CASE("interval halving is a contractive pseudo-automorphism") {
  const Instance iv = Instance::interval(Rational(1));
  const auto rep = check_pseudo_automorphism(iv, Endo::scale(Rational(1, 2)),
                                             Ball::carrier(iv), 100, 3, 6, 256);
  REQUIRE(rep.pass());
}

TEST_CASE("multiplication by p is contractive but not surjective") {
  const Instance p3 = Instance::padic(3, 0, 8);
  const Endo mul = Endo::multiply_by_p();
  const auto rep = check_pseudo_automorphism(p3, mul, Ball::carrier(p3), 100, 3, 6, 256);
  REQUIRE(rep.pass());
  // the image ball is a proper subball of the carrier
  const Ball image = Ball::carrier(p3).image(p3, mul);
  REQUIRE(image.subset_of(Ball::carrier(p3)));
  REQUIRE_FALSE(Ball::carrier(p3).subset_of(image));
}

TEST_CASE("degeneracy: no injective eventually-trivial endomorphism on c5arc") {
  const FiniteLocalGroup g = c5arc();
  // all 3! injective self-maps
  std::vector<std::uint32_t> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    const auto rep = finite_contractive_degeneracy(g, perm);
    REQUIRE_FALSE(rep.hypotheses_hold);
    REQUIRE_FALSE(rep.failed_hypothesis.empty());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("degeneracy: the trivial carrier is the consistent case") {
  const FiniteLocalGroup trivial = restrict_to(c5arc(), std::vector<std::uint32_t>{0});
  const std::vector<std::uint32_t> id{0};
  const auto rep = finite_contractive_degeneracy(trivial, id);
  REQUIRE(rep.hypotheses_hold);
  REQUIRE(rep.consistent);
}

TEST_CASE("degeneracy smoke search over carriers up to 4") {
  // the full exhaustive sweep to size 5 lives in the acceptance suite; the
  // injectivity + eventual-identity combination already fails for every
  // self-map on a nontrivial carrier, before the table is even consulted
  for (std::uint32_t m = 2; m <= 4; ++m) {
    std::vector<std::uint32_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::uint32_t>> injective_maps;
    do {
      injective_maps.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& phi : injective_maps) {
      bool eventually_identity = true;
      for (std::uint32_t x = 0; x < m && eventually_identity; ++x) {
        std::uint32_t cur = x;
        bool reached = false;
        for (std::uint32_t n = 0; n <= m; ++n) {
          if (cur == 0) {
            reached = true;
            break;
          }
          cur = phi[cur];
        }
        eventually_identity = reached;
      }
      REQUIRE_FALSE(eventually_identity);
    }
  }
}

TEST_CASE("phi preserves bracketing values on the worked interval word") {
  const Instance iv = Instance::interval(Rational(1));
  InstanceView v{&iv};
  const Endo half = Endo::scale(Rational(1, 2));
  const std::vector<Elem> w{q("1/2"), q("7/10"), q("-9/10")};
  const auto rep =
      phi_preserves_eval(v, [&](const Elem& x) { return half.apply(iv, x); },
                         std::span<const Elem>(w));
  REQUIRE(rep.pass);
  // the image word gains extra bracketings but keeps phi of the old value
  std::vector<Elem> image;
  for (const auto& x : w) image.push_back(half.apply(iv, x));
  const auto image_vals = eval_some(v, std::span<const Elem>(image));
  REQUIRE(std::find(image_vals.begin(), image_vals.end(), q("3/20")) != image_vals.end());
}

TEST_CASE("phi preserves eval on singletons and under the identity") {
  const Instance p3 = Instance::padic(3, 0, 6);
  InstanceView v{&p3};
  SplitMix64 rng(67);
  const Elem x = p3.sample_one(rng);
  const std::vector<Elem> single{x};
  const Endo mul = Endo::multiply_by_p();
  REQUIRE(phi_preserves_eval(v, [&](const Elem& e) { return mul.apply(p3, e); },
                             std::span<const Elem>(single))
              .pass);
  const std::vector<Elem> w{x, p3.sample_one(rng), p3.sample_one(rng)};
  REQUIRE(phi_preserves_eval(v, [](const Elem& e) { return e; }, std::span<const Elem>(w)).pass);
}

TEST_CASE("contractive instances are globally associative in samples with replay") {
  const Instance iv = Instance::interval(Rational(1));
  const auto rep_iv = contractive_implies_assoc(iv, Endo::scale(Rational(1, 2)), 6, 100, 11);
  REQUIRE(rep_iv.assoc.pass);
  REQUIRE(rep_iv.replay_pass);
  REQUIRE(rep_iv.replayed_words > 0);

  const Instance p3 = Instance::padic(3, 0, 6);
  const auto rep_p = contractive_implies_assoc(p3, Endo::multiply_by_p(), 5, 60, 11);
  REQUIRE(rep_p.assoc.pass);
  REQUIRE(rep_p.replay_pass);
}

TEST_CASE("kernel tower membership on c5arc") {
  const FiniteLocalGroup g = c5arc();
  const Presentation p = present(g);
  const CompletionResult res = complete(p, 64, 16);
  REQUIRE(res.status == CompletionStatus::complete);
  const std::vector<std::uint32_t> id{0, 1, 2};

  // the empty word is in D at level 0
  const auto e = kernel_tower_membership(g, p, res.system, id, SymWord{}, 4);
  REQUIRE(e.verdict == Membership::member);
  REQUIRE(e.level == 0u);

  // abab ~ empty is a member through its normal form
  REQUIRE(kernel_tower_membership(g, p, res.system, id, sym_word({0, 1, 0, 1}), 4).verdict ==
          Membership::member);

  // a^5 is not: phi is a carrier automorphism, so D is trivial
  const auto a5 = kernel_tower_membership(g, p, res.system, id, sym_word({0, 0, 0, 0, 0}), 4);
  REQUIRE(a5.verdict == Membership::non_member);

  // D meets iota(G) trivially: every non-identity generator image is outside
  for (std::uint32_t x = 1; x < g.size(); ++x)
    REQUIRE(kernel_tower_membership(g, p, res.system, id, p.iota(x), 4).verdict ==
            Membership::non_member);
}

TEST_CASE("kernel tower with a collapsing morphism reaches members at level one") {
  const FiniteLocalGroup g = c5arc();
  const Presentation p = present(g);
  const CompletionResult res = complete(p, 64, 16);
  // x -> 0 is a (non-injective) morphism; its induced map kills everything
  const std::vector<std::uint32_t> zero{0, 0, 0};
  const auto a = kernel_tower_membership(g, p, res.system, zero, p.iota(1), 4);
  REQUIRE(a.verdict == Membership::member);
  REQUIRE(a.level == 1u);
  // D-invariance on members: the induced image of a member is a member
  const SymWord image = phi_tilde_word(p, zero, p.iota(1));
  REQUIRE(kernel_tower_membership(g, p, res.system, zero, image, 4).verdict ==
          Membership::member);
}

TEST_CASE("kernel tower without a certificate stays unknown") {
  // Z5 restricted to {0,1,2}: phi = identity is an automorphism; use instead
  // the non-surjective-but-injective-on-carrier morphism? On this fixture any
  // non-bijective morphism collapses, so craft one: map everything to 0 is
  // member; instead query a non-member word under a morphism that is
  // bijective but whose inverse fails to be checked... identity always works,
  // so exercise the unknown path with a genuinely non-invertible phi and a
  // word that never dies: impossible here (collapse kills all); so instead
  // check that a non-automorphism with a surviving word reports unknown on a
  // bigger fixture.
  const FiniteGroup z4 = cyclic_group(4);
  const FiniteLocalGroup g = z4.as_local_group();
  const Presentation p = present(g);
  const CompletionResult res = complete(p, 256, 32);
  REQUIRE(res.status == CompletionStatus::complete);
  // phi(x) = 2x on Z4: morphism, not injective (2*0=2*2=0), image {0,2}
  const std::vector<std::uint32_t> dbl{0, 2, 0, 2};
  const auto r = kernel_tower_membership(g, p, res.system, dbl, p.iota(1), 0);
  REQUIRE(r.verdict == Membership::unknown);  // dies at level 2, budget stops at 0 iterations
  const auto r2 = kernel_tower_membership(g, p, res.system, dbl, p.iota(1), 2);
  REQUIRE(r2.verdict == Membership::member);
}

TEST_CASE("shrink_neighborhood on p-adics matches the valuation formula") {
  const Instance p3 = Instance::padic(3, 0, 8);
  const Endo mul = Endo::multiply_by_p();
  const std::uint32_t r = 2;
  const auto res = shrink_neighborhood(p3, mul, Ball::padic_ball(r), -4, 4);
  REQUIRE(res.pass());
  for (const auto& [l, b] : res.levels) {
    const std::uint32_t expected = l + static_cast<int>(r) > 0
                                       ? static_cast<std::uint32_t>(l + static_cast<int>(r))
                                       : 0;
    REQUIRE(b == Ball::padic_ball(expected));
  }
  REQUIRE(res.u == Ball::padic_ball(r));
  REQUIRE(res.u.image(p3, mul).subset_of(res.u));
}

TEST_CASE("shrink_neighborhood on the interval matches the radius recursion") {
  const Instance iv = Instance::interval(Rational(1));
  const Endo half = Endo::scale(Rational(1, 2));
  const auto res =
      shrink_neighborhood(iv, half, Ball::rational_ball(Rational(1, 2), true), -3, 3);
  REQUIRE(res.pass());
  for (const auto& [l, b] : res.levels) {
    if (l >= 0) {
      Rational expected(1, 2);
      for (int k = 0; k < l; ++k) expected /= 2;
      REQUIRE(b == Ball::rational_ball(expected, true));
    } else {
      REQUIRE(b == Ball::rational_ball(Rational(1), false));  // capped at the carrier
    }
  }
  REQUIRE(res.u == Ball::rational_ball(Rational(1, 2), false));
}

TEST_CASE("shrinking the whole p-adic carrier") {
  const Instance p5 = Instance::padic(5, 0, 8);
  const auto res =
      shrink_neighborhood(p5, Endo::multiply_by_p(), Ball::carrier(p5), -3, 3);
  REQUIRE(res.pass());
  for (const auto& [l, b] : res.levels)
    REQUIRE(b == Ball::padic_ball(l > 0 ? static_cast<std::uint32_t>(l) : 0));
  REQUIRE(res.u == Ball::carrier(p5));
}

TEST_CASE("shrink_neighborhood requires a compact starting ball") {
  const Instance iv = Instance::interval(Rational(1));
  REQUIRE_THROWS_AS(shrink_neighborhood(iv, Endo::scale(Rational(1, 2)),
                                        Ball::rational_ball(Rational(1, 2), false), -2, 2),
                    precondition_error);
}

TEST_CASE("structure pipeline classifies the three families") {
  const Instance p3 = Instance::padic(3, 0, 8);
  const auto rep_p = structure_pipeline(p3, Endo::multiply_by_p(), 40, 1, 4);
  REQUIRE(rep_p.status() == CheckStatus::pass);
  REQUIRE(rep_p.connected.empty());
  REQUIRE(rep_p.disconnected.size() == 1);

  const Instance iv = Instance::interval(Rational(1));
  const auto rep_i = structure_pipeline(iv, Endo::scale(Rational(1, 2)), 40, 1, 4);
  REQUIRE(rep_i.status() == CheckStatus::pass);
  REQUIRE(rep_i.connected.size() == 1);
  REQUIRE(rep_i.disconnected.empty());

  const Instance prod = Instance::product(iv, p3);
  const auto rep_pr = structure_pipeline(
      prod, Endo::pair(Endo::scale(Rational(1, 2)), Endo::multiply_by_p()), 40, 1, 4);
  REQUIRE(rep_pr.status() == CheckStatus::pass);
  REQUIRE(rep_pr.connected.size() == 1);
  REQUIRE(rep_pr.disconnected.size() == 1);
}
