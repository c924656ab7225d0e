#include <gtest/gtest.h>

#include "domwb/exponential.hpp"
#include "domwb/tower.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace domwb;
using namespace domwb::tower;

namespace {

const Tower& tower2() {
  static const Tower t = Tower::build(4, 2);
  return t;
}

bool holds(Verdict v) { return v == Verdict::holds; }

/// All π-compatible prefixes at truncation n ≤ 2, one per element of D_n.
std::vector<TowerElement> all_elements(const Tower& t, std::size_t n) {
  std::vector<TowerElement> out;
  for (std::size_t i = 0; i < t.level(n).size(); ++i) out.push_back(embed_to_tower(t, n, t.element(n, i), n));
  return out;
}

}  // namespace

TEST(Build, LevelSizesMatchIndependentCount) {
  const auto& t = tower2();
  EXPECT_EQ(t.level(0).size(), 2u);
  EXPECT_EQ(t.level(1).size(), 3u);
  EXPECT_EQ(t.level(2).size(), 10u);
  EXPECT_EQ(domwb::testing::oracle_count_monotone(t.level(0), t.level(0)), 3u);
  EXPECT_EQ(domwb::testing::oracle_count_monotone(t.level(1), t.level(1)), 10u);
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_TRUE(check_poset_axioms(t.level(n)).ok());
}

TEST(Build, Preconditions) {
  EXPECT_THROW(Tower::build(1, 2), precondition_violation);
  EXPECT_THROW(Tower::build(3, 3, 1000), budget_exceeded);
  EXPECT_THROW(tower2().level(3), out_of_range);
}

TEST(Build, SectionAtLevelZero) {
  const auto& t = tower2();
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(t.pi(0)(t.eps(0)(x)), x);
}

TEST(Build, EpsAndPiAgreeWithDefinitionalUnfolding) {
  // ε_0(x) = const x, π_0(f) = f(⊥); ε_1(f)(g) = const(f(g(⊥))), π_1(F)(x) = F(const x)(⊥).
  const auto& t = tower2();
  const auto& e1 = t.exponential(1);
  const auto& e2 = t.exponential(2);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(e1.map(t.eps(0)(x)).table(), (std::vector<std::size_t>{x, x}));
  for (std::size_t f = 0; f < 3; ++f) EXPECT_EQ(t.pi(0)(f), e1.map(f)(0));
  auto const_at = [&](std::size_t x) { return *e1.find({x, x}); };
  for (std::size_t f = 0; f < 3; ++f) {
    std::vector<std::size_t> expect;
    for (std::size_t g = 0; g < 3; ++g) expect.push_back(const_at(e1.map(f)(e1.map(g)(0))));
    EXPECT_EQ(e2.map(t.eps(1)(f)).table(), expect);
  }
  for (std::size_t big = 0; big < 10; ++big) {
    std::vector<std::size_t> expect;
    for (std::size_t x = 0; x < 2; ++x) expect.push_back(e1.map(e2.map(big)(const_at(x)))(0));
    EXPECT_EQ(e1.map(t.pi(1)(big)).table(), expect);
  }
}

TEST(EpLaws, Exhaustive) {
  const auto& t = tower2();
  for (std::size_t n = 0; n < 2; ++n) {
    for (std::size_t x = 0; x < t.level(n).size(); ++x) EXPECT_EQ(t.pi(n)(t.eps(n)(x)), x);
    for (std::size_t f = 0; f < t.level(n + 1).size(); ++f) EXPECT_TRUE(t.level(n + 1).leq(t.eps(n)(t.pi(n)(f)), f));
    EXPECT_EQ(t.pi(n)(*least(t.level(n + 1))), *least(t.level(n)));
  }
}

TEST(Composites, Examples) {
  const auto& t = tower2();
  for (std::size_t n = 0; n <= 2; ++n) {
    EXPECT_EQ(t.eps_nm(n, n).table(), MonotoneMap::identity(t.level_ref(n)).table());
    EXPECT_EQ(t.pi_nm(n, n).table(), MonotoneMap::identity(t.level_ref(n)).table());
  }
  std::vector<std::size_t> by_hand;
  for (std::size_t x = 0; x < 2; ++x) by_hand.push_back(t.eps(1).table()[t.eps(0).table()[x]]);
  EXPECT_EQ(t.eps_nm(0, 2).table(), by_hand);
  EXPECT_EQ(t.pi_nm(0, 2)(*least(t.level(2))), *least(t.level(0)));
  EXPECT_THROW(t.eps_nm(2, 1), precondition_violation);
}

TEST(Composites, Functoriality) {
  const auto& t = tower2();
  for (std::size_t k = 0; k <= 2; ++k)
    for (std::size_t n = k; n <= 2; ++n)
      for (std::size_t m = n; m <= 2; ++m) {
        EXPECT_EQ(compose(t.eps_nm(k, n), t.eps_nm(n, m)).table(), t.eps_nm(k, m).table());
        EXPECT_EQ(compose(t.pi_nm(n, m), t.pi_nm(k, n)).table(), t.pi_nm(k, m).table());
      }
}

TEST(Symbolic, LevelThreeAgreesWithTables) {
  // Above the cutoff the same recursion runs on closures and raw tables.
  const auto& t = tower2();
  for (std::size_t x = 0; x < 10; ++x) {
    const auto up = t.eps_elem(2, t.element(2, x));
    EXPECT_FALSE(up.tabulated());
    EXPECT_EQ(t.pi_elem(2, up).index(), x);
    const auto up2 = t.eps_elem(3, up);
    EXPECT_TRUE(holds(t.equal(3, t.pi_elem(3, up2), up)));
    EXPECT_EQ(t.pi_down(2, 4, up2).index(), x);
  }
  const auto s = t.samples(3);
  for (const auto& f : s) EXPECT_TRUE(t.leq(3, t.eps_elem(2, t.pi_elem(2, f)), f) == Verdict::holds);
}

TEST(Symbolic, MonotonicityGuard) {
  const auto& t = tower2();
  EXPECT_THROW(t.function(2, [&](const Elem& x) { return Elem::at(1, x.index() == 0 ? 2 : 0); }), monotonicity_violation);
  EXPECT_THROW(t.function(3, [&](const Elem& x) { return Elem::at(2, x.index() == 0 ? 9 : 0); }), monotonicity_violation);
}

TEST(Symbolic, ClosureComparisonsAreMarked) {
  const auto& t = tower2();
  const auto a = t.bottom(4);
  const auto b = t.eps_elem(3, t.eps_elem(2, t.element(2, 9)));
  EXPECT_EQ(t.leq(4, a, b), Verdict::holds_on_samples);
  EXPECT_EQ(t.leq(4, b, a), Verdict::fails);
}

TEST(Embed, Examples) {
  const auto& t = tower2();
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto bot = embed_to_tower(t, 0, t.bottom(0), n);
    EXPECT_TRUE(holds(equal(t, bot, bottom_element(t, n))) || equal(t, bot, bottom_element(t, n)) == Verdict::holds_on_samples);
  }
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t x = 0; x < t.level(n).size(); ++x) {
      const auto s = embed_to_tower(t, n, t.element(n, x), 3);
      EXPECT_EQ(project(s, n).index(), x);
      EXPECT_TRUE(holds(is_compatible(t, s)));
      for (std::size_t m = 0; m <= n; ++m) EXPECT_EQ(project(s, m).index(), t.pi_nm(m, n)(x));
    }
  EXPECT_THROW(embed_to_tower(t, 3, t.bottom(3), 2), out_of_range);
}

TEST(Embed, NonTrivial) {
  const auto& t = tower2();
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto s = embed_to_tower(t, 0, t.element(0, 1), n);
    const auto bot = bottom_element(t, n);
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(t.equal(k, s[k], bot[k]), Verdict::fails) << k;
  }
}

TEST(Project, BottomAndMonotone) {
  const auto& t = tower2();
  const auto bot = bottom_element(t, 2);
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(project(bot, n).index(), 0u);
  const auto all = all_elements(t, 2);
  for (const auto& a : all)
    for (const auto& b : all)
      if (holds(leq(t, a, b))) {
        for (std::size_t n = 0; n <= 2; ++n) EXPECT_TRUE(holds(t.leq(n, project(a, n), project(b, n))));
      }
  EXPECT_THROW(project(bot, 3), out_of_range);
}

TEST(TowerSup, Examples) {
  const auto& t = tower2();
  for (const auto& s : all_elements(t, 2)) {
    EXPECT_TRUE(holds(equal(t, tower_sup(t, {s}), s)));
    EXPECT_TRUE(holds(equal(t, tower_sup(t, {bottom_element(t, 2), s}), s)));
    std::vector<TowerElement> approximants;
    for (std::size_t n = 0; n <= 2; ++n) approximants.push_back(embed_to_tower(t, n, s[n], 2));
    const auto sup = tower_sup(t, approximants);
    EXPECT_TRUE(holds(equal(t, sup, s)));
    EXPECT_TRUE(holds(is_compatible(t, sup)));
  }
  const auto a = embed_to_tower(t, 2, t.element(2, 1), 2);
  const auto b = embed_to_tower(t, 2, t.element(2, 2), 2);
  if (!holds(leq(t, a, b)) && !holds(leq(t, b, a))) { EXPECT_THROW(tower_sup(t, {a, b}), not_directed); }
  EXPECT_THROW(tower_sup(t, {}), not_directed);
}

TEST(EpsPrime, Examples) {
  const auto& t = tower2();
  const auto id0 = t.function(1, [](const Elem& x) { return x; });
  const auto const_bot = t.function(1, [&](const Elem&) { return t.bottom(0); });
  for (const auto& s : all_elements(t, 2)) {
    EXPECT_TRUE(holds(equal(t, eps_prime(t, 1, id0, 2)(s), embed_to_tower(t, 0, s[0], 2))));
    EXPECT_TRUE(holds(equal(t, eps_prime(t, 1, const_bot, 2)(s), bottom_element(t, 2))));
  }
}

TEST(EpsPrime, CompatibleWithEmbeddings) {
  // ε'_m ∘ ε_{n,m} = ε'_n pointwise.
  const auto& t = tower2();
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t m = n; m <= 3; ++m)
      for (std::size_t f = 0; f < t.level(n).size(); ++f) {
        const auto x = t.element(n, f);
        const auto lhs = eps_prime(t, m, t.eps_up(n, m, x), 3);
        const auto rhs = eps_prime(t, n, x, 3);
        for (std::size_t i = 0; i < 10; ++i) {
          const auto s = embed_to_tower(t, 2, t.element(2, i), 3);
          EXPECT_TRUE(affirmative(equal(t, lhs(s), rhs(s)))) << n << " " << m << " " << f;
        }
      }
}

TEST(PiPrime, Examples) {
  const auto& t = tower2();
  const TowerFunction identity = [](const TowerElement& s) { return s; };
  for (std::size_t m = 1; m <= 2; ++m) {
    const auto id = pi_prime(t, m, identity, 3);
    for (std::size_t x = 0; x < t.level(m - 1).size(); ++x)
      EXPECT_EQ(t.call(m - 1, id, t.element(m - 1, x)).index(), x);
  }
  const TowerFunction to_bot = [&](const TowerElement&) { return bottom_element(t, 2); };
  EXPECT_EQ(pi_prime(t, 1, to_bot, 2).index(), 0u);
  EXPECT_EQ(pi_prime(t, 0, to_bot, 2).index(), 0u);
  const TowerFunction flip = [&](const TowerElement& s) {
    return s[0].index() == 0 ? embed_to_tower(t, 0, t.element(0, 1), 2) : bottom_element(t, 2);
  };
  EXPECT_THROW(pi_prime(t, 1, flip, 2), monotonicity_violation);
}

TEST(PiPrime, RoundTripWithEpsPrime) {
  // π'_m(ε'_m(g)) = g for tabulated g, at truncation N and N+1.
  const auto& t = tower2();
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t trunc : {std::size_t{2}, std::size_t{3}})
      for (std::size_t g = 0; g < t.level(m).size(); ++g) {
        const auto back = pi_prime(t, m, eps_prime(t, m, t.element(m, g), trunc), trunc);
        EXPECT_EQ(back.index(), g);
      }
}

TEST(PiPrime, RoundTripOnElements) {
  // ε'(π'(F)) recovers F on the sampled prefixes for F = ε'_m(g),
  // and the two truncations agree on the shared prefix.
  const auto& t = tower2();
  for (std::size_t g = 0; g < 10; ++g) {
    const auto f2 = eps_prime(t, 2, t.element(2, g), 2);
    const auto f3 = eps_prime(t, 2, t.element(2, g), 3);
    const auto back = eps_prime(t, 2, pi_prime(t, 2, f2, 2), 2);
    for (std::size_t i = 0; i < 10; ++i) {
      const auto s2 = embed_to_tower(t, 2, t.element(2, i), 2);
      const auto s3 = embed_to_tower(t, 2, t.element(2, i), 3);
      EXPECT_TRUE(holds(equal(t, back(s2), f2(s2))));
      const auto a = f2(s2);
      const auto b = f3(s3);
      for (std::size_t k = 0; k <= 2; ++k) EXPECT_TRUE(holds(t.equal(k, a[k], b[k])));
    }
  }
}

TEST(Steps, Examples) {
  const auto& t = tower2();
  const auto const_bot = *t.exponential(1).find({0, 0});
  const auto const_top = *t.exponential(1).find({1, 1});
  EXPECT_EQ(step_function(t, 0, 0, 0).index(), const_bot);
  EXPECT_EQ(step_function(t, 0, 0, 1).index(), const_top);
  EXPECT_FALSE(step_function(t, 2, 0, 0).tabulated());
  EXPECT_THROW(step_function(t, 4, 0, 0), out_of_range);
  EXPECT_THROW(step_function(t, 0, 2, 0), out_of_range);
}

TEST(Steps, DaggerEquivalence) {
  // (a ⇒ b) ⊑ f  iff  b ⊑ f(a), for every a, b ∈ D_m and f ∈ D_{m+1}.
  const auto& t = tower2();
  for (std::size_t m = 0; m <= 1; ++m) {
    const auto& dm = t.level(m);
    const auto& dm1 = t.level(m + 1);
    for (std::size_t a = 0; a < dm.size(); ++a)
      for (std::size_t b = 0; b < dm.size(); ++b) {
        const auto s = step_function(t, m, a, b).index();
        for (std::size_t f = 0; f < dm1.size(); ++f)
          EXPECT_EQ(dm1.leq(s, f), dm.leq(b, t.exponential(m + 1).map(f)(a)));
      }
  }
}

TEST(Steps, JoinOfStepsBelowAndCompactness) {
  const auto& t = tower2();
  for (std::size_t f = 0; f < 10; ++f) {
    // Independent join: pointwise over the step tables below f.
    const auto& d1 = t.level(1);
    std::vector<std::size_t> table(3, 0);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        const auto s = step_function(t, 1, a, b).index();
        if (!t.level(2).leq(s, f)) continue;
        const auto& st = t.exponential(2).map(s).table();
        for (std::size_t x = 0; x < 3; ++x) table[x] = *domwb::testing::oracle_lub(d1, {table[x], st[x]});
      }
    EXPECT_EQ(table, t.exponential(2).map(f).table());
    EXPECT_EQ(join_of_steps_below(t, 1, f), f);
  }
  for (std::size_t m = 0; m <= 1; ++m)
    for (std::size_t a = 0; a < t.level(m).size(); ++a)
      for (std::size_t b = 0; b < t.level(m).size(); ++b)
        EXPECT_TRUE(is_compact(t.level(m + 1), step_function(t, m, a, b).index()));
}

TEST(Steps, BasisPassesAtEveryTabulatedLevel) {
  const auto& t = tower2();
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto b = step_basis(t, n);
    EXPECT_TRUE(b.report.ok()) << n;
    EXPECT_FALSE(b.elements.empty());
  }
}

TEST(Steps, EmbeddedBasisIsMonotone) {
  const auto& t = tower2();
  const auto basis = step_basis(t, 2);
  for (auto a : basis.elements)
    for (auto b : basis.elements)
      if (t.level(2).leq(a, b)) {
        EXPECT_TRUE(holds(leq(t, embed_to_tower(t, 2, t.element(2, a), 3), embed_to_tower(t, 2, t.element(2, b), 3))));
      }
}

TEST(Mediators, LimitConeUnique) {
  // A cone g_n = π_{n,2} ∘ g_2 from E factors through the prefixes by
  // e ↦ (g_0 e, g_1 e, g_2 e), and no other map does.
  const auto& t = tower2();
  const auto d2 = t.level_ref(2);
  domwb::testing::for_each_poset_up_to(3, [&](const FinPoset& ebase) {
    const auto e = share(ebase);
    const auto maps = enumerate_monotone_maps(e, d2, 100000);
    for (const auto& g2 : maps) {
      for (std::size_t x = 0; x < e->size(); ++x) {
        const auto s = embed_to_tower(t, 2, t.element(2, g2(x)), 2);
        for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(s[n].index(), t.pi_nm(n, 2)(g2(x)));
      }
      std::size_t factorizations = 0;
      for (const auto& u : maps) {
        bool ok = true;
        for (std::size_t x = 0; x < e->size() && ok; ++x)
          for (std::size_t n = 0; n <= 2 && ok; ++n) ok = t.pi_nm(n, 2)(u(x)) == t.pi_nm(n, 2)(g2(x));
        factorizations += ok ? 1 : 0;
      }
      EXPECT_EQ(factorizations, 1u);
    }
  });
}

TEST(Mediators, ColimitCoconeUnique) {
  // A cocone h_n = h_2 ∘ ε_{n,2} into E is met by σ ↦ ⊔_n h_n(σ_n) = h_2(σ_2),
  // and by no other map.
  const auto& t = tower2();
  const auto d2 = t.level_ref(2);
  domwb::testing::for_each_poset_up_to(3, [&](const FinPoset& ebase) {
    const auto e = share(ebase);
    const auto maps = enumerate_monotone_maps(d2, e, 100000);
    for (const auto& h2 : maps) {
      for (std::size_t i = 0; i < 10; ++i) {
        const auto s = embed_to_tower(t, 2, t.element(2, i), 2);
        Subset vals(e->size());
        for (std::size_t n = 0; n <= 2; ++n) vals.insert(h2(t.eps_nm(n, 2)(s[n].index())));
        EXPECT_EQ(supremum(*e, vals), h2(i));
      }
      std::size_t mediators = 0;
      for (const auto& m : maps) {
        bool ok = true;
        for (std::size_t n = 0; n <= 2 && ok; ++n)
          for (std::size_t x = 0; x < t.level(n).size() && ok; ++x)
            ok = m(t.eps_nm(n, 2)(x)) == h2(t.eps_nm(n, 2)(x));
        mediators += ok ? 1 : 0;
      }
      EXPECT_EQ(mediators, 1u);
    }
  });
}
