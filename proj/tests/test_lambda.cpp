#include <gtest/gtest.h>

#include <random>

#include "domwb/lambda.hpp"
#include "support/generators.hpp"

using namespace domwb;
using namespace domwb::lambda;
using tower::TowerElement;

namespace {

const Tower& tw() {
  static const Tower t = Tower::build(4, 2);
  return t;
}

std::vector<TowerElement> elements_at(std::size_t n) {
  std::vector<TowerElement> out;
  for (std::size_t i = 0; i < tw().level(n).size(); ++i) out.push_back(tower::embed_to_tower(tw(), n, tw().element(n, i), n));
  return out;
}

Relation rel(const TowerElement& a, const TowerElement& b) {
  bool exact = true;
  return relate(tw(), a, b, exact);
}

bool below(const TowerElement& a, const TowerElement& b) {
  const auto r = rel(a, b);
  return r == Relation::leq || r == Relation::equal;
}

bool all_bottom(const TowerElement& s) {
  return tower::equal(tw(), s, tower::bottom_element(tw(), s.truncation())) != tower::Verdict::fails;
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_TRUE(same_tree(parse("(\\x.x) y"), app(lam("x", var("x")), var("y"))));
  EXPECT_TRUE(same_tree(parse("\\f.\\x.f (f x)"), lam("f", lam("x", app(var("f"), app(var("f"), var("x")))))));
  try {
    parse("\\x.");
    FAIL() << "expected syntax_error";
  } catch (const syntax_error& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);
  }
}

TEST(Parse, GrammarDetails) {
  EXPECT_TRUE(same_tree(parse("a b c"), app(app(var("a"), var("b")), var("c"))));
  EXPECT_TRUE(same_tree(parse("\xCE\xBBx.x"), lam("x", var("x"))));
  EXPECT_TRUE(same_tree(parse("\\x.x y"), lam("x", app(var("x"), var("y")))));
  EXPECT_TRUE(same_tree(parse("foo_1"), var("foo_1")));
  EXPECT_THROW(parse("(x"), syntax_error);
  EXPECT_THROW(parse("x)"), syntax_error);
  EXPECT_THROW(parse("\\1.x"), syntax_error);
  EXPECT_THROW(parse(""), syntax_error);
}

TEST(Parse, PrinterRoundTrip) {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto t = domwb::testing::random_closed_term(rng, 2 + i % 12);
    EXPECT_TRUE(same_tree(parse(to_string(t)), t)) << to_string(t);
  }
  for (const auto& c : corpus()) EXPECT_TRUE(same_tree(parse(to_string(parse(c.source))), parse(c.source)));
}

TEST(Syntax, FreeVariables) {
  EXPECT_EQ(free_vars(parse("\\x.x y")), (std::set<std::string>{"y"}));
  for (const auto& c : corpus()) EXPECT_TRUE(is_closed(parse(c.source))) << c.name;
}

TEST(Syntax, SubstitutionAvoidsCapture) {
  // (\y.x)[x := y] must not become \y.y.
  const auto r = substitute(parse("\\y.x"), "x", var("y"));
  ASSERT_EQ(r->kind, Term::Kind::lam);
  EXPECT_NE(r->name, "y");
  EXPECT_TRUE(alpha_equivalent(r, parse("\\z.y")));
  EXPECT_TRUE(same_tree(substitute(parse("\\x.x"), "x", var("q")), parse("\\x.x")));
  EXPECT_TRUE(same_tree(substitute(parse("x (\\z.x)"), "x", var("w")), parse("w (\\z.w)")));
}

TEST(Syntax, BetaRoot) {
  EXPECT_TRUE(same_tree(beta_root(parse("(\\x.x x) y")), parse("y y")));
  EXPECT_EQ(beta_root(parse("x y")), nullptr);
  EXPECT_EQ(beta_root(parse("\\x.x")), nullptr);
}

TEST(Syntax, AlphaEquivalence) {
  EXPECT_TRUE(alpha_equivalent(parse("\\x.\\y.x"), parse("\\a.\\b.a")));
  EXPECT_FALSE(alpha_equivalent(parse("\\x.\\y.x"), parse("\\a.\\b.b")));
  EXPECT_FALSE(alpha_equivalent(parse("\\x.y"), parse("\\x.z")));
  EXPECT_FALSE(alpha_equivalent(parse("\\x.\\x.x"), parse("\\x.\\y.x")));
  std::mt19937 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto t = domwb::testing::random_closed_term(rng, 2 + i % 10);
    EXPECT_TRUE(alpha_equivalent(t, domwb::testing::rename_binders(t, rng)));
  }
}

TEST(Apply, Examples) {
  const auto& t = tw();
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto bot = tower::bottom_element(t, n);
    for (const auto& x : elements_at(n)) EXPECT_TRUE(all_bottom(apply(t, bot, x)));
  }
  // ⟦λx.x⟧ · τ ⊑ τ, equal on components ≤ N−2.
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto id = denote(t, parse("\\x.x"), n);
    const auto lvl = std::min<std::size_t>(n, 2);
    for (std::size_t i = 0; i < t.level(lvl).size(); ++i) {
      const auto x = tower::embed_to_tower(t, lvl, t.element(lvl, i), n);
      const auto r = apply(t, id, x);
      EXPECT_TRUE(below(r, x));
      for (std::size_t k = 0; k + 2 <= n; ++k) EXPECT_NE(t.equal(k, r[k], x[k]), tower::Verdict::fails);
    }
  }
}

TEST(Apply, Errors) {
  const auto& t = tw();
  EXPECT_THROW(apply(t, tower::bottom_element(t, 1), tower::bottom_element(t, 2)), truncation_mismatch);
  EXPECT_THROW(apply(t, tower::bottom_element(t, 0), tower::bottom_element(t, 0)), precondition_violation);
}

TEST(Apply, MonotoneInBothArguments) {
  const auto& t = tw();
  const auto all = elements_at(2);
  for (const auto& s : all)
    for (const auto& s2 : all)
      for (const auto& x : all)
        for (const auto& x2 : all) {
          if (!below(s, s2) || !below(x, x2)) continue;
          EXPECT_TRUE(below(apply(t, s, x), apply(t, s2, x2)));
        }
}

TEST(Abstract, Examples) {
  const auto& t = tw();
  const auto id = abstract(t, [](const TowerElement& s) { return s; }, 2);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(t.call(0, id[1], t.element(0, x)).index(), x);
  EXPECT_TRUE(tower::equal(t, id, denote(t, parse("\\x.x"), 2)) == tower::Verdict::holds);
  const auto cb = abstract(t, [&](const TowerElement&) { return tower::bottom_element(t, 2); }, 2);
  EXPECT_TRUE(all_bottom(cb));
  EXPECT_THROW(abstract(t, [](const TowerElement& s) { return s; }, 0), precondition_violation);
}

TEST(Abstract, CandidateApplicationsAreBetaSoundAndOrdered) {
  // Over every monotone f on the truncation-2 prefixes (all of D₂ → D₂) and
  // every τ: each candidate apply_at_level(k)(λf, τ) ⊑ f(τ), candidates grow
  // with k, so the chosen k = N−1 is the largest sound one.
  const auto& t = tw();
  const auto d2 = t.level_ref(2);
  const auto maps = enumerate_monotone_maps(d2, d2, 1u << 20);
  ASSERT_GT(maps.size(), 100u);
  const auto all = elements_at(2);
  for (const auto& m : maps) {
    const TowerFunction f = [&](const TowerElement& s) { return tower::embed_to_tower(t, 2, t.element(2, m(s[2].index())), 2); };
    const auto lf = abstract(t, f, 2);
    for (const auto& x : all) {
      const auto fx = f(x);
      const auto c0 = apply_at_level(t, lf, x, 0);
      const auto c1 = apply_at_level(t, lf, x, 1);
      EXPECT_TRUE(below(c0, fx));
      EXPECT_TRUE(below(c1, fx));
      EXPECT_TRUE(below(c0, c1));
      EXPECT_TRUE(tower::equal(t, c1, apply(t, lf, x)) == tower::Verdict::holds);
    }
  }
}

TEST(Denote, OmegaIsBottom) {
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(all_bottom(denote(tw(), parse("(\\x.x x)(\\x.x x)"), n))) << n;
}

TEST(Denote, IdentityRedex) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& c : corpus()) {
      const auto body = parse(c.source);
      const auto redex = denote(tw(), app(parse("\\x.x"), body), n);
      const auto plain = denote(tw(), body, n);
      EXPECT_TRUE(below(redex, plain)) << c.name << " " << n;
      for (std::size_t k = 0; k + 2 <= n; ++k) EXPECT_NE(tw().equal(k, redex[k], plain[k]), tower::Verdict::fails);
    }
}

TEST(Denote, KDiffersFromKStar) {
  const auto k = denote(tw(), parse("\\x.\\y.x"), 3);
  const auto ks = denote(tw(), parse("\\x.\\y.y"), 3);
  EXPECT_EQ(rel(k, ks), Relation::incomparable);
}

TEST(Denote, Errors) {
  EXPECT_THROW(denote(tw(), parse("x"), 2), unbound_variable);
  Env env{{"x", tower::bottom_element(tw(), 1)}};
  EXPECT_THROW(denote(tw(), parse("x"), env, 2), truncation_mismatch);
}

TEST(Denote, AlphaInvariance) {
  std::mt19937 rng(13);
  for (int i = 0; i < 40; ++i) {
    const auto t = domwb::testing::random_closed_term(rng, 2 + i % 7);
    const auto r = domwb::testing::rename_binders(t, rng);
    for (std::size_t n = 1; n <= 2; ++n) EXPECT_EQ(rel(denote(tw(), t, n), denote(tw(), r, n)), Relation::equal) << to_string(t);
  }
}

TEST(Denote, MonotoneInEnvironment) {
  const std::vector<std::string> open{"x", "\\y.x", "x x", "\\y.y x", "x (\\y.y)", "(\\y.y) x"};
  const auto all = elements_at(2);
  for (const auto& src : open) {
    const auto term = parse(src);
    for (const auto& a : all)
      for (const auto& b : all) {
        if (!below(a, b)) continue;
        EXPECT_TRUE(below(denote(tw(), term, Env{{"x", a}}, 2), denote(tw(), term, Env{{"x", b}}, 2))) << src;
      }
  }
}

TEST(Denote, InformationGrowsWithTruncation) {
  for (const auto& c : corpus()) {
    const auto term = parse(c.source);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto now = denote(tw(), term, n);
      const auto next = denote(tw(), term, n + 1);
      for (std::size_t k = 0; k + 1 <= n; ++k) EXPECT_TRUE(tower::affirmative(tw().leq(k, now[k], next[k]))) << c.name;
    }
  }
}

TEST(BetaCompare, Examples) {
  const auto& t = tw();
  const auto v = beta_compare(t, parse("(\\x.x)(\\z.z)"), parse("\\z.z"), 3);
  EXPECT_EQ(v.relation, Relation::leq);
  EXPECT_TRUE(v.stabilized);
  const auto w = beta_compare(t, parse("(\\x.x x)(\\x.x x)"), parse("\\x.(\\y.y y)(\\y.y y) x"), 2);
  EXPECT_EQ(w.relation, Relation::equal);
  for (const auto& c : corpus()) EXPECT_EQ(beta_compare(t, parse(c.source), parse(c.source), 2).relation, Relation::equal);
}

TEST(BetaCompare, BetaInequalityOnCorpusRedexes) {
  // denote((λx.M) N) ⊑ denote(M[x := N]) for corpus heads and arguments.
  const auto terms = corpus();
  for (const auto& h : terms) {
    const auto head = parse(h.source);
    if (head->kind != Term::Kind::lam) continue;
    for (const auto& a : terms) {
      const auto redex = app(head, parse(a.source));
      const auto contractum = beta_root(redex);
      for (std::size_t n = 1; n <= 3; ++n)
        EXPECT_TRUE(below(denote(tw(), redex, n), denote(tw(), contractum, n))) << h.name << " " << a.name << " " << n;
    }
  }
}

TEST(Denote, ResultsAreCompatiblePrefixes) {
  for (const auto& c : corpus())
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_TRUE(tower::affirmative(tower::is_compatible(tw(), denote(tw(), parse(c.source), n)))) << c.name << " " << n;
  const auto all = elements_at(2);
  for (const auto& s : all)
    for (const auto& x : all) EXPECT_TRUE(tower::affirmative(tower::is_compatible(tw(), apply(tw(), s, x))));
}
