#include <gtest/gtest.h>

#include "lambdah/gen.hpp"
#include "lambdah/machines.hpp"
#include "lambdah/syntax.hpp"
#include "lambdah/term.hpp"
#include "oracles.hpp"

namespace lambdah {
namespace {

Term closed(const std::string& text) { return parse_term(text, {}); }

TEST(Parse, Identity) { EXPECT_EQ(closed("\\x.x"), lam(var(0))); }

TEST(Parse, ApplicationWithFreeVariables) {
  EXPECT_EQ(parse_term("H x y", {"x", "y"}), app(h(), var(0), var(1)));
}

TEST(Parse, NestedBinders) {
  EXPECT_EQ(closed("\\x y.x (y x)"), lam(lam(app(var(1), app(var(0), var(1))))));
}

TEST(Parse, UnicodeLambdaAndComments) {
  EXPECT_EQ(closed("λx. x  # identity"), lam(var(0)));
  EXPECT_EQ(closed("# leading comment\n(\\x.x)\n  H"), app(lam(var(0)), h()));
}

TEST(Parse, TrailingAbstractionArgument) {
  EXPECT_EQ(parse_term("f \\x.x", {"f"}), app(var(0), lam(var(0))));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("\\x.\n  x )");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("(x"), ParseError);
  EXPECT_THROW(parse("\\.x"), ParseError);
  EXPECT_THROW(parse("Foo"), ParseError);
}

TEST(Parse, UnboundVariableIsReported) {
  try {
    to_debruijn(parse("\\x.x y"), {});
    FAIL() << "expected UnboundVariable";
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "y");
  }
}

TEST(Parse, NamedConstantsNeedAResolver) {
  ParseOptions options;
  options.constants = builtin_constant;
  EXPECT_EQ(parse_term("J", {}, options), make_J());
  EXPECT_EQ(parse_term("I x", {"x"}, options), app(make_I(), var(0)));
  EXPECT_THROW(parse_term("J", {}), ParseError);
}

TEST(DeBruijn, Conversions) {
  EXPECT_EQ(closed("\\x.\\y.x"), lam(lam(var(1))));
  EXPECT_EQ(closed("\\x.x x"), lam(app(var(0), var(0))));
  EXPECT_EQ(closed("\\x.H"), lam(h()));
  EXPECT_EQ(print(lam(lam(var(1)))), "\\x y.x");
  EXPECT_EQ(print(lam(h())), "\\x.H");
}

TEST(DeBruijn, FreeNamesAreNeverCaptured) {
  // \x. y x with free y named "x" must not print as \x.x x.
  const Term t = lam(app(var(1), var(0)));
  const std::string text = print(t, {"x"});
  EXPECT_EQ(parse_term(text, {"x"}), t);
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(print(closed("(\\x.x) (\\y.y y) H")), "(\\x.x) (\\x.x x) H");
  EXPECT_EQ(print(parse_term("f (g x) (\\y.y)", {"f", "g", "x"}), {"f", "g", "x"}), "f (g x) (\\y.y)");
  EXPECT_EQ(print(closed("H (H (H H))")), "H (H (H H))");
  EXPECT_EQ(print(closed("((H H) H)")), "H H H");
}

TEST(AlphaEq, Examples) {
  EXPECT_TRUE(alpha_eq(closed("\\x.x"), closed("\\y.y")));
  EXPECT_FALSE(alpha_eq(closed("\\x.x"), closed("\\x.\\y.x")));
  EXPECT_TRUE(alpha_eq(h(), h()));
}

TEST(AlphaEq, EquivalenceRelationOnSmallTerms) {
  const auto terms = enumerate(4, 1);
  for (const Term& a : terms) {
    EXPECT_TRUE(alpha_eq(a, a));
    for (const Term& b : terms) {
      EXPECT_EQ(alpha_eq(a, b), alpha_eq(b, a));
      if (!alpha_eq(a, b)) continue;
      for (const Term& c : terms) {
        if (alpha_eq(b, c)) {
          EXPECT_TRUE(alpha_eq(a, c));
        }
      }
    }
  }
}

TEST(AlphaEq, DistinctEnumeratedTermsAreNotEqual) {
  const auto terms = enumerate(5, 1);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) ASSERT_FALSE(terms[i] == terms[j]);
  }
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(var(0), h()), h());
  // body \y.x with x := z (free z = index 0 outside): z shifts under the binder.
  EXPECT_EQ(substitute(lam(var(1)), var(0)), lam(var(1)));
  // (\x.\y.x) z  ->  \y.z
  const Term redex = parse_term("(\\x.\\y.x) z", {"z"});
  EXPECT_EQ(t_step(redex), parse_term("\\y.z", {"z"}));
}

TEST(Substitute, LooseIndicesDropByOne) {
  // body = x w where w is free (index 1 inside); after substitution w is index 0.
  EXPECT_EQ(substitute(app(var(0), var(1)), h()), app(h(), var(0)));
}

// Every closed term of size <= 8 with a head redex, and every term over two
// free variables of size <= 6: one head step agrees with the named oracle.
TEST(Substitute, AgreesWithNamedOracle) {
  std::size_t compared = 0;
  auto check = [&](const Term& t) {
    if (!spine(t).head_is_redex()) return;
    std::size_t counter = 0;
    oracle::NamedPtr stepped;
    ASSERT_TRUE(oracle::named_head_step(oracle::to_named(t), stepped, counter));
    ASSERT_EQ(t_step(t), oracle::from_named(stepped)) << print(t);
    ++compared;
  };
  for (const Term& t : enumerate(8, 0)) check(t);
  for (const Term& t : enumerate(6, 2)) check(t);
  EXPECT_GT(compared, 500u);
}

TEST(Substitute, OpenBodiesAndValuesAgainstOracle) {
  // Body context: f0 is the substituted variable, f1 the outer free variable.
  // Value context: f0 is that same outer variable.
  for (const Term& body : enumerate(5, 2)) {
    for (const Term& v : enumerate(3, 1)) {
      std::size_t counter = 0;
      const auto value = oracle::subst(oracle::to_named(v), "f0", oracle::nvar("f1"), counter);
      const auto substituted = oracle::subst(oracle::to_named(body), "f0", value, counter);
      const auto lowered = oracle::subst(substituted, "f1", oracle::nvar("f0"), counter);
      ASSERT_EQ(substitute(body, v), oracle::from_named(lowered)) << print(lam(body)) << " <- " << print(v);
    }
  }
}

TEST(SubstConstH, Examples) {
  const Term i = make_I();
  EXPECT_EQ(subst_const_H(parse_term("H x", {"x"}), i), app(i, var(0)));
  EXPECT_EQ(subst_const_H(closed("\\x.x"), make_J()), closed("\\x.x"));
  EXPECT_EQ(subst_const_H(parse_term("H (H y)", {"y"}), i), app(i, app(i, var(0))));
  EXPECT_EQ(subst_const_H(closed("\\x.H x"), i), lam(app(i, var(0))));
}

TEST(SubstConstH, RejectsOpenReplacement) { EXPECT_THROW(subst_const_H(h(), var(0)), NotClosed); }

TEST(Spine, Examples) {
  const SpineView a = spine(parse_term("\\x.x y", {"y"}));
  EXPECT_EQ(a.binders, 1u);
  EXPECT_EQ(std::get<HeadVar>(a.head).index, 0u);
  ASSERT_EQ(a.args.size(), 1u);
  EXPECT_EQ(a.args[0], var(1));
  EXPECT_TRUE(is_hnf(a));

  const SpineView b = spine(closed("\\x.H"));
  EXPECT_EQ(b.binders, 1u);
  EXPECT_TRUE(b.head_is_h());
  EXPECT_TRUE(b.args.empty());
  EXPECT_TRUE(is_hnf(b));

  const SpineView c = spine(parse_term("H x", {"x"}));
  EXPECT_TRUE(c.head_is_h());
  EXPECT_EQ(c.args.size(), 1u);
  EXPECT_FALSE(is_hnf(c));

  const SpineView d = spine(parse_term("(\\x.x) y", {"y"}));
  ASSERT_TRUE(d.head_is_redex());
  EXPECT_TRUE(std::get<HeadRedex>(d.head).fun.is_abs());
  EXPECT_FALSE(is_hnf(d));
}

TEST(Spine, RecomposeAndExclusiveHeads) {
  for (const Term& t : enumerate(7, 1)) {
    const SpineView v = spine(t);
    ASSERT_EQ(recompose(v), t);
    const int heads = int(v.head_is_var()) + int(v.head_is_h()) + int(v.head_is_redex());
    ASSERT_EQ(heads, 1);
    if (v.head_is_redex()) {
      ASSERT_TRUE(std::get<HeadRedex>(v.head).fun.is_abs());
    }
  }
}

TEST(RoundTrip, PrintThenParseIsIdentity) {
  for (const Term& t : enumerate(8, 0)) ASSERT_EQ(parse_term(print(t), {}), t) << print(t);
  const std::vector<std::string> names{"a", "b"};
  for (const Term& t : enumerate(6, 2)) ASSERT_EQ(parse_term(print(t, names), names), t) << print(t, names);
}

TEST(Term, CachedMetadata) {
  const Term t = closed("\\x.x H");
  EXPECT_EQ(t.size(), 4u);
  EXPECT_TRUE(t.is_closed());
  EXPECT_TRUE(t.contains_h());
  EXPECT_EQ(var(3).loose(), 4u);
  EXPECT_EQ(lam(var(3)).loose(), 3u);
  EXPECT_TRUE(well_scoped(parse_term("\\x.y", {"y"}), 1));
  EXPECT_FALSE(well_scoped(parse_term("\\x.y", {"y"}), 0));
}

}  // namespace
}  // namespace lambdah
