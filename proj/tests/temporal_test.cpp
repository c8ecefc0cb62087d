#include <gtest/gtest.h>

#include <functional>

#include <mvtl/parser.hpp>
#include <mvtl/temporal.hpp>

#include "support.hpp"

using namespace mvtl;

namespace {

const algebra G = algebra::goedel();
const algebra Z = algebra::zadeh();

formula f(std::string_view s) { return parse_formula(s); }

// p=1, l=2, a = 0, 1/2, 1/4
temporal_interpretation trace() {
  auto m = temporal_interpretation::shaped({"w"}, 1, 2);
  m.valuation[0][0]["a"] = degree::zero();
  m.valuation[1][0]["a"] = degree(1, 2);
  m.valuation[2][0]["a"] = degree(1, 4);
  return m;
}

algebra lukasiewicz() {
  algebra l = G;
  l.name = "lukasiewicz";
  l.tnorm = [](const degree& a, const degree& b) {
    return degree::try_make(a.value() + b.value() - rational(1)).value_or(degree::zero());
  };
  l.snorm = [](const degree& a, const degree& b) {
    return degree::try_make(a.value() + b.value()).value_or(degree::one());
  };
  l.idempotent = false;
  return l;
}

graded_formula random_graded(check::rng& r, int depth, const check::formula_options& o) {
  int k = depth <= 0 ? 0 : check::uniform(r, 0, 6);
  auto sub = [&] { return random_graded(r, depth - 1, o); };
  switch (k) {
    case 1: { auto a = sub(); return graded_formula::conjunction(a, sub()); }
    case 2: return graded_formula::negation(sub());
    case 3: return graded_formula::next(sub());
    case 4: return graded_formula::eventually(sub());
    case 5: return graded_formula::always(sub());
    case 6: { auto a = sub(); return graded_formula::until(a, sub()); }
    default: {
      graded_implication gi{check::random_formula(r, 2, o), check::random_formula(r, 2, o),
                            check::uniform(r, 0, 1) ? comparison::ge : comparison::le,
                            check::random_degree(r, scale(4))};
      return graded_formula::atom(gi);
    }
  }
}

}  // namespace

TEST(Lasso, Addressing) {
  auto m = trace();
  EXPECT_EQ(m.position(0), 0u);
  EXPECT_EQ(m.position(2), 2u);
  EXPECT_EQ(m.position(3), 1u);
  EXPECT_EQ(m.position(4), 2u);
  EXPECT_EQ(m.position(1001), 1u);
  EXPECT_EQ(m.position(1002), 2u);
}

TEST(Teval, EventuallyAndAlwaysOnTrace) {
  auto m = trace();
  check::unfolding_oracle o(m, G);
  EXPECT_EQ(teval(m, 0, 0, f("F a"), G), degree(1, 2));
  EXPECT_EQ(o.value(0, 0, f("F a")), degree(1, 2));
  EXPECT_EQ(teval(m, 0, 0, f("G a"), G), degree::zero());
  EXPECT_EQ(teval(m, 1, 0, f("G a"), G), degree(1, 4));
  EXPECT_EQ(o.value(0, 0, f("G a")), degree::zero());
  EXPECT_EQ(o.value(1, 0, f("G a")), degree(1, 4));
}

TEST(Teval, NextShiftsTime) {
  auto m = trace();
  for (std::uint64_t n = 0; n < 12; ++n) EXPECT_EQ(teval(m, n, 0, f("X a"), G), teval(m, n + 1, 0, f("a"), G));
}

TEST(Teval, BoundedExamples) {
  auto m = trace();
  auto a = f("a");
  for (std::uint64_t n = 0; n < 6; ++n)
    EXPECT_EQ(teval_bounded(m, n, 0, bounded_op::eventually, 0, a, a, G), teval(m, n, 0, a, G));
  EXPECT_EQ(teval_bounded(m, 0, 0, bounded_op::eventually, 1, a, a, G), degree(1, 2));
  EXPECT_EQ(teval(m, 0, 0, f("F[1] a"), G), degree(1, 2));
  for (std::uint32_t t : {5u, 6u, 40u, 1000000u})
    EXPECT_EQ(teval(m, 0, 0, formula::eventually_within(t, a), G), teval(m, 0, 0, f("F a"), G));
}

TEST(Teval, NonIdempotentAlgebraRejectsUnbounded) {
  auto m = trace();
  auto l = lukasiewicz();
  EXPECT_THROW(teval(m, 0, 0, f("F a"), l), non_idempotent_algebra_error);
  EXPECT_THROW(teval(m, 0, 0, f("a U a"), l), non_idempotent_algebra_error);
  // bounded folds still work, literally
  EXPECT_EQ(teval(m, 0, 0, f("F[2] a"), l), degree(3, 4));
  EXPECT_EQ(teval(m, 1, 0, f("F[3] a"), l), degree::one());
}

TEST(Teval, UntilOnHandTrace) {
  // a holds until b shows up at position 2 of the loop
  auto m = temporal_interpretation::shaped({"w"}, 0, 3);
  std::vector<std::pair<degree, degree>> ab{{degree::one(), degree::zero()},
                                            {degree(3, 4), degree::zero()},
                                            {degree::zero(), degree(1, 2)}};
  for (std::size_t p = 0; p < 3; ++p) {
    m.valuation[p][0]["a"] = ab[p].first;
    m.valuation[p][0]["b"] = ab[p].second;
  }
  EXPECT_EQ(teval(m, 0, 0, f("a U b"), G), degree(1, 2));
  EXPECT_EQ(teval(m, 2, 0, f("a U b"), G), degree(1, 2));
  EXPECT_EQ(teval(m, 0, 0, f("a U[1] b"), G), degree::zero());
  EXPECT_EQ(teval(m, 0, 0, f("a U[2] b"), G), degree(1, 2));
}

TEST(ImplicationDegreeAt, Examples) {
  auto m = temporal_interpretation::shaped({"w"}, 0, 1);
  m.valuation[0][0] = {{"a", degree::one()}, {"b", degree(4, 5)}};
  EXPECT_EQ(implication_degree_at(m, 0, f("a"), f("b"), G), degree(4, 5));
  auto t = trace();
  for (std::uint64_t n = 0; n < 8; ++n) EXPECT_EQ(implication_degree_at(t, n, f("a"), f("a"), G), degree::one());
}

TEST(Msat, Examples) {
  check::rng r(5);
  auto refl = parse_graded("(a -> a) >= 1");
  for (int i = 0; i < 50; ++i) {
    auto m = check::random_lasso(r, scale(4), {"a", "b"});
    EXPECT_TRUE(msat(m, 0, refl, G));
  }

  auto m = temporal_interpretation::shaped({"w1", "w2"}, 1, 2);
  std::vector<std::pair<int, int>> vals{{1, 2}, {2, 3}, {0, 2}};  // quarters of a, b per position, both worlds
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t w = 0; w < 2; ++w) {
      m.valuation[p][w]["a"] = degree(vals[p].first, 4);
      m.valuation[p][w]["b"] = degree(vals[p].second, 4);
    }
  auto alpha = parse_graded("G((a -> b) >= 1/2)");
  check::unfolding_oracle o(m, G);
  EXPECT_TRUE(msat(m, 0, alpha, G));
  EXPECT_TRUE(o.sat(0, alpha));
  EXPECT_FALSE(msat(m, 0, parse_graded("G((b -> a) >= 1)"), G));

  auto beta = parse_graded("(a -> b) >= 1 & ~((b -> a) >= 1)");
  auto x = graded_formula::next(beta);
  for (std::uint64_t n = 0; n < 6; ++n) EXPECT_EQ(msat(m, n, x, G), msat(m, n + 1, beta, G));
}

TEST(Msat, AlphaAndNegationExclusive) {
  check::rng r(8);
  check::formula_options o;
  o.props = {"a", "b"};
  for (int i = 0; i < 200; ++i) {
    auto m = check::random_lasso(r, scale(3), o.props);
    auto a = random_graded(r, 2, o);
    EXPECT_NE(satisfies_temporal(m, a, G), satisfies_temporal(m, graded_formula::negation(a), G));
  }
}

TEST(Slice, PeriodicAndPreservesMode) {
  auto m = trace();
  m.mode = pref_mode::explicit_;
  m.prefs[1]["a"] = strict_order(1);
  m.prefs[2]["a"] = strict_order(1);
  m.prefs[0]["a"] = strict_order(1);
  for (std::uint64_t n = 1; n < 8; ++n) {
    auto s = slice(m, n);
    auto s2 = slice(m, n + 2);
    EXPECT_EQ(s.valuation, s2.valuation);
    EXPECT_EQ(s.prefs, s2.prefs);
    EXPECT_EQ(s.mode, pref_mode::explicit_);
  }
}

TEST(Slice, StaticFormulasAgreeWithCoreEval) {
  check::rng r(17);
  check::formula_options o;
  o.temporal = false;
  for (int i = 0; i < 300; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    auto x = check::random_formula(r, 4, o);
    for (std::uint64_t n = 0; n < m.positions() + 2; ++n) {
      auto s = slice(m, n);
      for (std::size_t w = 0; w < m.size(); ++w) EXPECT_EQ(teval(m, n, w, x, G), eval(s, w, x, G));
    }
  }
}

TEST(Slice, GradedAtomAtZeroMatchesCore) {
  check::rng r(19);
  check::formula_options o;
  o.temporal = false;
  for (int i = 0; i < 300; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    graded_implication gi{check::random_formula(r, 3, o), check::random_formula(r, 3, o), comparison::ge,
                          check::random_degree(r, scale(4))};
    EXPECT_EQ(satisfies_temporal(m, graded_formula::atom(gi), G), satisfies(slice(m, 0), gi, G));
  }
}

// Random models against the unfolding oracle.

class RandomLasso : public ::testing::TestWithParam<int> {
 protected:
  algebra alg() const { return GetParam() == 0 ? G : Z; }
};

TEST_P(RandomLasso, AgreesWithUnfolding) {
  check::rng r(100 + GetParam());
  check::formula_options o;
  for (int i = 0; i < 150; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    auto x = check::random_formula(r, 3, o);
    temporal_evaluator ev(m, alg());
    check::unfolding_oracle u(m, alg());
    for (std::uint64_t n = 0; n < m.positions() + 3; ++n)
      for (std::size_t w = 0; w < m.size(); ++w)
        ASSERT_EQ(ev.value(n, w, x), u.value(n, w, x)) << print_formula(x) << " n=" << n << " w=" << w;
  }
}

TEST_P(RandomLasso, ExplicitPreferencesAgreeWithUnfolding) {
  check::rng r(200 + GetParam());
  check::formula_options o;
  o.props = {"a", "b"};
  for (int i = 0; i < 100; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    m.mode = pref_mode::explicit_;
    auto x = check::random_formula(r, 3, o);
    std::vector<formula> subjects;
    collect_typicality_subjects(x, subjects);
    for (auto& at : m.prefs)
      for (const auto& s : subjects) at[formula_key(s)] = check::random_strict_order(r, m.size());
    temporal_evaluator ev(m, alg());
    check::unfolding_oracle u(m, alg());
    for (std::uint64_t n = 0; n < m.positions() + 3; ++n)
      for (std::size_t w = 0; w < m.size(); ++w) ASSERT_EQ(ev.value(n, w, x), u.value(n, w, x));
  }
}

TEST_P(RandomLasso, MetaAgreesWithUnfolding) {
  check::rng r(300 + GetParam());
  check::formula_options o;
  o.props = {"a", "b"};
  for (int i = 0; i < 150; ++i) {
    auto m = check::random_lasso(r, scale(3), o.props);
    auto a = random_graded(r, 3, o);
    temporal_evaluator ev(m, alg());
    check::unfolding_oracle u(m, alg());
    for (std::uint64_t n = 0; n < m.positions() + 2; ++n) ASSERT_EQ(ev.msat(n, a), u.sat(n, a)) << print_graded(a);
  }
}

TEST_P(RandomLasso, Recurrences) {
  check::rng r(400 + GetParam());
  check::formula_options o;
  for (int i = 0; i < 200; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    auto x = check::random_formula(r, 2, o);
    auto y = check::random_formula(r, 2, o);
    temporal_evaluator ev(m, alg());
    auto fx = formula::eventually(x), gx = formula::always(x), u = formula::until(x, y);
    for (std::uint64_t n = 0; n < m.positions() + 2; ++n)
      for (std::size_t w = 0; w < m.size(); ++w) {
        EXPECT_EQ(ev.value(n, w, fx), alg().snorm(ev.value(n, w, x), ev.value(n + 1, w, fx)));
        EXPECT_EQ(ev.value(n, w, gx), alg().tnorm(ev.value(n, w, x), ev.value(n + 1, w, gx)));
        EXPECT_EQ(ev.value(n, w, u),
                  alg().snorm(ev.value(n, w, y), alg().tnorm(ev.value(n, w, x), ev.value(n + 1, w, u))));
      }
  }
}

TEST_P(RandomLasso, BoundedMonotoneAndSaturating) {
  check::rng r(500 + GetParam());
  check::formula_options o;
  for (int i = 0; i < 100; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    auto x = check::random_formula(r, 2, o);
    auto y = check::random_formula(r, 2, o);
    temporal_evaluator ev(m, alg());
    auto sat = static_cast<std::uint32_t>(m.prefix + 2 * m.loop);
    for (std::size_t w = 0; w < m.size(); ++w) {
      for (std::uint32_t t = 0; t < sat + 4; ++t) {
        EXPECT_LE(ev.value(0, w, formula::eventually_within(t, x)), ev.value(0, w, formula::eventually_within(t + 1, x)));
        EXPECT_GE(ev.value(0, w, formula::always_within(t, x)), ev.value(0, w, formula::always_within(t + 1, x)));
        EXPECT_LE(ev.value(0, w, formula::until_within(t, x, y)), ev.value(0, w, formula::until_within(t + 1, x, y)));
      }
      for (std::uint32_t t : {sat, sat + 7, 5000000u}) {
        EXPECT_EQ(ev.value(0, w, formula::eventually_within(t, x)), ev.value(0, w, formula::eventually(x)));
        EXPECT_EQ(ev.value(0, w, formula::always_within(t, x)), ev.value(0, w, formula::always(x)));
        EXPECT_EQ(ev.value(0, w, formula::until_within(t, x, y)), ev.value(0, w, formula::until(x, y)));
      }
    }
  }
}

TEST_P(RandomLasso, PeriodicDegreesAndSatisfaction) {
  check::rng r(600 + GetParam());
  check::formula_options o;
  o.props = {"a", "b"};
  for (int i = 0; i < 100; ++i) {
    auto m = check::random_lasso(r, scale(4), o.props);
    auto x = check::random_formula(r, 3, o);
    auto y = check::random_formula(r, 3, o);
    auto a = random_graded(r, 3, o);
    check::unfolding_oracle u(m, alg());
    for (std::uint64_t n = m.prefix; n < m.prefix + 2 * m.loop; ++n) {
      EXPECT_EQ(u.implication_degree(n, x, y), u.implication_degree(n + m.loop, x, y));
      EXPECT_EQ(implication_degree_at(m, n, x, y, alg()), u.implication_degree(n + m.loop, x, y));
      EXPECT_EQ(msat(m, n, a, alg()), msat(m, n + m.loop, a, alg()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Algebras, RandomLasso, ::testing::Values(0, 1),
                         [](const auto& info) { return info.param == 0 ? "goedel" : "zadeh"; });
