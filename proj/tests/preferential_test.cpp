#include <gtest/gtest.h>

#include <mvtl/parser.hpp>
#include <mvtl/preferential.hpp>

#include "support.hpp"

using namespace mvtl;

namespace {

const algebra G = algebra::goedel();

preferential_interpretation two_worlds(degree a1, degree a2) {
  preferential_interpretation m;
  m.worlds = {"w1", "w2"};
  m.valuation = {{{"a", a1}}, {{"a", a2}}};
  return m;
}

formula f(std::string_view s) { return parse_formula(s); }

}  // namespace

TEST(Eval, SingleWorldTypicalityKeepsValue) {
  preferential_interpretation m;
  m.worlds = {"w"};
  m.valuation = {{{"a", degree(3, 4)}}};
  EXPECT_EQ(eval(m, 0, f("T(a)"), G), degree(3, 4));
}

TEST(Eval, CoherentTypicality) {
  auto m = two_worlds(degree::one(), degree(1, 2));
  EXPECT_EQ(eval(m, 1, f("T(a)"), G), degree::zero());
  EXPECT_EQ(eval(m, 0, f("T(a)"), G), degree::one());
}

TEST(Eval, Connectives) {
  auto m = two_worlds(degree(1, 4), degree(1, 2));
  m.valuation[0]["b"] = degree(3, 4);
  m.valuation[1]["b"] = degree(0);
  EXPECT_EQ(eval(m, 0, f("a & b"), G), degree(1, 4));
  EXPECT_EQ(eval(m, 0, f("a | b"), G), degree(3, 4));
  EXPECT_EQ(eval(m, 0, f("~a"), G), degree::zero());
  EXPECT_EQ(eval(m, 1, f("~b"), G), degree::one());
  EXPECT_EQ(eval(m, 0, f("top -> bot"), G), degree::zero());
  EXPECT_EQ(eval(m, 0, f("~a"), algebra::zadeh()), degree(3, 4));
}

TEST(Eval, Errors) {
  auto m = two_worlds(degree::one(), degree::zero());
  EXPECT_THROW(eval(m, 0, f("b"), G), missing_prop_error);
  EXPECT_THROW(eval(m, 0, f("X a"), G), temporal_operator_error);
  EXPECT_THROW(eval(m, 0, f("F[2] a"), G), temporal_operator_error);
  m.mode = pref_mode::explicit_;
  EXPECT_THROW(eval(m, 0, f("T(a)"), G), missing_preference_error);
  m.mode = pref_mode::weighted;
  EXPECT_THROW(eval(m, 0, f("T(a)"), G), missing_preference_error);
  try {
    eval(m, 0, f("T(a)"), G);
  } catch (const error& e) {
    EXPECT_EQ(e.cls(), error_class::semantic);
  }
}

TEST(Eval, ExplicitPreferenceLookup) {
  auto m = two_worlds(degree(1, 2), degree(1, 2));
  m.mode = pref_mode::explicit_;
  strict_order r(2);
  r.insert(1, 0);
  m.prefs["a"] = r;
  EXPECT_EQ(eval(m, 0, f("T(a)"), G), degree::zero());
  EXPECT_EQ(eval(m, 1, f("T(a)"), G), degree(1, 2));
}

TEST(ImplicationDegree, Examples) {
  auto m = two_worlds(degree::one(), degree(1, 2));
  m.valuation[0]["b"] = degree(1, 2);
  m.valuation[1]["b"] = degree::one();
  EXPECT_EQ(implication_degree(m, f("a"), f("b"), G), degree(1, 2));
  EXPECT_EQ(implication_degree(m, f("a"), f("a"), G), degree::one());

  preferential_interpretation one;
  one.worlds = {"w1"};
  one.valuation = {{{"a", degree::zero()}, {"b", degree(1, 3)}}};
  EXPECT_EQ(implication_degree(one, f("a"), f("b"), G), degree::one());
}

TEST(Satisfies, Thresholds) {
  auto m = two_worlds(degree::one(), degree(1, 2));
  m.valuation[0]["b"] = degree(1, 2);
  m.valuation[1]["b"] = degree::one();
  auto gi = [&](comparison c, degree t) { return graded_implication{f("a"), f("b"), c, t}; };
  EXPECT_TRUE(satisfies(m, gi(comparison::ge, degree(1, 2)), G));
  EXPECT_FALSE(satisfies(m, gi(comparison::ge, degree(3, 4)), G));
  EXPECT_TRUE(satisfies(m, gi(comparison::le, degree(3, 4)), G));
}

TEST(Coherence, DerivedIsCoherent) {
  auto m = two_worlds(degree::one(), degree(1, 2));
  auto rep = check_coherence(m, {f("a")}, G);
  EXPECT_TRUE(rep.all_coherent());
  EXPECT_TRUE(rep.all_faithful());
}

TEST(Coherence, EmptyRelationNotFaithful) {
  auto m = two_worlds(degree::one(), degree(1, 2));
  m.mode = pref_mode::explicit_;
  m.prefs["a"] = strict_order(2);
  auto e = check_coherence_for(m, f("a"), G);
  EXPECT_FALSE(e.faithful);
  EXPECT_FALSE(e.coherent);
  ASSERT_EQ(e.faithfulness_violations.size(), 1u);
  EXPECT_EQ(e.faithfulness_violations[0], std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(Coherence, FaithfulButNotCoherent) {
  auto m = two_worlds(degree(1, 2), degree(1, 2));
  m.mode = pref_mode::explicit_;
  strict_order r(2);
  r.insert(0, 1);
  m.prefs["a"] = r;
  auto e = check_coherence_for(m, f("a"), G);
  EXPECT_TRUE(e.faithful);
  EXPECT_FALSE(e.coherent);
  EXPECT_EQ(e.coherence_violations.size(), 1u);
}

TEST(Coherence, ModularityReported) {
  preferential_interpretation m;
  m.worlds = {"w1", "w2", "w3"};
  m.valuation = {{{"a", degree::one()}}, {{"a", degree::zero()}}, {{"a", degree::zero()}}};
  m.mode = pref_mode::explicit_;
  strict_order r(3);
  r.insert(0, 1);  // w3 incomparable to both: not modular
  m.prefs["a"] = r;
  EXPECT_FALSE(check_coherence_for(m, f("a"), G).modular);
  r.insert(0, 2);
  m.prefs["a"] = r;
  EXPECT_TRUE(check_coherence_for(m, f("a"), G).modular);
}

TEST(Validate, RejectsBadRelations) {
  auto m = two_worlds(degree::one(), degree::one());
  strict_order r(2);
  r.insert(0, 0);
  m.prefs["a"] = r;
  EXPECT_THROW(m.validate(), model_error);

  preferential_interpretation t;
  t.worlds = {"w1", "w2", "w3"};
  t.valuation.resize(3);
  strict_order q(3);
  q.insert(0, 1);
  q.insert(1, 2);
  t.prefs["a"] = q;
  EXPECT_THROW(t.validate(), model_error);
  t.prefs["a"] = q.transitive_closure();
  EXPECT_NO_THROW(t.validate());
}

TEST(Relation, CountsOfStrictPartialOrders) {
  std::vector<std::size_t> expected{1, 1, 3, 19, 219};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    auto all = all_strict_partial_orders(n);
    EXPECT_EQ(all.size(), expected[n]);
    for (const auto& r : all) EXPECT_TRUE(r.is_strict_partial_order());
  }
}

// Properties over random static models.

class RandomStatic : public ::testing::Test {
 protected:
  check::rng r{2024};
  check::formula_options o = [] {
    check::formula_options x;
    x.temporal = false;
    return x;
  }();

  preferential_interpretation model(pref_mode mode) {
    auto t = check::random_lasso(r, scale(4), o.props, 4, 0, 1);
    auto m = slice(t, 0);
    m.mode = mode;
    return m;
  }
};

TEST_F(RandomStatic, TypicalityIsValueOrZero) {
  for (int i = 0; i < 300; ++i) {
    auto m = model(pref_mode::coherent);
    auto a = check::random_formula(r, 3, o, true);
    for (std::size_t w = 0; w < m.size(); ++w) {
      auto t = eval(m, w, formula::typ(a), G);
      auto v = eval(m, w, a, G);
      EXPECT_TRUE(t == v || t.is_zero());
      degree best = degree::zero();
      for (std::size_t u = 0; u < m.size(); ++u) best = std::max(best, eval(m, u, a, G));
      EXPECT_EQ(t, v == best ? v : degree::zero());
    }
  }
}

TEST_F(RandomStatic, ExplicitTypicalityFollowsMinimality) {
  for (int i = 0; i < 300; ++i) {
    auto m = model(pref_mode::explicit_);
    auto r_a = check::random_strict_order(r, m.size());
    m.prefs["a"] = r_a;
    for (std::size_t w = 0; w < m.size(); ++w) {
      auto t = eval(m, w, f("T(a)"), G);
      EXPECT_EQ(t, r_a.is_minimal(w) ? m.value(w, "a") : degree::zero());
    }
  }
}

TEST_F(RandomStatic, ImplicationDegreeOneIffPointwiseOrder) {
  for (const auto& alg : {algebra::goedel()}) {
    for (int i = 0; i < 300; ++i) {
      auto m = model(pref_mode::coherent);
      auto x = check::random_formula(r, 3, o);
      auto y = check::random_formula(r, 3, o);
      bool pointwise = true;
      for (std::size_t w = 0; w < m.size(); ++w) pointwise &= eval(m, w, x, alg) <= eval(m, w, y, alg);
      EXPECT_EQ(implication_degree(m, x, y, alg).is_one(), pointwise);
    }
  }
}
