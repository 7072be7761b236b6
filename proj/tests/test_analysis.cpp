#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "kitten/analysis.hpp"
#include "kitten/registry.hpp"

using namespace kitten;

namespace {

Quantity toy(bool sensitive, std::function<double(const Params&, const TruncationPolicy&)> f) {
  return {"toy", "test quantity", {"x"}, sensitive, std::move(f)};
}

}  // namespace

TEST(Axis, ValuesIncludeEnds) {
  const auto v = Axis{"r", 0.0, 2.0, 201}.values();
  ASSERT_EQ(v.size(), 201u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 2.0);
  EXPECT_DOUBLE_EQ(v[100], 1.0);
  EXPECT_EQ(Axis({"r", 0.5, 0.5, 1}).values(), std::vector<double>{0.5});
}

TEST(Sweep, ValidationRejectsBadSpecs) {
  EXPECT_THROW(validate(SweepSpec{}), UsageError);
  EXPECT_THROW(validate(SweepSpec{{{"r", 1.0, 0.0, 3}}, {}}), UsageError);
  EXPECT_THROW(validate(SweepSpec{{{"r", 0.0, 1.0, 0}}, {}}), UsageError);
  EXPECT_THROW(validate(SweepSpec{{{"r", 0.0, 1.0, 3}, {"a", 0, 1, 2}, {"b", 0, 1, 2}}, {}}), UsageError);
  EXPECT_NO_THROW(validate(SweepSpec{{{"r", 0.0, 1.0, 3}}, {}}));
}

TEST(Sweep, RowsInGridOrder) {
  const Quantity q{"sum", "x + 10 y", {"x", "y"}, false,
                   [](const Params& p, const TruncationPolicy&) { return p.at("x") + 10 * p.at("y"); }};
  const SweepResult res = sweep({{{"x", 0, 1, 3}, {"y", 0, 2, 3}}, {}}, q, {});
  ASSERT_EQ(res.rows.size(), 9u);
  EXPECT_EQ(res.input_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(res.rows[1].inputs, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(res.rows[3].inputs, (std::vector<double>{0.5, 0.0}));
  for (const auto& row : res.rows) EXPECT_EQ(row.value, row.inputs[0] + 10 * row.inputs[1]);
}

TEST(Sweep, FirstFailureInGridOrderIsRethrown) {
  const Quantity q = toy(false, [](const Params& p, const TruncationPolicy&) -> double {
    if (p.at("x") >= 0.5) throw NumericalError("bad x=" + std::to_string(p.at("x")));
    return 0.0;
  });
  try {
    sweep({{{"x", 0, 1, 5}}, {}}, q, {});
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos);
  }
}

TEST(Sweep, DeterministicAcrossRuns) {
  const Quantity& q = find_quantity("p11_cat_minus");
  const SweepSpec spec{{{"r", 0.0, 2.0, 21}}, {}};
  const SweepResult a = sweep(spec, q, {});
  const SweepResult b = sweep(spec, q, {});
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].value, b.rows[i].value);
}

TEST(Convergence, DimDependentQuantityIsFlagged) {
  const Quantity q = toy(true, [](const Params&, const TruncationPolicy& pol) {
    return 1.0 / pol.for_squeezing(0.5).dim();
  });
  try {
    evaluate_converged(q, {{"x", 0.25}}, {});
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("x=0.25"), std::string::npos);
  }
  const Quantity stable = toy(true, [](const Params& p, const TruncationPolicy&) { return p.at("x"); });
  EXPECT_EQ(evaluate_converged(stable, {{"x", 0.25}}, {}), 0.25);
  EXPECT_THROW(evaluate_converged(stable, {}, {}), UsageError);
  const Quantity nan = toy(false, [](const Params&, const TruncationPolicy&) { return std::nan(""); });
  EXPECT_THROW(evaluate_converged(nan, {{"x", 0.0}}, {}), NumericalError);
}

TEST(Convergence, TinyFixedCutoffFails) {
  TruncationPolicy pol;
  pol.fixed_dim = 8;
  EXPECT_THROW(evaluate_converged(find_quantity("pc_cat_minus"), {{"r", 0.725}}, pol), Error);
}

TEST(Maximize, Parabola) {
  const MaxResult m = maximize_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-7);
  EXPECT_NEAR(m.argmax, 0.3, 1e-6);
  EXPECT_FALSE(m.unimodality_warning);
  const MaxResult two = maximize_1d([](double x) { return std::cos(6 * M_PI * x); }, 0.0, 1.0);
  EXPECT_TRUE(two.unimodality_warning);
  const MaxResult edge = maximize_1d([](double x) { return x; }, 0.0, 2.0);
  EXPECT_NEAR(edge.argmax, 2.0, 1e-4);
  EXPECT_THROW(maximize_1d([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
}

TEST(Maximize, HeraldedEmission) {
  const Quantity& q = find_quantity("emission_cat_minus");
  const MaxResult m = maximize_1d([&](double r) { return q.eval({{"r", r}}, {}); }, 0.0, 2.0, 1e-6);
  EXPECT_NEAR(m.argmax, 1.146216, 1e-4);
  EXPECT_NEAR(m.max, 0.0962250, 1e-7);
}

TEST(Crossing, BisectionAndNoCrossing) {
  auto f = [](double x) { return x * x; };
  auto g = [](double) { return 2.0; };
  EXPECT_NEAR(find_crossing(f, g, 0.0, 2.0, 1e-12), std::sqrt(2.0), 1e-11);
  EXPECT_THROW(find_crossing(f, g, 0.0, 1.0, 1e-6), NoCrossingError);
}

TEST(Registry, SortedAndLookup) {
  const auto& reg = quantity_registry();
  for (std::size_t i = 1; i < reg.size(); ++i) EXPECT_LT(reg[i - 1].name, reg[i].name);
  EXPECT_EQ(find_quantity("g2_tmss").name, "g2_tmss");
  try {
    find_quantity("nope");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("p11_cat_minus"), std::string::npos);
  }
}

TEST(Registry, SmallSqueezingLimits) {
  EXPECT_EQ(find_quantity("pc_squeezed").eval({{"r", 0.0}}, {}), 1.0);
  EXPECT_EQ(find_quantity("pc_cat_plus").eval({{"r", 0.0}}, {}), 0.0);
  EXPECT_NEAR(find_quantity("pc_squeezed").eval({{"r", 1e-3}}, {}), 1.0, 1e-5);
  EXPECT_NEAR(find_quantity("pc_cat_minus").eval({{"r", 0.0}}, {}), 1.0, 1e-15);
  EXPECT_EQ(find_quantity("emission_cat_minus").eval({{"r", 0.0}}, {}), 0.0);
}

TEST(Registry, DominanceOnRGrid) {
  const Quantity& cat = find_quantity("p11_cat_minus");
  const Quantity& tm = find_quantity("p11_tmss");
  const Quantity& pcm = find_quantity("pc_cat_minus");
  const Quantity& pcs = find_quantity("pc_squeezed");
  for (double r = 0.02; r <= 2.0; r += 0.02) {
    EXPECT_GT(cat.eval({{"r", r}}, {}), tm.eval({{"r", r}}, {})) << r;
    EXPECT_GE(pcm.eval({{"r", r}}, {}), pcs.eval({{"r", r}}, {})) << r;
  }
}
