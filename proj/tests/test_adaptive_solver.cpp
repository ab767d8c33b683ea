#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "optthresh/adaptive_solver.hpp"
#include "optthresh/errors.hpp"
#include "optthresh/fixed_solver.hpp"
#include "optthresh/game.hpp"
#include "optthresh/oracle.hpp"
#include "support/instances.hpp"

using namespace optthresh;
using optthresh::testing::InstanceGenerator;
using optthresh::testing::InstanceShape;
using optthresh::testing::toy_instance;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Only for comparisons against decimal literals; solver-vs-oracle checks are exact.
constexpr double kLiteralTol = 1e-12;

}  // namespace

TEST(DamageSearchSpace, Examples) {
  EXPECT_EQ(damage_search_space(DamageSeries({1.0, 2.0, 3.0})), (std::vector<double>{1, 2, 3, 5, 6}));
  EXPECT_EQ(damage_search_space(DamageSeries({0.0, 0.0})), (std::vector<double>{0}));
  EXPECT_EQ(damage_search_space(DamageSeries({4.0})), (std::vector<double>{4}));
}

TEST(DamageSearchSpace, SortedUniqueAndBounded) {
  InstanceGenerator gen(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = gen.next({1, 20, 1, 1});
    const auto space = damage_search_space(inst.damage);
    const auto t = static_cast<std::size_t>(inst.damage.horizon());
    ASSERT_LE(space.size(), t * (t + 1) / 2);
    for (std::size_t i = 1; i < space.size(); ++i) ASSERT_LT(space[i - 1], space[i]);
    ASSERT_EQ(space.back(), total_damage(inst.damage, 1, inst.damage.horizon()));
  }
}

TEST(MinimumCostThresholds, ToyInstance) {
  const auto toy = toy_instance();
  for (const DpMode mode : {DpMode::Lazy, DpMode::Eager}) {
    const auto p3 = minimum_cost_thresholds(toy.damage, toy.curve, toy.config, DamageCap{3.0}, mode);
    ASSERT_TRUE(p3.feasible());
    EXPECT_NEAR(p3.total_cost, 0.9, kLiteralTol);
    EXPECT_EQ(*p3.schedule, ThresholdSchedule({1, 0, 1}));

    const auto p2 = minimum_cost_thresholds(toy.damage, toy.curve, toy.config, DamageCap{2.0}, mode);
    EXPECT_FALSE(p2.feasible());
    EXPECT_EQ(p2.total_cost, kInf);

    const auto p6 = minimum_cost_thresholds(toy.damage, toy.curve, toy.config, DamageCap{6.0}, mode);
    ASSERT_TRUE(p6.feasible());
    EXPECT_NEAR(p6.total_cost, 0.3, kLiteralTol);
    EXPECT_EQ(*p6.schedule, ThresholdSchedule({1, 1, 1}));
  }
}

TEST(MinimumCostThresholds, TerminalWindowIsConstrained) {
  // With only δ = 5 available nothing is ever detected; the full-horizon
  // attack must still respect the cap.
  const DamageSeries d({1.0, 1.0, 1.0});
  const TradeoffCurve curve({{5, 0.0, {}}});
  const GameConfig g{1.0, 0.0, 3};
  EXPECT_FALSE(minimum_cost_thresholds(d, curve, g, DamageCap{2.0}).feasible());
  EXPECT_TRUE(minimum_cost_thresholds(d, curve, g, DamageCap{3.0}).feasible());
}

TEST(MinimumCostThresholds, MatchesOracleOnEveryCap) {
  InstanceGenerator gen(42);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = gen.next({1, 6, 1, 3});
    for (const double p : damage_search_space(inst.damage)) {
      const auto dp = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{p});
      const auto o = oracle_min_cost(inst.damage, inst.curve, inst.config, DamageCap{p});
      ASSERT_EQ(dp.feasible(), o.feasible()) << "trial " << trial << " P=" << p;
      ASSERT_EQ(dp.total_cost, o.total_cost) << "trial " << trial << " P=" << p;
      if (dp.feasible()) {
        ASSERT_EQ(schedule_cost(inst.curve, inst.config, *dp.schedule), dp.total_cost);
        ASSERT_LE(best_response_adaptive(inst.damage, *dp.schedule).payoff, p);
      }
    }
  }
}

TEST(MinimumCostThresholds, LazyAndEagerAgreeBitwise) {
  InstanceGenerator gen(43);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = gen.next({1, 14, 1, 6});
    for (const double p : damage_search_space(inst.damage)) {
      const auto lazy = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{p}, DpMode::Lazy);
      const auto eager = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{p}, DpMode::Eager);
      ASSERT_EQ(lazy.total_cost, eager.total_cost);
      ASSERT_EQ(lazy.schedule, eager.schedule);
      ASSERT_LE(lazy.cells_evaluated, eager.cells_evaluated);
    }
  }
}

TEST(MinimumCostThresholds, MonotoneAndPiecewiseConstant) {
  InstanceGenerator gen(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = gen.next({1, 8, 1, 4});
    const auto space = damage_search_space(inst.damage);
    double previous = kInf;
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double tc = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{space[i]}).total_cost;
      ASSERT_LE(tc, previous);
      previous = tc;
      if (i + 1 < space.size()) {
        const double mid = space[i] + (space[i + 1] - space[i]) / 2.0;
        ASSERT_EQ(minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{mid}).total_cost, tc);
      }
    }
    const double below = space.front() > 0.0 ? space.front() / 2.0 : -1.0;
    ASSERT_EQ(minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{below}).total_cost, kInf);
  }
}

TEST(CostProfile, MatchesSingleEvaluationsForAnyThreadCount) {
  InstanceGenerator gen(45);
  const auto inst = gen.next({10, 10, 4, 4});
  const auto space = damage_search_space(inst.damage);
  const auto serial = cost_profile(inst.damage, inst.curve, inst.config, space, {DpMode::Lazy, 1});
  const auto parallel = cost_profile(inst.damage, inst.curve, inst.config, space, {DpMode::Lazy, 4});
  ASSERT_EQ(serial, parallel);
  for (std::size_t i = 0; i < space.size(); ++i) {
    ASSERT_EQ(serial[i], minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{space[i]}).total_cost);
  }
}

TEST(SolveAdaptive, ToyInstance) {
  const auto toy = toy_instance();
  const auto s = solve_adaptive(toy.damage, toy.curve, toy.config);
  EXPECT_EQ(s.schedule, ThresholdSchedule({1, 0, 1}));
  EXPECT_EQ(s.defender_loss, 3.9);
  EXPECT_EQ(s.attacker_payoff, 3.0);
  EXPECT_EQ(s.best_response, 1);
  EXPECT_EQ(s.chosen_cap.value, 3.0);
  EXPECT_EQ(s.stats.caps_evaluated, 5u);
  EXPECT_EQ(s.stats.feasible_caps, 3u);
}

TEST(SolveAdaptive, LargeChangeCostGivesFixedSchedule) {
  const auto toy = toy_instance();
  GameConfig g = toy.config;
  g.change_cost = 100.0;
  const auto s = solve_adaptive(toy.damage, toy.curve, g);
  const auto f = solve_fixed(toy.damage, toy.curve, g);
  EXPECT_EQ(change_count(s.schedule), 0);
  EXPECT_EQ(s.schedule, ThresholdSchedule(3, f.optimal_delay));
  EXPECT_EQ(s.defender_loss, defender_loss_adaptive(toy.damage, toy.curve, g, s.schedule, s.best_response));
}

TEST(SolveAdaptive, MatchesOracle) {
  InstanceGenerator gen(46);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = gen.next({1, 6, 1, 3});
    const auto s = solve_adaptive(inst.damage, inst.curve, inst.config);
    const auto o = oracle_adaptive(inst.damage, inst.curve, inst.config);
    ASSERT_EQ(s.defender_loss, o.defender_loss) << "trial " << trial;
  }
}

TEST(SolveAdaptive, SolutionInvariants) {
  InstanceGenerator gen(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = gen.next({1, 12, 1, 6});
    const auto s = solve_adaptive(inst.damage, inst.curve, inst.config);
    ASSERT_EQ(s.defender_loss, s.total_cost + s.chosen_cap.value);
    ASSERT_LE(s.attacker_payoff, s.chosen_cap.value);
    ASSERT_EQ(s.total_cost, schedule_cost(inst.curve, inst.config, s.schedule));
    ASSERT_EQ(attacker_payoff_adaptive(inst.damage, s.schedule, s.best_response), s.attacker_payoff);
    const auto space = damage_search_space(inst.damage);
    ASSERT_TRUE(std::binary_search(space.begin(), space.end(), s.chosen_cap.value));

    const auto f = solve_fixed(inst.damage, inst.curve, inst.config);
    const ThresholdSchedule constant(inst.damage.horizon(), f.optimal_delay);
    const auto r = best_response_adaptive(inst.damage, constant);
    ASSERT_LE(s.defender_loss, defender_loss_adaptive(inst.damage, inst.curve, inst.config, constant, r.start));
  }
}

TEST(SolveAdaptive, DeterministicAcrossModesAndThreads) {
  InstanceGenerator gen(48);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = gen.next({6, 16, 2, 8});
    const auto a = solve_adaptive(inst.damage, inst.curve, inst.config, {DpMode::Lazy, 1});
    const auto b = solve_adaptive(inst.damage, inst.curve, inst.config, {DpMode::Eager, 3});
    ASSERT_EQ(a.schedule, b.schedule);
    ASSERT_EQ(a.defender_loss, b.defender_loss);
    ASSERT_EQ(a.chosen_cap.value, b.chosen_cap.value);
    ASSERT_EQ(a.best_response, b.best_response);
    ASSERT_EQ(a.stats.caps_evaluated, b.stats.caps_evaluated);
    ASSERT_EQ(a.stats.feasible_caps, b.stats.feasible_caps);
  }
}

TEST(BestResponseAdaptive, Examples) {
  const DamageSeries d({1.0, 2.0, 3.0});
  const auto a = best_response_adaptive(d, ThresholdSchedule({1, 0, 1}));
  EXPECT_EQ(a.start, 1);
  EXPECT_EQ(a.payoff, 3.0);
  const auto b = best_response_adaptive(d, ThresholdSchedule({1, 1, 1}));
  EXPECT_EQ(b.start, 2);
  EXPECT_EQ(b.payoff, 5.0);
  const auto c = best_response_adaptive(DamageSeries({5.0}), ThresholdSchedule({0}));
  EXPECT_EQ(c.start, 1);
  EXPECT_EQ(c.payoff, 5.0);
  EXPECT_THROW(best_response_adaptive(d, ThresholdSchedule(std::vector<Delay>{0, 0})), ContractViolation);
}

TEST(BestResponseAdaptive, TraceMatchesPayoffs) {
  InstanceGenerator gen(49);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = gen.next({1, 12, 1, 5});
    const ThresholdSchedule s(gen.schedule_for(inst.curve, inst.damage.horizon()));
    const auto trace = adaptive_payoff_trace(inst.damage, s);
    const auto best = best_response_adaptive(inst.damage, s);
    for (int k = 1; k <= inst.damage.horizon(); ++k) {
      const double v = attacker_payoff_adaptive(inst.damage, s, k);
      ASSERT_EQ(trace[static_cast<std::size_t>(k - 1)], v);
      ASSERT_LE(v, best.payoff);
      if (k < best.start) {
        ASSERT_LT(v, best.payoff);
      }
    }
  }
}
