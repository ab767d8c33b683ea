// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optthresh/adaptive_solver.hpp"
#include "optthresh/case_study.hpp"
#include "optthresh/cli.hpp"
#include "optthresh/cusum.hpp"
#include "optthresh/fixed_solver.hpp"
#include "optthresh/game.hpp"
#include "optthresh/io.hpp"
#include "optthresh/oracle.hpp"
#include "optthresh/report.hpp"
#include "support/instances.hpp"

using namespace optthresh;
using optthresh::testing::Instance;
using optthresh::testing::InstanceGenerator;
using optthresh::testing::InstanceShape;

namespace {

// Pinned limits.
constexpr int kFixedInstances = 200;
constexpr int kAdaptiveInstances = 200;
constexpr std::uint64_t kFixedSeed = 1001;
constexpr std::uint64_t kAdaptiveSeed = 2002;
constexpr double kCaseStudySeconds = 5.0;
constexpr double kLargeSeconds = 600.0;
constexpr double kPolyDegree = 4.0;
constexpr double kGrowthSlack = 1.5;  // allowance for timer noise and cache effects
constexpr int kSimTrials = 10000;
constexpr int kSimRunLength = 200;
constexpr double kSimStdErrs = 2.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Outcome fixed_oracle_equivalence() {
  Outcome o;
  InstanceGenerator gen(kFixedSeed);
  for (int i = 0; i < kFixedInstances && o.pass; ++i) {
    const Instance inst = gen.next({1, 8, 1, 4});
    const auto s = solve_fixed(inst.damage, inst.curve, inst.config);
    const auto r = oracle_fixed(inst.damage, inst.curve, inst.config);
    const std::string tag = "instance " + std::to_string(i);
    o.require(s.defender_loss == r.defender_loss, tag + ": loss differs");
    o.require(s.optimal_delay == r.optimal_delay, tag + ": optimal delay differs");
    o.require(s.best_response == r.best_response, tag + ": best response differs");
    o.require(s.attacker_payoff == r.attacker_payoff, tag + ": payoff differs");
  }
  if (o.pass) o.detail = std::to_string(kFixedInstances) + " instances bit-equal";
  return o;
}

Outcome adaptive_oracle_equivalence() {
  Outcome o;
  InstanceGenerator gen(kAdaptiveSeed);
  std::size_t caps = 0, infeasible = 0;
  for (int i = 0; i < kAdaptiveInstances && o.pass; ++i) {
    const Instance inst = gen.next({1, 6, 1, 3});
    const std::string tag = "instance " + std::to_string(i);
    const auto s = solve_adaptive(inst.damage, inst.curve, inst.config);
    const auto r = oracle_adaptive(inst.damage, inst.curve, inst.config);
    o.require(s.defender_loss == r.defender_loss, tag + ": L* differs");
    for (const double p : damage_search_space(inst.damage)) {
      const auto dp = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{p});
      const auto br = oracle_min_cost(inst.damage, inst.curve, inst.config, DamageCap{p});
      o.require(dp.feasible() == br.feasible(), tag + ": feasibility differs at P=" + fmt(p));
      o.require(dp.total_cost == br.total_cost, tag + ": TC differs at P=" + fmt(p));
      ++caps;
      if (!dp.feasible()) ++infeasible;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(kAdaptiveInstances) + " instances, " + std::to_string(caps) + " caps (" +
               std::to_string(infeasible) + " infeasible) bit-equal";
  }
  return o;
}

Outcome toy_instance() {
  Outcome o;
  const auto toy = optthresh::testing::toy_instance();
  const auto f = solve_fixed(toy.damage, toy.curve, toy.config);
  const auto a = solve_adaptive(toy.damage, toy.curve, toy.config);
  o.require(f.optimal_delay == 0, "fixed delta* != 0");
  o.require(f.defender_loss == 4.5, "fixed L* = " + fmt(f.defender_loss));
  o.require(a.schedule == ThresholdSchedule({1, 0, 1}), "adaptive schedule is not [1,0,1]");
  o.require(a.defender_loss == 3.9, "adaptive L* = " + fmt(a.defender_loss));
  if (o.pass) o.detail = "fixed delta*=0 L*=4.5, adaptive [1,0,1] L*=3.9";
  return o;
}

Outcome case_study_shape() {
  Outcome o;
  const DamageSeries d = case_study::damage(case_study::kAlpha);
  const TradeoffCurve c = fit_curve_exponential(case_study::kFpAtZeroDelay, case_study::kMaxDelay,
                                                case_study::kFpAtMaxDelay);
  const GameConfig g{8.0, 10.0, d.horizon()};
  const auto f = solve_fixed(d, c, g);
  const auto a = solve_adaptive(d, c, g);

  // (a) and the pinned bands.
  o.require(a.defender_loss < f.defender_loss,
            "(a) adaptive L*=" + fmt(a.defender_loss) + " not below fixed L*=" + fmt(f.defender_loss));
  o.require(f.optimal_delay >= 3 && f.optimal_delay <= 8, "fixed delta*=" + std::to_string(f.optimal_delay));
  o.require(a.attacker_payoff < f.attacker_payoff, "adaptive P* not below fixed P*");

  // (b) two changes; least sensitive on the night prefix, most sensitive over the morning peak.
  constexpr Timestep kPrefixEnd = 6;
  constexpr Timestep kPeakBegin = 12, kPeakEnd = 15;
  const auto delays = a.schedule.delays();
  const Delay lo = *std::min_element(delays.begin(), delays.end());
  const Delay max_delay = c.delays().back();
  o.require(change_count(a.schedule) == 2, "(b) change count " + std::to_string(change_count(a.schedule)));
  for (Timestep k = 1; k <= kPrefixEnd; ++k) {
    o.require(a.schedule.at(k) == max_delay, "(b) prefix delta(" + std::to_string(k) + ") is not maximal");
  }
  for (Timestep k = kPeakBegin; k <= kPeakEnd; ++k) {
    o.require(a.schedule.at(k) == lo, "(b) peak delta(" + std::to_string(k) + ") is not minimal");
  }
  o.require(lo < max_delay, "(b) schedule never tightens");

  // (c) sweep C_d: the schedule settles to constant and matches the fixed schedule's loss.
  std::vector<double> cd_grid;
  for (int v = 0; v <= 100; v += 5) cd_grid.push_back(v);
  const auto cd_rows = run_sweep(d, c, g, SweepParameter::ChangeCost, cd_grid, {});
  std::size_t knee = cd_rows.size();
  for (std::size_t i = cd_rows.size(); i-- > 0;) {
    if (change_count(cd_rows[i].adaptive.schedule) != 0) break;
    knee = i;
  }
  o.require(knee < cd_rows.size(), "(c) adaptive schedule never becomes constant by C_d=100");
  for (std::size_t i = knee; i < cd_rows.size(); ++i) {
    o.require(cd_rows[i].adaptive.defender_loss == cd_rows[i].fixed_schedule_loss,
              "(c) loss beyond the knee differs from the fixed schedule at C_d=" + fmt(cd_rows[i].value));
    o.require(cd_rows[i].adaptive.schedule == ThresholdSchedule(d.horizon(), cd_rows[i].fixed.optimal_delay),
              "(c) constant schedule is not the fixed optimum at C_d=" + fmt(cd_rows[i].value));
  }
  for (std::size_t i = 1; i < cd_rows.size(); ++i) {
    o.require(cd_rows[i].adaptive.defender_loss >= cd_rows[i - 1].adaptive.defender_loss,
              "(c) adaptive loss decreased in C_d");
  }

  // (d) sweep C with C_d = 8: both losses non-decreasing, adaptive never above fixed.
  std::vector<double> c_grid;
  for (int v = 0; v <= 16; ++v) c_grid.push_back(v);
  const GameConfig g8{8.0, 8.0, d.horizon()};
  const auto c_rows = run_sweep(d, c, g8, SweepParameter::FpCost, c_grid, {});
  for (std::size_t i = 0; i < c_rows.size(); ++i) {
    o.require(c_rows[i].adaptive.defender_loss <= c_rows[i].fixed_schedule_loss,
              "(d) adaptive above fixed at C=" + fmt(c_rows[i].value));
    if (i == 0) continue;
    o.require(c_rows[i].fixed.defender_loss >= c_rows[i - 1].fixed.defender_loss, "(d) fixed loss decreased in C");
    o.require(c_rows[i].adaptive.defender_loss >= c_rows[i - 1].adaptive.defender_loss,
              "(d) adaptive loss decreased in C");
  }

  if (o.pass) {
    std::ostringstream s;
    s << "fixed delta*=" << f.optimal_delay << " L*=" << fmt(f.defender_loss) << " P*=" << fmt(f.attacker_payoff)
      << "; adaptive L*=" << fmt(a.defender_loss) << " P*=" << fmt(a.attacker_payoff) << " k_a*=" << a.best_response
      << " changes at k=";
    const auto times = change_times(a.schedule);
    for (std::size_t i = 0; i < times.size(); ++i) s << (i ? "," : "") << times[i];
    s << "; constant from C_d=" << fmt(cd_rows[knee].value);
    o.detail = s.str();
  }
  return o;
}

DamageSeries synthetic_damage(int horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 20.0);
  std::vector<double> v(static_cast<std::size_t>(horizon));
  for (double& x : v) x = u(rng);
  return DamageSeries(std::move(v));
}

Outcome complexity() {
  Outcome o;
  const TradeoffCurve curve = case_study::curve();
  auto timed = [&](const DamageSeries& d, DpMode mode, AdaptiveSolution* out) {
    const auto t0 = std::chrono::steady_clock::now();
    *out = solve_adaptive(d, curve, GameConfig{8.0, 10.0, d.horizon()}, {mode, 0});
    return seconds_since(t0);
  };

  AdaptiveSolution lazy, eager;
  const double t_case = timed(case_study::damage(), DpMode::Lazy, &lazy);
  o.require(t_case < kCaseStudySeconds, "case study took " + fmt(t_case) + " s");
  timed(case_study::damage(), DpMode::Eager, &eager);
  o.require(lazy.schedule == eager.schedule && lazy.defender_loss == eager.defender_loss,
            "lazy and eager differ on the case study");

  const auto d24 = synthetic_damage(24, 24);
  timed(d24, DpMode::Lazy, &lazy);
  timed(d24, DpMode::Eager, &eager);
  o.require(lazy.schedule == eager.schedule && lazy.defender_loss == eager.defender_loss,
            "lazy and eager differ on the T=24 synthetic instance");

  // Median of three keeps the small-T timing stable.
  auto median_time = [&](int t) {
    const auto d = synthetic_damage(t, static_cast<std::uint64_t>(t));
    std::vector<double> samples;
    AdaptiveSolution s;
    for (int rep = 0; rep < (t <= 48 ? 3 : 1); ++rep) samples.push_back(timed(d, DpMode::Lazy, &s));
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
  };
  const double t24 = median_time(24);
  const double t48 = median_time(48);
  const double t96 = median_time(96);
  const double bound = std::pow(96.0 / 24.0, kPolyDegree) * kGrowthSlack;
  o.require(t96 / t24 <= bound, "runtime grew by " + fmt(t96 / t24) + "x from T=24 to 96 (bound " + fmt(bound) + ")");
  const double slope = std::log(t96 / t24) / std::log(4.0);

  const auto d100 = synthetic_damage(100, 100);
  const double t100 = timed(d100, DpMode::Lazy, &lazy);
  o.require(t100 < kLargeSeconds, "T=100 took " + fmt(t100) + " s");

  if (o.pass) {
    o.detail = "case study " + fmt(t_case) + " s; T=24/48/96: " + fmt(t24) + "/" + fmt(t48) + "/" + fmt(t96) +
               " s (log-log slope " + fmt(slope) + "); T=100 " + fmt(t100) + " s; lazy==eager";
  }
  return o;
}

bool same_bits(const EmpiricalCurve& a, const EmpiricalCurve& b) {
  std::ostringstream x, y;
  write_empirical_csv(x, a);
  write_empirical_csv(y, b);
  return x.str() == y.str();
}

Outcome simulator() {
  Outcome o;
  SimConfig cfg;
  for (int i = 0; i <= 11; ++i) cfg.threshold_grid.push_back(0.5 * i);
  cfg.trials = kSimTrials;
  cfg.run_length = kSimRunLength;
  cfg.seed = 20240601;
  cfg.threads = 1;
  const ObserverModel model{-1.0, 1.0, 1.0};
  const auto a = estimate_curve(model, cfg);
  const auto b = estimate_curve(model, cfg);
  cfg.threads = 4;
  const auto c = estimate_curve(model, cfg);

  o.require(a.points.size() >= 10, "grid has fewer than 10 points");
  int fp_dips = 0, delay_dips = 0;
  for (std::size_t i = 1; i < a.points.size(); ++i) {
    const auto& lo = a.points[i - 1];
    const auto& hi = a.points[i];
    if (hi.fp_rate > lo.fp_rate) ++fp_dips;
    if (hi.mean_delay < lo.mean_delay) ++delay_dips;
    o.require(hi.fp_rate <= lo.fp_rate + kSimStdErrs * std::hypot(lo.fp_stderr, hi.fp_stderr),
              "fp_rate rises beyond 2 SE at eta=" + fmt(hi.threshold));
    o.require(hi.mean_delay >= lo.mean_delay - kSimStdErrs * std::hypot(lo.delay_stderr, hi.delay_stderr),
              "mean delay falls beyond 2 SE at eta=" + fmt(hi.threshold));
  }
  o.require(same_bits(a, b), "same-seed runs differ");
  o.require(same_bits(a, c), "threads=1 and threads=4 differ");

  // Same check through the command line.
  auto cli = [](const char* threads) {
    const char* argv[] = {"optthresh", "simulate-curve", "--eta-grid", "0:5.5:0.5", "--trials", "2000",
                          "--seed",    "5",              "--threads",  threads};
    std::ostringstream out, err;
    optthresh::cli::run_cli(10, argv, out, err);
    return out.str();
  };
  const std::string serial = cli("1");
  o.require(!serial.empty() && serial == cli("3"), "CLI --threads 1 and --threads 3 differ");

  if (o.pass) {
    o.detail = std::to_string(a.points.size()) + " grid points, fp " + fmt(a.points.front().fp_rate) + " -> " +
               fmt(a.points.back().fp_rate) + ", delay " + fmt(a.points.front().mean_delay) + " -> " +
               fmt(a.points.back().mean_delay) + " (raw dips fp/delay: " + std::to_string(fp_dips) + "/" +
               std::to_string(delay_dips) + "); reproducible; thread-independent";
  }
  return o;
}

Outcome structural_invariants() {
  Outcome o;
  InstanceGenerator gen(kAdaptiveSeed);
  for (int i = 0; i < kAdaptiveInstances && o.pass; ++i) {
    const Instance inst = gen.next({1, 6, 1, 3});
    const std::string tag = "instance " + std::to_string(i);
    const int t = inst.damage.horizon();

    const auto a = solve_adaptive(inst.damage, inst.curve, inst.config);
    const auto f = solve_fixed(inst.damage, inst.curve, inst.config);
    const ThresholdSchedule constant(t, f.optimal_delay);
    const auto r = best_response_adaptive(inst.damage, constant);
    o.require(a.defender_loss <= defender_loss_adaptive(inst.damage, inst.curve, inst.config, constant, r.start),
              tag + ": adaptive above fixed");

    double previous = std::numeric_limits<double>::infinity();
    for (const double p : damage_search_space(inst.damage)) {
      const double tc = minimum_cost_thresholds(inst.damage, inst.curve, inst.config, DamageCap{p}).total_cost;
      o.require(tc <= previous, tag + ": TC increased at P=" + fmt(p));
      previous = tc;
    }

    for (int rep = 0; rep < 4; ++rep) {
      const ThresholdSchedule s(gen.schedule_for(inst.curve, t));
      for (int k = 1; k <= t; ++k) {
        o.require(attacker_payoff_adaptive(inst.damage, s, k) >= inst.damage.at(k), tag + ": payoff below D(k_a)");
      }
    }

    std::stringstream dcsv, ccsv;
    write_damage_csv(dcsv, inst.damage);
    write_curve_csv(ccsv, inst.curve);
    o.require(read_damage_csv(dcsv) == inst.damage, tag + ": damage CSV round-trip");
    o.require(read_curve_csv(ccsv) == inst.curve, tag + ": curve CSV round-trip");
  }
  if (o.pass) o.detail = std::to_string(kAdaptiveInstances) + " instances";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence, fixed", fixed_oracle_equivalence},
      {"oracle equivalence, adaptive", adaptive_oracle_equivalence},
      {"hand-derived toy instance", toy_instance},
      {"case study, qualitative", case_study_shape},
      {"complexity sanity", complexity},
      {"simulator properties", simulator},
      {"structural invariants", structural_invariants},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu [%s] %s: %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
