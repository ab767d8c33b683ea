#pragma once

// JSON reports and CSV sweep tables. Reports keep insertion order so the
// same inputs always print the same text; see docs/report-schema.md.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "optthresh/adaptive_solver.hpp"
#include "optthresh/fixed_solver.hpp"
#include "optthresh/types.hpp"

namespace optthresh {

using Json = nlohmann::ordered_json;

Json to_json(const FixedSolution& solution);
Json to_json(const AdaptiveSolution& solution);
Json to_json(const ThresholdSchedule& schedule);
Json to_json(const MinCostResult& result);

// Timesteps k (1-based, k >= 2) at which δ_k differs from δ_{k-1}.
std::vector<Timestep> change_times(const ThresholdSchedule& schedule);

enum class SweepParameter { FpCost, ChangeCost };

struct SweepRow {
  double value = 0.0;
  FixedSolution fixed;
  double fixed_schedule_loss = 0.0;  // δ* held constant, scored as an adaptive schedule
  AdaptiveSolution adaptive;
};

std::vector<SweepRow> run_sweep(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& base,
                                SweepParameter parameter, const std::vector<double>& values,
                                const AdaptiveOptions& options);

void write_sweep_csv(std::ostream& out, SweepParameter parameter, const std::vector<SweepRow>& rows);

// Inclusive grid a, a+step, ..., up to b (tolerant of rounding in the count).
std::vector<double> parse_range(const std::string& text);

}  // namespace optthresh
