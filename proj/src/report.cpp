#include "optthresh/report.hpp"

#include <cmath>
#include <ostream>

#include "optthresh/csv.hpp"
#include "optthresh/errors.hpp"
#include "optthresh/game.hpp"

namespace optthresh {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::vector<Timestep> change_times(const ThresholdSchedule& schedule) {
  std::vector<Timestep> out;
  const auto delays = schedule.delays();
  for (std::size_t k = 1; k < delays.size(); ++k) {
    if (delays[k] != delays[k - 1]) out.push_back(static_cast<Timestep>(k + 1));
  }
  return out;
}

Json to_json(const ThresholdSchedule& schedule) {
  Json j;
  j["delays"] = std::vector<Delay>(schedule.delays().begin(), schedule.delays().end());
  j["change_count"] = change_count(schedule);
  j["change_times"] = change_times(schedule);
  return j;
}

Json to_json(const FixedSolution& s) {
  Json j;
  j["optimal_delay"] = s.optimal_delay;
  j["defender_loss"] = s.defender_loss;
  j["best_response"] = s.best_response;
  j["attacker_payoff"] = s.attacker_payoff;
  return j;
}

Json to_json(const AdaptiveSolution& s) {
  Json j;
  j["schedule"] = to_json(s.schedule);
  j["total_cost"] = s.total_cost;
  j["defender_loss"] = s.defender_loss;
  j["best_response"] = s.best_response;
  j["attacker_payoff"] = s.attacker_payoff;
  j["chosen_cap"] = s.chosen_cap.value;
  return j;
}

Json to_json(const MinCostResult& r) {
  Json j;
  j["feasible"] = r.feasible();
  j["total_cost"] = number_or_null(r.total_cost);
  j["schedule"] = r.schedule ? to_json(*r.schedule) : Json(nullptr);
  return j;
}

std::vector<SweepRow> run_sweep(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& base,
                                SweepParameter parameter, const std::vector<double>& values,
                                const AdaptiveOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    GameConfig config = base;
    (parameter == SweepParameter::FpCost ? config.fp_cost : config.change_cost) = v;
    SweepRow row;
    row.value = v;
    row.fixed = solve_fixed(damage, curve, config);
    const ThresholdSchedule constant(damage.horizon(), row.fixed.optimal_delay);
    const BestResponse response = best_response_adaptive(damage, constant);
    row.fixed_schedule_loss = defender_loss_adaptive(damage, curve, config, constant, response.start);
    row.adaptive = solve_adaptive(damage, curve, config, options);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, SweepParameter parameter, const std::vector<SweepRow>& rows) {
  out << (parameter == SweepParameter::FpCost ? "fp_cost" : "change_cost")
      << ",fixed_delay,fixed_loss,fixed_payoff,fixed_schedule_loss,adaptive_loss,adaptive_total_cost,"
         "adaptive_payoff,adaptive_changes\n";
  for (const SweepRow& r : rows) {
    out << csv::format_double(r.value) << ',' << r.fixed.optimal_delay << ',' << csv::format_double(r.fixed.defender_loss)
        << ',' << csv::format_double(r.fixed.attacker_payoff) << ',' << csv::format_double(r.fixed_schedule_loss) << ','
        << csv::format_double(r.adaptive.defender_loss) << ',' << csv::format_double(r.adaptive.total_cost) << ','
        << csv::format_double(r.adaptive.attacker_payoff) << ',' << change_count(r.adaptive.schedule) << '\n';
  }
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string field = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    parts.push_back(csv::parse_double(field, "range '" + text + "'", 0, "value"));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) {
    throw ConfigError("range must look like a:b:step, got '" + text + "'");
  }
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step)) || step <= 0.0 || hi < lo) {
    throw ConfigError("range needs finite a <= b and step > 0, got '" + text + "'");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(lo + static_cast<double>(i) * step);
  }
  return values;
}

}  // namespace optthresh
