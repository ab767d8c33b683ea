#include "optthresh/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "optthresh/case_study.hpp"
#include "optthresh/csv.hpp"
#include "optthresh/errors.hpp"
#include "optthresh/fixed_solver.hpp"
#include "optthresh/game.hpp"
#include "optthresh/io.hpp"
#include "optthresh/oracle.hpp"
#include "optthresh/parallel.hpp"
#include "optthresh/simd/kernels.hpp"

namespace optthresh::cli {

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::SolveFixed:
      return "solve-fixed";
    case Command::SolveAdaptive:
      return "solve-adaptive";
    case Command::BestResponse:
      return "best-response";
    case Command::SimulateCurve:
      return "simulate-curve";
    case Command::Sweep:
      return "sweep";
    case Command::Oracle:
      return "oracle";
  }
  return "?";
}

struct Inputs {
  DamageSeries damage;
  std::optional<TradeoffCurve> curve;
  std::string damage_source;
  std::string curve_source;
};

DamageSeries load_damage(const DamageSource& src, std::string& label) {
  const int sources = (src.damage_csv ? 1 : 0) + (src.demand_csv ? 1 : 0) + (src.case_study ? 1 : 0);
  if (sources != 1) {
    throw ConfigError("give exactly one of --damage, --demand or --case-study");
  }
  if (src.damage_csv) {
    if (src.alpha) throw ConfigError("--alpha applies only to --demand or --case-study");
    label = *src.damage_csv;
    return load_damage_csv(*src.damage_csv);
  }
  if (src.demand_csv) {
    if (!src.alpha) throw ConfigError("--demand needs --alpha");
    label = *src.demand_csv;
    return load_damage_csv(*src.demand_csv, src.alpha);
  }
  label = "case-study";
  return case_study::damage(src.alpha.value_or(case_study::kAlpha));
}

std::optional<TradeoffCurve> load_curve(const CurveSource& src, bool case_study, std::string& label) {
  const int sources = (src.curve_csv ? 1 : 0) + (src.fit_exp ? 1 : 0) + (src.sim_csv ? 1 : 0);
  if (sources > 1) {
    throw ConfigError("give at most one of --curve, --fit-exp or --curve-from-sim");
  }
  if (src.curve_csv) {
    label = *src.curve_csv;
    return load_curve_csv(*src.curve_csv);
  }
  if (src.fit_exp) {
    const auto& f = *src.fit_exp;
    if (f[1] != static_cast<double>(static_cast<Delay>(f[1]))) {
      throw ConfigError("--fit-exp max delay must be an integer");
    }
    label = "fit-exp:" + csv::format_double(f[0]) + "," + csv::format_double(f[1]) + "," + csv::format_double(f[2]);
    return fit_curve_exponential(f[0], static_cast<Delay>(f[1]), f[2]);
  }
  if (src.sim_csv) {
    label = *src.sim_csv;
    std::ifstream in(*src.sim_csv);
    if (!in) throw ParseError(*src.sim_csv, 0, "cannot open file");
    return to_tradeoff_curve(read_empirical_csv(in, *src.sim_csv));
  }
  if (case_study) {
    label = "case-study";
    return case_study::curve();
  }
  return std::nullopt;
}

Inputs load_inputs(const RunSpec& request, bool curve_required) {
  std::string damage_label;
  DamageSeries damage = load_damage(request.damage, damage_label);
  Inputs in{std::move(damage), std::nullopt, damage_label, {}};
  in.curve = load_curve(request.curve, request.damage.case_study, in.curve_source);
  if (curve_required && !in.curve) {
    throw ConfigError("a trade-off curve is required (--curve, --fit-exp or --curve-from-sim)");
  }
  return in;
}

GameConfig game_config(const RunSpec& request, const DamageSeries& damage) {
  GameConfig g{request.fp_cost, request.change_cost, damage.horizon()};
  g.validate();
  return g;
}

Json input_echo(const RunSpec& request, const Inputs& in) {
  Json j;
  j["damage_source"] = in.damage_source;
  j["damage_hash"] = content_hash(in.damage);
  j["horizon"] = in.damage.horizon();
  if (in.curve) {
    j["curve_source"] = in.curve_source;
    j["curve_hash"] = content_hash(*in.curve);
    j["curve_points"] = in.curve->size();
  }
  j["fp_cost"] = request.fp_cost;
  j["change_cost"] = request.change_cost;
  return j;
}

Json adaptive_stats(const AdaptiveStats& s) {
  Json j;
  j["caps_evaluated"] = s.caps_evaluated;
  j["feasible_caps"] = s.feasible_caps;
  j["dp_cells_evaluated"] = s.cells_evaluated;
  return j;
}

std::string run_solve_fixed(const RunSpec& request) {
  const Inputs in = load_inputs(request, true);
  const GameConfig g = game_config(request, in.damage);
  const FixedSolution s = solve_fixed(in.damage, *in.curve, g);
  Json report;
  report["command"] = command_name(request.command);
  report["inputs"] = input_echo(request, in);
  report["solution"] = to_json(s);
  report["best_response_trace"] = fixed_payoff_trace(IntervalSums(in.damage), s.optimal_delay);
  Json stats;
  stats["delays_evaluated"] = in.curve->size();
  report["stats"] = stats;
  return report.dump(2);
}

std::string run_solve_adaptive(const RunSpec& request) {
  const Inputs in = load_inputs(request, true);
  const GameConfig g = game_config(request, in.damage);
  const AdaptiveSolution s = solve_adaptive(in.damage, *in.curve, g, AdaptiveOptions{request.dp_mode, request.threads});
  Json report;
  report["command"] = command_name(request.command);
  Json inputs = input_echo(request, in);
  inputs["dp_mode"] = request.dp_mode == DpMode::Lazy ? "lazy" : "eager";
  report["inputs"] = inputs;
  report["solution"] = to_json(s);
  report["best_response_trace"] = adaptive_payoff_trace(in.damage, s.schedule);
  report["stats"] = adaptive_stats(s.stats);
  return report.dump(2);
}

std::string run_best_response(const RunSpec& request) {
  if (request.delay.has_value() == request.schedule.has_value()) {
    throw ConfigError("best-response needs exactly one of --delay or --schedule");
  }
  const Inputs in = load_inputs(request, false);
  const GameConfig g = game_config(request, in.damage);
  Json report;
  report["command"] = command_name(request.command);
  report["inputs"] = input_echo(request, in);
  Json result;
  if (request.delay) {
    if (in.curve && !in.curve->contains(*request.delay)) {
      throw ContractViolation("delay " + std::to_string(*request.delay) + " is not on the trade-off curve");
    }
    const IntervalSums sums(in.damage);
    const BestResponse r = best_response_fixed(sums, *request.delay);
    result["delay"] = *request.delay;
    result["best_response"] = r.start;
    result["attacker_payoff"] = r.payoff;
    if (in.curve) result["defender_loss"] = defender_loss_fixed(in.damage, *in.curve, g, *request.delay, r.start);
    report["result"] = result;
    report["best_response_trace"] = fixed_payoff_trace(sums, *request.delay);
  } else {
    const ThresholdSchedule schedule(*request.schedule);
    if (schedule.horizon() != in.damage.horizon()) {
      throw ContractViolation("--schedule needs " + std::to_string(in.damage.horizon()) + " entries");
    }
    const BestResponse r = best_response_adaptive(in.damage, schedule);
    result["schedule"] = to_json(schedule);
    result["best_response"] = r.start;
    result["attacker_payoff"] = r.payoff;
    if (in.curve) {
      result["total_cost"] = schedule_cost(*in.curve, g, schedule);
      result["defender_loss"] = defender_loss_adaptive(in.damage, *in.curve, g, schedule, r.start);
    }
    report["result"] = result;
    report["best_response_trace"] = adaptive_payoff_trace(in.damage, schedule);
  }
  return report.dump(2);
}

std::string run_simulate(const RunSpec& request) {
  SimConfig cfg = request.sim;
  cfg.threads = request.threads;
  const EmpiricalCurve curve = estimate_curve(request.model, cfg);
  std::ostringstream out;
  write_empirical_csv(out, curve);
  return out.str();
}

std::string run_sweep_command(const RunSpec& request) {
  const Inputs in = load_inputs(request, true);
  const GameConfig g = game_config(request, in.damage);
  if (request.sweep_range.empty()) throw ConfigError("sweep needs --sweep-range a:b:step");
  const std::vector<double> values = parse_range(request.sweep_range);
  const auto rows =
      run_sweep(in.damage, *in.curve, g, request.sweep_parameter, values, AdaptiveOptions{request.dp_mode, request.threads});
  std::ostringstream out;
  write_sweep_csv(out, request.sweep_parameter, rows);
  return out.str();
}

std::string run_oracle(const RunSpec& request, int& exit_code) {
  if (!request.dev) {
    throw ConfigError("oracle is a development command; pass --dev to enable it");
  }
  const Inputs in = load_inputs(request, true);
  const GameConfig g = game_config(request, in.damage);
  Json report;
  report["command"] = command_name(request.command);
  report["inputs"] = input_echo(request, in);
  switch (request.oracle_game) {
    case OracleGame::Fixed:
      report["game"] = "fixed";
      report["solution"] = to_json(oracle_fixed(in.damage, *in.curve, g));
      break;
    case OracleGame::Adaptive:
      report["game"] = "adaptive";
      report["solution"] = to_json(oracle_adaptive(in.damage, *in.curve, g));
      break;
    case OracleGame::MinCost: {
      if (!request.cap) throw ConfigError("oracle --game min-cost needs --cap");
      report["game"] = "min-cost";
      report["cap"] = *request.cap;
      const MinCostResult r = oracle_min_cost(in.damage, *in.curve, g, DamageCap{*request.cap});
      report["solution"] = to_json(r);
      if (!r.feasible()) exit_code = kInfeasible;
      break;
    }
  }
  return report.dump(2);
}

// Appends wall time to a JSON report; CSV output is left untouched.
std::string with_timing(const std::string& text, double seconds, const RunSpec& request) {
  if (text.empty() || text.front() != '{') return text;
  Json report = Json::parse(text);
  Json runtime;
  runtime["wall_seconds"] = seconds;
  runtime["isa"] = std::string(simd::isa_name(simd::active_isa()));
  runtime["threads"] = resolve_threads(request.threads);
  report["runtime"] = runtime;
  return report.dump(2);
}

}  // namespace

CommandResult run_command(const RunSpec& request) {
  CommandResult result;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (request.command) {
      case Command::SolveFixed:
        result.output = run_solve_fixed(request);
        break;
      case Command::SolveAdaptive:
        result.output = run_solve_adaptive(request);
        break;
      case Command::BestResponse:
        result.output = run_best_response(request);
        break;
      case Command::SimulateCurve:
        result.output = run_simulate(request);
        break;
      case Command::Sweep:
        result.output = run_sweep_command(request);
        break;
      case Command::Oracle:
        result.output = run_oracle(request, result.exit_code);
        break;
    }
    if (!result.output.empty() && result.output.back() != '\n') result.output += '\n';
    if (request.timing) {
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      result.output = with_timing(result.output, seconds, request);
      if (result.output.back() != '\n') result.output += '\n';
    }
    if (result.exit_code == kInfeasible) result.message = "no schedule satisfies the damage cap";
  } catch (const ParseError& e) {
    result = {kParse, {}, e.what()};
  } catch (const ConfigError& e) {
    result = {kConfig, {}, e.what()};
  } catch (const ContractViolation& e) {
    result = {kConfig, {}, e.what()};
  } catch (const BoundExceeded& e) {
    result = {kInfeasible, {}, e.what()};
  } catch (const Infeasible& e) {
    result = {kInfeasible, {}, e.what()};
  } catch (const std::exception& e) {
    result = {kInternal, {}, e.what()};
  }
  return result;
}

namespace {

std::vector<Delay> parse_delay_list(const std::string& text) {
  std::vector<Delay> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string field = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const long long v = csv::parse_int(field, "--schedule", 0, "delay");
    if (v < 0) throw ParseError("--schedule", 0, "delays must be non-negative");
    out.push_back(static_cast<Delay>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::array<double, 3> parse_fit(const std::string& text) {
  std::array<double, 3> out{};
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto comma = text.find(',', start);
    if ((i < 2) == (comma == std::string::npos)) {
      throw ParseError("--fit-exp", 0, "expected fp0,dmax,fpmax");
    }
    out[i] = csv::parse_double(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start),
                               "--fit-exp", 0, "value");
    start = comma + 1;
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal fixed and adaptive detection thresholds against a worst-case attacker"};
  app.require_subcommand(1);

  RunSpec request;
  std::string damage_csv, demand_csv, curve_csv, fit_exp, sim_csv, output, dp_mode = "lazy";
  std::string schedule_text, sweep_param = "Cd", oracle_game = "adaptive", eta_grid = "0:10:1";
  double alpha = 0.0, cap = 0.0;
  int delay = 0;
  std::uint64_t seed = 1;
  int onset = -1;

  auto add_inputs = [&](CLI::App* sub, bool with_costs) {
    sub->add_option("--damage", damage_csv, "CSV with header k,damage");
    sub->add_option("--demand", demand_csv, "CSV with header k,demand (needs --alpha)");
    sub->add_option("--alpha", alpha, "damage per unit demand");
    sub->add_flag("--case-study", request.damage.case_study, "use the bundled 24-hour water demand case study");
    sub->add_option("--curve", curve_csv, "CSV with header delay,fp");
    sub->add_option("--fit-exp", fit_exp, "exponential curve through fp0,dmax,fpmax");
    sub->add_option("--curve-from-sim", sim_csv, "simulate-curve output to convert into a curve");
    if (with_costs) {
      sub->add_option("--fp-cost", request.fp_cost, "cost C per unit false-positive rate per timestep");
      sub->add_option("--change-cost", request.change_cost, "cost C_d per threshold change");
    }
    sub->add_option("--output", output, "write the result here instead of stdout");
    sub->add_flag("--timing", request.timing, "append wall-clock runtime to JSON reports");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--threads", request.threads, "worker threads (0 = all cores)");
    sub->add_option("--dp-mode", dp_mode, "lazy or eager dynamic program")->check(CLI::IsMember({"lazy", "eager"}));
  };

  auto* fixed = app.add_subcommand("solve-fixed", "optimal fixed threshold");
  add_inputs(fixed, true);
  auto* adaptive = app.add_subcommand("solve-adaptive", "optimal adaptive threshold schedule");
  add_inputs(adaptive, true);
  add_solver(adaptive);
  auto* response = app.add_subcommand("best-response", "attacker best response to a delay or schedule");
  add_inputs(response, true);
  auto* delay_opt = response->add_option("--delay", delay, "fixed detection delay");
  auto* schedule_opt = response->add_option("--schedule", schedule_text, "comma-separated per-step delays");
  auto* simulate = app.add_subcommand("simulate-curve", "Monte Carlo CUSUM delay/false-positive curve");
  simulate->add_option("--mu0", request.model.normal_mean, "observer mean under normal operation (< 0)");
  simulate->add_option("--mu1", request.model.attack_mean, "observer mean under attack (> 0)");
  simulate->add_option("--sigma", request.model.noise_std, "observer noise standard deviation");
  simulate->add_option("--eta-grid", eta_grid, "threshold grid a:b:step");
  simulate->add_option("--trials", request.sim.trials, "Monte Carlo trials");
  simulate->add_option("--run-length", request.sim.run_length, "timesteps per run");
  simulate->add_option("--onset", onset, "attack onset step in the attack run (default run-length/2)");
  simulate->add_option("--seed", seed, "master RNG seed");
  simulate->add_option("--threads", request.threads, "worker threads (0 = all cores)");
  simulate->add_option("--output", output, "write the CSV here instead of stdout");
  auto* sweep = app.add_subcommand("sweep", "re-solve both games over a grid of C or C_d");
  add_inputs(sweep, true);
  add_solver(sweep);
  sweep->add_option("--sweep-param", sweep_param, "C or Cd")->check(CLI::IsMember({"C", "Cd"}));
  sweep->add_option("--sweep-range", request.sweep_range, "grid a:b:step (inclusive)");
  auto* oracle = app.add_subcommand("oracle", "brute-force reference solver (development only)");
  add_inputs(oracle, true);
  oracle->add_flag("--dev", request.dev, "acknowledge the development-only command");
  oracle->add_option("--game", oracle_game, "fixed, adaptive or min-cost")
      ->check(CLI::IsMember({"fixed", "adaptive", "min-cost"}));
  auto* cap_opt = oracle->add_option("--cap", cap, "damage cap for --game min-cost");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }

  CommandResult result;
  try {
    if (*fixed) request.command = Command::SolveFixed;
    if (*adaptive) request.command = Command::SolveAdaptive;
    if (*response) request.command = Command::BestResponse;
    if (*simulate) request.command = Command::SimulateCurve;
    if (*sweep) request.command = Command::Sweep;
    if (*oracle) request.command = Command::Oracle;

    if (!damage_csv.empty()) request.damage.damage_csv = damage_csv;
    if (!demand_csv.empty()) request.damage.demand_csv = demand_csv;
    if (alpha != 0.0) request.damage.alpha = alpha;
    if (!curve_csv.empty()) request.curve.curve_csv = curve_csv;
    if (!fit_exp.empty()) request.curve.fit_exp = parse_fit(fit_exp);
    if (!sim_csv.empty()) request.curve.sim_csv = sim_csv;
    if (!output.empty()) request.output = output;
    request.dp_mode = dp_mode == "eager" ? DpMode::Eager : DpMode::Lazy;
    if (*delay_opt) request.delay = delay;
    if (*schedule_opt) request.schedule = parse_delay_list(schedule_text);
    request.sweep_parameter = sweep_param == "C" ? SweepParameter::FpCost : SweepParameter::ChangeCost;
    request.oracle_game = oracle_game == "fixed"      ? OracleGame::Fixed
                       : oracle_game == "min-cost" ? OracleGame::MinCost
                                                   : OracleGame::Adaptive;
    if (*cap_opt) request.cap = cap;
    if (*simulate) {
      request.sim.threshold_grid = parse_range(eta_grid);
      request.sim.seed = seed;
      if (onset >= 0) request.sim.attack_onset = onset;
    }
    result = run_command(request);
  } catch (const ParseError& e) {
    result = {kParse, {}, e.what()};
  } catch (const ConfigError& e) {
    result = {kConfig, {}, e.what()};
  }

  if (!result.message.empty()) {
    err << "error: " << result.message << '\n';
  }
  if (!result.output.empty()) {
    if (request.output) {
      std::ofstream file(*request.output);
      if (!file) {
        err << "error: cannot write " << *request.output << '\n';
        return kConfig;
      }
      file << result.output;
    } else {
      out << result.output;
    }
  }
  return result.exit_code;
}

}  // namespace optthresh::cli
