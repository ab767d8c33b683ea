#pragma once

// Command-line front end. Subcommands: solve-fixed, solve-adaptive,
// best-response, simulate-curve, sweep and (with --dev) oracle.
//
// Exit codes: 0 success, 1 internal error, 2 parse error (arguments or
// input files), 3 configuration error, 4 infeasible or oracle bound.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optthresh/adaptive_solver.hpp"
#include "optthresh/cusum.hpp"
#include "optthresh/report.hpp"
#include "optthresh/types.hpp"

namespace optthresh::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kConfig = 3,
  kInfeasible = 4,
};

enum class Command { SolveFixed, SolveAdaptive, BestResponse, SimulateCurve, Sweep, Oracle };

enum class OracleGame { Fixed, Adaptive, MinCost };

struct DamageSource {
  std::optional<std::string> damage_csv;
  std::optional<std::string> demand_csv;
  std::optional<double> alpha;
  bool case_study = false;
};

struct CurveSource {
  std::optional<std::string> curve_csv;
  std::optional<std::array<double, 3>> fit_exp;  // fp0, δ_max, fp_max
  std::optional<std::string> sim_csv;
};

struct RunSpec {
  Command command = Command::SolveFixed;
  DamageSource damage;
  CurveSource curve;
  double fp_cost = 0.0;
  double change_cost = 0.0;

  // best-response
  std::optional<Delay> delay;
  std::optional<std::vector<Delay>> schedule;

  // sweep
  SweepParameter sweep_parameter = SweepParameter::ChangeCost;
  std::string sweep_range;

  // simulate-curve
  ObserverModel model;
  SimConfig sim;

  // oracle
  bool dev = false;
  OracleGame oracle_game = OracleGame::Adaptive;
  std::optional<double> cap;

  DpMode dp_mode = DpMode::Lazy;
  unsigned threads = 0;
  bool timing = false;
  std::optional<std::string> output;
};

struct CommandResult {
  int exit_code = kOk;
  std::string output;   // report JSON or CSV table
  std::string message;  // diagnostic on failure
};

// Run one command. Never throws; failures map to exit codes.
CommandResult run_command(const RunSpec& request);

// Parse arguments, run, and write the result to --output or `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optthresh::cli
