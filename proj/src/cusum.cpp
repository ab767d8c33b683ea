#include "optthresh/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "optthresh/csv.hpp"
#include "optthresh/errors.hpp"
#include "optthresh/parallel.hpp"
#include "optthresh/simd/kernels.hpp"

namespace optthresh {

namespace {

// splitmix64 finalizer; gives each trial its own well-mixed seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const std::vector<std::string> kEmpiricalHeader{"eta",          "fp_rate", "fp_stderr", "mean_delay",
                                                "delay_stderr", "censored_fraction"};

}  // namespace

double cusum_update(double previous, double z) {
  const double s = previous + z;
  return s > 0.0 ? s : 0.0;
}

Decision decide(double statistic, double threshold) { return statistic > threshold ? Decision::Attack : Decision::Normal; }

void ObserverModel::validate() const {
  if (!std::isfinite(normal_mean) || !std::isfinite(attack_mean) || !std::isfinite(noise_std)) {
    throw ConfigError("observer model parameters must be finite");
  }
  if (normal_mean >= 0.0) throw ConfigError("observer normal mean must be negative");
  if (attack_mean <= 0.0) throw ConfigError("observer attack mean must be positive");
  if (noise_std <= 0.0) throw ConfigError("observer noise standard deviation must be positive");
}

void SimConfig::validate() const {
  if (threshold_grid.empty()) throw ConfigError("threshold grid is empty");
  for (std::size_t i = 0; i < threshold_grid.size(); ++i) {
    if (!std::isfinite(threshold_grid[i]) || threshold_grid[i] < 0.0) {
      throw ConfigError("thresholds must be finite and non-negative");
    }
    if (i > 0 && threshold_grid[i] <= threshold_grid[i - 1]) {
      throw ConfigError("threshold grid must be strictly ascending");
    }
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (run_length < 2) throw ConfigError("run length must be at least 2");
  const int start = onset();
  if (start < 0 || start >= run_length) throw ConfigError("attack onset must fall inside the run");
}

EmpiricalCurve estimate_curve(const ObserverModel& model, const SimConfig& config) {
  model.validate();
  config.validate();

  const std::size_t grid = config.threshold_grid.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  const int length = config.run_length;
  const int onset = config.onset();

  std::vector<std::uint32_t> alarms(trials * grid, 0);
  std::vector<std::int32_t> first(trials * grid, -1);

  parallel_chunks(trials, config.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    const simd::KernelTable& k = simd::kernels();
    std::vector<double> stat(grid);
    std::vector<std::uint32_t> scratch(grid);
    for (std::size_t trial = begin; trial < end; ++trial) {
      std::mt19937_64 rng(trial_seed(config.seed, trial));
      std::normal_distribution<double> noise(0.0, model.noise_std);
      std::uint32_t* trial_alarms = &alarms[trial * grid];
      std::int32_t* trial_first = &first[trial * grid];

      // Normal-only run: every alarm is a false positive.
      std::fill(stat.begin(), stat.end(), 0.0);
      for (int step = 0; step < length; ++step) {
        const double z = model.normal_mean + noise(rng);
        k.cusum_count_alarms(stat.data(), config.threshold_grid.data(), grid, z, trial_alarms);
      }

      // Attack run: normal prefix, then the shifted mean from `onset`.
      std::fill(stat.begin(), stat.end(), 0.0);
      for (int step = 0; step < length; ++step) {
        if (step < onset) {
          const double z = model.normal_mean + noise(rng);
          k.cusum_count_alarms(stat.data(), config.threshold_grid.data(), grid, z, scratch.data());
        } else {
          const double z = model.attack_mean + noise(rng);
          k.cusum_first_crossing(stat.data(), config.threshold_grid.data(), grid, z, step - onset, trial_first);
        }
      }
    }
  });

  EmpiricalCurve curve;
  curve.points.reserve(grid);
  const double n = static_cast<double>(trials);
  const double steps = static_cast<double>(length);
  for (std::size_t j = 0; j < grid; ++j) {
    std::uint64_t alarm_sum = 0;
    std::uint64_t alarm_sq = 0;
    std::uint64_t detected = 0;
    std::uint64_t delay_sum = 0;
    std::uint64_t delay_sq = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t a = alarms[trial * grid + j];
      alarm_sum += a;
      alarm_sq += a * a;
      const std::int32_t d = first[trial * grid + j];
      if (d >= 0) {
        ++detected;
        delay_sum += static_cast<std::uint64_t>(d);
        delay_sq += static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
      }
    }
    EmpiricalPoint p;
    p.threshold = config.threshold_grid[j];
    p.fp_rate = static_cast<double>(alarm_sum) / (n * steps);
    if (trials > 1) {
      const double s1 = static_cast<double>(alarm_sum);
      const double var = std::max(0.0, (static_cast<double>(alarm_sq) - s1 * s1 / n) / (n - 1.0));
      p.fp_stderr = std::sqrt(var / n) / steps;
    }
    p.censored_fraction = static_cast<double>(trials - detected) / n;
    if (detected == 0) {
      p.mean_delay = std::nan("");
      p.delay_stderr = std::nan("");
    } else {
      const double nd = static_cast<double>(detected);
      const double s1 = static_cast<double>(delay_sum);
      p.mean_delay = s1 / nd;
      if (detected > 1) {
        const double var = std::max(0.0, (static_cast<double>(delay_sq) - s1 * s1 / nd) / (nd - 1.0));
        p.delay_stderr = std::sqrt(var / nd);
      }
    }
    curve.points.push_back(p);
  }
  return curve;
}

TradeoffCurve to_tradeoff_curve(const EmpiricalCurve& empirical) {
  std::vector<CurvePoint> points;
  for (const EmpiricalPoint& p : empirical.points) {
    if (!std::isfinite(p.mean_delay)) continue;
    const auto delay = static_cast<Delay>(std::llround(p.mean_delay));
    if (!points.empty() && delay <= points.back().delay) continue;
    const double fp = points.empty() ? p.fp_rate : std::min(p.fp_rate, points.back().fp);
    points.push_back(CurvePoint{delay, std::clamp(fp, 0.0, 1.0), p.threshold});
  }
  if (points.empty()) {
    throw ConfigError("empirical curve has no threshold with an observed detection");
  }
  return TradeoffCurve(std::move(points));
}

void write_empirical_csv(std::ostream& out, const EmpiricalCurve& curve) {
  for (std::size_t i = 0; i < kEmpiricalHeader.size(); ++i) {
    out << (i ? "," : "") << kEmpiricalHeader[i];
  }
  out << '\n';
  for (const EmpiricalPoint& p : curve.points) {
    out << csv::format_double(p.threshold) << ',' << csv::format_double(p.fp_rate) << ','
        << csv::format_double(p.fp_stderr) << ',' << csv::format_double(p.mean_delay) << ','
        << csv::format_double(p.delay_stderr) << ',' << csv::format_double(p.censored_fraction) << '\n';
  }
}

EmpiricalCurve read_empirical_csv(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::expect_header(table, kEmpiricalHeader, source);
  EmpiricalCurve curve;
  for (const csv::Row& row : table.rows) {
    EmpiricalPoint p;
    p.threshold = csv::parse_double(row.fields[0], source, row.line, "eta");
    p.fp_rate = csv::parse_double(row.fields[1], source, row.line, "fp_rate");
    p.fp_stderr = csv::parse_double(row.fields[2], source, row.line, "fp_stderr");
    p.mean_delay = csv::parse_double(row.fields[3], source, row.line, "mean_delay");
    p.delay_stderr = csv::parse_double(row.fields[4], source, row.line, "delay_stderr");
    p.censored_fraction = csv::parse_double(row.fields[5], source, row.line, "censored_fraction");
    if (!(p.fp_rate >= 0.0 && p.fp_rate <= 1.0)) {
      throw ParseError(source, row.line, "fp_rate outside [0,1]");
    }
    if (!curve.points.empty() && p.threshold <= curve.points.back().threshold) {
      throw ParseError(source, row.line, "eta must be strictly ascending");
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace optthresh
