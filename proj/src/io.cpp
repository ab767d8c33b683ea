#include "optthresh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "optthresh/csv.hpp"
#include "optthresh/errors.hpp"

namespace optthresh {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  return in;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

DamageSeries read_damage_csv(std::istream& in, std::optional<double> alpha, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const bool demand = table.header == std::vector<std::string>{"k", "demand"};
  if (!demand) {
    csv::expect_header(table, {"k", "damage"}, source);
  }
  if (demand && !alpha) {
    throw ConfigError(source + ": demand input needs a scale factor alpha");
  }
  if (!demand && alpha) {
    throw ConfigError(source + ": alpha applies only to demand input");
  }
  if (alpha && (!std::isfinite(*alpha) || *alpha <= 0.0)) {
    throw ConfigError("alpha must be positive");
  }
  const std::string value_column = demand ? "demand" : "damage";

  std::map<long long, double> by_step;
  for (const csv::Row& row : table.rows) {
    const long long k = csv::parse_int(row.fields[0], source, row.line, "k");
    const double v = csv::parse_double(row.fields[1], source, row.line, value_column);
    if (k < 1) throw ParseError(source, row.line, "k must be >= 1");
    if (!std::isfinite(v) || v < 0.0) throw ParseError(source, row.line, value_column + " must be non-negative");
    if (!by_step.emplace(k, v).second) {
      throw ParseError(source, row.line, "duplicate k=" + std::to_string(k));
    }
  }
  if (by_step.empty()) throw ParseError(source, 0, "no data rows");

  std::vector<double> values;
  values.reserve(by_step.size());
  long long expected = 1;
  for (const auto& [k, v] : by_step) {
    if (k != expected) throw ParseError(source, 0, "missing k=" + std::to_string(expected));
    values.push_back(alpha ? *alpha * v : v);
    ++expected;
  }
  return DamageSeries(std::move(values));
}

DamageSeries load_damage_csv(const std::string& path, std::optional<double> alpha) {
  auto in = open_input(path);
  return read_damage_csv(in, alpha, path);
}

void write_damage_csv(std::ostream& out, const DamageSeries& damage) {
  out << "k,damage\n";
  const auto values = damage.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i + 1) << ',' << csv::format_double(values[i]) << '\n';
  }
}

TradeoffCurve read_curve_csv(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const bool with_threshold = table.header == std::vector<std::string>{"delay", "fp", "threshold"};
  if (!with_threshold) {
    csv::expect_header(table, {"delay", "fp"}, source);
  }

  std::map<long long, CurvePoint> by_delay;
  for (const csv::Row& row : table.rows) {
    const long long delay = csv::parse_int(row.fields[0], source, row.line, "delay");
    const double fp = csv::parse_double(row.fields[1], source, row.line, "fp");
    if (delay < 0) throw ParseError(source, row.line, "delay must be non-negative");
    if (!(fp >= 0.0 && fp <= 1.0)) throw ParseError(source, row.line, "fp must lie in [0,1]");
    CurvePoint p{static_cast<Delay>(delay), fp, std::nullopt};
    if (with_threshold && !row.fields[2].empty()) {
      p.threshold = csv::parse_double(row.fields[2], source, row.line, "threshold");
    }
    if (!by_delay.emplace(delay, p).second) {
      throw ParseError(source, row.line, "duplicate delay " + std::to_string(delay));
    }
  }
  if (by_delay.empty()) throw ParseError(source, 0, "no data rows");

  std::vector<CurvePoint> points;
  points.reserve(by_delay.size());
  for (const auto& [delay, p] : by_delay) {
    if (!points.empty() && p.fp > points.back().fp) {
      throw ParseError(source, 0,
                       "fp is not non-increasing: FP(" + std::to_string(delay) + ") > FP(" +
                           std::to_string(points.back().delay) + ")");
    }
    points.push_back(p);
  }
  return TradeoffCurve(std::move(points));
}

TradeoffCurve load_curve_csv(const std::string& path) {
  auto in = open_input(path);
  return read_curve_csv(in, path);
}

void write_curve_csv(std::ostream& out, const TradeoffCurve& curve) {
  bool thresholds = false;
  for (const auto& p : curve.points()) thresholds = thresholds || p.threshold.has_value();
  out << (thresholds ? "delay,fp,threshold\n" : "delay,fp\n");
  for (const auto& p : curve.points()) {
    out << p.delay << ',' << csv::format_double(p.fp);
    if (thresholds) {
      out << ',' << (p.threshold ? csv::format_double(*p.threshold) : std::string());
    }
    out << '\n';
  }
}

TradeoffCurve fit_curve_exponential(double fp0, Delay max_delay, double fp_max) {
  if (!(fp_max > 0.0 && fp_max < fp0 && fp0 <= 1.0)) {
    throw ConfigError("exponential fit needs 0 < fp_max < fp0 <= 1");
  }
  if (max_delay < 1) {
    throw ConfigError("exponential fit needs max delay >= 1");
  }
  const double rate = std::log(fp0 / fp_max) / static_cast<double>(max_delay);
  std::vector<CurvePoint> points;
  points.reserve(static_cast<std::size_t>(max_delay) + 1);
  for (Delay d = 0; d <= max_delay; ++d) {
    double fp = fp0 * std::exp(-rate * static_cast<double>(d));
    if (d == 0) fp = fp0;
    if (d == max_delay) fp = fp_max;
    points.push_back(CurvePoint{d, fp, std::nullopt});
  }
  return TradeoffCurve(std::move(points));
}

std::string content_hash(const DamageSeries& damage) {
  std::ostringstream out;
  write_damage_csv(out, damage);
  return fnv1a(out.str());
}

std::string content_hash(const TradeoffCurve& curve) {
  std::ostringstream out;
  write_curve_csv(out, curve);
  return fnv1a(out.str());
}

}  // namespace optthresh
