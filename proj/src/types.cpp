#include "optthresh/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optthresh/errors.hpp"

namespace optthresh {

DamageSeries::DamageSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ContractViolation("damage series must cover at least one timestep");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw ContractViolation("damage at k=" + std::to_string(i + 1) + " must be finite and non-negative");
    }
  }
}

double DamageSeries::at(Timestep k) const {
  if (k < 1 || k > horizon()) {
    throw ContractViolation("timestep " + std::to_string(k) + " outside horizon 1.." + std::to_string(horizon()));
  }
  return values_[static_cast<std::size_t>(k - 1)];
}

TradeoffCurve::TradeoffCurve(std::vector<CurvePoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const CurvePoint& p = points_[i];
    if (p.delay < 0) {
      throw ContractViolation("curve delay must be non-negative");
    }
    if (!std::isfinite(p.fp) || p.fp < 0.0 || p.fp > 1.0) {
      throw ContractViolation("curve fp at delay " + std::to_string(p.delay) + " outside [0,1]");
    }
    if (i > 0) {
      if (p.delay <= points_[i - 1].delay) {
        throw ContractViolation("curve delays must be strictly increasing");
      }
      if (p.fp > points_[i - 1].fp) {
        throw ContractViolation("curve fp must be non-increasing in delay");
      }
    }
  }
}

std::optional<std::size_t> TradeoffCurve::index_of(Delay delay) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), delay,
                             [](const CurvePoint& p, Delay d) { return p.delay < d; });
  if (it == points_.end() || it->delay != delay) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - points_.begin());
}

double TradeoffCurve::fp(Delay delay) const {
  auto idx = index_of(delay);
  if (!idx) {
    throw ContractViolation("delay " + std::to_string(delay) + " is not on the trade-off curve");
  }
  return points_[*idx].fp;
}

std::vector<Delay> TradeoffCurve::delays() const {
  std::vector<Delay> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.delay);
  return out;
}

void GameConfig::validate() const {
  if (!std::isfinite(fp_cost) || fp_cost < 0.0) {
    throw ConfigError("false-alarm cost C must be finite and non-negative");
  }
  if (!std::isfinite(change_cost) || change_cost < 0.0) {
    throw ConfigError("threshold-change cost C_d must be finite and non-negative");
  }
  if (horizon < 1) {
    throw ConfigError("horizon T must be at least 1");
  }
}

void GameConfig::validate_against(const DamageSeries& damage) const {
  validate();
  if (horizon != damage.horizon()) {
    throw ConfigError("config horizon " + std::to_string(horizon) + " does not match damage series length " +
                      std::to_string(damage.horizon()));
  }
}

ThresholdSchedule::ThresholdSchedule(std::vector<Delay> delays) : delays_(std::move(delays)) {
  if (delays_.empty()) {
    throw ContractViolation("schedule must cover at least one timestep");
  }
  for (Delay d : delays_) {
    if (d < 0) throw ContractViolation("schedule delays must be non-negative");
  }
}

ThresholdSchedule::ThresholdSchedule(int horizon, Delay delay)
    : ThresholdSchedule(std::vector<Delay>(static_cast<std::size_t>(std::max(horizon, 0)), delay)) {}

Delay ThresholdSchedule::at(Timestep k) const {
  if (k < 1 || k > horizon()) {
    throw ContractViolation("timestep " + std::to_string(k) + " outside schedule horizon");
  }
  return delays_[static_cast<std::size_t>(k - 1)];
}

}  // namespace optthresh
