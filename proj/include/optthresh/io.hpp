#pragma once

// CSV ingestion and emission for damage series and trade-off curves, the
// two-point exponential curve fit, and content hashes for reports.
//
// Damage CSV:  header `k,damage` (or `k,demand`, scaled by α), one row per
//              timestep, k contiguous from 1. Row order is free.
// Curve CSV:   header `delay,fp` or `delay,fp,threshold`; delays distinct
//              non-negative integers, fp in [0,1] and non-increasing in delay.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "optthresh/types.hpp"

namespace optthresh {

// `alpha` is required for `k,demand` files and rejected for `k,damage`.
DamageSeries read_damage_csv(std::istream& in, std::optional<double> alpha = std::nullopt,
                             const std::string& source = {});
DamageSeries load_damage_csv(const std::string& path, std::optional<double> alpha = std::nullopt);
void write_damage_csv(std::ostream& out, const DamageSeries& damage);

TradeoffCurve read_curve_csv(std::istream& in, const std::string& source = {});
TradeoffCurve load_curve_csv(const std::string& path);
void write_curve_csv(std::ostream& out, const TradeoffCurve& curve);

// FP(δ) = fp0·exp(-b·δ) with b = ln(fp0/fp_max)/δ_max, tabulated at
// δ = 0..δ_max. The endpoints are stored exactly as given.
TradeoffCurve fit_curve_exponential(double fp0, Delay max_delay, double fp_max);

// FNV-1a over the canonical CSV encoding, as 16 hex digits.
std::string content_hash(const DamageSeries& damage);
std::string content_hash(const TradeoffCurve& curve);

}  // namespace optthresh
