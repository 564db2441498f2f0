#pragma once

#include <span>
#include <string>

#include "latrel/calibration.hpp"
#include "latrel/ctmc.hpp"
#include "latrel/curve.hpp"
#include "latrel/gamma_optimizer.hpp"

// CSV writers.  Comment lines start with '#', numbers use '.' as decimal
// separator and reliabilities carry 9 decimals.

namespace latrel::cli {

std::string format_number(double value);
std::string format_probability(double value);

/// Header comments, then "x_ms,reliability" rows.  With `nines`, the
/// interpolated deadline for each reliability target is appended to the
/// header as "# x_at_<target>=<ms>|unreached".
std::string curve_csv(const CurveResult& curve, bool nines = false);

/// One x_ms column plus one reliability column per curve; all curves must
/// share the same grid.
std::string wide_csv(std::span<const CurveResult> curves);

std::string states_csv(const CtmcModel& model, const SteadyState& ss);

struct RateRow {
  std::string component;
  double lambda_per_week;
  double mu_per_week;
  double residual;
};

std::string rates_csv(std::span<const RateRow> rows);

std::string gamma_csv(const GammaResult& result);

}  // namespace latrel::cli
