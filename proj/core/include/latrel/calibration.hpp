#pragma once

#include <array>

#include "latrel/ctmc.hpp"

// Derivation of cellular-subsystem failure rates from measured
// availabilities and assumed restoration rates.
//
// Stage 1 solves the availability system for the five state probabilities
// (C1/C2 unavailability sums, pi2 = pi3, pi4 = pi5, pi5 = 1 - A_BS,
// normalisation).  Stage 2 fits failure rates to the balance equations of
// the five-state chain by least squares.  The two stages are not mutually
// consistent in general (pi4 = pi5 is an approximation), so
// calibrate_cellular finishes with a Newton refinement on the actual chain
// that reproduces the input availabilities exactly.

namespace latrel {

struct AvailabilityInputs {
  double a_c1 = 1.0;
  double a_c2 = 1.0;
  double a_bs = 1.0;
  double mu_c1 = 1.0;  // restorations per week
  double mu_c2 = 1.0;
  double mu_bs = 1.0;
};

void validate(const AvailabilityInputs& inputs);

using CellularStateProbabilities = std::array<double, 5>;

inline constexpr double kAvailabilitySystemTolerance = 1e-12;
inline constexpr double kCalibrationTolerance = 1e-9;

/// Least-squares solution of the 6x5 availability system.  Throws
/// InfeasibleError if the system is inconsistent or a probability would be
/// negative.
CellularStateProbabilities state_probabilities_from_availabilities(
    const AvailabilityInputs& inputs);

struct BalanceFit {
  double lambda_c1 = 0.0;
  double lambda_c2 = 0.0;
  double lambda_bs = 0.0;
  double mu_c1 = 0.0;
  double mu_c2 = 0.0;
  double mu_bs = 0.0;
  double residual = 0.0;  // ||M x - b||_2 of the 10x6 system
};

/// Least-squares fit of the 10x6 balance system (five balance rows,
/// lambda_C1 = lambda_C2, mu_C1 = mu_C2, three rows pinning mu).
BalanceFit failure_rates_from_balance(const CellularStateProbabilities& pi, double mu_c1,
                                      double mu_c2, double mu_bs);

struct CalibratedRates {
  double lambda_c1 = 0.0;
  double lambda_c2 = 0.0;
  double lambda_bs = 0.0;
  double mu_c1 = 0.0;
  double mu_c2 = 0.0;
  double mu_bs = 0.0;
  double residual = 0.0;          // max availability mismatch of the built chain
  double balance_residual = 0.0;  // residual of the least-squares seed
  int iterations = 0;

  ComponentSpec c1(std::string name = "C1") const { return {std::move(name), lambda_c1, mu_c1}; }
  ComponentSpec c2(std::string name = "C2") const { return {std::move(name), lambda_c2, mu_c2}; }
  ComponentSpec bs(std::string name = "BS") const { return {std::move(name), lambda_bs, mu_bs}; }
};

/// Full calibration.  The returned rates, fed to build_cellular_subsystem,
/// reproduce 1 - A_C1, 1 - A_C2 and 1 - A_BS to kCalibrationTolerance.
CalibratedRates calibrate_cellular(const AvailabilityInputs& inputs);

/// Marginal unavailabilities (C1 unusable, C2 unusable, BS down) of the
/// five-state chain.
std::array<double, 3> cellular_unavailabilities(const CtmcModel& subsystem,
                                                const SteadyState& ss);

/// lambda = mu (1 - A) / A for a two-state component.
double two_state_failure_rate(double availability, double restoration_rate);

}  // namespace latrel
