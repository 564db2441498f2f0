#pragma once

#include "latrel/calibration.hpp"
#include "latrel/ctmc.hpp"
#include "latrel/latency_profile.hpp"
#include "latrel/strategy.hpp"

namespace latrel::bench {

// Fiber + HSDPA + EDGE with the calibrated case-study rates.
inline CtmcModel case_study_model() {
  const auto rates = calibrate_cellular({0.98, 0.98, 0.9995, 50.4, 50.4, 50.4});
  const ComponentSpec fiber{"fiber", two_state_failure_rate(0.998, 28.0), 28.0};
  return build_three_interface_model(fiber, rates.c1(), rates.c2(), rates.bs());
}

inline ProfileTriple case_study_profiles() {
  return {preset_profile("FIBER", 0.998, "fiber"), preset_profile("HSDPA", 0.98),
          preset_profile("EDGE", 0.98)};
}

}  // namespace latrel::bench
