#include "report.hpp"

#include <fmt/format.h>

#include "latrel/error.hpp"

namespace latrel::cli {

std::string format_number(double value) { return fmt::format("{}", value); }

std::string format_probability(double value) { return fmt::format("{:.9f}", value); }

std::string curve_csv(const CurveResult& curve, bool nines) {
  std::string out;
  out += fmt::format("# curve={}\n", curve.label);
  out += fmt::format("# strategy={}\n", curve.strategy);
  out += fmt::format("# payload_bytes={}\n", format_number(curve.payload_bytes));
  out += fmt::format("# gamma={}\n", curve.gamma ? format_number(*curve.gamma) : "-");
  out += fmt::format("# bandwidth_multiplier={}\n", format_number(curve.bandwidth_multiplier));
  if (nines) {
    for (double target : kNinesTargets) {
      const auto x = latency_at_reliability(curve, target);
      out += fmt::format("# x_at_{}={}\n", format_number(target),
                         x ? fmt::format("{:.6f}", *x) : std::string("unreached"));
    }
  }
  out += "x_ms,reliability\n";
  for (const auto& p : curve.points)
    out += fmt::format("{},{}\n", format_number(p.x_ms), format_probability(p.reliability));
  return out;
}

std::string wide_csv(std::span<const CurveResult> curves) {
  if (curves.empty()) return {};
  const auto n = curves.front().points.size();
  for (const auto& c : curves)
    if (c.points.size() != n) throw ValidationError("curves do not share a grid", "curves");
  std::string out = fmt::format("# payload_bytes={}\n", format_number(curves.front().payload_bytes));
  out += "x_ms";
  for (const auto& c : curves) out += "," + c.label;
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += format_number(curves.front().points[i].x_ms);
    for (const auto& c : curves) out += "," + format_probability(c.points[i].reliability);
    out += '\n';
  }
  return out;
}

std::string states_csv(const CtmcModel& model, const SteadyState& ss) {
  if (ss.pi.size() != model.size())
    throw ValidationError("steady state does not match model", "pi");
  std::string out = "state_label,component_status,usable_interfaces,pi\n";
  for (std::size_t s = 0; s < model.size(); ++s) {
    const auto& st = model.state(s);
    out += fmt::format("{},{},{},{:.12e}\n", st.label, st.component_status, st.usable.to_string(),
                       ss.pi[s]);
  }
  return out;
}

std::string rates_csv(std::span<const RateRow> rows) {
  std::string out = "component,lambda_per_week,mu_per_week,residual\n";
  for (const auto& r : rows)
    out += fmt::format("{},{:.9g},{:.9g},{:.3e}\n", r.component, r.lambda_per_week, r.mu_per_week,
                       r.residual);
  return out;
}

std::string gamma_csv(const GammaResult& result) {
  std::string out;
  out += fmt::format("# gamma_opt={:.6f}\n", result.gamma_opt);
  out += fmt::format("# expected_max_ms={:.6f}\n", result.expected_max_latency);
  out += fmt::format("# evaluations={}\n", result.evaluations);
  out += "gamma,expected_max_ms\n";
  for (const auto& p : result.scan)
    out += fmt::format("{:.2f},{:.6f}\n", p.gamma, p.expected_max_ms);
  return out;
}

}  // namespace latrel::cli
