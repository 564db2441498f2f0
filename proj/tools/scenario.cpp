#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <set>
#include <sstream>

#include "latrel/gamma_optimizer.hpp"
#include "latrel/latency_profile.hpp"

namespace latrel::cli {
namespace {

using nlohmann::json;

// Line of the last key of a dotted path, found by searching for each quoted
// key in turn.  Good enough to point users at the right place.
std::optional<std::size_t> locate(std::string_view text, std::string_view path) {
  std::size_t pos = 0;
  bool found = false;
  while (!path.empty()) {
    const auto dot = path.find('.');
    const auto key = path.substr(0, dot);
    const auto hit = text.find("\"" + std::string(key) + "\"", pos);
    if (hit == std::string_view::npos) break;
    pos = hit;
    found = true;
    path = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
  }
  if (!found) return std::nullopt;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n')) + 1;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ScenarioError(path + ": " + message, path, locate(text_, path));
  }

  const json& object(const json& parent, const std::string& key, const std::string& path) const {
    if (!parent.contains(key)) fail(path, "missing required field");
    const auto& v = parent.at(key);
    if (!v.is_object()) fail(path, "expected an object");
    return v;
  }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(path.empty() ? key : path + "." + key, "unknown field");
    }
  }

  std::optional<double> number(const json& obj, const std::string& key,
                               const std::string& path) const {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  double required_number(const json& obj, const std::string& key, const std::string& path) const {
    auto v = number(obj, key, path);
    if (!v) fail(path, "missing required field");
    return *v;
  }

 private:
  std::string_view text_;
};

InterfaceDecl read_interface(const Reader& rd, const json& obj, const std::string& path,
                             std::string default_id) {
  rd.only_keys(obj, path, {"id", "preset", "alpha", "beta", "availability", "sigma_ratio"});
  InterfaceDecl decl;
  decl.id = std::move(default_id);
  if (obj.contains("id")) {
    if (!obj["id"].is_string()) rd.fail(path + ".id", "expected a string");
    decl.id = obj["id"].get<std::string>();
  }
  const bool has_preset = obj.contains("preset");
  const bool has_alpha = obj.contains("alpha");
  const bool has_beta = obj.contains("beta");
  if (has_preset) {
    if (!obj["preset"].is_string()) rd.fail(path + ".preset", "expected a string");
    const auto name = obj["preset"].get<std::string>();
    const auto preset = find_preset(name);
    if (!preset) rd.fail(path + ".preset", "unknown preset '" + name + "'");
    if (has_alpha || has_beta) rd.fail(path + ".preset", "give either a preset or alpha/beta, not both");
    decl.preset = std::string(preset->name);
    decl.alpha = preset->alpha;
    decl.beta = preset->beta;
    if (!obj.contains("id")) decl.id = std::string(preset->name);
  } else {
    decl.alpha = rd.required_number(obj, "alpha", path + ".alpha");
    decl.beta = rd.required_number(obj, "beta", path + ".beta");
  }
  decl.availability = rd.number(obj, "availability", path + ".availability");
  if (auto s = rd.number(obj, "sigma_ratio", path + ".sigma_ratio")) decl.sigma_ratio = *s;

  if (decl.alpha < 0.0) rd.fail(path + ".alpha", "must be >= 0");
  if (!(decl.beta > 0.0)) rd.fail(path + ".beta", "must be > 0");
  if (decl.availability && !(*decl.availability > 0.0 && *decl.availability <= 1.0))
    rd.fail(path + ".availability", "must lie in (0, 1]");
  if (!(decl.sigma_ratio > 0.0)) rd.fail(path + ".sigma_ratio", "must be > 0");
  return decl;
}

ComponentDecl read_component(const Reader& rd, const json& obj, const std::string& path,
                             std::string name) {
  rd.only_keys(obj, path,
               {"availability", "failure_per_week", "restoration_per_week", "restoration_minutes",
                "restoration_hours"});
  ComponentDecl decl;
  decl.name = std::move(name);
  decl.availability = rd.number(obj, "availability", path + ".availability");
  decl.failure_per_week = rd.number(obj, "failure_per_week", path + ".failure_per_week");
  if (decl.availability.has_value() == decl.failure_per_week.has_value())
    rd.fail(path, "give exactly one of availability or failure_per_week");
  if (decl.availability && !(*decl.availability > 0.0 && *decl.availability <= 1.0))
    rd.fail(path + ".availability", "must lie in (0, 1]");
  if (decl.failure_per_week && *decl.failure_per_week < 0.0)
    rd.fail(path + ".failure_per_week", "must be >= 0");

  const auto per_week = rd.number(obj, "restoration_per_week", path + ".restoration_per_week");
  const auto minutes = rd.number(obj, "restoration_minutes", path + ".restoration_minutes");
  const auto hours = rd.number(obj, "restoration_hours", path + ".restoration_hours");
  const int given = int(per_week.has_value()) + int(minutes.has_value()) + int(hours.has_value());
  if (given != 1)
    rd.fail(path, "give exactly one of restoration_per_week, restoration_minutes, restoration_hours");
  if (per_week) {
    if (!(*per_week > 0.0)) rd.fail(path + ".restoration_per_week", "must be > 0");
    decl.restoration_per_week = *per_week;
  } else if (minutes) {
    if (!(*minutes > 0.0)) rd.fail(path + ".restoration_minutes", "must be > 0");
    decl.restoration_per_week = per_week_from_minutes(*minutes);
  } else {
    if (!(*hours > 0.0)) rd.fail(path + ".restoration_hours", "must be > 0");
    decl.restoration_per_week = per_week_from_hours(*hours);
  }
  return decl;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte offset; convert to a line number.
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = static_cast<std::size_t>(
                          std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n')) +
                      1;
    throw ScenarioError(std::string("malformed JSON: ") + e.what(), "", line);
  }
  Reader rd(text);
  if (!doc.is_object()) rd.fail("<root>", "expected a JSON object");
  rd.only_keys(doc, "",
               {"payload_bytes", "interfaces", "components", "strategies", "gamma", "grid",
                "simulation", "description"});

  ScenarioConfig cfg;

  cfg.payload_bytes = rd.required_number(doc, "payload_bytes", "payload_bytes");
  if (cfg.payload_bytes < 0.0) rd.fail("payload_bytes", "must be >= 0");

  const auto& ifaces = rd.object(doc, "interfaces", "interfaces");
  rd.only_keys(ifaces, "interfaces", {"fiber", "c1", "c2"});
  const char* iface_keys[] = {"fiber", "c1", "c2"};
  const char* default_ids[] = {"fiber", "C1", "C2"};
  for (std::size_t i = 0; i < kInterfaceCount; ++i) {
    const std::string path = std::string("interfaces.") + iface_keys[i];
    cfg.interfaces[i] = read_interface(rd, rd.object(ifaces, iface_keys[i], path), path,
                                       default_ids[i]);
  }

  const auto& comps = rd.object(doc, "components", "components");
  rd.only_keys(comps, "components", {"fiber", "c1", "c2", "bs"});
  const char* comp_keys[] = {"fiber", "c1", "c2", "bs"};
  const char* comp_names[] = {"fiber", "C1", "C2", "BS"};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string path = std::string("components.") + comp_keys[i];
    cfg.components[i] = read_component(rd, rd.object(comps, comp_keys[i], path), path,
                                       comp_names[i]);
  }
  const bool cell_by_availability = cfg.components[1].availability.has_value();
  for (std::size_t i = 2; i < 4; ++i)
    if (cfg.components[i].availability.has_value() != cell_by_availability)
      rd.fail(std::string("components.") + comp_keys[i],
              "c1, c2 and bs must all use availability or all use failure_per_week");

  if (doc.contains("strategies")) {
    const auto& arr = doc["strategies"];
    if (!arr.is_array() || arr.empty()) rd.fail("strategies", "expected a non-empty array");
    for (const auto& s : arr) {
      if (!s.is_string()) rd.fail("strategies", "entries must be strategy names");
      auto kind = parse_strategy_kind(s.get<std::string>());
      if (!kind) rd.fail("strategies", "unknown strategy '" + s.get<std::string>() + "'");
      if (std::find(cfg.strategies.begin(), cfg.strategies.end(), *kind) == cfg.strategies.end())
        cfg.strategies.push_back(*kind);
    }
  } else {
    cfg.strategies = {StrategyKind::cloning, StrategyKind::two_of_three, StrategyKind::weighted};
  }

  if (doc.contains("gamma")) {
    const auto& g = doc["gamma"];
    if (g.is_string() && g.get<std::string>() == "optimal") {
      cfg.gamma.reset();
    } else if (g.is_number()) {
      cfg.gamma = g.get<double>();
      if (!(*cfg.gamma >= 0.0 && *cfg.gamma <= 1.0)) rd.fail("gamma", "must lie in [0, 1]");
    } else {
      rd.fail("gamma", "expected a number or \"optimal\"");
    }
  }

  if (doc.contains("grid")) {
    const auto& grid = rd.object(doc, "grid", "grid");
    rd.only_keys(grid, "grid", {"start_ms", "stop_ms", "step_ms"});
    if (auto v = rd.number(grid, "start_ms", "grid.start_ms")) cfg.grid.start_ms = *v;
    if (auto v = rd.number(grid, "stop_ms", "grid.stop_ms")) cfg.grid.stop_ms = *v;
    if (auto v = rd.number(grid, "step_ms", "grid.step_ms")) cfg.grid.step_ms = *v;
  }
  if (cfg.grid.start_ms < 0.0) rd.fail("grid.start_ms", "must be >= 0");
  if (!(cfg.grid.start_ms < cfg.grid.stop_ms)) rd.fail("grid.stop_ms", "must be greater than start_ms");
  if (!(cfg.grid.step_ms > 0.0)) rd.fail("grid.step_ms", "must be > 0");

  if (doc.contains("simulation")) {
    const auto& sim = rd.object(doc, "simulation", "simulation");
    rd.only_keys(sim, "simulation", {"samples", "sample_interval_minutes", "seed", "replications"});
    auto integer = [&](const char* key, std::uint64_t min) -> std::optional<std::uint64_t> {
      if (!sim.contains(key)) return std::nullopt;
      const auto& v = sim[key];
      const std::string path = std::string("simulation.") + key;
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        rd.fail(path, "expected a non-negative integer");
      const auto u = v.get<std::uint64_t>();
      if (u < min) rd.fail(path, "must be >= " + std::to_string(min));
      return u;
    };
    if (auto v = integer("samples", 1)) cfg.simulation.samples = *v;
    if (auto v = integer("seed", 0)) cfg.simulation.seed = *v;
    if (auto v = integer("replications", 1)) cfg.simulation.replications = static_cast<unsigned>(*v);
    if (auto v = rd.number(sim, "sample_interval_minutes", "simulation.sample_interval_minutes")) {
      if (!(*v > 0.0)) rd.fail("simulation.sample_interval_minutes", "must be > 0");
      cfg.simulation.sample_interval_minutes = *v;
    }
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open config file '" + path + "'", "config", std::nullopt);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Strategy ResolvedScenario::strategy(StrategyKind kind) const {
  switch (kind) {
    case StrategyKind::cloning: return Strategy::cloning();
    case StrategyKind::two_of_three: return Strategy::two_of_three();
    case StrategyKind::weighted: return Strategy::weighted(gamma);
  }
  return Strategy::cloning();
}

ResolvedScenario resolve(const ScenarioConfig& cfg) {
  const auto& [dfiber, dc1, dc2, dbs] = cfg.components;

  ComponentSpec fiber{dfiber.name, 0.0, dfiber.restoration_per_week};
  double fiber_residual = 0.0;
  if (dfiber.availability) {
    fiber.failure_rate = two_state_failure_rate(*dfiber.availability, dfiber.restoration_per_week);
    fiber_residual = std::abs(component_availability(fiber) - *dfiber.availability);
  } else {
    fiber.failure_rate = *dfiber.failure_per_week;
  }

  ComponentSpec c1{dc1.name, 0.0, dc1.restoration_per_week};
  ComponentSpec c2{dc2.name, 0.0, dc2.restoration_per_week};
  ComponentSpec bs{dbs.name, 0.0, dbs.restoration_per_week};
  std::optional<CalibratedRates> calibration;
  if (dc1.availability) {
    AvailabilityInputs in{*dc1.availability, *dc2.availability, *dbs.availability,
                          dc1.restoration_per_week, dc2.restoration_per_week,
                          dbs.restoration_per_week};
    calibration = calibrate_cellular(in);
    c1.failure_rate = calibration->lambda_c1;
    c2.failure_rate = calibration->lambda_c2;
    bs.failure_rate = calibration->lambda_bs;
  } else {
    c1.failure_rate = *dc1.failure_per_week;
    c2.failure_rate = *dc2.failure_per_week;
    bs.failure_rate = *dbs.failure_per_week;
  }

  auto model = build_three_interface_model(fiber, c1, c2, bs);
  auto steady = steady_state(model);

  ProfileTriple profiles;
  for (std::size_t i = 0; i < kInterfaceCount; ++i) {
    const auto& d = cfg.interfaces[i];
    const auto id = static_cast<InterfaceId>(i);
    const double availability =
        d.availability ? *d.availability
                       : probability_where(model, steady,
                                           [id](InterfaceSet s) { return s.contains(id); });
    profiles[i] = make_profile(d.id, d.alpha, d.beta, availability, d.sigma_ratio);
  }

  double gamma = 0.5;
  bool optimised = false;
  if (cfg.gamma) {
    gamma = *cfg.gamma;
  } else if (cfg.payload_bytes > 0.0) {
    gamma = optimize_gamma(profiles[1], profiles[2], cfg.payload_bytes).gamma_opt;
    optimised = true;
  }

  return ResolvedScenario{fiber,          c1,    c2,       bs,       calibration,
                          fiber_residual, std::move(model), std::move(steady), std::move(profiles),
                          gamma,          optimised};
}

}  // namespace latrel::cli
