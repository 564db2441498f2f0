#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "commands.hpp"
#include "latrel/ctmc.hpp"
#include "latrel/error.hpp"

namespace {

using latrel::cli::OutputFile;

void emit(const std::vector<OutputFile>& files, const std::string& output_dir) {
  if (output_dir.empty()) {
    bool first = true;
    for (const auto& f : files) {
      if (!first) std::cout << '\n';
      first = false;
      std::cout << f.content;
    }
    return;
  }
  std::filesystem::create_directories(output_dir);
  for (const auto& f : files) {
    const auto path = std::filesystem::path(output_dir) / f.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << f.content;
  }
}

int report_error(const std::string& kind, const std::string& message, const std::string& field = {},
                 std::optional<std::size_t> line = std::nullopt) {
  nlohmann::json err{{"error", kind}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  if (line) err["line"] = *line;
  std::cerr << err.dump() << '\n';
  return 1;
}

std::optional<latrel::StrategyKind> strategy_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto kind = latrel::parse_strategy_kind(name);
  if (!kind) throw latrel::ValidationError("unknown strategy '" + name + "'", "strategy");
  return kind;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latrel: latency-reliability analysis of multi-interface transmission"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--output", output_dir, "Directory for CSV output (stdout if omitted)");
    sub->add_option("--seed", seed, "Random seed (simulate only)");
  };

  auto* calibrate = app.add_subcommand("calibrate", "Derive CTMC failure rates from availabilities");
  add_common(calibrate);

  bool nines = false;
  std::string strategy_name;
  auto* analyze = app.add_subcommand("analyze", "Analytic latency-reliability curves");
  add_common(analyze);
  analyze->add_option("--strategy", strategy_name, "cloning | two_of_three | weighted");
  analyze->add_flag("--nines", nines, "Report deadlines reaching 0.99 ... 0.99999");

  auto* optimize = app.add_subcommand("optimize-gamma", "Optimal weighted split ratio");
  add_common(optimize);

  std::uint64_t samples = 0;
  unsigned replications = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo validation");
  add_common(simulate);
  simulate->add_option("--samples", samples, "Total sample epochs");
  simulate->add_option("--replications", replications, "Independent replications");
  simulate->add_option("--strategy", strategy_name, "Simulate only this strategy");

  auto* compare = app.add_subcommand("compare", "Full family of comparison curves");
  add_common(compare);
  compare->add_flag("--nines", nines, "Report deadlines reaching 0.99 ... 0.99999");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    const auto config = latrel::cli::load_scenario_file(config_path);
    std::vector<OutputFile> files;
    if (calibrate->parsed()) {
      files = latrel::cli::run_calibrate(config);
    } else if (analyze->parsed()) {
      files = latrel::cli::run_analyze(config, strategy_option(strategy_name), nines);
    } else if (optimize->parsed()) {
      files = latrel::cli::run_optimize_gamma(config);
    } else if (simulate->parsed()) {
      latrel::cli::SimulateOptions opts;
      if (simulate->count("--samples")) opts.samples = samples;
      if (simulate->count("--seed")) opts.seed = seed;
      if (simulate->count("--replications")) opts.replications = replications;
      opts.strategy = strategy_option(strategy_name);
      files = latrel::cli::run_simulate(config, opts);
    } else if (compare->parsed()) {
      files = latrel::cli::run_compare(config, nines);
    }
    emit(files, output_dir);
  } catch (const latrel::cli::ScenarioError& e) {
    return report_error("config", e.what(), e.field(), e.line());
  } catch (const latrel::ValidationError& e) {
    return report_error("validation", e.what(), e.field());
  } catch (const latrel::InfeasibleError& e) {
    return report_error("infeasible", e.what(), e.constraint());
  } catch (const latrel::ReducibleChainError& e) {
    return report_error("reducible_chain", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
