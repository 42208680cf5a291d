// SPDX-License-Identifier: Apache-2.0
//
// irsuav run <config.yaml> [--out results.csv] [--trials n] [--seed u64] [--threads n]
// irsuav summarize <results.csv> [--out summary.csv]
// irsuav presets [--out dir]
//
// Exit codes: 0 success, 1 other failure, 2 config error, 3 every trial infeasible.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "irsuav/error.hpp"
#include "irsuav/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitAllInfeasible = 3;

std::string with_suffix(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

int cmd_run(const std::string& config, std::string out, std::optional<int> trials, std::optional<std::uint64_t> seed,
            int threads) {
  irsuav::Scenario s = irsuav::load_scenario(config);
  if (trials) s.trials = *trials;
  if (seed) s.base_seed = *seed;
  s.validate();
  if (out.empty()) out = s.scenario_id + "_results.csv";

  const auto rows = irsuav::run_sweep(s, threads);
  irsuav::write_atomic(out, irsuav::format_results(rows));

  std::size_t infeasible = 0;
  for (const auto& r : rows) infeasible += r.status == "infeasible";
  std::fprintf(stderr, "%s: %zu rows (%zu infeasible) -> %s\n", s.scenario_id.c_str(), rows.size(), infeasible,
               out.c_str());
  return infeasible == rows.size() ? kExitAllInfeasible : 0;
}

int cmd_summarize(const std::string& results, std::string out) {
  const auto rows = irsuav::parse_results(irsuav::read_file(results));
  if (out.empty()) out = with_suffix(results, "_summary.csv");
  irsuav::write_atomic(out, irsuav::format_summary(irsuav::summarize(rows)));
  std::fprintf(stderr, "summary -> %s\n", out.c_str());
  return 0;
}

int cmd_presets(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& name : irsuav::preset_names()) {
    const auto path = (std::filesystem::path(dir) / (name + ".yaml")).string();
    irsuav::write_atomic(path, irsuav::emit_scenario(irsuav::preset(name)));
    std::fprintf(stderr, "%s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate optimization for IRS-aided UAV links"};
  app.require_subcommand(1);

  std::string config, results, out;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* run = app.add_subcommand("run", "Run a seeded Monte-Carlo sweep");
  run->add_option("config", config, "Scenario YAML")->required();
  run->add_option("--out", out, "Results CSV (default <scenario_id>_results.csv)");
  run->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the base seed");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* sum = app.add_subcommand("summarize", "Aggregate a results CSV per mode and sweep value");
  sum->add_option("results", results, "Results CSV")->required();
  sum->add_option("--out", out, "Summary CSV (default <results>_summary.csv)");

  auto* pre = app.add_subcommand("presets", "Write the figure preset configs");
  std::string preset_dir = ".";
  pre->add_option("--out", preset_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out, trials, seed, threads);
    if (*sum) return cmd_summarize(results, out);
    if (*pre) return cmd_presets(preset_dir);
  } catch (const irsuav::Error& e) {
    std::cerr << "irsuav: " << e.what() << '\n';
    return e.kind() == irsuav::ErrorKind::ConfigError ? kExitConfig : 1;
  } catch (const std::exception& e) {
    std::cerr << "irsuav: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
