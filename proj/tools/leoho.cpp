// leoho: run handover scenarios, benchmark prediction, compare runs.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leoho/bench.hpp"
#include "leoho/io.hpp"
#include "leoho/scenario.hpp"

namespace {

void print_summary_header(std::FILE* out, bool with_config) {
  if (with_config) std::fprintf(out, "%-24s ", "config");
  std::fprintf(out, "%-9s %9s %10s %10s %10s %9s\n", "scheme", "handovers", "mean_ms", "median_ms",
               "p99_ms", "abnormal");
}

void print_summary(std::FILE* out, const leoho::MetricsReport& r, const std::string* config) {
  for (const auto& s : r.schemes) {
    if (config) std::fprintf(out, "%-24s ", config->c_str());
    std::fprintf(out, "%-9s %9zu %10.3f %10.3f %10.3f %9.5f\n",
                 std::string(leoho::to_string(s.scheme)).c_str(), s.count, s.mean_ms, s.median_ms,
                 s.p99_ms, s.abnormal_rate);
  }
}

int cmd_run(const std::string& config, const std::string& out_dir) {
  const auto cfg = leoho::load_scenario_config(config);
  const auto result = leoho::run_scenario(cfg);
  leoho::write_outputs(result, out_dir);
  print_summary_header(stdout, false);
  print_summary(stdout, result.report, nullptr);
  std::printf("events=%zu gaps=%zu sync_ops=%zu invariant_violations=%zu route_mismatches=%zu wall=%.2fs\n",
              result.report.handover_events, result.report.service_gaps,
              result.report.sync_operations, result.report.sync_invariant_violations,
              result.report.routing_mismatches, result.timing.total_wall_s);
  if (result.report.partial) {
    std::fprintf(stderr, "leoho: run aborted: %s\n", result.report.error.c_str());
    return 2;
  }
  return 0;
}

int cmd_predict_bench(std::size_t users, const std::string& strategy, const std::string& preset,
                      std::uint64_t seed, int repeats) {
  const auto r =
      leoho::predict_bench(users, leoho::parse_strategy(strategy), preset, seed, repeats);
  std::printf("{\"users\": %zu, \"strategy\": \"%s\", \"preset\": \"%s\", \"wall_ms\": %.3f, "
              "\"candidates\": %zu, \"switching\": %zu}\n",
              r.users, std::string(leoho::to_string(r.strategy)).c_str(), r.preset.c_str(),
              r.wall_ms, r.candidates, r.switching);
  return 0;
}

int cmd_compare(const std::vector<std::string>& configs, const std::string& out_csv) {
  std::string csv = "config,scheme,handovers,mean_ms,median_ms,p99_ms,abnormal_rate\n";
  print_summary_header(stdout, true);
  int status = 0;
  for (const auto& path : configs) {
    const auto cfg = leoho::load_scenario_config(path);
    const auto result = leoho::run_scenario(cfg);
    print_summary(stdout, result.report, &cfg.name);
    for (const auto& s : result.report.schemes) {
      char line[256];
      std::snprintf(line, sizeof line, "%s,%s,%zu,%.6f,%.6f,%.6f,%.6f\n", cfg.name.c_str(),
                    std::string(leoho::to_string(s.scheme)).c_str(), s.count, s.mean_ms,
                    s.median_ms, s.p99_ms, s.abnormal_rate);
      csv += line;
    }
    if (result.report.partial) {
      std::fprintf(stderr, "leoho: %s aborted: %s\n", path.c_str(), result.report.error.c_str());
      status = 2;
    }
  }
  if (!out_csv.empty()) leoho::write_text_file(out_csv, csv);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO satellite handover simulator"};
  app.require_subcommand(1);

  std::string config, out_dir;
  auto* run = app.add_subcommand("run", "Run one scenario and write records.csv/report.json");
  run->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();

  std::size_t users = 10000;
  std::string strategy = "flexible", preset = "starlink";
  std::uint64_t seed = 1;
  int repeats = 3;
  auto* bench = app.add_subcommand("predict-bench", "Time one periodic table update");
  bench->add_option("--users", users, "Number of synthetic UEs")->check(CLI::PositiveNumber);
  bench->add_option("--strategy", strategy, "consistent | flexible")
      ->check(CLI::IsMember({"consistent", "flexible"}, CLI::ignore_case));
  bench->add_option("--preset", preset, "Constellation preset")
      ->check(CLI::IsMember({"starlink", "kuiper"}));
  bench->add_option("--seed", seed, "Placement seed");
  bench->add_option("--repeats", repeats, "Timed repeats (best is reported)")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> configs;
  std::string compare_csv;
  auto* compare = app.add_subcommand("compare", "Run several scenarios and tabulate schemes");
  compare->add_option("--configs", configs, "Scenario JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--out", compare_csv, "Also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out_dir);
    if (*bench) return cmd_predict_bench(users, strategy, preset, seed, repeats);
    if (*compare) return cmd_compare(configs, compare_csv);
  } catch (const leoho::ConfigError& e) {
    std::fprintf(stderr, "leoho: config error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "leoho: %s\n", e.what());
    return 1;
  }
  return 0;
}
