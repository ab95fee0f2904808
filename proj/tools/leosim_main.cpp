// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: campaign execution, result export, and plot-data
// emission. Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "leosim/export.hpp"
#include "leosim/plots.hpp"
#include "leosim/simulation.hpp"

namespace fs = std::filesystem;

namespace {

struct RunArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  std::optional<uint64_t> seed;
  std::optional<int> threads;
  std::string cells_filter;
  bool serial = false;
};

int do_run(const RunArgs& args) {
  leosim::config::CampaignConfig cfg;
  leosim::exporter::Format format = leosim::exporter::Format::Csv;
  try {
    cfg = leosim::config::parse_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.threads) cfg.threads = *args.threads;
    cfg.validate();
    format = leosim::exporter::format_from_string(args.format);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    fs::create_directories(args.out_dir);

    // Echo the materialized configuration for provenance.
    const std::string echo = leosim::config::echo_config(cfg);
    std::ofstream echo_out(args.out_dir + "/config_echo.cfg", std::ios::binary);
    echo_out << echo;
    std::cout << echo;

    const auto exec = args.serial || cfg.threads == 1
                          ? leosim::channel::Exec::Serial
                          : leosim::channel::Exec::OpenMP;
    leosim::sim::CampaignResult result =
        leosim::sim::run_campaign(cfg, exec, args.cells_filter);

    const std::string records_path =
        args.out_dir + (format == leosim::exporter::Format::Csv
                            ? "/records.csv"
                            : "/records.jsonl");
    leosim::exporter::export_records(result, records_path, format);
    leosim::exporter::export_summary(result, args.out_dir + "/summary.csv");

    for (const std::string& note : result.skipped)
      std::cerr << "skipped: " << note << "\n";
    std::cout << "wrote " << result.records.size() << " records to "
              << records_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

struct PlotArgs {
  std::string records_path;
  std::string kind = "mean_se_histogram";
  std::string filter;
  double sir_cap_db = 80.0;
  std::string out_dir = "plots";
};

int do_plot(const PlotArgs& args) {
  leosim::plots::PlotKind kind;
  try {
    kind = leosim::plots::plot_kind_from_string(args.kind);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    fs::create_directories(args.out_dir);
    const auto rows = leosim::exporter::import_records_csv(args.records_path);

    leosim::plots::PlotOptions options;
    options.filter = args.filter;
    options.sir_cap_db = args.sir_cap_db;

    const std::string data_file = args.kind + ".dat";
    leosim::plots::emit_plot_data(rows, kind, options,
                                  args.out_dir + "/" + data_file);
    leosim::plots::write_gnuplot_script(args.out_dir, {data_file},
                                        args.out_dir + "/plots.gp");
    std::cout << "wrote " << args.out_dir << "/" << data_file << " and "
              << args.out_dir << "/plots.gp\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int do_echo(const std::string& config_path) {
  try {
    const auto cfg = leosim::config::parse_config(config_path);
    std::cout << leosim::config::echo_config(cfg);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"System-level Monte Carlo simulator for multibeam LEO downlink "
               "precoding"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a campaign and export KPIs");
  run->add_option("--config", run_args.config_path, "Campaign config file")
      ->required();
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_option("--format", run_args.format, "Record format: csv | jsonl");
  uint64_t seed_value = 0;
  auto* seed_opt = run->add_option("--seed", seed_value, "Override the seed");
  int threads_value = 0;
  auto* threads_opt =
      run->add_option("--threads", threads_value,
                      "Worker thread capacity hint (0 = library default)");
  run->add_option("--cells", run_args.cells_filter,
                  "Only run cells whose id contains this substring");
  run->add_flag("--serial", run_args.serial,
                "Force the serial reference execution path");

  PlotArgs plot_args;
  CLI::App* plot =
      app.add_subcommand("plot", "Emit plot data files from exported records");
  plot->add_option("--records", plot_args.records_path, "records.csv path")
      ->required();
  plot->add_option("--kind", plot_args.kind,
                   "mean_se_histogram | sinr_cdf | sir_cdf");
  plot->add_option("--filter", plot_args.filter,
                   "Only use records whose cell id contains this substring");
  plot->add_option("--sir-cap", plot_args.sir_cap_db,
                   "Exclude SIR samples above this cap from CDF data (dB)");
  plot->add_option("--out", plot_args.out_dir, "Output directory");

  std::string echo_config_path;
  CLI::App* echo =
      app.add_subcommand("echo", "Parse a config and print it materialized");
  echo->add_option("--config", echo_config_path, "Campaign config file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (*seed_opt) run_args.seed = seed_value;
    if (*threads_opt) run_args.threads = threads_value;
    return do_run(run_args);
  }
  if (plot->parsed()) return do_plot(plot_args);
  if (echo->parsed()) return do_echo(echo_config_path);
  return 1;
}
