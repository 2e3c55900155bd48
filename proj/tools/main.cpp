#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmlab/lab.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gmlab: numerical laboratory for L^p-L^q Fourier and spectral multiplier "
               "bounds on finite group models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string series_path;
  gmlab::RunOptions opt;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;

  CLI::App* run = app.add_subcommand("run", "execute one experiment config");
  run->add_option("config", config_path, "JSON config file")->required();

  CLI::App* scan = app.add_subcommand("scan", "constant-stability ladder scan");
  scan->add_option("config", config_path, "JSON config file")->required();

  CLI::App* fit = app.add_subcommand("fit", "log-log slope fit of a (t, value) series");
  fit->add_option("series", series_path, "CSV/TSV series file")->required();

  for (CLI::App* sub : {run, scan}) {
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", opt.workers, "worker threads (0 = hardware)");
    sub->add_option("--seed", seed, "override config seed")->each([&](const std::string&) {
      seed_set = true;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!format.empty())
    opt.format = (format == "json") ? gmlab::ReportFormat::json : gmlab::ReportFormat::csv;
  if (seed_set) opt.seed_override = seed;

  if (fit->parsed()) return gmlab::run_fit(series_path);
  return gmlab::run_config(config_path, opt);
}
