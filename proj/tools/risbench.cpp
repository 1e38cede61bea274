#include <omp.h>

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "risbench/error.hpp"
#include "risbench/run.hpp"

using namespace risbench;

namespace {

int exit_code_for(ErrorCode code) {
  switch (category_of(code)) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Numeric: return 3;
    case ErrorCategory::Io: return 4;
  }
  return 3;
}

void log_line(const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); }

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out;
};

RunConfig load(const Options& o) {
  RunConfig cfg = load_run_config(o.config);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.ga.seed = *o.seed;
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

void print_metrics(const MetricsReport& m) {
  std::printf("DE      %.6g\nNMSE    %.6g\nSLR dB  %.6g\n", m.de, m.nmse, m.slr_db);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for reconfigurable intelligent surfaces"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "Run config JSON");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)");
    sub->add_option("--threads", opt.threads, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "Output directory (overrides the config)");
  };
  auto* simulate = app.add_subcommand("simulate", "Render the pattern of one configuration");
  auto* optimize = app.add_subcommand("optimize", "Run the GA and score the result");
  auto* evaluate = app.add_subcommand("evaluate", "Score an existing pattern CSV");
  auto* sweep = app.add_subcommand("sweep-grouping", "Optimize and score for each group size");
  auto* table1 = app.add_subcommand("table1", "Control complexity and power for the bundled cells");
  for (auto* s : {simulate, optimize, evaluate, sweep}) add_common(s, true);
  add_common(table1, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  try {
    if (simulate->parsed()) {
      const auto r = cmd_simulate(load(opt));
      std::printf("pattern  %s\nimage    %s\n", r.field_csv.c_str(), r.image.c_str());
    } else if (optimize->parsed()) {
      const auto r = cmd_optimize(load(opt), log_line);
      print_metrics(r.metrics);
      std::printf("NMSE to ideal  %.6g\nrecord  %s\n", r.nmse_to_ideal, r.record_path.c_str());
    } else if (evaluate->parsed()) {
      const auto r = cmd_evaluate(load(opt), log_line);
      print_metrics(r.metrics);
      std::printf("record  %s\n", r.record_path.c_str());
    } else if (sweep->parsed()) {
      const RunConfig cfg = load(opt);
      const auto rows = cmd_sweep_grouping(cfg, log_line);
      std::printf("%-4s %12s %12s %10s %10s %16s\n", "G", "DE", "NMSE", "SLR dB", "paths", "rate Hz");
      for (const auto& r : rows)
        std::printf("%-4d %12.6g %12.6g %10.4g %10lld %16.6g\n", r.group_size, r.metrics.de, r.metrics.nmse,
                    r.metrics.slr_db, static_cast<long long>(r.control.physical_paths),
                    r.control.switching_rate_hz);
      std::printf("table  %s\n", (cfg.output_dir / "sweep_grouping.csv").c_str());
    } else if (table1->parsed()) {
      int k = kDefaultControlledGroups;
      double tau = kDefaultSlowestResponseS, pd = kDefaultDiodePowerW;
      fs::path out_dir = opt.out;
      if (!opt.config.empty()) {
        const RunConfig cfg = load(opt);
        k = cfg.controlled_groups;
        tau = cfg.tau_s;
        pd = cfg.diode_power_w;
        out_dir = cfg.output_dir;
      }
      const auto rows = table1_rows(k, tau, pd);
      std::fputs(table1_text(rows).c_str(), stdout);
      if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
        write_file_atomic(out_dir / "table1.json", table1_json(rows).dump(2) + "\n");
        std::printf("json  %s\n", (out_dir / "table1.json").c_str());
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
