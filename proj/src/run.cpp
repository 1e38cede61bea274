#include "risbench/run.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "risbench/error.hpp"

namespace risbench {

namespace {

using Clock = std::chrono::steady_clock;

fs::path resolve(const fs::path& p, const fs::path& base_dir) {
  return (p.is_relative() && !base_dir.empty() ? base_dir / p : p).lexically_normal();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorCode::IoError, "cannot create directory " + dir.string() + ": " + ec.message());
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void say(const LogFn& log, const std::string& msg) {
  if (log) log(msg);
}

BuiltSurface parse_surface(const json& j, const fs::path& base_dir) {
  if (j.is_string()) {
    // Bundled cell id or a cell file, on the default 40 x 40 aperture.
    return surface_from_json(json{{"cell_id", j.get<std::string>()}, {"M", 40}, {"N", 40}}, base_dir);
  }
  if (j.is_object() && j.contains("cell_id") && j.at("cell_id").is_string()) {
    json copy = j;
    const fs::path p{j.at("cell_id").get<std::string>()};
    if (p.extension() == ".json") copy["cell_id"] = resolve(p, base_dir).string();
    return surface_from_json(copy, base_dir);
  }
  return surface_from_json(j, base_dir);
}

BenchmarkPattern parse_benchmark(const json& j, const fs::path& base_dir) {
  if (j.is_object()) {
    BenchmarkPattern bm = benchmark_from_json(j);
    validate_benchmark(bm);
    return bm;
  }
  const std::string ref = j.get<std::string>();
  const auto ids = bundled_benchmark_ids();
  if (std::find(ids.begin(), ids.end(), ref) != ids.end()) return load_benchmark(ref);
  return load_benchmark(resolve(ref, base_dir).string());
}

ConfigMatrix choose_configuration(const RunConfig& cfg) {
  const SurfaceSpec& s = cfg.surface.surface;
  const auto& c = cfg.configuration;
  switch (c.kind) {
    case ConfigurationChoice::Kind::Uniform: {
      if (c.state < 0 || c.state >= s.cell.state_count())
        throw Error(ErrorCode::InvalidStateIndex, "uniform state " + std::to_string(c.state) + " out of range");
      return ConfigMatrix(s.rows, s.cols, c.state);
    }
    case ConfigurationChoice::Kind::Csv: {
      ConfigMatrix m = read_config_csv(c.csv);
      check_config(s, m);
      return m;
    }
    case ConfigurationChoice::Kind::Steer:
      break;
  }
  const double phi = c.theta_deg < 0.0 ? 180.0 : 0.0;
  return phase_gradient_config(s, cfg.source, std::abs(c.theta_deg), phi);
}

json config_echo(const RunConfig& cfg) {
  return {{"surface", surface_to_json(cfg.surface.surface)},
          {"cell", to_json(cfg.surface.surface.cell)},
          {"benchmark", to_json(cfg.benchmark)},
          {"source", to_json(cfg.source)},
          {"grid", to_json(cfg.grid)},
          {"ga", to_json(cfg.ga)},
          {"metrics_reference", cfg.metrics_reference == MetricsReference::S0 ? "s0" : "ideal"},
          {"control", {{"K", cfg.controlled_groups}, {"tau_s", cfg.tau_s}, {"P_D_w", cfg.diode_power_w}}},
          {"output_dir", cfg.output_dir.string()}};
}

json base_record(const RunConfig& cfg, const char* command) {
  return {{"tool", "risbench"},
          {"version", kToolVersion},
          {"command", command},
          {"seed", cfg.seed},
          {"config", config_echo(cfg)}};
}

ControlReport control_of(const RunConfig& cfg) {
  return complexity_report(cfg.surface.surface, cfg.controlled_groups, cfg.tau_s, cfg.diode_power_w);
}

void write_json(const fs::path& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

struct OptimizeCore {
  GAResult ga;
  FieldGrid field;
  FieldGrid ideal;
  double nmse_to_ideal = 0.0;
};

OptimizeCore optimize_core(const RunConfig& cfg, const LogFn& log) {
  const SurfaceSpec& s = cfg.surface.surface;
  OptimizeCore out;
  out.ideal = ideal_target_field(cfg.benchmark, cfg.grid, s.cell.wavelength_m());
  GAParams ga = cfg.ga;
  ga.seed = cfg.seed;
  const int every = std::max(1, ga.generations / 10);
  out.ga = run_ga(s, cfg.source, out.ideal, ga, [&](int gen, double best) {
    if (gen % every == 0 || gen == ga.generations) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "  generation %d/%d  best fitness %.6g", gen, ga.generations, best);
      say(log, buf);
    }
  });
  out.field = compute_field(s, out.ga.best_config, cfg.source, cfg.grid);
  out.nmse_to_ideal = nmse(out.ideal, out.field);
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigParseError, "run config must be a JSON object");
  RunConfig cfg;
  cfg.base_dir = base_dir;
  cfg.raw = j;
  try {
    if (!j.contains("surface")) throw Error(ErrorCode::ConfigParseError, "run config needs 'surface'");
    cfg.surface = parse_surface(j.at("surface"), base_dir);
    if (j.contains("group_size")) {
      cfg.surface = build_surface(cfg.surface.surface.cell, cfg.surface.surface.rows,
                                  cfg.surface.surface.cols, j.at("group_size").get<int>(),
                                  cfg.surface.surface.pitch_m);
    }
    cfg.benchmark = parse_benchmark(j.value("benchmark", json("B1")), base_dir);
    cfg.source = source_from_json(j.value("source", json::object()));
    check_source(cfg.source);
    cfg.grid = grid_from_json(j.value("grid", json::object()));
    cfg.ga = ga_params_from_json(j.value("ga", json::object()));
    cfg.seed = j.value("seed", cfg.ga.seed);
    cfg.ga.seed = cfg.seed;
    check_ga_params(cfg.ga);
    cfg.output_dir = resolve(j.value("output_dir", std::string("out")), base_dir);
    if (j.contains("cache_dir")) cfg.cache_dir = resolve(j.at("cache_dir").get<std::string>(), base_dir);

    if (j.contains("configuration")) {
      const json& c = j.at("configuration");
      const std::string kind = c.value("kind", std::string("steer"));
      auto& choice = cfg.configuration;
      if (kind == "uniform") {
        choice.kind = ConfigurationChoice::Kind::Uniform;
        choice.state = c.value("state", 0);
      } else if (kind == "csv") {
        choice.kind = ConfigurationChoice::Kind::Csv;
        choice.csv = resolve(c.at("path").get<std::string>(), base_dir);
      } else if (kind == "steer") {
        choice.kind = ConfigurationChoice::Kind::Steer;
        choice.theta_deg = c.value("theta_deg", cfg.benchmark.beams.front().signed_theta_deg);
      } else {
        throw Error(ErrorCode::ConfigParseError, "configuration.kind must be uniform, csv or steer");
      }
    } else {
      cfg.configuration.theta_deg = cfg.benchmark.beams.front().signed_theta_deg;
    }

    const std::string ref = j.value("metrics_reference", std::string("s0"));
    if (ref == "s0")
      cfg.metrics_reference = MetricsReference::S0;
    else if (ref == "ideal")
      cfg.metrics_reference = MetricsReference::Ideal;
    else
      throw Error(ErrorCode::ConfigParseError, "metrics_reference must be 's0' or 'ideal'");

    if (j.contains("control")) {
      const json& c = j.at("control");
      cfg.controlled_groups = c.value("K", cfg.controlled_groups);
      cfg.tau_s = c.value("tau_s", cfg.tau_s);
      cfg.diode_power_w = c.value("P_D_w", cfg.diode_power_w);
    }
    if (j.contains("sweep")) cfg.sweep_group_sizes = j.at("sweep").at("group_sizes").get<std::vector<int>>();
    if (j.contains("evaluate")) {
      const json& e = j.at("evaluate");
      if (e.contains("achieved_csv")) cfg.achieved_csv = resolve(e.at("achieved_csv").get<std::string>(), base_dir);
      if (e.contains("reference_csv"))
        cfg.reference_csv = resolve(e.at("reference_csv").get<std::string>(), base_dir);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, std::string("run config: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_json_file(path), path.parent_path());
}

RunConfig with_group_size(const RunConfig& cfg, int group_size) {
  RunConfig out = cfg;
  const SurfaceSpec& s = cfg.surface.surface;
  out.surface = build_surface(s.cell, s.rows, s.cols, group_size, s.pitch_m);
  return out;
}

FieldGrid metrics_reference_field(const RunConfig& cfg, const LogFn& log) {
  const SurfaceSpec& s = cfg.surface.surface;
  if (cfg.metrics_reference == MetricsReference::Ideal)
    return ideal_target_field(cfg.benchmark, cfg.grid, s.cell.wavelength_m());
  ReferenceOptions opt;
  opt.rows = s.rows;
  opt.cols = s.cols;
  opt.design_freq_hz = s.cell.design_freq_hz;
  opt.grid = cfg.grid;
  opt.ga = cfg.ga;
  opt.cache_dir = cfg.cache_dir;
  say(log, "reference pattern: S0 " + std::to_string(s.rows) + "x" + std::to_string(s.cols) + " for " +
               cfg.benchmark.id);
  ReferencePattern ref = reference_pattern(cfg.benchmark, cfg.source, cfg.seed, opt);
  say(log, std::string(ref.from_cache ? "  loaded from " : "  cached at ") + ref.field_csv.string());
  return std::move(ref.field);
}

SimulateResult cmd_simulate(const RunConfig& cfg) {
  ensure_dir(cfg.output_dir);
  SimulateResult r;
  r.config = choose_configuration(cfg);
  r.field = compute_field(cfg.surface.surface, r.config, cfg.source, cfg.grid);
  r.field_csv = cfg.output_dir / "pattern.csv";
  r.image = cfg.output_dir / "config.ppm";
  write_field_csv(r.field_csv, r.field);
  write_config_csv(cfg.output_dir / "config.csv", r.config);
  write_config_ppm(r.image, r.config);
  return r;
}

OptimizeResult cmd_optimize(const RunConfig& cfg, const LogFn& log) {
  const auto t0 = Clock::now();
  ensure_dir(cfg.output_dir);
  say(log, "optimizing " + cfg.surface.surface.cell.id + " for " + cfg.benchmark.id);
  OptimizeCore core = optimize_core(cfg, log);

  OptimizeResult r;
  r.ga = std::move(core.ga);
  r.field = std::move(core.field);
  r.nmse_to_ideal = core.nmse_to_ideal;
  const FieldGrid reference = metrics_reference_field(cfg, log);
  r.metrics = evaluate_all(reference, r.field, cfg.benchmark);
  r.control = control_of(cfg);

  const fs::path config_csv = cfg.output_dir / "best_config.csv";
  const fs::path history_csv = cfg.output_dir / "history.csv";
  const fs::path achieved_csv = cfg.output_dir / "achieved.csv";
  const fs::path image = cfg.output_dir / "best_config.ppm";
  write_config_csv(config_csv, r.ga.best_config);
  write_history_csv(history_csv, r.ga.history);
  write_field_csv(achieved_csv, r.field);
  write_config_ppm(image, r.ga.best_config);

  r.record_path = cfg.output_dir / "run_record.json";
  r.record = base_record(cfg, "optimize");
  r.record["metrics"] = to_json(r.metrics);
  r.record["nmse_to_ideal"] = r.nmse_to_ideal;
  r.record["control"] = to_json(r.control);
  r.record["optimizer"] = {{"best_fitness", r.ga.best_fitness},
                           {"evaluations", r.ga.evaluations},
                           {"generations", r.ga.history.size()}};
  r.record["artifacts"] = {{"best_config_csv", config_csv.string()},
                           {"history_csv", history_csv.string()},
                           {"achieved_csv", achieved_csv.string()},
                           {"config_image", image.string()},
                           {"run_record", r.record_path.string()}};
  r.record["wall_time_s"] = seconds_since(t0);
  write_json(r.record_path, r.record);
  return r;
}

EvaluateResult cmd_evaluate(const RunConfig& cfg, const LogFn& log) {
  const auto t0 = Clock::now();
  if (!cfg.achieved_csv)
    throw Error(ErrorCode::ConfigParseError, "evaluate needs evaluate.achieved_csv in the run config");
  ensure_dir(cfg.output_dir);
  const FieldGrid achieved = read_field_csv(*cfg.achieved_csv);
  const FieldGrid reference = cfg.reference_csv ? read_field_csv(*cfg.reference_csv)
                                                : metrics_reference_field(cfg, log);
  check_same_grid(reference, achieved);

  EvaluateResult r;
  r.metrics = evaluate_all(reference, achieved, cfg.benchmark);
  r.record_path = cfg.output_dir / "metrics.json";
  r.record = base_record(cfg, "evaluate");
  r.record["metrics"] = to_json(r.metrics);
  r.record["inputs"] = {{"achieved_csv", cfg.achieved_csv->string()},
                        {"reference_csv", cfg.reference_csv ? json(cfg.reference_csv->string()) : json(nullptr)}};
  r.record["artifacts"] = {{"run_record", r.record_path.string()}};
  r.record["wall_time_s"] = seconds_since(t0);
  write_json(r.record_path, r.record);
  return r;
}

std::vector<SweepRow> cmd_sweep_grouping(const RunConfig& cfg, const LogFn& log) {
  ensure_dir(cfg.output_dir);
  if (cfg.sweep_group_sizes.empty())
    throw Error(ErrorCode::ConfigParseError, "sweep.group_sizes is empty");
  // Validate every G before spending time on any of them.
  std::vector<RunConfig> runs;
  for (int g : cfg.sweep_group_sizes) runs.push_back(with_group_size(cfg, g));

  const FieldGrid reference = metrics_reference_field(cfg, log);
  std::vector<SweepRow> rows;
  std::ostringstream csv;
  csv << "G,de,nmse,slr_db,physical_paths,switching_rate_hz\n";
  for (const RunConfig& run : runs) {
    const int g = run.surface.surface.group_size;
    say(log, "G = " + std::to_string(g));
    OptimizeCore core = optimize_core(run, log);
    SweepRow row;
    row.group_size = g;
    row.metrics = evaluate_all(reference, core.field, run.benchmark);
    row.nmse_to_ideal = core.nmse_to_ideal;
    row.control = control_of(run);
    const fs::path sub = cfg.output_dir / ("G" + std::to_string(g));
    ensure_dir(sub);
    write_config_csv(sub / "best_config.csv", core.ga.best_config);
    write_history_csv(sub / "history.csv", core.ga.history);
    write_field_csv(sub / "achieved.csv", core.field);
    csv << g << ',' << format_sig9(row.metrics.de) << ',' << format_sig9(row.metrics.nmse) << ','
        << format_sig9(row.metrics.slr_db) << ',' << row.control.physical_paths << ','
        << format_sig9(row.control.switching_rate_hz) << '\n';
    rows.push_back(std::move(row));
  }
  write_file_atomic(cfg.output_dir / "sweep_grouping.csv", csv.str());
  return rows;
}

std::vector<Table1Row> table1_rows(int controlled_groups, double tau_s, double diode_power_w) {
  std::vector<Table1Row> rows;
  for (const auto& id : bundled_cell_ids()) {
    if (id == "S0") continue;
    Table1Row row;
    row.cell = load_unit_cell(id);
    const BuiltSurface s = build_surface(row.cell, 40, 40, 1);
    row.report = complexity_report(s.surface, controlled_groups, tau_s, diode_power_w);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %5s %7s %-7s %10s %-8s %10s %14s %12s\n", "Cell", "Bits", "Diodes",
                "f(GHz)", "Paths", "Power", "Power(W)", "Area(m^2)", "W/m^2");
  out += buf;
  for (const auto& r : rows) {
    const auto& p = r.report.params;
    const std::string expr = (p.n_diodes == 1 ? std::string() : std::to_string(p.n_diodes)) + "MNP_D";
    std::snprintf(buf, sizeof buf, "%-4s %5d %7d %-7.2f %10lld %-8s %10.2f %14.3e %12.3g\n", r.cell.id.c_str(),
                  p.n_bits, p.n_diodes, p.design_freq_hz * 1e-9, static_cast<long long>(r.report.physical_paths),
                  expr.c_str(), r.report.total_power_w, r.report.cell_area_m2, r.report.power_per_area_w_m2);
    out += buf;
  }
  return out;
}

json table1_json(const std::vector<Table1Row>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row = to_json(r.report);
    row["cell_id"] = r.cell.id;
    // Physical cell size next to the half-wavelength area used for W/m^2.
    row["cell_size_mm"] = {r.cell.width_m * 1e3, r.cell.height_m * 1e3};
    if (!r.cell.notes.empty()) row["notes"] = r.cell.notes;
    arr.push_back(std::move(row));
  }
  return {{"tool", "risbench"}, {"version", kToolVersion}, {"rows", arr}};
}

}  // namespace risbench
