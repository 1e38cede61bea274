#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "risbench/io.hpp"

namespace risbench {

inline constexpr const char* kToolVersion = "0.1.0";

/// How `simulate` picks the configuration it renders.
struct ConfigurationChoice {
  enum class Kind { Uniform, Csv, Steer } kind = Kind::Steer;
  int state = 0;             // Uniform
  fs::path csv;              // Csv
  double theta_deg = 0.0;    // Steer: signed angle on the principal cut
};

enum class MetricsReference { S0, Ideal };

/// A parsed run-config file. Relative paths inside it resolve against the
/// directory holding the file.
struct RunConfig {
  fs::path base_dir;
  json raw;

  BuiltSurface surface;
  BenchmarkPattern benchmark;
  SourceModel source;
  GridSpec grid;
  GAParams ga;
  fs::path output_dir = "out";
  fs::path cache_dir;  // empty: default_cache_dir()
  std::uint64_t seed = 42;

  ConfigurationChoice configuration;
  MetricsReference metrics_reference = MetricsReference::S0;
  int controlled_groups = kDefaultControlledGroups;
  double tau_s = kDefaultSlowestResponseS;
  double diode_power_w = kDefaultDiodePowerW;

  std::vector<int> sweep_group_sizes{1, 2};
  std::optional<fs::path> achieved_csv;   // evaluate
  std::optional<fs::path> reference_csv;  // evaluate; otherwise the benchmark reference
};

RunConfig parse_run_config(const json& j, const fs::path& base_dir = {});
RunConfig load_run_config(const fs::path& path);

/// Rebuilds the surface with another group size, keeping everything else.
RunConfig with_group_size(const RunConfig& cfg, int group_size);

struct SimulateResult {
  FieldGrid field;
  ConfigMatrix config;
  fs::path field_csv;
  fs::path image;
};

struct OptimizeResult {
  GAResult ga;
  FieldGrid field;
  MetricsReport metrics;
  double nmse_to_ideal = 0.0;
  ControlReport control;
  json record;
  fs::path record_path;
};

struct EvaluateResult {
  MetricsReport metrics;
  json record;
  fs::path record_path;
};

struct SweepRow {
  int group_size = 1;
  MetricsReport metrics;
  double nmse_to_ideal = 0.0;
  ControlReport control;
};

/// Receives one-line progress messages; may be empty.
using LogFn = std::function<void(const std::string&)>;

SimulateResult cmd_simulate(const RunConfig& cfg);
OptimizeResult cmd_optimize(const RunConfig& cfg, const LogFn& log = {});
EvaluateResult cmd_evaluate(const RunConfig& cfg, const LogFn& log = {});
std::vector<SweepRow> cmd_sweep_grouping(const RunConfig& cfg, const LogFn& log = {});

struct Table1Row {
  UnitCellSpec cell;
  ControlReport report;
};

/// One row per bundled measured cell (S1..S5) at 40 x 40, G = 1.
std::vector<Table1Row> table1_rows(int controlled_groups = kDefaultControlledGroups,
                                   double tau_s = kDefaultSlowestResponseS,
                                   double diode_power_w = kDefaultDiodePowerW);
std::string table1_text(const std::vector<Table1Row>& rows);
json table1_json(const std::vector<Table1Row>& rows);

/// The field the metrics compare against: the S0 reference pattern or the ideal target.
FieldGrid metrics_reference_field(const RunConfig& cfg, const LogFn& log = {});

}  // namespace risbench
