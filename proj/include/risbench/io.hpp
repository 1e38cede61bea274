#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "risbench/benchmarks.hpp"
#include "risbench/control_power.hpp"
#include "risbench/field.hpp"
#include "risbench/metrics.hpp"
#include "risbench/optimizer.hpp"
#include "risbench/surface.hpp"

namespace risbench {

using json = nlohmann::json;
namespace fs = std::filesystem;

// ---- JSON documents -------------------------------------------------------

/// Parses a file; missing or malformed files raise ConfigParseError naming the path.
json read_json_file(const fs::path& path);

/// {id, n_bits, n_diodes, states:[{mag, phase_deg}], q, width_mm, height_mm, freq_ghz}
UnitCellSpec cell_from_json(const json& j);
json to_json(const UnitCellSpec& cell);

/// Bundled id (S0..S5) or a path to a cell JSON file.
UnitCellSpec load_unit_cell(std::string_view id_or_path, const fs::path& base_dir = {});
std::vector<std::string> bundled_cell_ids();

/// {cell_id, M, N, G, pitch_mm?}. `cell_id` resolves through load_unit_cell.
BuiltSurface surface_from_json(const json& j, const fs::path& base_dir = {});
json surface_to_json(const SurfaceSpec& surface);

/// {id, beams:[{theta_deg, amplitude, start_deg, end_deg}]}
BenchmarkPattern benchmark_from_json(const json& j);
json to_json(const BenchmarkPattern& bm);

SourceModel source_from_json(const json& j);
json to_json(const SourceModel& src);

GridSpec grid_from_json(const json& j);
json to_json(const GridSpec& grid);

GAParams ga_params_from_json(const json& j, GAParams defaults = {});
json to_json(const GAParams& params);

json to_json(const MetricsReport& report);
json to_json(const ControlReport& report);

// ---- CSV and images -------------------------------------------------------

/// Nine significant digits, shortest form.
std::string format_sig9(double v);

/// Header `theta_deg,phi_deg,re,im,mag`, one row per grid point, theta-major.
void write_field_csv(const fs::path& path, const FieldGrid& field);
std::string field_csv(const FieldGrid& field);
/// Rebuilds the grid from the rows; wavelength is not stored and comes back as 0.
FieldGrid read_field_csv(const fs::path& path);

/// M lines of N comma-separated state indices.
void write_config_csv(const fs::path& path, const ConfigMatrix& config);
ConfigMatrix read_config_csv(const fs::path& path);

/// Header `generation,best_fitness`, generations numbered from 1.
void write_history_csv(const fs::path& path, std::span<const double> history);
std::vector<double> read_history_csv(const fs::path& path);

/// Binary PPM (P6), one pixel per cell, row m on image row m.
/// State colours: 0 blue, 1 cyan, 2 yellow, 3 red.
void write_config_ppm(const fs::path& path, const ConfigMatrix& config);

struct Rgb {
  unsigned char r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};
Rgb state_colour(int state);

/// Writes to a sibling temporary then renames over `path`.
void write_file_atomic(const fs::path& path, std::string_view content);
std::string read_text_file(const fs::path& path);

}  // namespace risbench
