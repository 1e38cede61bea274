#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "risbench/field.hpp"
#include "risbench/optimizer.hpp"

namespace risbench {

/// One intended beam in the principal plane. Positive angles lie in the
/// phi = 0 half-plane, negative ones in phi = 180.
struct BeamSpec {
  double signed_theta_deg = 0.0;
  double rel_amplitude = 1.0;
  double lobe_start_deg = 0.0;
  double lobe_end_deg = 0.0;

  double lobe_width_deg() const { return lobe_end_deg - lobe_start_deg; }
};

struct BenchmarkPattern {
  std::string id;
  std::vector<BeamSpec> beams;
};

/// Throws InvalidBeam or OverlappingLobes.
void validate_benchmark(const BenchmarkPattern& bm);

/// `id_or_path` is B1..B8 for a bundled pattern, otherwise a JSON file path.
BenchmarkPattern load_benchmark(std::string_view id_or_path);

std::vector<std::string> bundled_benchmark_ids();

/// Raised-cosine spot per beam, peak-normalised to 1. Along the principal cut
/// a beam contributes a * cos^2(pi (s - theta_b) / w) over [start, end]; off the
/// cut the same taper is applied across the plane over a width w.
FieldGrid ideal_target_field(const BenchmarkPattern& bm, const GridSpec& grid = {},
                             double wavelength_m = 0.0);

/// Idealised 2-bit reference cell: |gamma| = 1, states 90 deg apart, q = 1.
UnitCellSpec reference_unit_cell(double design_freq_hz = 10e9);

struct ReferenceOptions {
  int rows = 40;
  int cols = 40;
  double design_freq_hz = 10e9;
  GridSpec grid{};
  GAParams ga{};
  std::filesystem::path cache_dir;  // empty: default_cache_dir()
};

struct ReferencePattern {
  FieldGrid field;
  ConfigMatrix config;
  std::filesystem::path field_csv;
  std::filesystem::path config_csv;
  bool from_cache = false;
};

/// $RISBENCH_CACHE_DIR, or ./cache when unset.
std::filesystem::path default_cache_dir();

/// Optimises the reference surface against the benchmark's ideal target and
/// returns the achieved pattern. Results are cached on disk; both the fresh and
/// the cached path return the values as persisted, so repeated calls are
/// bit-identical.
ReferencePattern reference_pattern(const BenchmarkPattern& bm, const SourceModel& src,
                                   std::uint64_t seed, const ReferenceOptions& options = {});

}  // namespace risbench
