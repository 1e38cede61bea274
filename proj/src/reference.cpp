#include <cctype>
#include <cstdio>

#include "risbench/benchmarks.hpp"
#include "risbench/io.hpp"

namespace risbench {

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string sanitize(std::string_view id) {
  std::string out;
  for (char c : id) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out.empty() ? "custom" : out;
}

}  // namespace

ReferencePattern reference_pattern(const BenchmarkPattern& bm, const SourceModel& src,
                                   std::uint64_t seed, const ReferenceOptions& options) {
  validate_benchmark(bm);
  GAParams ga = options.ga;
  ga.seed = seed;

  const json key = {{"benchmark", to_json(bm)},
                    {"source", to_json(src)},
                    {"ga", to_json(ga)},
                    {"grid", to_json(options.grid)},
                    {"M", options.rows},
                    {"N", options.cols},
                    {"freq_hz", options.design_freq_hz}};
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(key.dump())));

  const fs::path dir = (options.cache_dir.empty() ? default_cache_dir() : options.cache_dir) / "ref";
  const std::string stem = sanitize(bm.id) + "_" + (src.kind == SourceKind::Point ? "point" : "planewave") +
                           "_" + std::to_string(seed) + "_" + hash;

  ReferencePattern out;
  out.field_csv = dir / (stem + ".csv");
  out.config_csv = dir / (stem + ".config.csv");
  out.from_cache = fs::exists(out.field_csv) && fs::exists(out.config_csv);

  const UnitCellSpec cell = reference_unit_cell(options.design_freq_hz);
  if (!out.from_cache) {
    const BuiltSurface s0 = build_surface(cell, options.rows, options.cols, 1);
    const FieldGrid target = ideal_target_field(bm, options.grid, cell.wavelength_m());
    const GAResult result = run_ga(s0.surface, src, target, ga);
    const FieldGrid achieved = compute_field(s0.surface, result.best_config, src, options.grid);
    // Config first: the field CSV's presence marks a complete entry.
    write_config_csv(out.config_csv, result.best_config);
    write_field_csv(out.field_csv, achieved);
  }
  out.config = read_config_csv(out.config_csv);
  out.field = read_field_csv(out.field_csv);
  out.field.wavelength_m = cell.wavelength_m();
  return out;
}

}  // namespace risbench
