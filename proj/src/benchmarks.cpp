#include "risbench/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "risbench/bundled.hpp"
#include "risbench/error.hpp"
#include "risbench/io.hpp"

namespace risbench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kEdgeTol = 1e-9;  // degrees

double raised_cosine(double offset_deg, double width_deg) {
  const double c = std::cos(std::numbers::pi * offset_deg / width_deg);
  return c * c;
}

}  // namespace

void validate_benchmark(const BenchmarkPattern& bm) {
  if (bm.beams.empty()) throw Error(ErrorCode::InvalidBeam, "benchmark '" + bm.id + "' has no beams");
  for (const auto& b : bm.beams) {
    if (!(b.lobe_start_deg < b.signed_theta_deg && b.signed_theta_deg < b.lobe_end_deg))
      throw Error(ErrorCode::InvalidBeam, "benchmark '" + bm.id + "': beam at " +
                                              std::to_string(b.signed_theta_deg) +
                                              " deg is not inside its lobe bounds");
    if (b.lobe_start_deg < -90.0 || b.lobe_end_deg > 90.0)
      throw Error(ErrorCode::InvalidBeam, "benchmark '" + bm.id + "': lobe bounds outside [-90, 90]");
    if (!(b.rel_amplitude > 0.0 && b.rel_amplitude <= 1.0))
      throw Error(ErrorCode::InvalidBeam, "benchmark '" + bm.id + "': amplitude outside (0, 1]");
  }
  for (std::size_t i = 0; i < bm.beams.size(); ++i) {
    for (std::size_t j = i + 1; j < bm.beams.size(); ++j) {
      const auto& a = bm.beams[i];
      const auto& b = bm.beams[j];
      if (std::max(a.lobe_start_deg, b.lobe_start_deg) < std::min(a.lobe_end_deg, b.lobe_end_deg))
        throw Error(ErrorCode::OverlappingLobes, "benchmark '" + bm.id + "': lobes of beams at " +
                                                     std::to_string(a.signed_theta_deg) + " and " +
                                                     std::to_string(b.signed_theta_deg) + " deg overlap");
    }
  }
}

std::vector<std::string> bundled_benchmark_ids() {
  std::vector<std::string> ids;
  for (const auto& f : bundled::benchmarks()) ids.emplace_back(f.id);
  return ids;
}

BenchmarkPattern load_benchmark(std::string_view id_or_path) {
  for (const auto& f : bundled::benchmarks())
    if (f.id == id_or_path) return benchmark_from_json(json::parse(f.json));
  const fs::path path{std::string(id_or_path)};
  if (path.extension() != ".json" && !fs::exists(path))
    throw Error(ErrorCode::UnknownBenchmark, "'" + std::string(id_or_path) +
                                                 "' is neither a bundled benchmark nor a JSON file");
  return benchmark_from_json(read_json_file(path));
}

FieldGrid ideal_target_field(const BenchmarkPattern& bm, const GridSpec& grid, double wavelength_m) {
  validate_benchmark(bm);
  check_grid(grid);
  const int nt = grid.theta_count();
  const int np = grid.phi_count();
  FieldGrid out{grid, wavelength_m, std::vector<cplx>(grid.size())};
  for (int it = 0; it < nt; ++it) {
    const double theta = grid.theta_deg(it) * kDeg;
    if (grid.theta_deg(it) > 90.0) break;
    for (int ip = 0; ip < np; ++ip) {
      const double phi = grid.phi_deg(ip) * kDeg;
      const double x = std::sin(theta) * std::cos(phi);
      const double y = std::sin(theta) * std::sin(phi);
      const double z = std::cos(theta);
      // Angle within the x-z plane (the principal cut) and across it.
      const double along = std::atan2(x, z) / kDeg;
      const double across = std::asin(std::clamp(y, -1.0, 1.0)) / kDeg;
      double v = 0.0;
      for (const auto& b : bm.beams) {
        const double w = b.lobe_width_deg();
        // The taper vanishes on the bounds; skip them so the zeros are exact.
        if (along <= b.lobe_start_deg + kEdgeTol || along >= b.lobe_end_deg - kEdgeTol ||
            std::abs(across) >= 0.5 * w - kEdgeTol)
          continue;
        v = std::max(v, b.rel_amplitude * raised_cosine(along - b.signed_theta_deg, w) *
                            raised_cosine(across, w));
      }
      out.values[static_cast<std::size_t>(it) * np + ip] = v;
    }
  }
  return normalize_grid(std::move(out));
}

UnitCellSpec reference_unit_cell(double design_freq_hz) {
  UnitCellSpec c;
  c.id = "S0";
  c.n_bits = 2;
  c.n_diodes = 2;
  c.states = {{1.0, 0.0}, {1.0, 90.0}, {1.0, 180.0}, {1.0, 270.0}};
  c.q_exponent = 1.0;
  c.design_freq_hz = design_freq_hz;
  c.width_m = c.height_m = 0.5 * kSpeedOfLight / design_freq_hz;
  return validate_unit_cell(std::move(c));
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("RISBENCH_CACHE_DIR"); env && *env) return env;
  return "cache";
}

}  // namespace risbench
