#pragma once

#include <span>
#include <vector>

#include "risbench/benchmarks.hpp"
#include "risbench/field.hpp"

namespace risbench {

struct LobeRegion {
  double start_deg = 0.0;
  double end_deg = 0.0;
  double peak_deg = 0.0;
  double peak_power = 0.0;
};

struct MetricsReport {
  double de = 0.0;
  double nmse = 0.0;
  double slr_db = 0.0;
  std::vector<double> per_beam_slr_db;
  std::vector<double> per_beam_de;
};

inline constexpr double kDefaultPhiBandDeg = 5.0;
inline constexpr double kLobeFloor = 1e-4;       // fraction of peak power
inline constexpr double kNoSideLobeDb = 99.0;    // reported when nothing competes

/// Riemann sum of |E|^2 sin(theta) dtheta dphi over the grid points whose
/// signed principal-cut angle lies in [start, end], taken over the phi columns
/// within `phi_band_deg` of the matching half-plane. Points on the region or
/// band boundary carry half weight, so adjacent regions add up exactly.
double directivity_over_region(const FieldGrid& field, double start_deg, double end_deg,
                               double phi_band_deg = kDefaultPhiBandDeg);
double directivity_over_region(const FieldGrid& field, const LobeRegion& region,
                               double phi_band_deg = kDefaultPhiBandDeg);

struct DirectivityError {
  double total = 0.0;
  std::vector<double> per_beam;
};

/// (D_r - D_a) / D_r with directivities summed over every benchmark lobe.
DirectivityError directivity_error(const FieldGrid& reference, const FieldGrid& achieved,
                                   const BenchmarkPattern& bm,
                                   double phi_band_deg = kDefaultPhiBandDeg);

/// Mean squared difference of peak-normalised magnitudes over all grid points.
double nmse(const FieldGrid& reference, const FieldGrid& achieved);

/// Same as nmse() with the reference already reduced to |E| / max |E|.
double nmse_normalized(std::span<const double> reference_norm, std::span<const cplx> achieved);

/// Local maxima of |E|^2 above kLobeFloor * peak, each bounded by the nearest
/// minima on either side, strongest first.
std::vector<LobeRegion> detect_lobes(const PrincipalCut& cut);

struct SideLobeRatio {
  double mean_db = 0.0;
  std::vector<double> per_beam_db;
};

SideLobeRatio side_lobe_ratio(const FieldGrid& achieved, const BenchmarkPattern& bm);

MetricsReport evaluate_all(const FieldGrid& reference, const FieldGrid& achieved,
                           const BenchmarkPattern& bm);

/// Throws GridMismatch unless both fields share a grid and size.
void check_same_grid(const FieldGrid& a, const FieldGrid& b);

}  // namespace risbench
