#pragma once

#include <cstdint>

#include "risbench/surface.hpp"

namespace risbench {

inline constexpr double kDefaultDiodePowerW = 8e-3;
inline constexpr double kDefaultSlowestResponseS = 20e-9;
inline constexpr int kDefaultControlledGroups = 40;

struct ControlParams {
  int rows = 0;
  int cols = 0;
  int n_bits = 0;
  int n_diodes = 0;
  int group_size = 1;
  int controlled_groups = kDefaultControlledGroups;  // K
  double tau_s = kDefaultSlowestResponseS;
  double diode_power_w = kDefaultDiodePowerW;        // P_D
  double design_freq_hz = 0.0;
};

struct ControlReport {
  std::int64_t physical_paths = 0;
  double switching_rate_hz = 0.0;
  double total_power_w = 0.0;
  double power_per_area_w_m2 = 0.0;
  double cell_area_m2 = 0.0;  // half-wavelength pitch squared
  ControlParams params;
};

/// M N n / G independent control lines.
std::int64_t physical_paths(int rows, int cols, int n_bits, int group_size);

/// G K / (M N n tau).
double switching_rate(int group_size, int controlled_groups, int rows, int cols, int n_bits,
                      double tau_s);

/// d M N P_D, every diode forward-biased.
double max_power(int n_diodes, int rows, int cols, double diode_power_w);

/// (c / 2f)^2.
double half_wave_cell_area(double freq_hz);

/// d P_D per half-wavelength cell area.
double power_per_area(int n_diodes, double diode_power_w, double freq_hz);

ControlReport complexity_report(const SurfaceSpec& surface,
                                int controlled_groups = kDefaultControlledGroups,
                                double tau_s = kDefaultSlowestResponseS,
                                double diode_power_w = kDefaultDiodePowerW);

}  // namespace risbench
