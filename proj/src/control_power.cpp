#include "risbench/control_power.hpp"

#include "risbench/error.hpp"

namespace risbench {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveParam, std::string(what) + " must be positive");
}

}  // namespace

std::int64_t physical_paths(int rows, int cols, int n_bits, int group_size) {
  require_positive(rows, "M");
  require_positive(cols, "N");
  require_positive(n_bits, "n");
  require_positive(group_size, "G");
  const std::int64_t cells = std::int64_t{rows} * cols;
  if (cells % group_size != 0)
    throw Error(ErrorCode::GroupSizeMismatch,
                std::to_string(cells) + " cells do not split into groups of " + std::to_string(group_size));
  return cells / group_size * n_bits;
}

double switching_rate(int group_size, int controlled_groups, int rows, int cols, int n_bits,
                      double tau_s) {
  require_positive(group_size, "G");
  require_positive(controlled_groups, "K");
  require_positive(rows, "M");
  require_positive(cols, "N");
  require_positive(n_bits, "n");
  require_positive(tau_s, "tau");
  return static_cast<double>(group_size) * controlled_groups /
         (static_cast<double>(rows) * cols * n_bits * tau_s);
}

double max_power(int n_diodes, int rows, int cols, double diode_power_w) {
  require_positive(n_diodes, "d");
  require_positive(rows, "M");
  require_positive(cols, "N");
  require_positive(diode_power_w, "P_D");
  return static_cast<double>(n_diodes) * rows * cols * diode_power_w;
}

double half_wave_cell_area(double freq_hz) {
  require_positive(freq_hz, "frequency");
  const double pitch = kSpeedOfLight / (2.0 * freq_hz);
  return pitch * pitch;
}

double power_per_area(int n_diodes, double diode_power_w, double freq_hz) {
  require_positive(n_diodes, "d");
  require_positive(diode_power_w, "P_D");
  return n_diodes * diode_power_w / half_wave_cell_area(freq_hz);
}

ControlReport complexity_report(const SurfaceSpec& surface, int controlled_groups, double tau_s,
                                double diode_power_w) {
  const UnitCellSpec& cell = surface.cell;
  ControlReport r;
  r.params = {surface.rows,       surface.cols, cell.n_bits,   cell.n_diodes,      surface.group_size,
              controlled_groups,  tau_s,        diode_power_w, cell.design_freq_hz};
  r.physical_paths = physical_paths(surface.rows, surface.cols, cell.n_bits, surface.group_size);
  r.switching_rate_hz =
      switching_rate(surface.group_size, controlled_groups, surface.rows, surface.cols, cell.n_bits, tau_s);
  r.total_power_w = max_power(cell.n_diodes, surface.rows, surface.cols, diode_power_w);
  r.power_per_area_w_m2 = power_per_area(cell.n_diodes, diode_power_w, cell.design_freq_hz);
  r.cell_area_m2 = half_wave_cell_area(cell.design_freq_hz);
  return r;
}

}  // namespace risbench
