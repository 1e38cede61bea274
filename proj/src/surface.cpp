#include "risbench/surface.hpp"

#include <cmath>

#include "risbench/error.hpp"

namespace risbench {

UnitCellSpec validate_unit_cell(UnitCellSpec spec) {
  if (spec.n_bits <= 0 || spec.n_bits > 8)
    throw Error(ErrorCode::NonPositiveParam, "cell '" + spec.id + "': n_bits must be in 1..8");
  if (spec.n_diodes < spec.n_bits)
    throw Error(ErrorCode::NonPositiveParam, "cell '" + spec.id + "': n_diodes must be >= n_bits");
  const std::size_t expected = std::size_t{1} << spec.n_bits;
  if (spec.states.size() != expected)
    throw Error(ErrorCode::InvalidStateCount,
                "cell '" + spec.id + "' has " + std::to_string(spec.states.size()) +
                    " states, expected " + std::to_string(expected));
  for (const auto& s : spec.states) {
    if (!(s.gamma_mag > 0.0 && s.gamma_mag <= 1.0))
      throw Error(ErrorCode::InvalidGamma,
                  "cell '" + spec.id + "': |gamma| = " + std::to_string(s.gamma_mag) + " outside (0,1]");
    if (!std::isfinite(s.gamma_phase_deg))
      throw Error(ErrorCode::InvalidGamma, "cell '" + spec.id + "': non-finite phase");
  }
  if (!(spec.q_exponent > 0.0))
    throw Error(ErrorCode::NonPositiveParam, "cell '" + spec.id + "': q must be positive");
  if (!(spec.design_freq_hz > 0.0))
    throw Error(ErrorCode::NonPositiveParam, "cell '" + spec.id + "': design frequency must be positive");
  if (spec.width_m < 0.0 || spec.height_m < 0.0)
    throw Error(ErrorCode::NonPositiveParam, "cell '" + spec.id + "': negative dimensions");
  return spec;
}

ConfigMatrix::ConfigMatrix(int rows, int cols, int fill)
    : rows_(rows), cols_(cols), states_(static_cast<std::size_t>(rows) * cols, fill) {}

ConfigMatrix::ConfigMatrix(int rows, int cols, std::vector<int> states)
    : rows_(rows), cols_(cols), states_(std::move(states)) {
  if (states_.size() != static_cast<std::size_t>(rows) * cols)
    throw Error(ErrorCode::LengthMismatch, "config has " + std::to_string(states_.size()) +
                                               " entries for a " + std::to_string(rows) + "x" +
                                               std::to_string(cols) + " surface");
}

GroupLayout::GroupLayout(int rows, int cols, int group_size)
    : rows_(rows), cols_(cols), group_size_(group_size) {
  if (rows <= 0 || cols <= 0 || group_size <= 0)
    throw Error(ErrorCode::NonPositiveParam, "layout dimensions must be positive");
  if ((rows * cols) % group_size != 0)
    throw Error(ErrorCode::GroupSizeMismatch, std::to_string(rows * cols) +
                                                  " cells are not divisible into groups of " +
                                                  std::to_string(group_size));
  assignment_.resize(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < assignment_.size(); ++i)
    assignment_[i] = static_cast<int>(i) / group_size;
}

BuiltSurface build_surface(const UnitCellSpec& cell, int rows, int cols, int group_size,
                           std::optional<double> pitch_m) {
  if (rows <= 0 || cols <= 0 || group_size <= 0)
    throw Error(ErrorCode::NonPositiveParam, "M, N and G must be positive");
  SurfaceSpec s;
  s.cell = validate_unit_cell(cell);
  s.rows = rows;
  s.cols = cols;
  s.group_size = group_size;
  s.pitch_m = pitch_m.value_or(0.5 * s.cell.wavelength_m());
  if (!(s.pitch_m > 0.0)) throw Error(ErrorCode::NonPositiveParam, "pitch must be positive");
  GroupLayout layout(rows, cols, group_size);
  return {std::move(s), std::move(layout)};
}

GroupLayout layout_of(const SurfaceSpec& surface) {
  return GroupLayout(surface.rows, surface.cols, surface.group_size);
}

ConfigMatrix expand_groups(std::span<const int> group_states, const GroupLayout& layout,
                           int state_count) {
  if (static_cast<int>(group_states.size()) != layout.group_count())
    throw Error(ErrorCode::LengthMismatch, "got " + std::to_string(group_states.size()) +
                                               " group states for " +
                                               std::to_string(layout.group_count()) + " groups");
  for (int s : group_states)
    if (s < 0 || s >= state_count)
      throw Error(ErrorCode::InvalidStateIndex,
                  "state " + std::to_string(s) + " not in [0," + std::to_string(state_count) + ")");
  ConfigMatrix out(layout.rows(), layout.cols());
  for (int m = 0; m < layout.rows(); ++m)
    for (int n = 0; n < layout.cols(); ++n)
      out.at(m, n) = group_states[static_cast<std::size_t>(layout.group_of(m, n))];
  return out;
}

void check_config(const SurfaceSpec& surface, const ConfigMatrix& config) {
  if (config.rows() != surface.rows || config.cols() != surface.cols)
    throw Error(ErrorCode::ConfigMismatch,
                "config is " + std::to_string(config.rows()) + "x" + std::to_string(config.cols()) +
                    ", surface is " + std::to_string(surface.rows) + "x" + std::to_string(surface.cols));
  const int k = surface.cell.state_count();
  for (int s : config.data())
    if (s < 0 || s >= k)
      throw Error(ErrorCode::ConfigMismatch,
                  "state " + std::to_string(s) + " invalid for cell '" + surface.cell.id + "'");
}

double near_field_boundary(double aperture_diameter_m, double wavelength_m) {
  if (!(aperture_diameter_m > 0.0) || !(wavelength_m > 0.0))
    throw Error(ErrorCode::NonPositiveParam, "aperture diameter and wavelength must be positive");
  return 2.0 * aperture_diameter_m * aperture_diameter_m / wavelength_m;
}

double aperture_diameter(const SurfaceSpec& surface) {
  return std::hypot((surface.cols - 1) * surface.pitch_m, (surface.rows - 1) * surface.pitch_m);
}

}  // namespace risbench
