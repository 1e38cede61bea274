#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace risbench {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Reflection coefficient of one diode state, as tabulated at normal incidence.
struct CellState {
  double gamma_mag = 1.0;
  double gamma_phase_deg = 0.0;
};

/// One tunable unit-cell type. States are indexed 0 .. 2^n_bits - 1.
struct UnitCellSpec {
  std::string id;
  int n_bits = 1;
  int n_diodes = 1;
  std::vector<CellState> states;
  double q_exponent = 1.0;  // radiation response cos(theta)^(1/q)
  double width_m = 0.0;
  double height_m = 0.0;
  double design_freq_hz = 0.0;
  std::string notes;

  int state_count() const { return static_cast<int>(states.size()); }
  double wavelength_m() const { return kSpeedOfLight / design_freq_hz; }
};

/// Returns `spec` unchanged, or throws if any invariant is violated.
UnitCellSpec validate_unit_cell(UnitCellSpec spec);

/// M x N grid of state indices, row-major.
class ConfigMatrix {
 public:
  ConfigMatrix() = default;
  ConfigMatrix(int rows, int cols, int fill = 0);
  ConfigMatrix(int rows, int cols, std::vector<int> states);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  int& at(int m, int n) { return states_[static_cast<std::size_t>(m * cols_ + n)]; }
  int at(int m, int n) const { return states_[static_cast<std::size_t>(m * cols_ + n)]; }
  std::span<const int> data() const { return states_; }

  friend bool operator==(const ConfigMatrix&, const ConfigMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> states_;
};

/// Group id per cell. Groups are row-major contiguous runs of `group_size` cells.
class GroupLayout {
 public:
  GroupLayout() = default;
  GroupLayout(int rows, int cols, int group_size);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int group_size() const { return group_size_; }
  int group_count() const { return rows_ * cols_ / group_size_; }
  int group_of(int m, int n) const { return assignment_[static_cast<std::size_t>(m * cols_ + n)]; }
  std::span<const int> assignment() const { return assignment_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  int group_size_ = 1;
  std::vector<int> assignment_;
};

/// Planar M x N array in the x-y plane, centred at the origin, normal +z.
/// Row index m runs along y, column index n along x.
struct SurfaceSpec {
  UnitCellSpec cell;
  int rows = 1;
  int cols = 1;
  double pitch_m = 0.0;
  int group_size = 1;

  int cell_count() const { return rows * cols; }
  double wavelength_m() const { return cell.wavelength_m(); }
  double x_of(int n) const { return (n - 0.5 * (cols - 1)) * pitch_m; }
  double y_of(int m) const { return (m - 0.5 * (rows - 1)) * pitch_m; }
  Vec3 position(int m, int n) const { return {x_of(n), y_of(m), 0.0}; }
};

struct BuiltSurface {
  SurfaceSpec surface;
  GroupLayout layout;
};

/// Default pitch is half a wavelength at the cell's design frequency.
BuiltSurface build_surface(const UnitCellSpec& cell, int rows, int cols, int group_size,
                           std::optional<double> pitch_m = std::nullopt);

GroupLayout layout_of(const SurfaceSpec& surface);

/// Expands one state per group to a full configuration.
ConfigMatrix expand_groups(std::span<const int> group_states, const GroupLayout& layout,
                           int state_count);

/// Throws ConfigMismatch if `config` does not fit `surface`.
void check_config(const SurfaceSpec& surface, const ConfigMatrix& config);

/// 2 D^2 / lambda.
double near_field_boundary(double aperture_diameter_m, double wavelength_m);

/// Diameter of the smallest sphere enclosing the cell-centre lattice.
double aperture_diameter(const SurfaceSpec& surface);

}  // namespace risbench
