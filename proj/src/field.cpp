#include "risbench/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "risbench/error.hpp"
#include "risbench/field_kernels.hpp"

namespace risbench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kStepTol = 1e-9;

int exact_ratio(double range, double step) {
  if (!(step > 0.0)) return -1;
  const double r = range / step;
  const double k = std::round(r);
  return std::abs(r - k) < kStepTol ? static_cast<int>(k) : -1;
}

// Maps an angle to (-180, 180].
double wrap180(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

}  // namespace

SourceModel SourceModel::planewave(double amplitude, double theta_inc_deg, double phi_inc_deg) {
  SourceModel s;
  s.kind = SourceKind::Planewave;
  s.amplitude = amplitude;
  s.theta_inc_deg = theta_inc_deg;
  s.phi_inc_deg = phi_inc_deg;
  return s;
}

SourceModel SourceModel::point(Vec3 position_m, double amplitude) {
  SourceModel s;
  s.kind = SourceKind::Point;
  s.position_m = position_m;
  s.amplitude = amplitude;
  return s;
}

void check_source(const SourceModel& src) {
  if (!(src.amplitude > 0.0)) throw Error(ErrorCode::NonPositiveParam, "source amplitude must be positive");
  if (src.kind == SourceKind::Point) {
    if (!(src.position_m.z > 0.0))
      throw Error(ErrorCode::SourceBelowSurface,
                  "point source z = " + std::to_string(src.position_m.z) + " m is not above the surface");
  } else if (src.theta_inc_deg < 0.0 || src.theta_inc_deg >= 90.0) {
    throw Error(ErrorCode::NonPositiveParam, "planewave incidence theta must be in [0, 90)");
  }
}

int GridSpec::theta_count() const { return exact_ratio(180.0, theta_step_deg); }
int GridSpec::phi_count() const { return exact_ratio(360.0, phi_step_deg); }

int GridSpec::phi_index(double phi_deg) const {
  const int k = exact_ratio(phi_deg, phi_step_deg);
  return (k >= 0 && k < phi_count()) ? k : -1;
}

void check_grid(const GridSpec& grid) {
  if (grid.theta_count() <= 0)
    throw Error(ErrorCode::InvalidGrid, "theta step " + std::to_string(grid.theta_step_deg) +
                                            " does not divide 180");
  if (grid.phi_count() <= 0)
    throw Error(ErrorCode::InvalidGrid, "phi step " + std::to_string(grid.phi_step_deg) +
                                            " does not divide 360");
}

double FieldGrid::max_magnitude() const {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  return peak;
}

double radiation_factor(double q, double theta_rad) {
  // cos(pi/2) is not exactly zero in floating point; snap the horizon.
  if (theta_rad >= std::numbers::pi / 2 - 1e-12) return 0.0;
  return std::pow(std::cos(theta_rad), 1.0 / q);
}

FieldGrid field_planewave(const SurfaceSpec& surface, const ConfigMatrix& config,
                          const SourceModel& src, const GridSpec& grid) {
  if (src.kind != SourceKind::Planewave)
    throw Error(ErrorCode::ConfigMismatch, "field_planewave needs a planewave source");
  return compute_field(surface, config, src, grid);
}

FieldGrid field_point_source(const SurfaceSpec& surface, const ConfigMatrix& config,
                             const SourceModel& src, const GridSpec& grid) {
  if (src.kind != SourceKind::Point)
    throw Error(ErrorCode::ConfigMismatch, "field_point_source needs a point source");
  return compute_field(surface, config, src, grid);
}

FieldGrid compute_field(const SurfaceSpec& surface, const ConfigMatrix& config,
                        const SourceModel& src, const GridSpec& grid) {
  check_config(surface, config);
  return FieldEvaluator(surface, src, grid).evaluate(config);
}

PrincipalCut principal_cut(const FieldGrid& field) {
  const int back = field.grid.phi_index(180.0);
  if (back < 0)
    throw Error(ErrorCode::GridMissingPlane,
                "phi step " + std::to_string(field.grid.phi_step_deg) + " has no 180 deg column");
  const double step = field.grid.theta_step_deg;
  const int last = std::min(static_cast<int>(std::floor(90.0 / step + kStepTol)),
                            field.grid.theta_count() - 1);
  PrincipalCut cut;
  cut.signed_theta_deg.reserve(2 * last + 1);
  cut.magnitude.reserve(2 * last + 1);
  for (int it = last; it >= 1; --it) {
    cut.signed_theta_deg.push_back(-field.grid.theta_deg(it));
    cut.magnitude.push_back(std::abs(field.at(it, back)));
  }
  for (int it = 0; it <= last; ++it) {
    cut.signed_theta_deg.push_back(field.grid.theta_deg(it));
    cut.magnitude.push_back(std::abs(field.at(it, 0)));
  }
  return cut;
}

FieldGrid normalize_grid(FieldGrid field) {
  const double peak = field.max_magnitude();
  if (!(peak > 0.0)) throw Error(ErrorCode::AllZeroField, "cannot normalize an all-zero field");
  for (auto& v : field.values) v /= peak;
  return field;
}

int quantize_phase(const UnitCellSpec& cell, double phase_deg) {
  int best = 0;
  double best_dist = 1e300;
  double best_diff = 0.0;
  for (int s = 0; s < cell.state_count(); ++s) {
    const double diff = wrap180(cell.states[static_cast<std::size_t>(s)].gamma_phase_deg - phase_deg);
    const double dist = std::abs(diff);
    if (dist < best_dist - kStepTol || (std::abs(dist - best_dist) <= kStepTol && diff > best_diff)) {
      best = s;
      best_dist = dist;
      best_diff = diff;
    }
  }
  return best;
}

ConfigMatrix phase_gradient_config(const SurfaceSpec& surface, const SourceModel& src,
                                   double steer_theta_deg, double steer_phi_deg) {
  check_source(src);
  const double k = 2.0 * std::numbers::pi / surface.wavelength_m();
  const double su = std::sin(steer_theta_deg * kDeg) * std::cos(steer_phi_deg * kDeg);
  const double sv = std::sin(steer_theta_deg * kDeg) * std::sin(steer_phi_deg * kDeg);
  const auto illum = source_weights(surface, src);
  ConfigMatrix config(surface.rows, surface.cols);
  for (int m = 0; m < surface.rows; ++m) {
    for (int n = 0; n < surface.cols; ++n) {
      const double path = std::arg(illum[static_cast<std::size_t>(m * surface.cols + n)]);
      const double ideal = -path - k * (surface.x_of(n) * su + surface.y_of(m) * sv);
      config.at(m, n) = quantize_phase(surface.cell, ideal / kDeg);
    }
  }
  return config;
}

}  // namespace risbench
