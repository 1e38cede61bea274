#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "risbench/surface.hpp"

namespace risbench {

using cplx = std::complex<double>;

enum class SourceKind { Point, Planewave };

/// Which angle feeds the incident-side cell response under planewave
/// illumination. `Incidence` evaluates f at the incidence angle, which is what
/// the point-source sum converges to for a distant source. `Observation`
/// reuses f(theta) for both sides, giving the f^2(theta) envelope.
enum class IncidentResponse { Incidence, Observation };

struct SourceModel {
  SourceKind kind = SourceKind::Planewave;
  Vec3 position_m{};            // point source only, z > 0
  double amplitude = 1.0;
  double theta_inc_deg = 0.0;   // planewave only
  double phi_inc_deg = 0.0;
  IncidentResponse incident_response = IncidentResponse::Incidence;

  static SourceModel planewave(double amplitude = 1.0, double theta_inc_deg = 0.0,
                               double phi_inc_deg = 0.0);
  static SourceModel point(Vec3 position_m, double amplitude = 1.0);
};

void check_source(const SourceModel& src);

/// Regular (theta, phi) sampling: theta in [0, 180), phi in [0, 360).
struct GridSpec {
  double theta_step_deg = 1.0;
  double phi_step_deg = 1.0;

  int theta_count() const;
  int phi_count() const;
  std::size_t size() const { return static_cast<std::size_t>(theta_count()) * phi_count(); }
  double theta_deg(int it) const { return it * theta_step_deg; }
  double phi_deg(int ip) const { return ip * phi_step_deg; }
  /// Column index of `phi_deg`, or -1 if the grid has no such column.
  int phi_index(double phi_deg) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws InvalidGrid unless both steps divide their ranges.
void check_grid(const GridSpec& grid);

/// Complex far field, theta-major: index = it * phi_count + ip.
struct FieldGrid {
  GridSpec grid;
  double wavelength_m = 0.0;
  std::vector<cplx> values;

  cplx at(int it, int ip) const {
    return values[static_cast<std::size_t>(it) * grid.phi_count() + ip];
  }
  double max_magnitude() const;
};

/// Signed elevation cut: +theta from phi = 0, -theta from phi = 180.
struct PrincipalCut {
  std::vector<double> signed_theta_deg;
  std::vector<double> magnitude;
};

/// cos(theta)^(1/q) on the front hemisphere, 0 behind it.
double radiation_factor(double q, double theta_rad);

FieldGrid field_planewave(const SurfaceSpec& surface, const ConfigMatrix& config,
                          const SourceModel& src, const GridSpec& grid = {});
FieldGrid field_point_source(const SurfaceSpec& surface, const ConfigMatrix& config,
                             const SourceModel& src, const GridSpec& grid = {});
/// Dispatches on `src.kind`.
FieldGrid compute_field(const SurfaceSpec& surface, const ConfigMatrix& config,
                        const SourceModel& src, const GridSpec& grid = {});

PrincipalCut principal_cut(const FieldGrid& field);

/// Divides by the peak magnitude; phases are kept.
FieldGrid normalize_grid(FieldGrid field);

/// Nearest state to `phase_deg` on the circle. Near-ties go to the state that
/// lies ahead of the requested phase.
int quantize_phase(const UnitCellSpec& cell, double phase_deg);

/// Rounds the ideal phase profile that re-radiates the given source toward
/// (theta, phi) onto the cell's available states.
ConfigMatrix phase_gradient_config(const SurfaceSpec& surface, const SourceModel& src,
                                   double steer_theta_deg, double steer_phi_deg);

}  // namespace risbench
