#pragma once

#include <cstddef>
#include <vector>

#include "risbench/field.hpp"

namespace risbench {

/// Per-cell complex illumination (amplitude, path phase and incident-side
/// cell response) before the diode state is applied.
std::vector<cplx> source_weights(const SurfaceSpec& surface, const SourceModel& src);

/// Angular envelope multiplying the array sum at observation angle theta.
double observation_envelope(const SurfaceSpec& surface, const SourceModel& src, double theta_rad);

namespace kernels {

/// Illuminated array sum toward one direction, without the angular envelope.
cplx array_sum(const SurfaceSpec& surface, const ConfigMatrix& config, const SourceModel& src,
               double theta_deg, double phi_deg);

/// Direct summation of the array sum, one grid point and one cell at a time,
/// recomputing every phase term. Serial and slow; kept as the test oracle for
/// the parallel evaluator.
FieldGrid evaluate_reference(const SurfaceSpec& surface, const ConfigMatrix& config,
                             const SourceModel& src, const GridSpec& grid);

}  // namespace kernels

/// Scratch buffers for FieldEvaluator::evaluate. Reuse across calls to avoid
/// reallocating.
struct FieldWorkspace {
  std::vector<double> weight_re, weight_im;
  std::vector<double> partial_re, partial_im;
};

/// Precomputes steering tables for one (surface geometry, source, grid) and
/// evaluates configurations against them.
///
/// The array sum separates as sum_m a_m(v) sum_n w_mn b_n(u) with
/// u = sin(theta) cos(phi) and v = sin(theta) sin(phi). Columns phi and
/// 360 - phi share u, so the inner sum is computed once per distinct u and
/// reused. Both passes are OpenMP-parallel over independent outputs with a
/// fixed summation order, so results do not depend on the thread count.
class FieldEvaluator {
 public:
  FieldEvaluator(const SurfaceSpec& surface, const SourceModel& src, const GridSpec& grid);

  const SurfaceSpec& surface() const { return surface_; }
  const GridSpec& grid() const { return grid_; }

  FieldGrid evaluate(const ConfigMatrix& config) const;
  void evaluate(const ConfigMatrix& config, FieldWorkspace& ws, std::vector<cplx>& out) const;

 private:
  SurfaceSpec surface_;
  GridSpec grid_;
  int active_rows_ = 0;      // theta rows strictly above the horizon
  int distinct_per_row_ = 0;  // distinct u values per theta row
  std::size_t distinct_u_ = 0;

  std::vector<cplx> source_;    // per cell
  std::vector<cplx> gamma_;     // per state
  std::vector<double> b_re_, b_im_;  // [n][u]
  std::vector<double> a_re_, a_im_;  // [point][m]
  std::vector<int> u_index_;         // per active point
  std::vector<double> envelope_;     // per active point
};

}  // namespace risbench
