#include "risbench/field_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "risbench/error.hpp"

namespace risbench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr std::size_t kBlock = 64;  // distinct-u values per pass-1 work item

double wavenumber(const SurfaceSpec& surface) {
  return 2.0 * std::numbers::pi / surface.wavelength_m();
}

// Theta rows strictly above the horizon; rows at or beyond 90 deg stay zero.
int active_theta_rows(const GridSpec& grid) {
  int rows = 0;
  while (rows < grid.theta_count() && grid.theta_deg(rows) < 90.0 - 1e-9) ++rows;
  return rows;
}

std::vector<cplx> state_gammas(const UnitCellSpec& cell) {
  std::vector<cplx> g;
  g.reserve(cell.states.size());
  for (const auto& s : cell.states) g.push_back(std::polar(s.gamma_mag, s.gamma_phase_deg * kDeg));
  return g;
}

cplx cell_illumination(const SurfaceSpec& surface, const SourceModel& src, double k, int m, int n) {
  const Vec3 c = surface.position(m, n);
  if (src.kind == SourceKind::Planewave) {
    const double st = std::sin(src.theta_inc_deg * kDeg);
    const double phase =
        k * (c.x * st * std::cos(src.phi_inc_deg * kDeg) + c.y * st * std::sin(src.phi_inc_deg * kDeg));
    return std::polar(src.amplitude, phase);
  }
  const double dx = src.position_m.x - c.x;
  const double dy = src.position_m.y - c.y;
  const double dz = src.position_m.z - c.z;
  const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double theta_cell = std::acos(std::clamp(dz / r, -1.0, 1.0));
  return std::polar(src.amplitude / r, -k * r) * radiation_factor(surface.cell.q_exponent, theta_cell);
}

}  // namespace

std::vector<cplx> source_weights(const SurfaceSpec& surface, const SourceModel& src) {
  check_source(src);
  const double k = wavenumber(surface);
  std::vector<cplx> w(static_cast<std::size_t>(surface.cell_count()));
  for (int m = 0; m < surface.rows; ++m)
    for (int n = 0; n < surface.cols; ++n)
      w[static_cast<std::size_t>(m * surface.cols + n)] = cell_illumination(surface, src, k, m, n);
  return w;
}

double observation_envelope(const SurfaceSpec& surface, const SourceModel& src, double theta_rad) {
  const double q = surface.cell.q_exponent;
  const double f = radiation_factor(q, theta_rad);
  if (src.kind == SourceKind::Point) return f;
  if (src.incident_response == IncidentResponse::Observation) return f * f;
  return f * radiation_factor(q, src.theta_inc_deg * kDeg);
}

namespace kernels {

cplx array_sum(const SurfaceSpec& surface, const ConfigMatrix& config, const SourceModel& src,
               double theta_deg, double phi_deg) {
  const double k = wavenumber(surface);
  const double theta = theta_deg * kDeg;
  const double phi = phi_deg * kDeg;
  const double u = std::sin(theta) * std::cos(phi);
  const double v = std::sin(theta) * std::sin(phi);
  cplx sum{0.0, 0.0};
  for (int m = 0; m < surface.rows; ++m) {
    for (int n = 0; n < surface.cols; ++n) {
      const CellState& s = surface.cell.states[static_cast<std::size_t>(config.at(m, n))];
      const cplx gamma = std::polar(s.gamma_mag, s.gamma_phase_deg * kDeg);
      const cplx steer = std::polar(1.0, k * (surface.x_of(n) * u + surface.y_of(m) * v));
      sum += cell_illumination(surface, src, k, m, n) * gamma * steer;
    }
  }
  return sum;
}

FieldGrid evaluate_reference(const SurfaceSpec& surface, const ConfigMatrix& config,
                             const SourceModel& src, const GridSpec& grid) {
  check_grid(grid);
  check_source(src);
  check_config(surface, config);
  const int nphi = grid.phi_count();
  FieldGrid out{grid, surface.wavelength_m(), std::vector<cplx>(grid.size())};
  const int rows = active_theta_rows(grid);
  for (int it = 0; it < rows; ++it) {
    const double env = observation_envelope(surface, src, grid.theta_deg(it) * kDeg);
    for (int ip = 0; ip < nphi; ++ip)
      out.values[static_cast<std::size_t>(it) * nphi + ip] =
          env * array_sum(surface, config, src, grid.theta_deg(it), grid.phi_deg(ip));
  }
  return out;
}

}  // namespace kernels

FieldEvaluator::FieldEvaluator(const SurfaceSpec& surface, const SourceModel& src, const GridSpec& grid)
    : surface_(surface), grid_(grid) {
  check_grid(grid);
  check_source(src);
  const double k = wavenumber(surface);
  const int M = surface.rows;
  const int N = surface.cols;
  const int nphi = grid.phi_count();

  source_ = source_weights(surface, src);
  gamma_ = state_gammas(surface.cell);

  active_rows_ = active_theta_rows(grid);
  distinct_per_row_ = nphi / 2 + 1;
  distinct_u_ = static_cast<std::size_t>(active_rows_) * distinct_per_row_;

  b_re_.resize(static_cast<std::size_t>(N) * distinct_u_);
  b_im_.resize(b_re_.size());
  for (int it = 0; it < active_rows_; ++it) {
    const double st = std::sin(grid.theta_deg(it) * kDeg);
    for (int c = 0; c < distinct_per_row_; ++c) {
      const double u = st * std::cos(grid.phi_deg(c) * kDeg);
      const std::size_t j = static_cast<std::size_t>(it) * distinct_per_row_ + c;
      for (int n = 0; n < N; ++n) {
        const double ph = k * surface.x_of(n) * u;
        b_re_[n * distinct_u_ + j] = std::cos(ph);
        b_im_[n * distinct_u_ + j] = std::sin(ph);
      }
    }
  }

  const std::size_t points = static_cast<std::size_t>(active_rows_) * nphi;
  a_re_.resize(points * M);
  a_im_.resize(points * M);
  u_index_.resize(points);
  envelope_.resize(points);
  for (int it = 0; it < active_rows_; ++it) {
    const double theta = grid.theta_deg(it) * kDeg;
    const double env = observation_envelope(surface, src, theta);
    for (int ip = 0; ip < nphi; ++ip) {
      const std::size_t p = static_cast<std::size_t>(it) * nphi + ip;
      const int mirror = (nphi - ip) % nphi;
      u_index_[p] = it * distinct_per_row_ + std::min(ip, mirror);
      envelope_[p] = env;
      const double v = std::sin(theta) * std::sin(grid.phi_deg(ip) * kDeg);
      for (int m = 0; m < M; ++m) {
        const double ph = k * surface.y_of(m) * v;
        a_re_[p * M + m] = std::cos(ph);
        a_im_[p * M + m] = std::sin(ph);
      }
    }
  }
}

FieldGrid FieldEvaluator::evaluate(const ConfigMatrix& config) const {
  FieldWorkspace ws;
  FieldGrid out{grid_, surface_.wavelength_m(), {}};
  evaluate(config, ws, out.values);
  return out;
}

void FieldEvaluator::evaluate(const ConfigMatrix& config, FieldWorkspace& ws,
                              std::vector<cplx>& out) const {
  check_config(surface_, config);
  const int M = surface_.rows;
  const int N = surface_.cols;
  const int nphi = grid_.phi_count();
  const std::size_t U = distinct_u_;

  ws.weight_re.resize(static_cast<std::size_t>(M) * N);
  ws.weight_im.resize(ws.weight_re.size());
  const auto states = config.data();
  for (std::size_t i = 0; i < ws.weight_re.size(); ++i) {
    const cplx w = source_[i] * gamma_[static_cast<std::size_t>(states[i])];
    ws.weight_re[i] = w.real();
    ws.weight_im[i] = w.imag();
  }
  ws.partial_re.resize(static_cast<std::size_t>(M) * U);
  ws.partial_im.resize(ws.partial_re.size());

  const double* wr = ws.weight_re.data();
  const double* wi = ws.weight_im.data();
  double* tr_all = ws.partial_re.data();
  double* ti_all = ws.partial_im.data();
  const double* br_all = b_re_.data();
  const double* bi_all = b_im_.data();

  // Pass 1: partial[m][u] = sum_n w[m][n] b[n][u], n ascending.
  const long blocks = static_cast<long>((U + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static)
  for (long blk = 0; blk < blocks; ++blk) {
    const std::size_t j0 = static_cast<std::size_t>(blk) * kBlock;
    const std::size_t j1 = std::min(U, j0 + kBlock);
    int m = 0;
    // Four rows at a time so each b load feeds four accumulators.
    for (; m + 4 <= M; m += 4) {
      double* tr0 = tr_all + static_cast<std::size_t>(m) * U;
      double* ti0 = ti_all + static_cast<std::size_t>(m) * U;
      double* tr1 = tr0 + U;
      double* ti1 = ti0 + U;
      double* tr2 = tr1 + U;
      double* ti2 = ti1 + U;
      double* tr3 = tr2 + U;
      double* ti3 = ti2 + U;
      for (std::size_t j = j0; j < j1; ++j)
        tr0[j] = ti0[j] = tr1[j] = ti1[j] = tr2[j] = ti2[j] = tr3[j] = ti3[j] = 0.0;
      for (int n = 0; n < N; ++n) {
        const double c0r = wr[m * N + n], c0i = wi[m * N + n];
        const double c1r = wr[(m + 1) * N + n], c1i = wi[(m + 1) * N + n];
        const double c2r = wr[(m + 2) * N + n], c2i = wi[(m + 2) * N + n];
        const double c3r = wr[(m + 3) * N + n], c3i = wi[(m + 3) * N + n];
        const double* br = br_all + static_cast<std::size_t>(n) * U;
        const double* bi = bi_all + static_cast<std::size_t>(n) * U;
#pragma omp simd
        for (std::size_t j = j0; j < j1; ++j) {
          const double xr = br[j], xi = bi[j];
          tr0[j] += c0r * xr - c0i * xi;
          ti0[j] += c0r * xi + c0i * xr;
          tr1[j] += c1r * xr - c1i * xi;
          ti1[j] += c1r * xi + c1i * xr;
          tr2[j] += c2r * xr - c2i * xi;
          ti2[j] += c2r * xi + c2i * xr;
          tr3[j] += c3r * xr - c3i * xi;
          ti3[j] += c3r * xi + c3i * xr;
        }
      }
    }
    for (; m < M; ++m) {
      double* tr = tr_all + static_cast<std::size_t>(m) * U;
      double* ti = ti_all + static_cast<std::size_t>(m) * U;
      for (std::size_t j = j0; j < j1; ++j) tr[j] = ti[j] = 0.0;
      for (int n = 0; n < N; ++n) {
        const double cr = wr[m * N + n];
        const double ci = wi[m * N + n];
        const double* br = br_all + static_cast<std::size_t>(n) * U;
        const double* bi = bi_all + static_cast<std::size_t>(n) * U;
#pragma omp simd
        for (std::size_t j = j0; j < j1; ++j) {
          tr[j] += cr * br[j] - ci * bi[j];
          ti[j] += cr * bi[j] + ci * br[j];
        }
      }
    }
  }

  // Pass 2: E[p] = env[p] * sum_m a[p][m] partial[m][u(p)], m ascending.
  out.assign(grid_.size(), cplx{0.0, 0.0});
  const long points = static_cast<long>(active_rows_) * nphi;
#pragma omp parallel for schedule(static)
  for (long p = 0; p < points; ++p) {
    const std::size_t j = static_cast<std::size_t>(u_index_[static_cast<std::size_t>(p)]);
    const double* ar = a_re_.data() + static_cast<std::size_t>(p) * M;
    const double* ai = a_im_.data() + static_cast<std::size_t>(p) * M;
    double sr = 0.0, si = 0.0;
    for (int m = 0; m < M; ++m) {
      const double tr = tr_all[static_cast<std::size_t>(m) * U + j];
      const double ti = ti_all[static_cast<std::size_t>(m) * U + j];
      sr += ar[m] * tr - ai[m] * ti;
      si += ar[m] * ti + ai[m] * tr;
    }
    const double env = envelope_[static_cast<std::size_t>(p)];
    out[static_cast<std::size_t>(p)] = cplx{env * sr, env * si};
  }
}

}  // namespace risbench
