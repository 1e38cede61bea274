#include "risbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "risbench/error.hpp"

namespace risbench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kTol = 1e-9;

// 1 inside, 1/2 on the boundary, 0 outside.
double interval_weight(double x, double lo, double hi) {
  if (std::abs(x - lo) <= kTol || std::abs(x - hi) <= kTol) return 0.5;
  return (x > lo && x < hi) ? 1.0 : 0.0;
}

double angular_distance(double a_deg, double b_deg) {
  double d = std::fmod(std::abs(a_deg - b_deg), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace

void check_same_grid(const FieldGrid& a, const FieldGrid& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw Error(ErrorCode::GridMismatch, "grids differ (" + std::to_string(a.grid.theta_step_deg) + "x" +
                                             std::to_string(a.grid.phi_step_deg) + " vs " +
                                             std::to_string(b.grid.theta_step_deg) + "x" +
                                             std::to_string(b.grid.phi_step_deg) + " deg)");
}

double directivity_over_region(const FieldGrid& field, double start_deg, double end_deg,
                               double phi_band_deg) {
  if (!(start_deg < end_deg) || start_deg < -90.0 - kTol || end_deg > 90.0 + kTol)
    throw Error(ErrorCode::EmptyRegion, "region [" + std::to_string(start_deg) + ", " +
                                            std::to_string(end_deg) + "] is not inside [-90, 90]");
  const double band = std::min(phi_band_deg, 90.0);
  const GridSpec& g = field.grid;
  const int nt = g.theta_count();
  const int np = g.phi_count();

  std::vector<double> w_front(static_cast<std::size_t>(np)), w_back(static_cast<std::size_t>(np));
  for (int ip = 0; ip < np; ++ip) {
    w_front[static_cast<std::size_t>(ip)] = interval_weight(angular_distance(g.phi_deg(ip), 0.0), -1.0, band);
    w_back[static_cast<std::size_t>(ip)] = interval_weight(angular_distance(g.phi_deg(ip), 180.0), -1.0, band);
  }

  const double cell = g.theta_step_deg * kDeg * g.phi_step_deg * kDeg;
  double sum = 0.0;
  bool any = false;
  for (int it = 0; it < nt && g.theta_deg(it) <= 90.0 + kTol; ++it) {
    const double th = g.theta_deg(it);
    const double wf = interval_weight(th, start_deg, end_deg);
    const double wb = interval_weight(-th, start_deg, end_deg);
    if (wf == 0.0 && wb == 0.0) continue;
    const double s = std::sin(th * kDeg);
    for (int ip = 0; ip < np; ++ip) {
      const double w = wf * w_front[static_cast<std::size_t>(ip)] + wb * w_back[static_cast<std::size_t>(ip)];
      if (w == 0.0) continue;
      any = true;
      sum += w * std::norm(field.at(it, ip)) * s * cell;
    }
  }
  if (!any)
    throw Error(ErrorCode::EmptyRegion, "no grid points in [" + std::to_string(start_deg) + ", " +
                                            std::to_string(end_deg) + "]");
  return sum;
}

double directivity_over_region(const FieldGrid& field, const LobeRegion& region, double phi_band_deg) {
  return directivity_over_region(field, region.start_deg, region.end_deg, phi_band_deg);
}

DirectivityError directivity_error(const FieldGrid& reference, const FieldGrid& achieved,
                                   const BenchmarkPattern& bm, double phi_band_deg) {
  check_same_grid(reference, achieved);
  validate_benchmark(bm);
  DirectivityError out;
  double dr_total = 0.0;
  double da_total = 0.0;
  for (const auto& b : bm.beams) {
    const double dr = directivity_over_region(reference, b.lobe_start_deg, b.lobe_end_deg, phi_band_deg);
    const double da = directivity_over_region(achieved, b.lobe_start_deg, b.lobe_end_deg, phi_band_deg);
    dr_total += dr;
    da_total += da;
    out.per_beam.push_back(dr > 0.0 ? (dr - da) / dr : std::numeric_limits<double>::quiet_NaN());
  }
  if (!(dr_total > 0.0))
    throw Error(ErrorCode::ZeroReferenceDirectivity, "reference has no power in the benchmark lobes");
  out.total = (dr_total - da_total) / dr_total;
  return out;
}

double nmse_normalized(std::span<const double> reference_norm, std::span<const cplx> achieved) {
  double amax = 0.0;
  for (const auto& v : achieved) amax = std::max(amax, std::abs(v));
  if (!(amax > 0.0)) throw Error(ErrorCode::AllZeroField, "achieved field is zero everywhere");
  double sum = 0.0;
  for (std::size_t i = 0; i < achieved.size(); ++i) {
    const double d = reference_norm[i] - std::abs(achieved[i]) / amax;
    sum += d * d;
  }
  return sum / static_cast<double>(achieved.size());
}

double nmse(const FieldGrid& reference, const FieldGrid& achieved) {
  check_same_grid(reference, achieved);
  const double rmax = reference.max_magnitude();
  if (!(rmax > 0.0)) throw Error(ErrorCode::AllZeroField, "reference field is zero everywhere");
  std::vector<double> ref_norm(reference.values.size());
  for (std::size_t i = 0; i < ref_norm.size(); ++i) ref_norm[i] = std::abs(reference.values[i]) / rmax;
  return nmse_normalized(ref_norm, achieved.values);
}

std::vector<LobeRegion> detect_lobes(const PrincipalCut& cut) {
  const auto& ang = cut.signed_theta_deg;
  const std::size_t n = cut.magnitude.size();
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = cut.magnitude[i] * cut.magnitude[i];
  const double peak = n ? *std::max_element(p.begin(), p.end()) : 0.0;
  if (!(peak > 0.0)) throw Error(ErrorCode::AllZeroField, "principal cut is zero everywhere");
  const double floor = peak * kLobeFloor;

  std::vector<LobeRegion> lobes;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(p[i] > p[i - 1]) || p[i] < floor) continue;
    // A plateau counts once, at its left end, if it falls away on the right.
    std::size_t j = i + 1;
    while (j < n && p[j] == p[i]) ++j;
    if (j == n || p[j] > p[i]) continue;
    std::size_t lo = i;
    while (lo > 0 && p[lo - 1] < p[lo]) --lo;
    std::size_t hi = j - 1;
    while (hi + 1 < n && p[hi + 1] < p[hi]) ++hi;
    lobes.push_back({ang[lo], ang[hi], ang[i], p[i]});
  }
  std::stable_sort(lobes.begin(), lobes.end(),
                   [](const LobeRegion& a, const LobeRegion& b) { return a.peak_power > b.peak_power; });
  return lobes;
}

SideLobeRatio side_lobe_ratio(const FieldGrid& achieved, const BenchmarkPattern& bm) {
  validate_benchmark(bm);
  const PrincipalCut cut = principal_cut(achieved);
  const auto lobes = detect_lobes(cut);

  auto intended = [&](double deg) {
    return std::any_of(bm.beams.begin(), bm.beams.end(), [&](const BeamSpec& b) {
      return deg >= b.lobe_start_deg - kTol && deg <= b.lobe_end_deg + kTol;
    });
  };
  double side = 0.0;
  for (const auto& l : lobes) {
    if (!intended(l.peak_deg)) {
      side = l.peak_power;
      break;
    }
  }

  SideLobeRatio out;
  for (const auto& b : bm.beams) {
    double main = -1.0;
    for (std::size_t i = 0; i < cut.magnitude.size(); ++i) {
      const double a = cut.signed_theta_deg[i];
      if (a >= b.lobe_start_deg - kTol && a <= b.lobe_end_deg + kTol)
        main = std::max(main, cut.magnitude[i] * cut.magnitude[i]);
    }
    if (main < 0.0)
      throw Error(ErrorCode::EmptyRegion, "no cut samples in lobe around " + std::to_string(b.signed_theta_deg));
    double db;
    if (side == 0.0)
      db = kNoSideLobeDb;
    else if (main == 0.0)
      db = -kNoSideLobeDb;
    else
      db = 10.0 * std::log10(main / side);
    out.per_beam_db.push_back(db);
  }
  out.mean_db = std::accumulate(out.per_beam_db.begin(), out.per_beam_db.end(), 0.0) /
                static_cast<double>(out.per_beam_db.size());
  return out;
}

MetricsReport evaluate_all(const FieldGrid& reference, const FieldGrid& achieved, const BenchmarkPattern& bm) {
  check_same_grid(reference, achieved);
  MetricsReport r;
  const auto de = directivity_error(reference, achieved, bm);
  r.de = de.total;
  r.per_beam_de = de.per_beam;
  r.nmse = nmse(reference, achieved);
  const auto slr = side_lobe_ratio(achieved, bm);
  r.slr_db = slr.mean_db;
  r.per_beam_slr_db = slr.per_beam_db;
  return r;
}

}  // namespace risbench
