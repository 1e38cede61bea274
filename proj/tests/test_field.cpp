#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "risbench/field_kernels.hpp"
#include "risbench/io.hpp"

using namespace risbench;
using testutil::ideal_cell;

namespace {

ConfigMatrix random_config(int rows, int cols, int states, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, states - 1);
  ConfigMatrix c(rows, cols, 0);
  for (int m = 0; m < rows; ++m)
    for (int n = 0; n < cols; ++n) c.at(m, n) = d(rng);
  return c;
}

double max_abs_diff(const FieldGrid& a, const FieldGrid& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

// lambda = 1 m makes the hand examples readable.
constexpr double kOneMetreHz = kSpeedOfLight;

}  // namespace

TEST_CASE("radiation_factor") {
  CHECK(radiation_factor(1, 0) == 1.0);
  CHECK(radiation_factor(1, 60 * oracle::deg) == doctest::Approx(0.5));
  CHECK(radiation_factor(3, 60 * oracle::deg) == doctest::Approx(0.7937).epsilon(1e-4));
  CHECK(radiation_factor(5, 91 * oracle::deg) == 0.0);
  CHECK(radiation_factor(5, oracle::pi / 2) == 0.0);
  CHECK(radiation_factor(2, oracle::pi) == 0.0);
}

TEST_CASE("single cell under a unit planewave gives 1 at broadside") {
  const BuiltSurface b = build_surface(ideal_cell(1, kOneMetreHz), 1, 1, 1);
  const FieldGrid f = field_planewave(b.surface, ConfigMatrix(1, 1, 0), SourceModel::planewave());
  CHECK(std::abs(f.at(0, 0) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("two half-wave cells: broadside sum 2, endfire sum 0") {
  const BuiltSurface b = build_surface(ideal_cell(1), 1, 2, 1);
  const ConfigMatrix c(1, 2, 0);
  const SourceModel src = SourceModel::planewave();
  CHECK(std::abs(std::abs(kernels::array_sum(b.surface, c, src, 0, 0)) - 2.0) < 1e-12);
  CHECK(std::abs(kernels::array_sum(b.surface, c, src, 90, 0)) < 1e-12);
  CHECK(std::abs(kernels::array_sum(b.surface, c, src, 90, 180)) < 1e-12);
}

TEST_CASE("single cell under a point source one wavelength away") {
  const BuiltSurface b = build_surface(ideal_cell(1, kOneMetreHz), 1, 1, 1);
  const FieldGrid f = field_point_source(b.surface, ConfigMatrix(1, 1, 0), SourceModel::point({0, 0, 1}));
  CHECK(std::abs(f.at(0, 0) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("source validation") {
  const BuiltSurface b = build_surface(ideal_cell(1), 2, 2, 1);
  const ConfigMatrix c(2, 2, 0);
  CHECK_ERROR_CODE(field_point_source(b.surface, c, SourceModel::point({0, 0, -1})), SourceBelowSurface);
  CHECK_ERROR_CODE(field_point_source(b.surface, c, SourceModel::point({0, 0, 0})), SourceBelowSurface);
  CHECK_ERROR_CODE(field_planewave(b.surface, c, SourceModel::point({0, 0, 1})), ConfigMismatch);
  CHECK_ERROR_CODE(field_planewave(b.surface, c, SourceModel::planewave(0.0)), NonPositiveParam);
  CHECK_ERROR_CODE(field_planewave(b.surface, ConfigMatrix(2, 3, 0), SourceModel::planewave()), ConfigMismatch);
}

TEST_CASE("grid validation") {
  CHECK(GridSpec{}.size() == 64800u);
  CHECK_ERROR_CODE(check_grid(GridSpec{7, 1}), InvalidGrid);
  CHECK_ERROR_CODE(check_grid(GridSpec{1, 7}), InvalidGrid);
  CHECK_ERROR_CODE(check_grid(GridSpec{0, 1}), InvalidGrid);
  CHECK_NOTHROW(check_grid(GridSpec{2, 8}));
}

TEST_CASE("fast evaluator matches the direct-sum reference") {
  const GridSpec grid{2, 3};
  const UnitCellSpec s4 = load_unit_cell("S4");
  const BuiltSurface b = build_surface(s4, 7, 9, 1);
  const ConfigMatrix c = random_config(7, 9, 4, 11);
  const double lam = s4.wavelength_m();
  const std::vector<SourceModel> sources{
      SourceModel::planewave(),
      SourceModel::planewave(2.0, 20.0, 45.0),
      SourceModel::point({0.01, -0.02, 3 * lam}, 1.5),
  };
  for (const auto& src : sources) {
    const FieldGrid fast = compute_field(b.surface, c, src, grid);
    const FieldGrid ref = kernels::evaluate_reference(b.surface, c, src, grid);
    CHECK(max_abs_diff(fast, ref) <= 1e-12 * ref.max_magnitude());
  }
}

TEST_CASE("fast evaluator matches the independent oracle") {
  const UnitCellSpec s3 = load_unit_cell("S3");
  const BuiltSurface b = build_surface(s3, 5, 4, 1);
  const ConfigMatrix c = random_config(5, 4, 4, 5);
  const oracle::Array a = testutil::to_oracle(b.surface, c);
  const GridSpec grid{3, 4};
  const double lam = s3.wavelength_m();

  const FieldGrid pw = field_planewave(b.surface, c, SourceModel::planewave(1.0, 10.0, 30.0), grid);
  const FieldGrid pt = field_point_source(b.surface, c, SourceModel::point({0.05, 0.0, 2 * lam}), grid);
  const double pw_peak = pw.max_magnitude(), pt_peak = pt.max_magnitude();
  for (int it = 0; it < grid.theta_count(); it += 5)
    for (int ip = 0; ip < grid.phi_count(); ip += 7) {
      const double th = grid.theta_deg(it) * oracle::deg, ph = grid.phi_deg(ip) * oracle::deg;
      const cplx o1 = oracle::planewave(a, 1.0, 10 * oracle::deg, 30 * oracle::deg, th, ph);
      const cplx o2 = oracle::point(a, 1.0, 0.05, 0.0, 2 * lam, th, ph);
      CHECK(std::abs(pw.at(it, ip) - o1) <= 1e-12 * pw_peak);
      CHECK(std::abs(pt.at(it, ip) - o2) <= 1e-12 * pt_peak);
    }
}

TEST_CASE("uniform line array follows the closed-form array factor") {
  const BuiltSurface b = build_surface(ideal_cell(2), 1, 8, 1);
  const FieldGrid f = field_planewave(b.surface, ConfigMatrix(1, 8, 0), SourceModel::planewave());
  for (int it = 0; it < 90; ++it) {
    const double th = it * oracle::deg;
    const double expected = oracle::ula_magnitude(8, 0.5, th) * std::cos(th);  // q = 1, normal incidence
    CHECK(std::abs(std::abs(f.at(it, 0)) - expected) < 1e-12 * 8);
  }
}

TEST_CASE("back hemisphere is exactly zero") {
  const BuiltSurface b = build_surface(ideal_cell(2), 4, 4, 1);
  const FieldGrid f = compute_field(b.surface, random_config(4, 4, 4, 3), SourceModel::planewave(), GridSpec{});
  for (int it = 90; it < 180; ++it)
    for (int ip = 0; ip < 360; ++ip) REQUIRE(f.at(it, ip) == cplx(0.0, 0.0));
}

TEST_CASE("field is linear in source amplitude") {
  const BuiltSurface b = build_surface(load_unit_cell("S2"), 6, 6, 1);
  const ConfigMatrix c = random_config(6, 6, 2, 9);
  const GridSpec grid{3, 3};
  for (const SourceModel base : {SourceModel::planewave(1.0), SourceModel::point({0, 0, 0.2}, 1.0)}) {
    SourceModel scaled = base;
    scaled.amplitude = 3.5;
    const FieldGrid a = compute_field(b.surface, c, base, grid);
    const FieldGrid s = compute_field(b.surface, c, scaled, grid);
    for (std::size_t i = 0; i < a.values.size(); ++i)
      CHECK(std::abs(s.values[i] - 3.5 * a.values[i]) <= 1e-13 * 3.5 * a.max_magnitude());
  }
}

TEST_CASE("a global state-phase offset leaves |E| unchanged") {
  UnitCellSpec cell = ideal_cell(2);
  const BuiltSurface b = build_surface(cell, 8, 8, 1);
  const ConfigMatrix c = random_config(8, 8, 4, 21);
  const FieldGrid a = compute_field(b.surface, c, SourceModel::planewave());
  for (auto& s : cell.states) s.gamma_phase_deg += 73.0;
  const BuiltSurface b2 = build_surface(cell, 8, 8, 1);
  const FieldGrid r = compute_field(b2.surface, c, SourceModel::planewave());
  const double peak = a.max_magnitude();
  for (std::size_t i = 0; i < a.values.size(); ++i)
    REQUIRE(std::abs(std::abs(a.values[i]) - std::abs(r.values[i])) <= 1e-12 * peak);
}

TEST_CASE("uniform unit reflection at broadside equals amplitude times M N") {
  const BuiltSurface b = build_surface(reference_unit_cell(), 40, 40, 1);
  for (int state = 0; state < 4; ++state) {
    const FieldGrid f = compute_field(b.surface, ConfigMatrix(40, 40, state), SourceModel::planewave(2.0));
    CHECK(std::abs(f.at(0, 0)) == doctest::Approx(2.0 * 1600).epsilon(1e-15));
  }
}

TEST_CASE("results do not depend on the thread count") {
  const BuiltSurface b = build_surface(load_unit_cell("S4"), 20, 20, 1);
  const ConfigMatrix c = random_config(20, 20, 4, 1);
  const int before = omp_get_max_threads();
  omp_set_num_threads(1);
  const FieldGrid one = compute_field(b.surface, c, SourceModel::planewave());
  omp_set_num_threads(4);
  const FieldGrid four = compute_field(b.surface, c, SourceModel::planewave());
  omp_set_num_threads(before);
  CHECK(one.values == four.values);
}

TEST_CASE("principal cut") {
  const BuiltSurface b = build_surface(ideal_cell(2), 6, 6, 1);
  SUBCASE("mirror-symmetric configuration gives a symmetric cut") {
    ConfigMatrix c(6, 6, 0);
    for (int m = 0; m < 6; ++m)
      for (int n = 0; n < 3; ++n) c.at(m, n) = c.at(m, 5 - n) = (m + n) % 4;
    const PrincipalCut cut = principal_cut(compute_field(b.surface, c, SourceModel::planewave()));
    REQUIRE(cut.signed_theta_deg.size() == 181u);
    for (int i = 0; i <= 90; ++i)
      CHECK(cut.magnitude[static_cast<std::size_t>(90 + i)] ==
            doctest::Approx(cut.magnitude[static_cast<std::size_t>(90 - i)]).epsilon(1e-12));
  }
  SUBCASE("cut samples the phi = 0 and phi = 180 columns") {
    const FieldGrid f = compute_field(b.surface, random_config(6, 6, 4, 8), SourceModel::planewave());
    const PrincipalCut cut = principal_cut(f);
    CHECK(cut.signed_theta_deg.front() == -90.0);
    CHECK(cut.signed_theta_deg[90] == 0.0);
    CHECK(cut.magnitude[90 + 30] == std::abs(f.at(30, 0)));
    CHECK(cut.magnitude[90 - 30] == std::abs(f.at(30, 180)));
    CHECK(cut.magnitude[90] == std::abs(f.at(0, 0)));
  }
  SUBCASE("grid without a 180 degree column") {
    const FieldGrid f = compute_field(b.surface, ConfigMatrix(6, 6, 0), SourceModel::planewave(), GridSpec{1, 8});
    CHECK_ERROR_CODE(principal_cut(f), GridMissingPlane);
  }
}

TEST_CASE("normalize_grid") {
  const BuiltSurface b = build_surface(ideal_cell(1), 3, 3, 1);
  FieldGrid f = compute_field(b.surface, random_config(3, 3, 2, 2), SourceModel::planewave(), GridSpec{5, 5});
  const FieldGrid n = normalize_grid(f);
  CHECK(n.max_magnitude() == doctest::Approx(1.0).epsilon(1e-15));
  FieldGrid scaled = f;
  for (auto& v : scaled.values) v *= 5.0;
  const FieldGrid n5 = normalize_grid(scaled);
  for (std::size_t i = 0; i < n.values.size(); ++i) CHECK(std::abs(n.values[i] - n5.values[i]) < 1e-15);
  // Phases survive.
  for (std::size_t i = 0; i < n.values.size(); ++i)
    if (std::abs(f.values[i]) > 1e-9 * f.max_magnitude())
      CHECK(std::arg(n.values[i]) == doctest::Approx(std::arg(f.values[i])));
  FieldGrid zero = f;
  std::fill(zero.values.begin(), zero.values.end(), cplx{});
  CHECK_ERROR_CODE(normalize_grid(zero), AllZeroField);
}

TEST_CASE("quantize_phase picks the nearest state on the circle") {
  const UnitCellSpec two = ideal_cell(2);
  CHECK(quantize_phase(two, 10) == 0);
  CHECK(quantize_phase(two, 80) == 1);
  CHECK(quantize_phase(two, 350) == 0);
  CHECK(quantize_phase(two, -100) == 3);
  CHECK(quantize_phase(two, 44.0) == 0);
  CHECK(quantize_phase(two, 46.0) == 1);
  const UnitCellSpec s5 = load_unit_cell("S5");
  CHECK(quantize_phase(s5, 40) == 1);
  CHECK(quantize_phase(s5, 200) == 1);
  CHECK(quantize_phase(s5, 250) == 0);
}

TEST_CASE("phase-gradient steering puts the main lobe where asked") {
  const BuiltSurface b = build_surface(reference_unit_cell(), 40, 40, 1);
  for (double target : {30.0, -20.0}) {
    const double phi = target < 0 ? 180.0 : 0.0;
    const ConfigMatrix c = phase_gradient_config(b.surface, SourceModel::planewave(), std::abs(target), phi);
    const PrincipalCut cut = principal_cut(compute_field(b.surface, c, SourceModel::planewave()));
    const auto it = std::max_element(cut.magnitude.begin(), cut.magnitude.end());
    CHECK(cut.signed_theta_deg[static_cast<std::size_t>(it - cut.magnitude.begin())] ==
          doctest::Approx(target).epsilon(0.05));
  }
}

TEST_CASE("distant point source approaches the planewave pattern (small surface)") {
  const UnitCellSpec s0 = reference_unit_cell();
  const BuiltSurface b = build_surface(s0, 10, 10, 1);
  const ConfigMatrix c(10, 10, 0);
  const GridSpec grid{2, 2};
  const FieldGrid pw = normalize_grid(field_planewave(b.surface, c, SourceModel::planewave(), grid));
  const FieldGrid pt = normalize_grid(
      field_point_source(b.surface, c, SourceModel::point({0, 0, 1e6 * s0.wavelength_m()}), grid));
  double worst = 0;
  for (std::size_t i = 0; i < pw.values.size(); ++i)
    worst = std::max(worst, std::abs(std::abs(pw.values[i]) - std::abs(pt.values[i])));
  CHECK(worst < 1e-3);
}

TEST_CASE("observation-envelope planewave mode squares the cell response") {
  const UnitCellSpec s2 = load_unit_cell("S2");
  const BuiltSurface b = build_surface(s2, 1, 1, 1);
  SourceModel src = SourceModel::planewave(1.0, 20.0, 0.0);
  src.incident_response = IncidentResponse::Observation;
  const FieldGrid f = compute_field(b.surface, ConfigMatrix(1, 1, 0), src, GridSpec{10, 10});
  const double th = 40 * oracle::deg;
  CHECK(std::abs(f.at(4, 0)) == doctest::Approx(0.90 * std::pow(std::cos(th), 2.0 / 5.0)));
}
