#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's field or metric code; formulas are written out term by term.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double deg = pi / 180.0;
inline constexpr double c0 = 299792458.0;

struct State {
  double mag;
  double phase_deg;
};

/// Minimal surface description: cell states, q, lattice, wavelength.
struct Array {
  int rows;
  int cols;
  double pitch;
  double wavelength;
  double q;
  std::vector<State> states;
  std::vector<int> config;  // row-major

  double x(int n) const { return (n - (cols - 1) / 2.0) * pitch; }
  double y(int m) const { return (m - (rows - 1) / 2.0) * pitch; }
};

inline double f(double q, double theta) {
  if (theta >= pi / 2) return 0.0;
  const double c = std::cos(theta);
  return c <= 0.0 ? 0.0 : std::pow(c, 1.0 / q);
}

/// Planewave at normal or oblique incidence; f(theta) f(theta_inc) envelope.
inline cplx planewave(const Array& a, double amp, double theta_inc, double phi_inc, double theta,
                      double phi) {
  if (theta >= pi / 2) return 0.0;
  const double k = 2 * pi / a.wavelength;
  cplx sum = 0.0;
  for (int m = 0; m < a.rows; ++m) {
    for (int n = 0; n < a.cols; ++n) {
      const State& s = a.states[static_cast<std::size_t>(a.config[static_cast<std::size_t>(m * a.cols + n)])];
      const double inc = k * (a.x(n) * std::sin(theta_inc) * std::cos(phi_inc) +
                              a.y(m) * std::sin(theta_inc) * std::sin(phi_inc));
      const double out = k * (a.x(n) * std::sin(theta) * std::cos(phi) + a.y(m) * std::sin(theta) * std::sin(phi));
      sum += s.mag * std::exp(cplx(0.0, s.phase_deg * deg + inc + out));
    }
  }
  return amp * f(a.q, theta) * f(a.q, theta_inc) * sum;
}

/// Point source at (px, py, pz): 1/r spreading, -kr phase, f at the incidence angle.
inline cplx point(const Array& a, double amp, double px, double py, double pz, double theta, double phi) {
  if (theta >= pi / 2) return 0.0;
  const double k = 2 * pi / a.wavelength;
  cplx sum = 0.0;
  for (int m = 0; m < a.rows; ++m) {
    for (int n = 0; n < a.cols; ++n) {
      const State& s = a.states[static_cast<std::size_t>(a.config[static_cast<std::size_t>(m * a.cols + n)])];
      const double dx = px - a.x(n), dy = py - a.y(m), dz = pz;
      const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
      const double th_in = std::acos(dz / r);
      const double out = k * (a.x(n) * std::sin(theta) * std::cos(phi) + a.y(m) * std::sin(theta) * std::sin(phi));
      sum += (amp / r) * f(a.q, th_in) * s.mag * std::exp(cplx(0.0, -k * r + s.phase_deg * deg + out));
    }
  }
  return f(a.q, theta) * sum;
}

/// Uniform linear array magnitude |sin(N psi/2) / sin(psi/2)|, psi = k d sin(theta).
inline double ula_magnitude(int n, double d_over_lambda, double theta) {
  const double psi = 2 * pi * d_over_lambda * std::sin(theta);
  const double den = std::sin(psi / 2);
  if (std::abs(den) < 1e-12) return n;
  return std::abs(std::sin(n * psi / 2) / den);
}

/// Trapezoid-in-theta, rectangle-in-phi Riemann sum of sin(theta) over the
/// upper hemisphere; converges to 2 pi.
inline double hemisphere_sum(double step_deg) {
  const int nt = static_cast<int>(std::lround(90.0 / step_deg));
  const int np = static_cast<int>(std::lround(360.0 / step_deg));
  double s = 0.0;
  for (int i = 0; i <= nt; ++i) {
    const double w = (i == 0 || i == nt) ? 0.5 : 1.0;
    s += w * std::sin(i * step_deg * deg);
  }
  return s * np * (step_deg * deg) * (step_deg * deg);
}

/// Brute-force argmax over every length-L word on an alphabet; first best wins.
inline std::pair<std::vector<int>, double> enumerate(int length, int alphabet,
                                                     const std::function<double(const std::vector<int>&)>& score) {
  std::vector<int> word(static_cast<std::size_t>(length), 0), best = word;
  double best_score = score(word);
  while (true) {
    int i = length - 1;
    while (i >= 0 && word[static_cast<std::size_t>(i)] == alphabet - 1) word[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++word[static_cast<std::size_t>(i)];
    const double s = score(word);
    if (s > best_score) {
      best_score = s;
      best = word;
    }
  }
  return {best, best_score};
}

/// d P_D / (c / 2f)^2.
inline double power_per_area(int d, double pd, double f_hz) {
  const double side = c0 / (2 * f_hz);
  return d * pd / (side * side);
}

}  // namespace oracle
