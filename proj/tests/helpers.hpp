#pragma once

#include <filesystem>
#include <string>

#include "oracles.hpp"
#include "risbench/error.hpp"
#include "risbench/field.hpp"
#include "risbench/surface.hpp"

namespace testutil {

/// Isotropic-ish cell with unit reflection and evenly spaced phases.
inline risbench::UnitCellSpec ideal_cell(int n_bits, double freq_hz = 10e9, double q = 1.0) {
  risbench::UnitCellSpec c;
  c.id = "T" + std::to_string(n_bits);
  c.n_bits = n_bits;
  c.n_diodes = n_bits;
  const int count = 1 << n_bits;
  for (int i = 0; i < count; ++i) c.states.push_back({1.0, 360.0 * i / count});
  c.q_exponent = q;
  c.design_freq_hz = freq_hz;
  return c;
}

inline oracle::Array to_oracle(const risbench::SurfaceSpec& s, const risbench::ConfigMatrix& cfg) {
  oracle::Array a{s.rows, s.cols, s.pitch_m, s.wavelength_m(), s.cell.q_exponent, {}, {}};
  for (const auto& st : s.cell.states) a.states.push_back({st.gamma_mag, st.gamma_phase_deg});
  a.config.assign(cfg.data().begin(), cfg.data().end());
  return a;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("risbench_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testutil

#define CHECK_ERROR_CODE(expr, expected)                    \
  do {                                                      \
    bool thrown_ = false;                                   \
    try {                                                   \
      (void)(expr);                                         \
    } catch (const risbench::Error& e_) {                   \
      thrown_ = true;                                       \
      CHECK(e_.code() == risbench::ErrorCode::expected);    \
    }                                                       \
    CHECK_MESSAGE(thrown_, "expected " #expected);          \
  } while (0)
