#include "risbench/io.hpp"

#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "risbench/bundled.hpp"
#include "risbench/error.hpp"

namespace risbench {

namespace {

fs::path resolve(std::string_view p, const fs::path& base_dir) {
  fs::path path{std::string(p)};
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return path;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

// Wraps nlohmann type/lookup errors so callers see ConfigParseError.
template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, std::string(what) + ": " + e.what());
  }
}

double parse_double(std::string_view s, const fs::path& path, std::size_t line) {
  double v = 0.0;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::ConfigParseError,
                path.string() + ":" + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

}  // namespace

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, path.string() + ": " + e.what());
  }
}

UnitCellSpec cell_from_json(const json& j) {
  UnitCellSpec c = parse_guard("unit cell", [&] {
    UnitCellSpec c;
    c.id = j.at("id").get<std::string>();
    c.n_bits = j.at("n_bits").get<int>();
    c.n_diodes = j.at("n_diodes").get<int>();
    for (const auto& s : j.at("states"))
      c.states.push_back({s.at("mag").get<double>(), s.at("phase_deg").get<double>()});
    c.q_exponent = j.at("q").get<double>();
    c.width_m = get_or(j, "width_mm", 0.0) * 1e-3;
    c.height_m = get_or(j, "height_mm", 0.0) * 1e-3;
    c.design_freq_hz = j.at("freq_ghz").get<double>() * 1e9;
    c.notes = get_or<std::string>(j, "notes", "");
    return c;
  });
  return validate_unit_cell(std::move(c));
}

json to_json(const UnitCellSpec& cell) {
  json states = json::array();
  for (const auto& s : cell.states) states.push_back({{"mag", s.gamma_mag}, {"phase_deg", s.gamma_phase_deg}});
  json j = {{"id", cell.id},
            {"n_bits", cell.n_bits},
            {"n_diodes", cell.n_diodes},
            {"states", states},
            {"q", cell.q_exponent},
            {"width_mm", cell.width_m * 1e3},
            {"height_mm", cell.height_m * 1e3},
            {"freq_ghz", cell.design_freq_hz * 1e-9}};
  if (!cell.notes.empty()) j["notes"] = cell.notes;
  return j;
}

std::vector<std::string> bundled_cell_ids() {
  std::vector<std::string> ids;
  for (const auto& f : bundled::cells()) ids.emplace_back(f.id);
  return ids;
}

UnitCellSpec load_unit_cell(std::string_view id_or_path, const fs::path& base_dir) {
  for (const auto& f : bundled::cells())
    if (f.id == id_or_path) return cell_from_json(json::parse(f.json));
  return cell_from_json(read_json_file(resolve(id_or_path, base_dir)));
}

BuiltSurface surface_from_json(const json& j, const fs::path& base_dir) {
  return parse_guard("surface", [&] {
    UnitCellSpec cell = j.contains("cell") ? cell_from_json(j.at("cell"))
                                           : load_unit_cell(j.at("cell_id").get<std::string>(), base_dir);
    std::optional<double> pitch;
    if (j.contains("pitch_mm") && !j.at("pitch_mm").is_null()) pitch = j.at("pitch_mm").get<double>() * 1e-3;
    return build_surface(cell, j.at("M").get<int>(), j.at("N").get<int>(), get_or(j, "G", 1), pitch);
  });
}

json surface_to_json(const SurfaceSpec& surface) {
  return {{"cell_id", surface.cell.id},
          {"M", surface.rows},
          {"N", surface.cols},
          {"G", surface.group_size},
          {"pitch_mm", surface.pitch_m * 1e3}};
}

BenchmarkPattern benchmark_from_json(const json& j) {
  BenchmarkPattern bm = parse_guard("benchmark", [&] {
    BenchmarkPattern bm;
    bm.id = get_or<std::string>(j, "id", "custom");
    for (const auto& b : j.at("beams"))
      bm.beams.push_back({b.at("theta_deg").get<double>(), get_or(b, "amplitude", 1.0),
                          b.at("start_deg").get<double>(), b.at("end_deg").get<double>()});
    return bm;
  });
  validate_benchmark(bm);
  return bm;
}

json to_json(const BenchmarkPattern& bm) {
  json beams = json::array();
  for (const auto& b : bm.beams)
    beams.push_back({{"theta_deg", b.signed_theta_deg},
                     {"amplitude", b.rel_amplitude},
                     {"start_deg", b.lobe_start_deg},
                     {"end_deg", b.lobe_end_deg}});
  return {{"id", bm.id}, {"beams", beams}};
}

SourceModel source_from_json(const json& j) {
  SourceModel src = parse_guard("source", [&] {
    const auto kind = get_or<std::string>(j, "kind", "planewave");
    SourceModel s;
    s.amplitude = get_or(j, "amplitude", 1.0);
    if (kind == "planewave") {
      s.kind = SourceKind::Planewave;
      s.theta_inc_deg = get_or(j, "theta_inc_deg", 0.0);
      s.phi_inc_deg = get_or(j, "phi_inc_deg", 0.0);
      const auto resp = get_or<std::string>(j, "incident_response", "incidence");
      if (resp == "incidence")
        s.incident_response = IncidentResponse::Incidence;
      else if (resp == "observation")
        s.incident_response = IncidentResponse::Observation;
      else
        throw Error(ErrorCode::ConfigParseError, "incident_response must be 'incidence' or 'observation'");
    } else if (kind == "point") {
      s.kind = SourceKind::Point;
      const auto& p = j.at("position_m");
      if (!p.is_array() || p.size() != 3)
        throw Error(ErrorCode::ConfigParseError, "point source position_m must be [x, y, z]");
      s.position_m = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    } else {
      throw Error(ErrorCode::ConfigParseError, "unknown source kind '" + kind + "'");
    }
    return s;
  });
  check_source(src);
  return src;
}

json to_json(const SourceModel& src) {
  if (src.kind == SourceKind::Point)
    return {{"kind", "point"},
            {"amplitude", src.amplitude},
            {"position_m", {src.position_m.x, src.position_m.y, src.position_m.z}}};
  return {{"kind", "planewave"},
          {"amplitude", src.amplitude},
          {"theta_inc_deg", src.theta_inc_deg},
          {"phi_inc_deg", src.phi_inc_deg},
          {"incident_response",
           src.incident_response == IncidentResponse::Incidence ? "incidence" : "observation"}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec g = parse_guard("grid", [&] {
    return GridSpec{get_or(j, "theta_step_deg", 1.0), get_or(j, "phi_step_deg", 1.0)};
  });
  check_grid(g);
  return g;
}

json to_json(const GridSpec& grid) {
  return {{"theta_step_deg", grid.theta_step_deg}, {"phi_step_deg", grid.phi_step_deg}};
}

GAParams ga_params_from_json(const json& j, GAParams d) {
  GAParams p = parse_guard("ga", [&] {
    GAParams p = d;
    p.population = get_or(j, "population", d.population);
    p.generations = get_or(j, "generations", d.generations);
    p.crossover_prob = get_or(j, "crossover_prob", d.crossover_prob);
    if (j.contains("mutation_prob")) {
      if (j.at("mutation_prob").is_null())
        p.mutation_prob.reset();
      else
        p.mutation_prob = j.at("mutation_prob").get<double>();
    }
    p.elitism = get_or(j, "elitism", d.elitism);
    p.tournament_size = get_or(j, "tournament_size", d.tournament_size);
    p.seeded = get_or(j, "seeded", d.seeded);
    p.seed = get_or<std::uint64_t>(j, "seed", d.seed);
    return p;
  });
  check_ga_params(p);
  return p;
}

json to_json(const GAParams& p) {
  return {{"population", p.population},
          {"generations", p.generations},
          {"crossover_prob", p.crossover_prob},
          {"mutation_prob", p.mutation_prob ? json(*p.mutation_prob) : json(nullptr)},
          {"elitism", p.elitism},
          {"tournament_size", p.tournament_size},
          {"seeded", p.seeded},
          {"seed", p.seed}};
}

json to_json(const MetricsReport& r) {
  return {{"de", r.de},
          {"nmse", r.nmse},
          {"slr_db", r.slr_db},
          {"per_beam_slr_db", r.per_beam_slr_db},
          {"per_beam_de", r.per_beam_de}};
}

json to_json(const ControlReport& r) {
  const auto& p = r.params;
  return {{"physical_paths", r.physical_paths},
          {"switching_rate_hz", r.switching_rate_hz},
          {"total_power_w", r.total_power_w},
          {"power_per_area_w_m2", r.power_per_area_w_m2},
          {"cell_area_m2", r.cell_area_m2},
          {"params_echo",
           {{"M", p.rows},
            {"N", p.cols},
            {"n", p.n_bits},
            {"d", p.n_diodes},
            {"G", p.group_size},
            {"K", p.controlled_groups},
            {"tau_s", p.tau_s},
            {"P_D_w", p.diode_power_w},
            {"f_hz", p.design_freq_hz}}}};
}

std::string format_sig9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string field_csv(const FieldGrid& field) {
  const int nt = field.grid.theta_count();
  const int np = field.grid.phi_count();
  std::string out = "theta_deg,phi_deg,re,im,mag\n";
  out.reserve(out.size() + field.values.size() * 56);
  for (int it = 0; it < nt; ++it) {
    for (int ip = 0; ip < np; ++ip) {
      const cplx v = field.at(it, ip);
      out += format_sig9(field.grid.theta_deg(it));
      out += ',';
      out += format_sig9(field.grid.phi_deg(ip));
      out += ',';
      out += format_sig9(v.real());
      out += ',';
      out += format_sig9(v.imag());
      out += ',';
      out += format_sig9(std::abs(v));
      out += '\n';
    }
  }
  return out;
}

void write_field_csv(const fs::path& path, const FieldGrid& field) {
  write_file_atomic(path, field_csv(field));
}

FieldGrid read_field_csv(const fs::path& path) {
  const std::string text = read_text_file(path);
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "theta_deg,phi_deg,re,im,mag")
    throw Error(ErrorCode::ConfigParseError, path.string() + ": missing field CSV header");
  std::vector<double> thetas, phis;
  std::vector<cplx> values;
  values.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 5)
      throw Error(ErrorCode::ConfigParseError, path.string() + ":" + std::to_string(i + 1) + ": expected 5 columns");
    const double th = parse_double(cols[0], path, i + 1);
    const double ph = parse_double(cols[1], path, i + 1);
    if (thetas.empty() || th != thetas.back()) thetas.push_back(th);
    if (thetas.size() == 1) phis.push_back(ph);
    values.emplace_back(parse_double(cols[2], path, i + 1), parse_double(cols[3], path, i + 1));
  }
  if (thetas.empty() || phis.empty() || values.size() != thetas.size() * phis.size())
    throw Error(ErrorCode::ConfigParseError, path.string() + ": rows do not form a theta-major grid");
  FieldGrid f;
  f.grid = {180.0 / static_cast<double>(thetas.size()), 360.0 / static_cast<double>(phis.size())};
  if (f.grid.theta_count() != static_cast<int>(thetas.size()) ||
      f.grid.phi_count() != static_cast<int>(phis.size()))
    throw Error(ErrorCode::ConfigParseError, path.string() + ": irregular grid");
  for (std::size_t k = 0; k < phis.size(); ++k)
    if (std::abs(phis[k] - f.grid.phi_deg(static_cast<int>(k))) > 1e-6)
      throw Error(ErrorCode::ConfigParseError, path.string() + ": phi columns are not evenly spaced from 0");
  for (std::size_t k = 0; k < thetas.size(); ++k)
    if (std::abs(thetas[k] - f.grid.theta_deg(static_cast<int>(k))) > 1e-6)
      throw Error(ErrorCode::ConfigParseError, path.string() + ": theta rows are not evenly spaced from 0");
  f.values = std::move(values);
  return f;
}

void write_config_csv(const fs::path& path, const ConfigMatrix& config) {
  std::string out;
  for (int m = 0; m < config.rows(); ++m) {
    for (int n = 0; n < config.cols(); ++n) {
      if (n) out += ',';
      out += std::to_string(config.at(m, n));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

ConfigMatrix read_config_csv(const fs::path& path) {
  const std::string text = read_text_file(path);
  const auto lines = lines_of(text);
  std::vector<int> states;
  int cols = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (cols < 0) cols = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != cols)
      throw Error(ErrorCode::ConfigParseError, path.string() + ":" + std::to_string(i + 1) + ": ragged row");
    for (auto c : cells) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size())
        throw Error(ErrorCode::ConfigParseError, path.string() + ":" + std::to_string(i + 1) + ": bad state");
      states.push_back(v);
    }
  }
  if (cols <= 0) throw Error(ErrorCode::ConfigParseError, path.string() + ": empty configuration");
  return ConfigMatrix(static_cast<int>(lines.size()), cols, std::move(states));
}

void write_history_csv(const fs::path& path, std::span<const double> history) {
  std::string out = "generation,best_fitness\n";
  for (std::size_t g = 0; g < history.size(); ++g)
    out += std::to_string(g + 1) + "," + format_sig9(history[g]) + "\n";
  write_file_atomic(path, out);
}

std::vector<double> read_history_csv(const fs::path& path) {
  const std::string text = read_text_file(path);
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "generation,best_fitness")
    throw Error(ErrorCode::ConfigParseError, path.string() + ": missing history header");
  std::vector<double> h;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 2) throw Error(ErrorCode::ConfigParseError, path.string() + ": expected 2 columns");
    h.push_back(parse_double(cols[1], path, i + 1));
  }
  return h;
}

Rgb state_colour(int state) {
  static constexpr Rgb palette[] = {{0, 0, 255}, {0, 255, 255}, {255, 255, 0}, {255, 0, 0}};
  if (state >= 0 && state < 4) return palette[state];
  // Cells with more than four states fall back to a grey ramp.
  const auto g = static_cast<unsigned char>((state * 37) % 256);
  return {g, g, g};
}

void write_config_ppm(const fs::path& path, const ConfigMatrix& config) {
  std::string out = "P6\n" + std::to_string(config.cols()) + " " + std::to_string(config.rows()) + "\n255\n";
  for (int m = 0; m < config.rows(); ++m) {
    for (int n = 0; n < config.cols(); ++n) {
      const Rgb c = state_colour(config.at(m, n));
      out += static_cast<char>(c.r);
      out += static_cast<char>(c.g);
      out += static_cast<char>(c.b);
    }
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  static std::atomic<unsigned> counter{0};
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace risbench
