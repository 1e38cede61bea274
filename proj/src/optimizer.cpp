#include "risbench/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "risbench/error.hpp"
#include "risbench/metrics.hpp"

namespace risbench {

void check_ga_params(const GAParams& p) {
  if (p.population < 2) throw Error(ErrorCode::InvalidGAParams, "population must be >= 2");
  if (p.generations < 1) throw Error(ErrorCode::InvalidGAParams, "generations must be >= 1");
  if (p.elitism < 0 || p.elitism >= p.population)
    throw Error(ErrorCode::InvalidGAParams, "elitism must be in [0, population)");
  if (p.seeded < 0 || p.seeded > p.population)
    throw Error(ErrorCode::InvalidGAParams, "seeded must be in [0, population]");
  if (p.tournament_size < 1) throw Error(ErrorCode::InvalidGAParams, "tournament size must be >= 1");
  if (!(p.crossover_prob >= 0.0 && p.crossover_prob <= 1.0))
    throw Error(ErrorCode::InvalidGAParams, "crossover probability must be in [0, 1]");
  if (p.mutation_prob && !(*p.mutation_prob >= 0.0 && *p.mutation_prob <= 1.0))
    throw Error(ErrorCode::InvalidGAParams, "mutation probability must be in [0, 1]");
}

FitnessFunction::FitnessFunction(const SurfaceSpec& surface, const SourceModel& src, const FieldGrid& target)
    : evaluator_(surface, src, target.grid) {
  const double tmax = target.max_magnitude();
  if (!(tmax > 0.0)) throw Error(ErrorCode::AllZeroField, "target field is zero everywhere");
  target_norm_.resize(target.values.size());
  for (std::size_t i = 0; i < target_norm_.size(); ++i) target_norm_[i] = std::abs(target.values[i]) / tmax;
}

double FitnessFunction::operator()(const ConfigMatrix& config) {
  evaluator_.evaluate(config, ws_, field_);
  return -nmse_normalized(target_norm_, field_);
}

double fitness(const ConfigMatrix& config, const FieldGrid& target, const SurfaceSpec& surface,
               const SourceModel& src) {
  FitnessFunction f(surface, src, target);
  return f(config);
}

std::vector<int> backprojected_genes(const SurfaceSpec& surface, const SourceModel& src,
                                     const FieldGrid& target, double offset_deg) {
  const GridSpec& g = target.grid;
  const double k = 2.0 * std::numbers::pi / surface.wavelength_m();
  const double deg = std::numbers::pi / 180.0;
  const int np = g.phi_count();

  // A_mn = sum_p T_p sin(theta_p) exp(-jk(x_n u_p + y_m v_p)); only nonzero target points matter.
  std::vector<cplx> a(static_cast<std::size_t>(surface.cell_count()));
  std::vector<cplx> ex(static_cast<std::size_t>(surface.cols)), ey(static_cast<std::size_t>(surface.rows));
  for (int it = 0; it < g.theta_count() && g.theta_deg(it) < 90.0; ++it) {
    const double st = std::sin(g.theta_deg(it) * deg);
    for (int ip = 0; ip < np; ++ip) {
      const double t = std::abs(target.at(it, ip));
      if (t == 0.0) continue;
      const double w = t * st;
      const double u = st * std::cos(g.phi_deg(ip) * deg);
      const double v = st * std::sin(g.phi_deg(ip) * deg);
      for (int n = 0; n < surface.cols; ++n) ex[static_cast<std::size_t>(n)] = std::polar(w, -k * surface.x_of(n) * u);
      for (int m = 0; m < surface.rows; ++m) ey[static_cast<std::size_t>(m)] = std::polar(1.0, -k * surface.y_of(m) * v);
      for (int m = 0; m < surface.rows; ++m)
        for (int n = 0; n < surface.cols; ++n)
          a[static_cast<std::size_t>(m * surface.cols + n)] += ey[static_cast<std::size_t>(m)] * ex[static_cast<std::size_t>(n)];
    }
  }

  const GroupLayout layout = layout_of(surface);
  const std::vector<cplx> s = source_weights(surface, src);
  std::vector<cplx> wanted(static_cast<std::size_t>(layout.group_count()));
  for (int m = 0; m < surface.rows; ++m)
    for (int n = 0; n < surface.cols; ++n) {
      const std::size_t i = static_cast<std::size_t>(m * surface.cols + n);
      wanted[static_cast<std::size_t>(layout.group_of(m, n))] += std::conj(s[i]) * a[i];
    }

  const cplx rot = std::polar(1.0, offset_deg * deg);
  std::vector<cplx> gammas;
  for (const auto& st : surface.cell.states) gammas.push_back(std::polar(st.gamma_mag, st.gamma_phase_deg * deg));
  std::vector<int> genes(wanted.size(), 0);
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const cplx dir = wanted[i] * rot;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t sidx = 0; sidx < gammas.size(); ++sidx) {
      const double proj = std::real(gammas[sidx] * std::conj(dir));
      if (proj > best) {
        best = proj;
        genes[i] = static_cast<int>(sidx);
      }
    }
  }
  return genes;
}

namespace {

struct Individual {
  std::vector<int> genes;
  double fitness = 0.0;
};

}  // namespace

GAResult run_ga(const SurfaceSpec& surface, const SourceModel& src, const FieldGrid& target,
                const GAParams& params, const GAProgress& progress) {
  check_ga_params(params);
  const GroupLayout layout = layout_of(surface);
  const int length = layout.group_count();
  const int alphabet = surface.cell.state_count();
  const double p_mut = params.mutation_prob.value_or(1.0 / length);

  FitnessFunction fit(surface, src, target);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> any_state(0, alphabet - 1);
  std::uniform_int_distribution<int> other_state(0, alphabet - 2);
  std::uniform_int_distribution<int> pick(0, params.population - 1);

  GAResult result;
  auto evaluate = [&](Individual& ind) {
    ind.fitness = fit(expand_groups(ind.genes, layout, alphabet));
    ++result.evaluations;
  };

  std::vector<Individual> pop(static_cast<std::size_t>(params.population));
  // Seeds rotate the wanted phase across one state step so their roundings differ.
  const double step = 360.0 / alphabet / std::max(params.seeded, 1);
  for (int i = 0; i < params.seeded; ++i)
    pop[static_cast<std::size_t>(i)].genes = backprojected_genes(surface, src, target, i * step);
  for (std::size_t i = static_cast<std::size_t>(params.seeded); i < pop.size(); ++i) {
    pop[i].genes.resize(static_cast<std::size_t>(length));
    for (auto& g : pop[i].genes) g = any_state(rng);
  }
  for (auto& ind : pop) evaluate(ind);

  auto tournament = [&]() -> const Individual& {
    const Individual* best = &pop[static_cast<std::size_t>(pick(rng))];
    for (int t = 1; t < params.tournament_size; ++t) {
      const Individual& c = pop[static_cast<std::size_t>(pick(rng))];
      if (c.fitness > best->fitness) best = &c;
    }
    return *best;
  };

  std::vector<std::size_t> order(pop.size());
  auto rank = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness > pop[b].fitness; });
  };

  result.history.reserve(static_cast<std::size_t>(params.generations));
  for (int gen = 1; gen <= params.generations; ++gen) {
    rank();
    std::vector<Individual> next;
    next.reserve(pop.size());
    for (int e = 0; e < params.elitism; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);
    const std::size_t first_child = next.size();
    while (next.size() < pop.size()) {
      const Individual& a = tournament();
      const Individual& b = tournament();
      Individual child;
      child.genes = a.genes;
      if (unit(rng) < params.crossover_prob)
        for (int i = 0; i < length; ++i)
          if (unit(rng) < 0.5) child.genes[static_cast<std::size_t>(i)] = b.genes[static_cast<std::size_t>(i)];
      for (auto& g : child.genes) {
        if (unit(rng) < p_mut) {
          const int r = other_state(rng);
          g = r >= g ? r + 1 : r;
        }
      }
      next.push_back(std::move(child));
    }
    for (std::size_t i = first_child; i < next.size(); ++i) evaluate(next[i]);
    pop = std::move(next);

    const auto best = std::max_element(pop.begin(), pop.end(), [](const Individual& x, const Individual& y) {
      return x.fitness < y.fitness;
    });
    result.history.push_back(best->fitness);
    if (progress) progress(gen, best->fitness);
  }

  rank();
  const Individual& best = pop[order.front()];
  result.best_genes = best.genes;
  result.best_fitness = best.fitness;
  result.best_config = expand_groups(best.genes, layout, alphabet);
  return result;
}

ExhaustiveResult exhaustive_search(const SurfaceSpec& surface, const SourceModel& src, const FieldGrid& target) {
  const GroupLayout layout = layout_of(surface);
  const int length = layout.group_count();
  const int alphabet = surface.cell.state_count();
  std::uint64_t total = 1;
  for (int i = 0; i < length; ++i) {
    total *= static_cast<std::uint64_t>(alphabet);
    if (total > kMaxExhaustiveConfigs)
      throw Error(ErrorCode::SearchSpaceTooLarge, std::to_string(alphabet) + "^" + std::to_string(length) +
                                                      " configurations exceed the 2^20 limit");
  }

  FitnessFunction fit(surface, src, target);
  ExhaustiveResult out;
  std::vector<int> genes(static_cast<std::size_t>(length), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // Gene 0 is the most significant digit, so idx order is lexicographic.
    std::uint64_t rem = idx;
    for (int i = length - 1; i >= 0; --i) {
      genes[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::uint64_t>(alphabet));
      rem /= static_cast<std::uint64_t>(alphabet);
    }
    const ConfigMatrix config = expand_groups(genes, layout, alphabet);
    const double f = fit(config);
    ++out.evaluations;
    if (idx == 0 || f > out.best_fitness) {
      out.best_fitness = f;
      out.best_genes = genes;
      out.best_config = config;
    }
  }
  return out;
}

}  // namespace risbench
