#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "risbench/field_kernels.hpp"

namespace risbench {

struct GAParams {
  int population = 100;
  int generations = 350;
  double crossover_prob = 0.9;             // uniform crossover
  std::optional<double> mutation_prob;     // per gene; default 1 / chromosome length
  int elitism = 2;
  int tournament_size = 2;
  std::uint64_t seed = 42;
  int seeded = 4;  // initial individuals taken from backprojected_genes(); the rest are random
};

void check_ga_params(const GAParams& params);

struct GAResult {
  ConfigMatrix best_config;
  std::vector<int> best_genes;  // one state per group
  double best_fitness = 0.0;
  std::vector<double> history;  // best fitness after each generation
  std::size_t evaluations = 0;
};

/// -NMSE between a target pattern and the field of a configuration. Tables are
/// built once, so repeated calls only pay for the field evaluation.
class FitnessFunction {
 public:
  FitnessFunction(const SurfaceSpec& surface, const SourceModel& src, const FieldGrid& target);

  double operator()(const ConfigMatrix& config);
  const FieldEvaluator& evaluator() const { return evaluator_; }

 private:
  FieldEvaluator evaluator_;
  std::vector<double> target_norm_;
  FieldWorkspace ws_;
  std::vector<cplx> field_;
};

double fitness(const ConfigMatrix& config, const FieldGrid& target, const SurfaceSpec& surface,
               const SourceModel& src);

/// Back-projects the target onto the aperture and gives each group the state
/// whose reflection coefficient lines up best with the result, after rotating
/// the wanted phase by `offset_deg`. Cheap; seeds the GA near a steered
/// solution instead of relying on random starts in a huge search space.
std::vector<int> backprojected_genes(const SurfaceSpec& surface, const SourceModel& src,
                                     const FieldGrid& target, double offset_deg = 0.0);

/// Called after each generation with (generation index from 1, best fitness).
using GAProgress = std::function<void(int, double)>;

/// Genetic search over one state per group (chromosome length MN/G).
/// Deterministic for a given seed: all random draws come from one stream in a
/// fixed order, and fitness evaluation does not consume randomness.
GAResult run_ga(const SurfaceSpec& surface, const SourceModel& src, const FieldGrid& target,
                const GAParams& params, const GAProgress& progress = {});

struct ExhaustiveResult {
  ConfigMatrix best_config;
  std::vector<int> best_genes;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;
};

/// Largest search space exhaustive_search accepts.
inline constexpr std::uint64_t kMaxExhaustiveConfigs = std::uint64_t{1} << 20;

/// Enumerates every group assignment; ties go to the lexicographically lowest
/// chromosome.
ExhaustiveResult exhaustive_search(const SurfaceSpec& surface, const SourceModel& src,
                                   const FieldGrid& target);

}  // namespace risbench
