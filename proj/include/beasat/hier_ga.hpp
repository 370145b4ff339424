#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "beasat/bottom_ga.hpp"

namespace beasat {

// Best and mean member fitness of one sub-population, the inputs to the
// high-level selection weights.
struct SubPopulationStats {
  int best_fitness = 0;
  double mean_fitness = 0.0;

  friend bool operator==(const SubPopulationStats&,
                         const SubPopulationStats&) = default;
};

SubPopulationStats population_stats(const SubPopulation& pop);

struct DegenerateWeightsError : std::domain_error {
  using std::domain_error::domain_error;
};

// P_i = (alpha*best_i + beta*mean_i) / sum_j (alpha*best_j + beta*mean_j).
// Throws DegenerateWeightsError when the denominator is zero; callers fall
// back to uniform selection.
std::vector<double> high_level_selection_probs(
    const std::vector<SubPopulationStats>& stats, double alpha, double beta);

// N independent draws with replacement; every selected sub-population is an
// independent copy.
std::vector<SubPopulation> high_level_select(
    const std::vector<SubPopulation>& subpops, const std::vector<double>& probs,
    Rng& rng);

// Randomly pairs sub-populations; each pair exchanges members past a uniform
// cut in [1, scale-1]. An unpaired sub-population (odd N) is left unchanged.
std::vector<SubPopulation> high_level_crossover(std::vector<SubPopulation> subpops,
                                                Rng& rng);

// Each member slot is independently replaced by a fresh random individual
// with the given probability.
std::vector<SubPopulation> high_level_mutate(std::vector<SubPopulation> subpops,
                                             double rate, const CnfFormula& f,
                                             Rng& rng);

// Reinserts the global best over the globally worst member when no member
// matches or beats its fitness.
std::vector<SubPopulation> elitism_guard(std::vector<SubPopulation> subpops,
                                         const Individual& global_best);

enum class Variant { BEA, BIHGA, HGA };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

struct SolverConfig {
  int num_subpops = 4;
  int subpop_scale = 5;
  int bottom_generations = 50;
  int max_high_level_generations = 10000;
  double cooling_factor = 0.95;
  double mutation_rate = 0.0001;
  double alpha = 0.5;
  double beta = 0.5;
  Variant variant = Variant::BEA;
  CrossoverAcceptRule crossover_accept_rule = CrossoverAcceptRule::Absolute;
  int clause_length = 3;
  // Runs the N bottom epochs of each generation on worker threads. Results
  // are identical either way: every island draws from its own stream keyed by
  // (seed, generation, island).
  bool parallel_islands = false;

  void validate() const;  // throws std::invalid_argument

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct TracePoint {
  int generation = 0;     // 0 is the initial state
  int best_fitness = 0;   // running maximum over the whole run
  double temperature = 0;  // t0 * lambda^generation

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  bool solved = false;
  int high_level_generations_used = 0;
  Individual best_individual;
  int best_fitness = 0;
  std::vector<TracePoint> trace;
};

// Snapshot handed to the per-generation callback, after the elitism guard
// and cooling step.
struct GenerationView {
  int generation;
  const std::vector<SubPopulation>& subpops;
  const Individual& global_best;
  double temperature;
};

using GenerationCallback = std::function<void(const GenerationView&)>;

// Runs the configured variant until the global best satisfies every clause
// or the generation budget is exhausted. Deterministic for a given seed.
RunResult solve(const CnfFormula& f, const SolverConfig& config,
                std::uint64_t seed,
                const GenerationCallback& on_generation = {});

}  // namespace beasat
