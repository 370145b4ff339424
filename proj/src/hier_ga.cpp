#include "beasat/hier_ga.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace beasat {

namespace {

// Stream tags for deriving per-phase rngs from the master seed. Generation
// indices start at 1, so tag values cannot collide with island indices.
constexpr std::uint64_t kInitTag = 0x696e697469616cULL;
constexpr std::uint64_t kHighLevelTag = 0xffffffffffffffffULL;

}  // namespace

SubPopulationStats population_stats(const SubPopulation& pop) {
  if (pop.empty()) throw std::invalid_argument("empty population");
  int best = pop.front().fitness;
  long sum = 0;
  for (const Individual& ind : pop) {
    best = std::max(best, ind.fitness);
    sum += ind.fitness;
  }
  return {best, static_cast<double>(sum) / static_cast<double>(pop.size())};
}

std::vector<double> high_level_selection_probs(
    const std::vector<SubPopulationStats>& stats, double alpha, double beta) {
  if (stats.empty()) throw std::invalid_argument("no sub-population stats");
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("alpha and beta must be in [0,1]");
  std::vector<double> weights;
  weights.reserve(stats.size());
  double total = 0.0;
  for (const SubPopulationStats& s : stats) {
    const double w = alpha * s.best_fitness + beta * s.mean_fitness;
    weights.push_back(w);
    total += w;
  }
  if (!(total > 0.0))
    throw DegenerateWeightsError("selection weights sum to zero");
  for (double& w : weights) w /= total;
  return weights;
}

namespace {

std::size_t weighted_pick(const std::vector<double>& probs, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (cumulative > u) return i;
  }
  return probs.size() - 1;
}

}  // namespace

std::vector<SubPopulation> high_level_select(
    const std::vector<SubPopulation>& subpops, const std::vector<double>& probs,
    Rng& rng) {
  if (subpops.size() != probs.size())
    throw std::invalid_argument("probability list length mismatch");
  if (subpops.empty()) throw std::invalid_argument("no sub-populations");
  std::vector<SubPopulation> selected;
  selected.reserve(subpops.size());
  for (std::size_t i = 0; i < subpops.size(); ++i)
    selected.push_back(subpops[weighted_pick(probs, rng.next_double())]);
  return selected;
}

std::vector<SubPopulation> high_level_crossover(std::vector<SubPopulation> subpops,
                                                Rng& rng) {
  const std::size_t n = subpops.size();
  if (n < 2) return subpops;
  const std::size_t scale = subpops.front().size();
  for (const SubPopulation& pop : subpops)
    if (pop.size() != scale)
      throw std::invalid_argument("sub-population scales differ");
  if (scale < 2) return subpops;

  // Fisher-Yates permutation; consecutive entries form the pairs.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.next_below(i + 1)]);

  for (std::size_t p = 0; p + 1 < n; p += 2) {
    SubPopulation& first = subpops[order[p]];
    SubPopulation& second = subpops[order[p + 1]];
    const auto cut =
        static_cast<std::size_t>(1 + rng.next_below(scale - 1));
    for (std::size_t i = cut; i < scale; ++i)
      std::swap(first[i], second[i]);
  }
  return subpops;
}

std::vector<SubPopulation> high_level_mutate(std::vector<SubPopulation> subpops,
                                             double rate, const CnfFormula& f,
                                             Rng& rng) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("mutation rate must be in [0,1]");
  for (SubPopulation& pop : subpops)
    for (Individual& ind : pop)
      if (rng.bernoulli(rate)) ind = random_individual(f, rng);
  return subpops;
}

std::vector<SubPopulation> elitism_guard(std::vector<SubPopulation> subpops,
                                         const Individual& global_best) {
  Individual* worst = nullptr;
  bool preserved = false;
  for (SubPopulation& pop : subpops) {
    for (Individual& ind : pop) {
      if (ind.fitness >= global_best.fitness) {
        preserved = true;
        break;
      }
      if (worst == nullptr || ind.fitness < worst->fitness) worst = &ind;
    }
    if (preserved) break;
  }
  if (!preserved && worst != nullptr) *worst = global_best;
  return subpops;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::BEA: return "bea";
    case Variant::BIHGA: return "bihga";
    case Variant::HGA: return "hga";
  }
  return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) {
  if (name == "bea" || name == "BEA") return Variant::BEA;
  if (name == "bihga" || name == "BIHGA") return Variant::BIHGA;
  if (name == "hga" || name == "HGA") return Variant::HGA;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (num_subpops < 1) throw std::invalid_argument("need at least one sub-population");
  if (subpop_scale < 1) throw std::invalid_argument("sub-population scale must be >= 1");
  if (bottom_generations < 0) throw std::invalid_argument("negative bottom generation count");
  if (max_high_level_generations < 0)
    throw std::invalid_argument("negative high-level generation budget");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw std::invalid_argument("cooling factor must be in (0,1)");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw std::invalid_argument("mutation rate must be in [0,1]");
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("alpha and beta must be in [0,1]");
  if (variant != Variant::HGA && !(alpha + beta > 0.0))
    throw std::invalid_argument("alpha + beta must be positive for this variant");
  if (clause_length < 1) throw std::invalid_argument("clause length must be >= 1");
}

namespace {

BottomParams bottom_params_for(const SolverConfig& config) {
  BottomParams p;
  p.mutation_rate = config.mutation_rate;
  p.generations_per_epoch = config.bottom_generations;
  p.accept_rule = config.crossover_accept_rule;
  if (config.variant == Variant::BEA) {
    p.crossover_rule = BottomCrossover::Annealed;
    p.mutation_rule = BottomMutation::Annealed;
  } else {
    p.crossover_rule = BottomCrossover::Elitist;
    p.mutation_rule = BottomMutation::Plain;
  }
  return p;
}

void update_global_best(const std::vector<SubPopulation>& subpops,
                        Individual& global_best) {
  for (const SubPopulation& pop : subpops)
    for (const Individual& ind : pop)
      if (ind.fitness > global_best.fitness) global_best = ind;
}

void run_bottom_epochs(std::vector<SubPopulation>& subpops,
                       const CnfFormula& f, const BottomParams& params,
                       double temperature, std::uint64_t seed, int generation,
                       bool parallel) {
  const std::size_t n = subpops.size();
  auto run_island = [&](std::size_t i) {
    Rng island_rng(Rng::mix3(seed, static_cast<std::uint64_t>(generation), i));
    subpops[i] = evolve_bottom(subpops[i], f, params, temperature, island_rng);
  };
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) run_island(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) workers.emplace_back(run_island, i);
  for (std::thread& w : workers) w.join();
}

}  // namespace

RunResult solve(const CnfFormula& f, const SolverConfig& config,
                std::uint64_t seed, const GenerationCallback& on_generation) {
  config.validate();
  const int m = f.num_clauses();
  const BottomParams bottom = bottom_params_for(config);
  TemperatureSchedule schedule(initial_temperature(f, config.clause_length),
                               config.cooling_factor);

  Rng init_rng(Rng::mix(seed, kInitTag));
  std::vector<SubPopulation> subpops;
  subpops.reserve(static_cast<std::size_t>(config.num_subpops));
  for (int i = 0; i < config.num_subpops; ++i)
    subpops.push_back(random_subpopulation(f, config.subpop_scale, init_rng));

  Individual global_best = subpops.front().front();
  update_global_best(subpops, global_best);

  RunResult result;
  result.trace.push_back({0, global_best.fitness, schedule.temperature()});

  int generations_used = 0;
  if (global_best.fitness < m) {
    for (int gen = 1; gen <= config.max_high_level_generations; ++gen) {
      run_bottom_epochs(subpops, f, bottom, schedule.temperature(), seed, gen,
                        config.parallel_islands);
      update_global_best(subpops, global_best);

      Rng high_rng(Rng::mix3(seed, static_cast<std::uint64_t>(gen), kHighLevelTag));
      std::vector<SubPopulationStats> stats;
      stats.reserve(subpops.size());
      for (const SubPopulation& pop : subpops)
        stats.push_back(population_stats(pop));

      std::vector<double> probs;
      try {
        // The traditional operator weighs mean fitness only; BEA and BIHGA
        // weigh best and mean per the configured alpha/beta.
        probs = config.variant == Variant::HGA
                    ? high_level_selection_probs(stats, 0.0, 1.0)
                    : high_level_selection_probs(stats, config.alpha,
                                                 config.beta);
      } catch (const DegenerateWeightsError&) {
        probs.assign(subpops.size(), 1.0 / static_cast<double>(subpops.size()));
      }
      subpops = high_level_select(subpops, probs, high_rng);
      subpops = high_level_crossover(std::move(subpops), high_rng);
      subpops = high_level_mutate(std::move(subpops), config.mutation_rate, f,
                                  high_rng);
      update_global_best(subpops, global_best);
      if (config.variant != Variant::HGA)
        subpops = elitism_guard(std::move(subpops), global_best);

      schedule.cool();
      result.trace.push_back({gen, global_best.fitness, schedule.temperature()});
      generations_used = gen;
      if (on_generation)
        on_generation(GenerationView{gen, subpops, global_best,
                                     schedule.temperature()});
      if (global_best.fitness == m) break;
    }
  }

  result.solved = global_best.fitness == m;
  result.high_level_generations_used = generations_used;
  result.best_individual = global_best;
  result.best_fitness = global_best.fitness;
  return result;
}

}  // namespace beasat
