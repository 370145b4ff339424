#pragma once

#include <utility>
#include <vector>

#include "beasat/annealing.hpp"
#include "beasat/cnf.hpp"
#include "beasat/rng.hpp"

namespace beasat {

// A truth assignment with its cached clause count. The cache is recomputed
// whenever an operator produces a new genome.
struct Individual {
  Assignment genome;
  int fitness = 0;

  Individual() = default;
  Individual(Assignment g, const CnfFormula& f)
      : genome(std::move(g)), fitness(count_satisfied(f, genome)) {}

  friend bool operator==(const Individual&, const Individual&) = default;
};

Individual random_individual(const CnfFormula& f, Rng& rng);

using SubPopulation = std::vector<Individual>;

SubPopulation random_subpopulation(const CnfFormula& f, int scale, Rng& rng);

enum class BottomCrossover { Annealed, Elitist };
enum class BottomMutation { Annealed, Plain };

struct BottomParams {
  double mutation_rate = 0.0001;
  BottomCrossover crossover_rule = BottomCrossover::Annealed;
  BottomMutation mutation_rule = BottomMutation::Annealed;
  int generations_per_epoch = 50;
  CrossoverAcceptRule accept_rule = CrossoverAcceptRule::Absolute;
};

// Fitness-proportional pick; uniform fallback when every fitness is zero.
// Returns the index of the chosen member.
std::size_t roulette_select(const SubPopulation& pop, double u);

// child1 = a[0..cut) ++ b[cut..n), child2 the mirror image. cut in [1, n-1].
std::pair<Individual, Individual> one_point_crossover(const Individual& a,
                                                      const Individual& b,
                                                      int cut,
                                                      const CnfFormula& f);

// Flips each bit independently with the given probability. Consumes exactly
// n Bernoulli draws from rng; the fitness cache is refreshed only when a bit
// actually changed.
Individual bit_flip_mutate(const Individual& a, double rate,
                           const CnfFormula& f, Rng& rng);

// Crossover at a uniform cut, gated by crossover_accept on the pair bests.
// A rejected crossover returns the parents unchanged. Draw order: cut (only
// when n >= 2), then one uniform for the acceptance decision.
std::pair<Individual, Individual> annealed_crossover(
    const Individual& a, const Individual& b, double temperature,
    const CnfFormula& f, Rng& rng,
    CrossoverAcceptRule rule = CrossoverAcceptRule::Absolute);

// Bit-flip mutation gated by mutation_accept; rejection returns the input.
// Draw order: n Bernoulli draws, then one uniform.
Individual annealed_mutation(const Individual& a, double temperature,
                             double rate, const CnfFormula& f, Rng& rng);

// Crossover at a uniform cut, then keep the two fittest of parents and
// children. Ties prefer children, then input order (C, D, A, B).
std::pair<Individual, Individual> elitist_crossover(const Individual& a,
                                                    const Individual& b,
                                                    const CnfFormula& f,
                                                    Rng& rng);

// One bottom-level epoch: generations_per_epoch rounds of roulette-selected
// parent pairs refilling the population through the configured crossover
// rule, then the configured mutation rule applied to each offspring.
// Population size is preserved.
SubPopulation evolve_bottom(const SubPopulation& pop, const CnfFormula& f,
                            const BottomParams& params, double temperature,
                            Rng& rng);

}  // namespace beasat
