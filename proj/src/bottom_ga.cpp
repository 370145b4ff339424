#include "beasat/bottom_ga.hpp"

#include <algorithm>
#include <stdexcept>

namespace beasat {

Individual random_individual(const CnfFormula& f, Rng& rng) {
  Assignment a(static_cast<std::size_t>(f.num_vars()));
  for (std::size_t i = 0; i < a.size(); ++i) a.set(i, rng.next_bit());
  return Individual(std::move(a), f);
}

SubPopulation random_subpopulation(const CnfFormula& f, int scale, Rng& rng) {
  if (scale < 1) throw std::invalid_argument("sub-population scale must be >= 1");
  SubPopulation pop;
  pop.reserve(static_cast<std::size_t>(scale));
  for (int i = 0; i < scale; ++i) pop.push_back(random_individual(f, rng));
  return pop;
}

std::size_t roulette_select(const SubPopulation& pop, double u) {
  if (pop.empty()) throw std::invalid_argument("empty population");
  long total = 0;
  for (const Individual& ind : pop) total += ind.fitness;
  if (total == 0) {
    // uniform fallback
    auto idx = static_cast<std::size_t>(u * static_cast<double>(pop.size()));
    return std::min(idx, pop.size() - 1);
  }
  const double target = u * static_cast<double>(total);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    cumulative += static_cast<double>(pop[i].fitness);
    if (cumulative > target) return i;
  }
  return pop.size() - 1;  // u ~ 1 under floating-point roundoff
}

std::pair<Individual, Individual> one_point_crossover(const Individual& a,
                                                      const Individual& b,
                                                      int cut,
                                                      const CnfFormula& f) {
  const std::size_t n = a.genome.size();
  if (b.genome.size() != n)
    throw std::invalid_argument("genome lengths differ");
  if (n < 2) throw std::invalid_argument("crossover needs at least 2 bits");
  if (cut < 1 || static_cast<std::size_t>(cut) > n - 1)
    throw std::invalid_argument("cut position out of range");
  Assignment g1(n);
  Assignment g2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool from_a = i < static_cast<std::size_t>(cut);
    g1.set(i, from_a ? a.genome.value(i) : b.genome.value(i));
    g2.set(i, from_a ? b.genome.value(i) : a.genome.value(i));
  }
  return {Individual(std::move(g1), f), Individual(std::move(g2), f)};
}

Individual bit_flip_mutate(const Individual& a, double rate,
                           const CnfFormula& f, Rng& rng) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("mutation rate must be in [0,1]");
  Individual out = a;
  bool changed = false;
  for (std::size_t i = 0; i < out.genome.size(); ++i) {
    if (rng.bernoulli(rate)) {
      out.genome.flip(i);
      changed = true;
    }
  }
  if (changed) out.fitness = count_satisfied(f, out.genome);
  return out;
}

namespace {

// Children at a uniform cut; for genomes too short to cut, copies of the
// parents stand in.
std::pair<Individual, Individual> cross_at_random_cut(const Individual& a,
                                                      const Individual& b,
                                                      const CnfFormula& f,
                                                      Rng& rng) {
  const std::size_t n = a.genome.size();
  if (b.genome.size() != n)
    throw std::invalid_argument("genome lengths differ");
  if (n < 2) return {a, b};
  const int cut = 1 + static_cast<int>(rng.next_below(n - 1));
  return one_point_crossover(a, b, cut, f);
}

}  // namespace

std::pair<Individual, Individual> annealed_crossover(const Individual& a,
                                                     const Individual& b,
                                                     double temperature,
                                                     const CnfFormula& f,
                                                     Rng& rng,
                                                     CrossoverAcceptRule rule) {
  auto children = cross_at_random_cut(a, b, f, rng);
  const double parents_best = std::max(a.fitness, b.fitness);
  const double children_best =
      std::max(children.first.fitness, children.second.fitness);
  const double u = rng.next_double();
  if (crossover_accept(parents_best, children_best, temperature, u, rule))
    return children;
  return {a, b};
}

Individual annealed_mutation(const Individual& a, double temperature,
                             double rate, const CnfFormula& f, Rng& rng) {
  Individual mutated = bit_flip_mutate(a, rate, f, rng);
  const double u = rng.next_double();
  if (mutation_accept(a.fitness, mutated.fitness, temperature, u))
    return mutated;
  return a;
}

std::pair<Individual, Individual> elitist_crossover(const Individual& a,
                                                    const Individual& b,
                                                    const CnfFormula& f,
                                                    Rng& rng) {
  auto children = cross_at_random_cut(a, b, f, rng);
  const Individual* candidates[4] = {&children.first, &children.second, &a, &b};
  std::stable_sort(std::begin(candidates), std::end(candidates),
                   [](const Individual* x, const Individual* y) {
                     return x->fitness > y->fitness;
                   });
  return {*candidates[0], *candidates[1]};
}

SubPopulation evolve_bottom(const SubPopulation& pop, const CnfFormula& f,
                            const BottomParams& params, double temperature,
                            Rng& rng) {
  if (pop.empty()) throw std::invalid_argument("empty population");
  if (params.generations_per_epoch < 0)
    throw std::invalid_argument("negative generation count");

  const std::size_t scale = pop.size();
  SubPopulation current = pop;
  SubPopulation next;
  next.reserve(scale);
  for (int gen = 0; gen < params.generations_per_epoch; ++gen) {
    next.clear();
    while (next.size() < scale) {
      const Individual& pa = current[roulette_select(current, rng.next_double())];
      const Individual& pb = current[roulette_select(current, rng.next_double())];
      auto offspring =
          params.crossover_rule == BottomCrossover::Annealed
              ? annealed_crossover(pa, pb, temperature, f, rng,
                                   params.accept_rule)
              : elitist_crossover(pa, pb, f, rng);
      next.push_back(std::move(offspring.first));
      if (next.size() < scale) next.push_back(std::move(offspring.second));
    }
    for (Individual& ind : next) {
      ind = params.mutation_rule == BottomMutation::Annealed
                ? annealed_mutation(ind, temperature, params.mutation_rate, f,
                                    rng)
                : bit_flip_mutate(ind, params.mutation_rate, f, rng);
    }
    current.swap(next);
  }
  return current;
}

}  // namespace beasat
