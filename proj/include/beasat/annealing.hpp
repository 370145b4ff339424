#pragma once

#include "beasat/cnf.hpp"

namespace beasat {

// Geometric cooling schedule: T = t0 * lambda^k after k cool() calls.
class TemperatureSchedule {
 public:
  TemperatureSchedule(double t0, double cooling_factor);

  double temperature() const { return current_; }
  double initial() const { return t0_; }
  double cooling_factor() const { return lambda_; }
  int step() const { return step_; }

  void cool() {
    current_ *= lambda_;
    ++step_;
  }

  // Rebuilds the schedule at step k with T recomputed as t0*lambda^k, so a
  // checkpointed run resumes with the same temperature on any platform.
  static TemperatureSchedule at_step(double t0, double cooling_factor, int step);

 private:
  double t0_;
  double lambda_;
  int step_ = 0;
  double current_;
};

// Initial temperature rule: clause count times clause length.
double initial_temperature(const CnfFormula& f, int clause_length);

// Generic Metropolis rule: accept iff min(1, exp(-delta/T)) >= u.
// delta <= 0 is always accepted.
bool metropolis_accept(double delta, double temperature, double u);

// Annealed crossover acceptance. Absolute follows the published rule
// exp(-children_best/T) > u for an inferior child pair; Delta uses the
// degradation exp(-(parents_best-children_best)/T) > u instead.
enum class CrossoverAcceptRule { Absolute, Delta };

// True if children_best >= parents_best, otherwise probabilistic per rule.
bool crossover_accept(double parents_best, double children_best,
                      double temperature, double u,
                      CrossoverAcceptRule rule = CrossoverAcceptRule::Absolute);

// True if fitness_new >= fitness_old (ties accepted), otherwise iff
// exp(-(fitness_old-fitness_new)/T) > u.
bool mutation_accept(double fitness_old, double fitness_new,
                     double temperature, double u);

}  // namespace beasat
