#include "beasat/annealing.hpp"

#include <cmath>
#include <stdexcept>

namespace beasat {

TemperatureSchedule::TemperatureSchedule(double t0, double cooling_factor)
    : t0_(t0), lambda_(cooling_factor), current_(t0) {
  if (!(t0 > 0.0))
    throw std::invalid_argument("initial temperature must be positive");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw std::invalid_argument("cooling factor must be in (0,1)");
}

TemperatureSchedule TemperatureSchedule::at_step(double t0,
                                                 double cooling_factor,
                                                 int step) {
  if (step < 0) throw std::invalid_argument("negative schedule step");
  TemperatureSchedule s(t0, cooling_factor);
  s.step_ = step;
  s.current_ = t0 * std::pow(cooling_factor, step);
  return s;
}

double initial_temperature(const CnfFormula& f, int clause_length) {
  if (f.num_clauses() < 1)
    throw std::invalid_argument("formula has no clauses");
  if (clause_length < 1)
    throw std::invalid_argument("clause length must be at least 1");
  return static_cast<double>(f.num_clauses()) * clause_length;
}

namespace {

void check_temperature(double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("temperature must be positive");
}

}  // namespace

bool metropolis_accept(double delta, double temperature, double u) {
  check_temperature(temperature);
  return std::min(1.0, std::exp(-delta / temperature)) >= u;
}

bool crossover_accept(double parents_best, double children_best,
                      double temperature, double u, CrossoverAcceptRule rule) {
  check_temperature(temperature);
  if (children_best >= parents_best) return true;
  const double exponent = rule == CrossoverAcceptRule::Absolute
                              ? children_best
                              : parents_best - children_best;
  return std::exp(-exponent / temperature) > u;
}

bool mutation_accept(double fitness_old, double fitness_new,
                     double temperature, double u) {
  check_temperature(temperature);
  if (fitness_new >= fitness_old) return true;
  return std::exp(-(fitness_old - fitness_new) / temperature) > u;
}

}  // namespace beasat
