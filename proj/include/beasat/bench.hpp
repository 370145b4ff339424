#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "beasat/hier_ga.hpp"

namespace beasat {

// Instance sources: deterministic random 3-SAT instances, or DIMACS files.
struct RandomSource {
  int num_vars = 0;
  int num_clauses = 0;
  std::vector<std::uint64_t> instance_seeds;
};

struct FileSource {
  std::vector<std::string> paths;
};

struct ExperimentSpec {
  std::variant<RandomSource, FileSource> source;
  std::vector<Variant> variants = {Variant::BEA, Variant::BIHGA, Variant::HGA};
  int runs_per_instance = 10;
  std::vector<std::uint64_t> run_seeds;  // filled with 1..runs when empty
  SolverConfig config;
  int threads = 1;

  // Normalizes run_seeds against runs_per_instance and validates everything.
  void finalize();
};

struct RunRecord {
  std::string instance;
  Variant variant = Variant::BEA;
  std::uint64_t seed = 0;
  bool solved = false;
  int generations = 0;
  int best_fitness = 0;
  int num_clauses = 0;
  int num_vars = 0;
  double wall_ms = 0.0;
};

struct AggregateStats {
  int runs = 0;
  int successes = 0;
  // Mean high-level generations over successful runs; empty when none
  // succeeded (rendered as "-").
  std::optional<double> mean_generations;
  double success_rate = 0.0;
  // Mean over all runs of (m - best fitness); 0 for a solved run.
  double mean_best_unsat = 0.0;
};

struct InstanceError {
  std::string instance;
  std::string message;
};

struct ExperimentReport {
  ExperimentSpec spec;  // effective spec, seeds filled in
  std::vector<RunRecord> records;  // sorted by (instance, variant, seed)
  std::vector<std::pair<Variant, AggregateStats>> per_variant;
  std::vector<InstanceError> errors;
};

// Recomputes aggregates for one variant from records in their stored order.
AggregateStats aggregate_records(const std::vector<RunRecord>& records,
                                 Variant variant);

// Executes every (instance, variant, seed) cell, possibly across threads.
// Output is deterministic regardless of thread count (wall_ms aside).
ExperimentReport run_experiment(const ExperimentSpec& spec);

enum class ReportFormat { Table, Csv, JsonLines };

std::optional<ReportFormat> report_format_from_name(std::string_view name);

// Renders a report. Every format embeds the effective configuration and the
// seed lists, so any row can be reproduced from the report alone.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

// Key = value experiment description; see README for the accepted keys.
ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec parse_experiment_spec_file(const std::string& path);

}  // namespace beasat
