#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beasat/bench.hpp"
#include "beasat/cnf.hpp"
#include "beasat/hier_ga.hpp"

namespace {

// Exit codes follow the usual SAT solver convention.
constexpr int kExitSolved = 10;
constexpr int kExitBudget = 20;
constexpr int kExitError = 1;

void print_witness(const beasat::Assignment& a, std::ostream& out) {
  out << 'v';
  for (std::size_t i = 0; i < a.size(); ++i)
    out << ' ' << (a.value(i) ? static_cast<int>(i) + 1
                              : -(static_cast<int>(i) + 1));
  out << " 0\n";
}

int run_solve(const std::string& path, const std::string& variant_name,
              std::uint64_t seed, int max_gens,
              const std::string& accept_rule) {
  const auto variant = beasat::variant_from_name(variant_name);
  if (!variant) {
    std::cerr << "error: unknown variant '" << variant_name << "'\n";
    return kExitError;
  }
  beasat::SolverConfig config;
  config.variant = *variant;
  config.max_high_level_generations = max_gens;
  config.crossover_accept_rule = accept_rule == "delta"
                                     ? beasat::CrossoverAcceptRule::Delta
                                     : beasat::CrossoverAcceptRule::Absolute;

  const beasat::CnfFormula formula = beasat::parse_dimacs_file(path);
  const beasat::RunResult result = beasat::solve(formula, config, seed);

  std::cout << "c " << path << ": " << formula.num_vars() << " vars, "
            << formula.num_clauses() << " clauses\n";
  if (result.solved) {
    std::cout << "s SATISFIABLE\n";
    print_witness(result.best_individual.genome, std::cout);
  } else {
    std::cout << "s UNKNOWN\n";
  }
  std::cout << "c generations " << result.high_level_generations_used << '\n';
  std::cout << "c best_fitness " << result.best_fitness << '/'
            << formula.num_clauses() << '\n';
  return result.solved ? kExitSolved : kExitBudget;
}

int run_gen(int vars, int clauses, std::uint64_t seed,
            const std::string& output) {
  const beasat::CnfFormula formula =
      beasat::generate_random_3sat_clauses(vars, clauses, seed);
  if (output.empty()) {
    beasat::serialize_dimacs(formula, std::cout);
    return 0;
  }
  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot write " << output << '\n';
    return kExitError;
  }
  beasat::serialize_dimacs(formula, out);
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& format_name) {
  const auto format = beasat::report_format_from_name(format_name);
  if (!format) {
    std::cerr << "error: unknown format '" << format_name << "'\n";
    return kExitError;
  }
  beasat::ExperimentSpec spec = beasat::parse_experiment_spec_file(spec_path);
  const beasat::ExperimentReport report = beasat::run_experiment(spec);
  std::cout << beasat::emit_report(report, *format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beasat: incomplete SAT solving with a hierarchical genetic "
               "algorithm whose operators are gated by annealing rules"};
  app.require_subcommand(1);

  // solve
  std::string solve_file;
  std::string solve_variant;
  std::uint64_t solve_seed = 0;
  int solve_max_gens = 10000;
  std::string solve_accept = "absolute";
  auto* solve_cmd = app.add_subcommand("solve", "Solve a DIMACS CNF file");
  solve_cmd->add_option("cnf-file", solve_file, "DIMACS CNF input")->required();
  solve_cmd->add_option("--variant", solve_variant, "bea|bihga|hga")
      ->required()
      ->check(CLI::IsMember({"bea", "bihga", "hga"}));
  solve_cmd->add_option("--seed", solve_seed, "Run seed")->required();
  solve_cmd->add_option("--max-gens", solve_max_gens,
                        "High-level generation budget");
  solve_cmd->add_option("--accept-rule", solve_accept,
                        "Annealed crossover acceptance rule")
      ->check(CLI::IsMember({"absolute", "delta"}));

  // gen
  int gen_vars = 0;
  int gen_clauses = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random 3-SAT instance");
  gen_cmd->add_option("--vars", gen_vars, "Variable count")->required();
  gen_cmd->add_option("--clauses", gen_clauses, "Clause count")->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  gen_cmd->add_option("-o,--output", gen_output, "Output file (default stdout)");

  // bench
  std::string bench_spec;
  std::string bench_format = "table";
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment spec");
  bench_cmd->add_option("--spec", bench_spec, "Experiment spec file")
      ->required();
  bench_cmd->add_option("--format", bench_format, "table|csv|jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (solve_cmd->parsed())
      return run_solve(solve_file, solve_variant, solve_seed, solve_max_gens,
                       solve_accept);
    if (gen_cmd->parsed())
      return run_gen(gen_vars, gen_clauses, gen_seed, gen_output);
    if (bench_cmd->parsed()) return run_bench(bench_spec, bench_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
