#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beasat/bench.hpp"

using namespace beasat;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

// wall_ms is the final column / field; strip it before comparing reports.
std::string mask_wall_csv(const std::string& report) {
  std::istringstream in(report);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("instance,", 0) != 0) {
      const auto comma = line.find_last_of(',');
      if (comma != std::string::npos) line = line.substr(0, comma);
    }
    out << line << '\n';
  }
  return out.str();
}

std::string mask_wall_jsonl(const std::string& report) {
  std::istringstream in(report);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto row = nlohmann::json::parse(line);
    row.erase("wall_ms");
    out << row.dump() << '\n';
  }
  return out.str();
}

ExperimentSpec contradiction_spec() {
  static const auto path =
      write_temp("beasat_contradiction.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  ExperimentSpec spec;
  spec.source = FileSource{{path.string()}};
  spec.variants = {Variant::BEA, Variant::BIHGA, Variant::HGA};
  spec.run_seeds = {1, 2, 3};
  spec.config.max_high_level_generations = 20;
  return spec;
}

}  // namespace

TEST_CASE("run_experiment on a contradiction reports zero success") {
  const ExperimentReport report = run_experiment(contradiction_spec());
  REQUIRE(report.records.size() == 9);  // 3 variants x 3 seeds
  for (const auto& [variant, stats] : report.per_variant) {
    (void)variant;
    CHECK(stats.runs == 3);
    CHECK(stats.successes == 0);
    CHECK(stats.success_rate == 0.0);
    CHECK_FALSE(stats.mean_generations.has_value());
    CHECK(stats.mean_best_unsat == 1.0);  // optimum satisfies 1 of 2 clauses
  }
  for (const RunRecord& r : report.records) {
    CHECK_FALSE(r.solved);
    CHECK(r.best_fitness == 1);
    CHECK(r.generations == 20);
  }
}

TEST_CASE("run_experiment solves an easy random instance") {
  ExperimentSpec spec;
  spec.source = RandomSource{10, 20, {1, 2}};
  spec.variants = {Variant::BEA};
  spec.run_seeds = {1, 2, 3};
  spec.config.max_high_level_generations = 200;
  const ExperimentReport report = run_experiment(spec);
  REQUIRE(report.per_variant.size() == 1);
  // ratio 2.0 instances are almost always satisfiable and easy
  CHECK(report.per_variant[0].second.success_rate == 1.0);
  CHECK(report.per_variant[0].second.mean_generations.has_value());
}

TEST_CASE("reports are deterministic apart from wall time") {
  const ExperimentSpec spec = contradiction_spec();
  const ExperimentReport a = run_experiment(spec);
  const ExperimentReport b = run_experiment(spec);
  CHECK(mask_wall_csv(emit_report(a, ReportFormat::Csv)) ==
        mask_wall_csv(emit_report(b, ReportFormat::Csv)));
  CHECK(mask_wall_jsonl(emit_report(a, ReportFormat::JsonLines)) ==
        mask_wall_jsonl(emit_report(b, ReportFormat::JsonLines)));
  CHECK(emit_report(a, ReportFormat::Table) ==
        emit_report(b, ReportFormat::Table));

  // thread count must not change results either
  ExperimentSpec threaded = spec;
  threaded.threads = 4;
  const ExperimentReport c = run_experiment(threaded);
  // header echoes the thread count; compare rows only
  auto rows_only = [](const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') out << line << '\n';
    return out.str();
  };
  CHECK(rows_only(mask_wall_csv(emit_report(a, ReportFormat::Csv))) ==
        rows_only(mask_wall_csv(emit_report(c, ReportFormat::Csv))));
}

TEST_CASE("csv has the exact column set and recomputable aggregates") {
  const ExperimentReport report = run_experiment(contradiction_spec());
  const std::string csv = emit_report(report, ReportFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  std::vector<RunRecord> parsed;
  std::vector<std::string> aggregate_lines;
  while (std::getline(in, line)) {
    if (line.rfind("# aggregate", 0) == 0) {
      aggregate_lines.push_back(line);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      CHECK(line ==
            "instance,variant,seed,solved,generations,best_fitness,m,n,wall_ms");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 9);
    RunRecord rec;
    rec.instance = fields[0];
    rec.variant = *variant_from_name(fields[1]);
    rec.seed = std::stoull(fields[2]);
    rec.solved = fields[3] == "true";
    rec.generations = std::stoi(fields[4]);
    rec.best_fitness = std::stoi(fields[5]);
    rec.num_clauses = std::stoi(fields[6]);
    rec.num_vars = std::stoi(fields[7]);
    parsed.push_back(std::move(rec));
  }
  CHECK(header_seen);
  REQUIRE(parsed.size() == report.records.size());
  REQUIRE(aggregate_lines.size() == report.per_variant.size());

  // aggregates recomputed from the CSV rows must match the emitted ones
  // exactly, not approximately
  for (std::size_t i = 0; i < report.per_variant.size(); ++i) {
    const auto& [variant, emitted] = report.per_variant[i];
    const AggregateStats recomputed = aggregate_records(parsed, variant);
    CHECK(recomputed.runs == emitted.runs);
    CHECK(recomputed.successes == emitted.successes);
    CHECK(recomputed.success_rate == emitted.success_rate);
    CHECK(recomputed.mean_best_unsat == emitted.mean_best_unsat);
    CHECK(recomputed.mean_generations == emitted.mean_generations);
    CHECK(aggregate_lines[i].find("variant=" +
                                  std::string(variant_name(variant))) !=
          std::string::npos);
  }
}

TEST_CASE("jsonl round-trips the run records") {
  const ExperimentReport report = run_experiment(contradiction_spec());
  const std::string jsonl = emit_report(report, ReportFormat::JsonLines);
  std::istringstream in(jsonl);
  std::string line;
  std::size_t runs = 0;
  bool config_seen = false;
  while (std::getline(in, line)) {
    const auto row = nlohmann::json::parse(line);
    if (row["type"] == "config") {
      config_seen = true;
      continue;
    }
    if (row["type"] != "run") continue;
    const RunRecord& rec = report.records.at(runs);
    CHECK(row["instance"].get<std::string>() == rec.instance);
    CHECK(row["variant"].get<std::string>() == variant_name(rec.variant));
    CHECK(row["seed"].get<std::uint64_t>() == rec.seed);
    CHECK(row["solved"].get<bool>() == rec.solved);
    CHECK(row["generations"].get<int>() == rec.generations);
    CHECK(row["best_fitness"].get<int>() == rec.best_fitness);
    CHECK(row["m"].get<int>() == rec.num_clauses);
    CHECK(row["n"].get<int>() == rec.num_vars);
    CHECK(row["wall_ms"].get<double>() == rec.wall_ms);
    ++runs;
  }
  CHECK(config_seen);
  CHECK(runs == report.records.size());
}

TEST_CASE("table renders a dash when no run succeeded") {
  const ExperimentReport report = run_experiment(contradiction_spec());
  const std::string table = emit_report(report, ReportFormat::Table);
  CHECK(table.find(" -") != std::string::npos);
  CHECK(table.find("0%") != std::string::npos);
}

TEST_CASE("every format embeds the effective configuration") {
  const ExperimentReport report = run_experiment(contradiction_spec());
  for (ReportFormat format :
       {ReportFormat::Table, ReportFormat::Csv, ReportFormat::JsonLines}) {
    const std::string text = emit_report(report, format);
    for (const char* needle :
         {"num_subpops", "subpop_scale", "bottom_generations",
          "cooling_factor", "mutation_rate", "alpha", "beta", "accept_rule",
          "clause_length", "run_seeds"})
      CHECK_MESSAGE(text.find(needle) != std::string::npos, needle);
    CHECK(text.find("1,2,3") != std::string::npos);  // the seed list itself
  }
}

TEST_CASE("unreadable instance files are recorded and the run continues") {
  ExperimentSpec spec = contradiction_spec();
  auto& files = std::get<FileSource>(spec.source);
  files.paths.insert(files.paths.begin(), "/nonexistent/missing.cnf");
  const ExperimentReport report = run_experiment(spec);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].instance == "/nonexistent/missing.cnf");
  CHECK(report.records.size() == 9);  // good instance still ran
  const std::string csv = emit_report(report, ReportFormat::Csv);
  CHECK(csv.find("missing.cnf") != std::string::npos);
}

TEST_CASE("spec files parse and validate") {
  const auto path = write_temp("beasat_spec.conf",
                               "# comment\n"
                               "source = random\n"
                               "vars = 10\n"
                               "clauses = 20\n"
                               "instance_seeds = 1,2\n"
                               "variants = bea,hga\n"
                               "seeds = 5,6,7\n"
                               "max_gens = 99\n"
                               "alpha = 0.25\n"
                               "threads = 2\n");
  const ExperimentSpec spec = parse_experiment_spec_file(path.string());
  const auto& random = std::get<RandomSource>(spec.source);
  CHECK(random.num_vars == 10);
  CHECK(random.num_clauses == 20);
  CHECK(random.instance_seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(spec.variants == std::vector<Variant>{Variant::BEA, Variant::HGA});
  CHECK(spec.run_seeds == std::vector<std::uint64_t>{5, 6, 7});
  CHECK(spec.config.max_high_level_generations == 99);
  CHECK(spec.config.alpha == 0.25);
  CHECK(spec.threads == 2);

  const auto bad = write_temp("beasat_spec_bad.conf", "nonsense = 1\n");
  CHECK_THROWS_AS(parse_experiment_spec_file(bad.string()),
                  std::invalid_argument);
  const auto mismatch = write_temp("beasat_spec_mismatch.conf",
                                   "source = random\nvars = 5\nclauses = 5\n"
                                   "instance_seeds = 1\n"
                                   "runs_per_instance = 2\nseeds = 1,2,3\n");
  CHECK_THROWS_AS(parse_experiment_spec_file(mismatch.string()),
                  std::invalid_argument);
}

TEST_CASE("invalid configs abort before any run") {
  ExperimentSpec spec = contradiction_spec();
  spec.config.alpha = 0.0;
  spec.config.beta = 0.0;  // BEA requires alpha + beta > 0
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
}
