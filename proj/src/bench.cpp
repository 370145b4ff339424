#include "beasat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace beasat {

namespace {

// Shortest representation that parses back to the identical double.
std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "0";
  return std::string(buf, end);
}

std::string format_ms(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

const char* accept_rule_name(CrossoverAcceptRule rule) {
  return rule == CrossoverAcceptRule::Absolute ? "absolute" : "delta";
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seeds[i]);
  }
  return out;
}

std::string source_description(const ExperimentSpec& spec) {
  if (const auto* random = std::get_if<RandomSource>(&spec.source)) {
    return "random vars=" + std::to_string(random->num_vars) +
           " clauses=" + std::to_string(random->num_clauses) +
           " instance_seeds=" + join_seeds(random->instance_seeds);
  }
  const auto& files = std::get<FileSource>(spec.source);
  std::string out = "files";
  for (const std::string& p : files.paths) out += " " + p;
  return out;
}

std::string config_description(const SolverConfig& c) {
  std::ostringstream out;
  out << "num_subpops=" << c.num_subpops << " subpop_scale=" << c.subpop_scale
      << " bottom_generations=" << c.bottom_generations
      << " max_high_level_generations=" << c.max_high_level_generations
      << " cooling_factor=" << format_double(c.cooling_factor)
      << " mutation_rate=" << format_double(c.mutation_rate)
      << " alpha=" << format_double(c.alpha)
      << " beta=" << format_double(c.beta)
      << " accept_rule=" << accept_rule_name(c.crossover_accept_rule)
      << " clause_length=" << c.clause_length;
  return out.str();
}

struct Instance {
  std::string name;
  std::optional<CnfFormula> formula;
  std::string error;
};

std::vector<Instance> load_instances(const ExperimentSpec& spec) {
  std::vector<Instance> instances;
  if (const auto* random = std::get_if<RandomSource>(&spec.source)) {
    for (std::uint64_t s : random->instance_seeds) {
      Instance inst;
      inst.name = "rand_n" + std::to_string(random->num_vars) + "_m" +
                  std::to_string(random->num_clauses) + "_s" +
                  std::to_string(s);
      inst.formula = generate_random_3sat_clauses(random->num_vars,
                                                  random->num_clauses, s);
      instances.push_back(std::move(inst));
    }
    return instances;
  }
  for (const std::string& path : std::get<FileSource>(spec.source).paths) {
    Instance inst;
    inst.name = path;
    try {
      inst.formula = parse_dimacs_file(path);
    } catch (const std::exception& e) {
      inst.error = e.what();
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

}  // namespace

void ExperimentSpec::finalize() {
  if (runs_per_instance < 1 && run_seeds.empty())
    throw std::invalid_argument("runs_per_instance must be >= 1");
  if (run_seeds.empty()) {
    for (int i = 1; i <= runs_per_instance; ++i)
      run_seeds.push_back(static_cast<std::uint64_t>(i));
  }
  runs_per_instance = static_cast<int>(run_seeds.size());
  if (variants.empty()) throw std::invalid_argument("no variants selected");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (const auto* random = std::get_if<RandomSource>(&source)) {
    if (random->instance_seeds.empty())
      throw std::invalid_argument("random source needs instance seeds");
  } else if (std::get<FileSource>(source).paths.empty()) {
    throw std::invalid_argument("file source needs at least one path");
  }
  for (Variant v : variants) {
    SolverConfig check = config;
    check.variant = v;
    check.validate();
  }
}

AggregateStats aggregate_records(const std::vector<RunRecord>& records,
                                 Variant variant) {
  AggregateStats stats;
  double generation_sum = 0.0;
  double unsat_sum = 0.0;
  for (const RunRecord& r : records) {
    if (r.variant != variant) continue;
    ++stats.runs;
    unsat_sum += static_cast<double>(r.num_clauses - r.best_fitness);
    if (r.solved) {
      ++stats.successes;
      generation_sum += static_cast<double>(r.generations);
    }
  }
  if (stats.runs > 0) {
    stats.success_rate =
        static_cast<double>(stats.successes) / static_cast<double>(stats.runs);
    stats.mean_best_unsat = unsat_sum / static_cast<double>(stats.runs);
  }
  if (stats.successes > 0)
    stats.mean_generations =
        generation_sum / static_cast<double>(stats.successes);
  return stats;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  ExperimentReport report;
  report.spec = spec;
  report.spec.finalize();
  const ExperimentSpec& effective = report.spec;

  std::vector<Instance> instances = load_instances(effective);
  for (const Instance& inst : instances)
    if (!inst.formula)
      report.errors.push_back({inst.name, inst.error});

  struct Cell {
    const Instance* instance;
    Variant variant;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const Instance& inst : instances) {
    if (!inst.formula) continue;
    for (Variant v : effective.variants)
      for (std::uint64_t seed : effective.run_seeds)
        cells.push_back({&inst, v, seed});
  }

  report.records.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      SolverConfig config = effective.config;
      config.variant = cell.variant;
      const auto start = std::chrono::steady_clock::now();
      RunResult run = solve(*cell.instance->formula, config, cell.seed);
      const auto stop = std::chrono::steady_clock::now();
      RunRecord& rec = report.records[i];
      rec.instance = cell.instance->name;
      rec.variant = cell.variant;
      rec.seed = cell.seed;
      rec.solved = run.solved;
      rec.generations = run.high_level_generations_used;
      rec.best_fitness = run.best_fitness;
      rec.num_clauses = cell.instance->formula->num_clauses();
      rec.num_vars = cell.instance->formula->num_vars();
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
    }
  };
  const int thread_count =
      std::min<int>(effective.threads, static_cast<int>(cells.size()));
  if (thread_count > 1) {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  } else {
    worker();
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              if (a.instance != b.instance) return a.instance < b.instance;
              if (a.variant != b.variant)
                return static_cast<int>(a.variant) < static_cast<int>(b.variant);
              return a.seed < b.seed;
            });

  for (Variant v : effective.variants)
    report.per_variant.emplace_back(v, aggregate_records(report.records, v));
  return report;
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "jsonl") return ReportFormat::JsonLines;
  return std::nullopt;
}

namespace {

void emit_header_comments(const ExperimentReport& report, std::ostream& out,
                          const char* prefix) {
  const ExperimentSpec& spec = report.spec;
  out << prefix << " source = " << source_description(spec) << '\n';
  out << prefix << " variants =";
  for (Variant v : spec.variants) out << ' ' << variant_name(v);
  out << '\n';
  out << prefix << " runs_per_instance = " << spec.runs_per_instance << '\n';
  out << prefix << " run_seeds = " << join_seeds(spec.run_seeds) << '\n';
  out << prefix << " config = " << config_description(spec.config) << '\n';
  out << prefix << " threads = " << spec.threads << '\n';
  for (const InstanceError& e : report.errors)
    out << prefix << " error instance=" << e.instance << " : " << e.message
        << '\n';
}

std::string emit_csv(const ExperimentReport& report) {
  std::ostringstream out;
  emit_header_comments(report, out, "#");
  out << "instance,variant,seed,solved,generations,best_fitness,m,n,wall_ms\n";
  for (const RunRecord& r : report.records) {
    out << csv_field(r.instance) << ',' << variant_name(r.variant) << ','
        << r.seed << ',' << (r.solved ? "true" : "false") << ','
        << r.generations << ',' << r.best_fitness << ',' << r.num_clauses
        << ',' << r.num_vars << ',' << format_ms(r.wall_ms) << '\n';
  }
  for (const auto& [variant, stats] : report.per_variant) {
    out << "# aggregate variant=" << variant_name(variant)
        << " runs=" << stats.runs << " successes=" << stats.successes
        << " success_rate=" << format_double(stats.success_rate)
        << " mean_generations="
        << (stats.mean_generations ? format_double(*stats.mean_generations)
                                   : std::string("-"))
        << " mean_best_unsat=" << format_double(stats.mean_best_unsat) << '\n';
  }
  return out.str();
}

std::string emit_jsonl(const ExperimentReport& report) {
  using nlohmann::json;
  std::ostringstream out;
  json config;
  config["type"] = "config";
  config["source"] = source_description(report.spec);
  json variants = json::array();
  for (Variant v : report.spec.variants) variants.push_back(variant_name(v));
  config["variants"] = variants;
  config["runs_per_instance"] = report.spec.runs_per_instance;
  config["run_seeds"] = report.spec.run_seeds;
  config["num_subpops"] = report.spec.config.num_subpops;
  config["subpop_scale"] = report.spec.config.subpop_scale;
  config["bottom_generations"] = report.spec.config.bottom_generations;
  config["max_high_level_generations"] =
      report.spec.config.max_high_level_generations;
  config["cooling_factor"] = report.spec.config.cooling_factor;
  config["mutation_rate"] = report.spec.config.mutation_rate;
  config["alpha"] = report.spec.config.alpha;
  config["beta"] = report.spec.config.beta;
  config["accept_rule"] = accept_rule_name(report.spec.config.crossover_accept_rule);
  config["clause_length"] = report.spec.config.clause_length;
  config["threads"] = report.spec.threads;
  out << config.dump() << '\n';
  for (const InstanceError& e : report.errors) {
    json err;
    err["type"] = "error";
    err["instance"] = e.instance;
    err["message"] = e.message;
    out << err.dump() << '\n';
  }
  for (const RunRecord& r : report.records) {
    json row;
    row["type"] = "run";
    row["instance"] = r.instance;
    row["variant"] = variant_name(r.variant);
    row["seed"] = r.seed;
    row["solved"] = r.solved;
    row["generations"] = r.generations;
    row["best_fitness"] = r.best_fitness;
    row["m"] = r.num_clauses;
    row["n"] = r.num_vars;
    row["wall_ms"] = r.wall_ms;
    out << row.dump() << '\n';
  }
  for (const auto& [variant, stats] : report.per_variant) {
    json agg;
    agg["type"] = "aggregate";
    agg["variant"] = variant_name(variant);
    agg["runs"] = stats.runs;
    agg["successes"] = stats.successes;
    agg["success_rate"] = stats.success_rate;
    if (stats.mean_generations) agg["mean_generations"] = *stats.mean_generations;
    agg["mean_best_unsat"] = stats.mean_best_unsat;
    out << agg.dump() << '\n';
  }
  return out.str();
}

std::string format_mean_generations(const std::optional<double>& mean) {
  if (!mean) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", *mean);
  return buf;
}

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.0f%%", rate * 100.0);
  return buf;
}

std::string emit_table(const ExperimentReport& report) {
  std::ostringstream out;
  emit_header_comments(report, out, "c");

  // One row per instance plus a pooled row, with per-variant mean
  // generations and success rate columns.
  std::vector<std::string> names;
  for (const RunRecord& r : report.records)
    if (names.empty() || names.back() != r.instance) names.push_back(r.instance);

  out << '\n';
  std::size_t name_width = 8;
  for (const std::string& n : names) name_width = std::max(name_width, n.size());
  auto pad = [&out](const std::string& s, std::size_t width) {
    out << s;
    for (std::size_t i = s.size(); i < width; ++i) out << ' ';
  };
  pad("instance", name_width + 2);
  out << "     m      n";
  for (const auto& [variant, stats] : report.per_variant) {
    (void)stats;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "  %10s", (std::string(variant_name(variant)) + " gens").c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf), "  %10s", (std::string(variant_name(variant)) + " rate").c_str());
    out << buf;
  }
  out << '\n';

  auto emit_row = [&](const std::string& label,
                      const std::vector<RunRecord>& rows) {
    int m = rows.empty() ? 0 : rows.front().num_clauses;
    int n = rows.empty() ? 0 : rows.front().num_vars;
    pad(label, name_width + 2);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%6d %6d", m, n);
    out << buf;
    for (const auto& [variant, stats] : report.per_variant) {
      (void)stats;
      AggregateStats agg = aggregate_records(rows, variant);
      std::snprintf(buf, sizeof(buf), "  %10s",
                    format_mean_generations(agg.mean_generations).c_str());
      out << buf;
      std::snprintf(buf, sizeof(buf), "  %10s",
                    format_rate(agg.success_rate).c_str());
      out << buf;
    }
    out << '\n';
  };

  for (const std::string& name : names) {
    std::vector<RunRecord> rows;
    for (const RunRecord& r : report.records)
      if (r.instance == name) rows.push_back(r);
    emit_row(name, rows);
  }
  if (names.size() > 1) emit_row("ALL", report.records);
  return out.str();
}

}  // namespace

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return emit_table(report);
    case ReportFormat::Csv: return emit_csv(report);
    case ReportFormat::JsonLines: return emit_jsonl(report);
  }
  throw std::invalid_argument("unknown report format");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("spec key '" + key + "': bad integer '" + s + "'");
  return value;
}

double parse_f64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double value = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("spec key '" + key + "': bad number '" + s + "'");
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s,
                                           const std::string& key) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& part : split(s, ','))
    seeds.push_back(parse_u64(trim(part), key));
  return seeds;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  RandomSource random;
  FileSource files;
  std::string source_kind = "random";
  bool runs_given = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "source") {
      if (value != "random" && value != "files")
        throw std::invalid_argument("source must be 'random' or 'files'");
      source_kind = value;
    } else if (key == "vars") {
      random.num_vars = static_cast<int>(parse_u64(value, key));
    } else if (key == "clauses") {
      random.num_clauses = static_cast<int>(parse_u64(value, key));
    } else if (key == "instance_seeds") {
      random.instance_seeds = parse_seed_list(value, key);
    } else if (key == "files") {
      for (const std::string& part : split(value, ','))
        files.paths.push_back(trim(part));
    } else if (key == "variants") {
      spec.variants.clear();
      for (const std::string& part : split(value, ',')) {
        auto v = variant_from_name(trim(part));
        if (!v) throw std::invalid_argument("unknown variant '" + part + "'");
        spec.variants.push_back(*v);
      }
    } else if (key == "runs_per_instance") {
      spec.runs_per_instance = static_cast<int>(parse_u64(value, key));
      runs_given = true;
    } else if (key == "seeds") {
      spec.run_seeds = parse_seed_list(value, key);
    } else if (key == "threads") {
      spec.threads = static_cast<int>(parse_u64(value, key));
    } else if (key == "max_gens") {
      spec.config.max_high_level_generations = static_cast<int>(parse_u64(value, key));
    } else if (key == "subpops") {
      spec.config.num_subpops = static_cast<int>(parse_u64(value, key));
    } else if (key == "scale") {
      spec.config.subpop_scale = static_cast<int>(parse_u64(value, key));
    } else if (key == "bottom_gens") {
      spec.config.bottom_generations = static_cast<int>(parse_u64(value, key));
    } else if (key == "cooling") {
      spec.config.cooling_factor = parse_f64(value, key);
    } else if (key == "mutation_rate") {
      spec.config.mutation_rate = parse_f64(value, key);
    } else if (key == "alpha") {
      spec.config.alpha = parse_f64(value, key);
    } else if (key == "beta") {
      spec.config.beta = parse_f64(value, key);
    } else if (key == "accept_rule") {
      if (value == "absolute")
        spec.config.crossover_accept_rule = CrossoverAcceptRule::Absolute;
      else if (value == "delta")
        spec.config.crossover_accept_rule = CrossoverAcceptRule::Delta;
      else
        throw std::invalid_argument("accept_rule must be absolute or delta");
    } else if (key == "clause_length") {
      spec.config.clause_length = static_cast<int>(parse_u64(value, key));
    } else {
      throw std::invalid_argument("unknown spec key '" + key + "'");
    }
  }

  if (runs_given && !spec.run_seeds.empty() &&
      spec.runs_per_instance != static_cast<int>(spec.run_seeds.size()))
    throw std::invalid_argument("runs_per_instance disagrees with seeds list");
  if (source_kind == "random") {
    if (random.num_vars <= 0 || random.num_clauses < 0)
      throw std::invalid_argument("random source needs vars and clauses");
    spec.source = random;
  } else {
    spec.source = files;
  }
  return spec;
}

ExperimentSpec parse_experiment_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  return parse_experiment_spec(in);
}

}  // namespace beasat
