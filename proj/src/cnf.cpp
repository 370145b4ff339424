#include "beasat/cnf.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace beasat {

Assignment Assignment::from_string(const std::string& s) {
  Assignment a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("assignment string must be 0/1");
    a.set(i, s[i] == '1');
  }
  return a;
}

std::string Assignment::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

CnfFormula::CnfFormula(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ < 1)
    throw std::invalid_argument("formula needs at least one variable");
  std::size_t total = 0;
  for (const Clause& c : clauses_) total += c.literals.size();
  flat_.reserve(total);
  offsets_.reserve(clauses_.size() + 1);
  offsets_.push_back(0);
  for (const Clause& c : clauses_) {
    if (c.literals.empty()) throw std::invalid_argument("empty clause");
    for (const Literal& lit : c.literals) {
      if (lit.variable < 1 || lit.variable > num_vars_)
        throw std::invalid_argument("literal variable out of range: " +
                                    std::to_string(lit.variable));
      flat_.push_back(2 * (lit.variable - 1) + (lit.negated ? 1 : 0));
    }
    offsets_.push_back(static_cast<std::uint32_t>(flat_.size()));
  }
}

ParseError::ParseError(const std::string& message, int line_number)
    : std::runtime_error("line " + std::to_string(line_number) + ": " +
                         message),
      line(line_number) {}

namespace {

bool parse_int(const std::string& token, long& out) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stol(token, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == token.size();
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  bool have_header = false;
  long header_vars = 0;
  long header_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  bool done = false;

  std::string line;
  int line_no = 0;
  while (!done && std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank line
    if (tok[0] == 'c') continue;     // comment
    if (tok == "p") {
      if (have_header) throw ParseError("duplicate header", line_no);
      std::string fmt;
      if (!(tokens >> fmt) || fmt != "cnf")
        throw ParseError("expected 'p cnf <vars> <clauses>'", line_no);
      std::string vs, cs;
      if (!(tokens >> vs >> cs) || !parse_int(vs, header_vars) ||
          !parse_int(cs, header_clauses) || header_vars < 1 ||
          header_clauses < 0)
        throw ParseError("malformed header counts", line_no);
      if (tokens >> tok) throw ParseError("trailing tokens in header", line_no);
      have_header = true;
      clauses.reserve(static_cast<std::size_t>(header_clauses));
      continue;
    }
    // clause data
    do {
      if (tok == "%") {  // SATLIB end-of-instance marker
        done = true;
        break;
      }
      if (!have_header)
        throw ParseError("clause data before 'p cnf' header", line_no);
      long value = 0;
      if (!parse_int(tok, value))
        throw ParseError("non-integer token '" + tok + "'", line_no);
      if (value == 0) {
        if (current.literals.empty())
          throw ParseError("empty clause", line_no);
        clauses.push_back(std::move(current));
        current = Clause{};
      } else {
        long var = value < 0 ? -value : value;
        if (var > header_vars)
          throw ParseError("literal " + std::to_string(value) +
                               " exceeds variable count " +
                               std::to_string(header_vars),
                           line_no);
        current.literals.push_back(
            Literal{static_cast<int>(var), value < 0});
      }
    } while (tokens >> tok);
  }

  if (!have_header) throw ParseError("missing 'p cnf' header", line_no);
  if (!current.literals.empty())
    throw ParseError("unterminated clause at end of input", line_no);
  if (static_cast<long>(clauses.size()) != header_clauses)
    throw ParseError("clause count " + std::to_string(clauses.size()) +
                         " does not match header " +
                         std::to_string(header_clauses),
                     line_no);
  return CnfFormula(static_cast<int>(header_vars), std::move(clauses));
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

CnfFormula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return parse_dimacs(in);
}

void serialize_dimacs(const CnfFormula& f, std::ostream& out) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    for (const Literal& lit : c.literals)
      out << (lit.negated ? -lit.variable : lit.variable) << ' ';
    out << "0\n";
  }
}

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  serialize_dimacs(f, out);
  return out.str();
}

CnfFormula generate_random_3sat_clauses(int num_vars, int num_clauses,
                                        std::uint64_t seed) {
  if (num_vars < 3)
    throw std::invalid_argument("random 3-SAT needs at least 3 variables");
  if (num_clauses < 0) throw std::invalid_argument("negative clause count");
  Rng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(num_clauses));
  const auto n = static_cast<std::uint64_t>(num_vars);
  for (int i = 0; i < num_clauses; ++i) {
    int v[3];
    v[0] = static_cast<int>(rng.next_below(n)) + 1;
    do {
      v[1] = static_cast<int>(rng.next_below(n)) + 1;
    } while (v[1] == v[0]);
    do {
      v[2] = static_cast<int>(rng.next_below(n)) + 1;
    } while (v[2] == v[0] || v[2] == v[1]);
    Clause c;
    c.literals.reserve(3);
    for (int j = 0; j < 3; ++j)
      c.literals.push_back(Literal{v[j], rng.next_bit()});
    clauses.push_back(std::move(c));
  }
  return CnfFormula(num_vars, std::move(clauses));
}

CnfFormula generate_random_3sat(int num_vars, double clause_ratio,
                                std::uint64_t seed) {
  if (clause_ratio <= 0.0)
    throw std::invalid_argument("clause ratio must be positive");
  const int m = static_cast<int>(std::llround(clause_ratio * num_vars));
  return generate_random_3sat_clauses(num_vars, m, seed);
}

int count_satisfied(const CnfFormula& f, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(f.num_vars()))
    throw std::invalid_argument("assignment length does not match formula");
  const std::uint8_t* bits = a.data();
  const std::int32_t* lits = f.flat_literals().data();
  const auto& offsets = f.clause_offsets();
  int count = 0;
  for (std::size_t c = 0; c + 1 < offsets.size(); ++c) {
    const std::uint32_t end = offsets[c + 1];
    for (std::uint32_t i = offsets[c]; i < end; ++i) {
      const std::int32_t enc = lits[i];
      if (bits[enc >> 1] != (enc & 1)) {  // literal is true
        ++count;
        break;
      }
    }
  }
  return count;
}

bool is_satisfying(const CnfFormula& f, const Assignment& a) {
  return count_satisfied(f, a) == f.num_clauses();
}

}  // namespace beasat
