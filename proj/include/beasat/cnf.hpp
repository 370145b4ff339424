#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "beasat/rng.hpp"

namespace beasat {

// A propositional literal: variable index in [1, num_vars] of the enclosing
// formula, possibly negated.
struct Literal {
  int variable = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Disjunction of literals. Never empty in a valid formula.
struct Clause {
  std::vector<Literal> literals;

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Truth assignment over variables x_1..x_n. Index i holds the value of
// x_{i+1}; true is encoded as 1, false as 0.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n, bool value = false)
      : bits_(n, value ? 1 : 0) {}

  // "101" -> x1=true, x2=false, x3=true. Test convenience.
  static Assignment from_string(const std::string& s);

  std::size_t size() const { return bits_.size(); }
  bool value(std::size_t index) const { return bits_[index] != 0; }
  void set(std::size_t index, bool v) { bits_[index] = v ? 1 : 0; }
  void flip(std::size_t index) { bits_[index] ^= 1; }
  const std::uint8_t* data() const { return bits_.data(); }
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// CNF formula: immutable after construction, safe to share across threads.
// Construction validates every clause and builds a flat literal index for the
// evaluation hot path.
class CnfFormula {
 public:
  CnfFormula(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return num_vars_; }
  int num_clauses() const { return static_cast<int>(clauses_.size()); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  // Flat encoding: literal -> 2*(variable-1) + negated. Clause c spans
  // flat_literals()[clause_offsets()[c] .. clause_offsets()[c+1]).
  const std::vector<std::int32_t>& flat_literals() const { return flat_; }
  const std::vector<std::uint32_t>& clause_offsets() const { return offsets_; }

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.num_vars_ == b.num_vars_ && a.clauses_ == b.clauses_;
  }

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
  std::vector<std::int32_t> flat_;
  std::vector<std::uint32_t> offsets_;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int line_number);
  int line = 0;
};

// DIMACS CNF reader. Comment lines start with 'c'; one "p cnf <n> <m>"
// header; clauses are nonzero integers terminated by 0, possibly spanning
// lines. A '%' token ends the clause section (SATLIB instances carry a
// trailing "%\n0\n").
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);
CnfFormula parse_dimacs_file(const std::string& path);

// One clause per line, single spaces, trailing "0". parse(serialize(f)) is
// structurally identical to f.
std::string serialize_dimacs(const CnfFormula& f);
void serialize_dimacs(const CnfFormula& f, std::ostream& out);

// Uniform random 3-SAT: m = round(ratio*n) clauses, each over 3 distinct
// variables with signs flipped independently at probability 1/2.
CnfFormula generate_random_3sat(int num_vars, double clause_ratio,
                                std::uint64_t seed);
// Same model with the clause count given explicitly.
CnfFormula generate_random_3sat_clauses(int num_vars, int num_clauses,
                                        std::uint64_t seed);

// Number of clauses with at least one true literal under a. The fitness
// function: an assignment is satisfying iff the count reaches num_clauses().
int count_satisfied(const CnfFormula& f, const Assignment& a);
bool is_satisfying(const CnfFormula& f, const Assignment& a);

}  // namespace beasat
