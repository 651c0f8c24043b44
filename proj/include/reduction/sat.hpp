#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace reduction {

// Formula in 3-CNF.  A literal is a nonzero integer: +a for variable a, -a
// for its negation; variables are numbered 1..variables and every clause has
// exactly three literals (repeats allowed).
struct cnf_formula {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    int clause_count() const { return static_cast<int>(clauses.size()); }

    bool operator==(const cnf_formula&) const = default;
};

// DIMACS CNF: comment lines, a "p cnf V C" header, whitespace-separated
// literals with 0 closing each clause.  Clauses must have exactly three
// literals; variables are renumbered densely in order of first appearance,
// so every variable of the result appears in some clause.
cnf_formula parse_dimacs(const std::string& text);

// drop unused variables and renumber the rest in order of first appearance
cnf_formula densify(const cnf_formula& phi);

// assignment[a-1] is the value of variable a
bool evaluate(const cnf_formula& phi, const std::vector<bool>& assignment);

// exhaustive search; returns the lexicographically first satisfying
// assignment (v1 most significant, false before true) or nullopt when
// unsatisfiable.  Formulas above cap variables raise cap_exceeded.
std::optional<std::vector<bool>> sat_bruteforce(const cnf_formula& phi, int cap = 24);

}  // namespace reduction
