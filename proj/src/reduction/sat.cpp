#include "reduction/sat.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

#include "core/table.hpp"

namespace reduction {

cnf_formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    bool have_header = false;
    int declared_vars = 0;
    cnf_formula phi;
    std::vector<int> pending;
    int clause_open_line = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            if (have_header) throw core::parse_error("duplicate header", line_no);
            std::string fmt;
            int nc = 0;
            if (!(ls >> fmt >> declared_vars >> nc) || fmt != "cnf" || declared_vars < 1)
                throw core::parse_error("malformed header, expected 'p cnf <vars> <clauses>'",
                                        line_no);
            have_header = true;
            continue;
        }
        if (!have_header) throw core::parse_error("clause data before the 'p cnf' header", line_no);
        ls.clear();
        ls.str(line);
        int lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw core::parse_error("clause has " + std::to_string(pending.size()) +
                                                " literals, need exactly 3",
                                            clause_open_line ? clause_open_line : line_no);
                phi.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                clause_open_line = 0;
            } else {
                if (std::abs(lit) > declared_vars)
                    throw core::parse_error("literal " + std::to_string(lit) +
                                                " exceeds the declared variable count",
                                            line_no);
                if (pending.empty()) clause_open_line = line_no;
                pending.push_back(lit);
            }
        }
        if (!ls.eof()) throw core::parse_error("unreadable token in clause data", line_no);
    }
    if (!have_header) throw core::parse_error("missing 'p cnf' header", line_no);
    if (!pending.empty()) throw core::parse_error("unterminated clause at end of input", line_no);
    if (phi.clauses.empty()) throw core::parse_error("formula has no clauses", line_no);

    phi.variables = declared_vars;
    return densify(phi);
}

cnf_formula densify(const cnf_formula& phi) {
    std::vector<int> renamed(static_cast<std::size_t>(phi.variables) + 1, 0);
    cnf_formula out;
    for (const auto& c : phi.clauses) {
        std::array<int, 3> mapped{};
        for (int t = 0; t < 3; ++t) {
            const int lit = c[t];
            const int v = std::abs(lit);
            if (v < 1 || v > phi.variables)
                throw core::precondition_error("literal " + std::to_string(lit) +
                                               " is out of range");
            if (renamed[v] == 0) renamed[v] = ++out.variables;
            mapped[t] = lit > 0 ? renamed[v] : -renamed[v];
        }
        out.clauses.push_back(mapped);
    }
    return out;
}

bool evaluate(const cnf_formula& phi, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != phi.variables)
        throw core::precondition_error("assignment size differs from the variable count");
    for (const auto& c : phi.clauses) {
        bool hit = false;
        for (int lit : c)
            if (lit > 0 ? assignment[lit - 1] : !assignment[-lit - 1]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

std::optional<std::vector<bool>> sat_bruteforce(const cnf_formula& phi, int cap) {
    const int k = phi.variables;
    if (k > cap)
        throw core::cap_exceeded("formula has " + std::to_string(k) +
                                 " variables, above the brute-force cap " + std::to_string(cap));
    std::vector<bool> a(k, false);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        for (int i = 0; i < k; ++i) a[i] = (m >> (k - 1 - i)) & 1;
        if (evaluate(phi, a)) return a;
    }
    return std::nullopt;
}

}  // namespace reduction
