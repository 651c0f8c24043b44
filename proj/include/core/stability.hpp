#pragma once

#include <cstdint>
#include <vector>

#include "core/table.hpp"

namespace core {

// pairs xy of t with both x and y strictly preferring each other to their
// current situation in m; sorted canonically
std::vector<edge> blocking_pairs(const preference_table& t, const matching& m);

// m uses only edges of t and has no blocking pair within t
bool is_stable(const preference_table& t, const matching& m);

// every matching in the graph of t, including the empty one; refuses tables
// larger than cap agents
std::vector<matching> enumerate_matchings(const preference_table& t, int cap = 20);

std::vector<matching> stable_matchings_bruteforce(const preference_table& t, int cap = 20);

// no edge of a blocks b and no edge of b blocks a
bool mutually_nonblocking(const preference_table& t, const matching& a, const matching& b);

bool is_internally_stable(const preference_table& t, const std::vector<matching>& set);

// outsiders M (within cap-bounded enumeration) that extend `set` while
// keeping it internally stable
std::vector<matching> closure_candidates(const preference_table& t,
                                         const std::vector<matching>& set, int cap = 20);

bool is_internally_closed_bruteforce(const preference_table& t, const std::vector<matching>& set,
                                     int cap = 20);

// internal stability plus: every outsider is blocked by an edge of a member
bool is_vnm_stable_bruteforce(const preference_table& t, const std::vector<matching>& set,
                              int cap = 20);

// all vNM-stable sets of t, found by sweeping edge subsets (every vNM set is
// the stable set of the union of its members); members sorted, sets deduped
std::vector<std::vector<matching>> all_vnm_sets_bruteforce(const preference_table& t,
                                                           int cap = 20);

struct symdiff_component {
    std::vector<agent> agents;  // cycle order when is_cycle, path order otherwise
    bool is_cycle = false;
};

struct symdiff_analysis {
    std::vector<symdiff_component> components;  // of the graph a^b, singletons omitted
    bool matched_sets_equal = false;
    bool cycles_all_even = false;
    // edges of a|b whose endpoints both strictly prefer the same matching
    std::vector<edge> irregular_edges;
};

symdiff_analysis analyze_symmetric_difference(const preference_table& t, const matching& a,
                                              const matching& b);

}  // namespace core
