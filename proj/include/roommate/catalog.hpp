#pragma once

#include <cstdint>
#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"

namespace roommate {

// cap on distinct tables visited while walking elimination orders
inline constexpr std::uint64_t default_table_cap = 1'000'000;

struct rotation_catalog {
    std::vector<core::rotation> all;  // canonical, sorted by serialization
    // index of the partner form (reversed traversal), -1 when absent
    std::vector<int> dual;

    std::vector<int> singular() const;
    std::vector<int> nonsingular() const;
};

// The exact stable set, computed by depth-first branching over every exposed
// rotation from the phase-1 reduction, memoized on the surviving edge set.
// Matchings come back sorted, over t's own universe (agents dropped in phase 1
// stay single).  An unsolvable table yields the empty set.
std::vector<core::matching> enumerate_stable_matchings(const core::preference_table& t,
                                                       std::uint64_t cap = default_table_cap);

// every rotation exposed at any table reachable by eliminations, with duals
// paired up; throws unsolvable_error when t has no stable matching
rotation_catalog classify_rotations(const core::preference_table& t,
                                    std::uint64_t cap = default_table_cap);

// matchings and catalog from a single elimination walk, for callers that need
// both; throws unsolvable_error when t has no stable matching
struct stable_analysis {
    std::vector<core::matching> matchings;  // sorted, as enumerate_stable_matchings
    rotation_catalog catalog;               // as classify_rotations
};
stable_analysis analyze_table(const core::preference_table& t,
                              std::uint64_t cap = default_table_cap);

// the union of the stable matchings, as a subtable of t; throws
// unsolvable_error when there are none
core::preference_table stable_subtable_roommate(const core::preference_table& t,
                                                std::uint64_t cap = default_table_cap);

}  // namespace roommate
