#pragma once

#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"

namespace marriage {

// counters for the closure machinery, logged by the scaling tests
struct closure_stats {
    int dissect_calls = 0;
    int splits = 0;
    int absorbed_cycles = 0;
    int passes = 0;
};

// Rotations of a grown table that jointly replay rho's elimination, found by
// hunting a second cycle in rho's window inside host; {rho} itself when rho
// cannot be split.
std::vector<core::rotation> dissect_rotation(const core::preference_table& host,
                                             const core::preference_table& t_prime,
                                             const core::rotation& rho,
                                             closure_stats* stats = nullptr);

// grow t_prime until every rotation on the worklist, and every rotation the
// splits spawn, is unsplittable inside host
core::preference_table dissect_all(const core::preference_table& host,
                                   core::preference_table t_prime,
                                   std::vector<core::rotation> worklist,
                                   closure_stats* stats = nullptr);

// the smallest stable supertable of t0 this machinery reaches whose stable
// matchings form an internally closed family
core::preference_table internal_closure(const core::preference_table& host,
                                        const core::preference_table& t0,
                                        closure_stats* stats = nullptr);

// true iff no matching outside S(t_tilde) can join it: both optimal-matching
// digraphs over host are acyclic and every rotation of t_tilde is unsplittable
bool check_internally_closed(const core::preference_table& host,
                             const core::preference_table& t_tilde);

}  // namespace marriage
