#pragma once

#include <stdexcept>
#include <string>

#include "core/table.hpp"

namespace marriage {

// pointwise-better partner selection did not form a matching
struct lattice_error : std::runtime_error {
    explicit lattice_error(const std::string& msg) : std::runtime_error(msg) {}
};

// proposal rounds; returns the stable matching optimal for `optimal`
core::matching deferred_acceptance(const core::preference_table& t, core::table_side optimal);

// every agent on `side` weakly prefers its a-partner to its b-partner
// (unmatched ranks worst)
bool side_weakly_prefers(const core::preference_table& t, const core::matching& a,
                         const core::matching& b, core::table_side side);

// pair each left-side agent with the better (join) / worse (meet) of its two
// partners; throws lattice_error when the selection is not a matching
core::matching lattice_join(const core::preference_table& t, const core::matching& a,
                            const core::matching& b);
core::matching lattice_meet(const core::preference_table& t, const core::matching& a,
                            const core::matching& b);

}  // namespace marriage
