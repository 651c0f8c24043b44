#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"

namespace roommate {

struct unsolvable_error : std::runtime_error {
    explicit unsolvable_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct phase1_result {
    core::preference_table reduced;    // agents whose rows emptied are dropped
    std::vector<std::string> removed;  // their names, sorted
};

// Proposal round: free agents (served smallest name first) propose to the head
// of their current list; the receiver keeps the new proposer and everyone it
// likes better, cutting the rest, which frees the previous holder.  Empty rows
// are reported, not treated as errors.
phase1_result phase1(const core::preference_table& t);

// same reduction, but over the full universe: emptied rows stay as empty rows
core::preference_table phase1_table(const core::preference_table& t);

// a) no empty list; b) w = f(z) exactly when z = l(w)
bool is_valid_table(const core::preference_table& t);
// adds c): a host edge zw is missing from t exactly when z ranks its last
// t-entry above w, or w ranks its last t-entry above z
bool is_valid_table(const core::preference_table& t, const core::preference_table& host);

// agents ordered by name; the proposal and rotation scans run in this order so
// results do not depend on id assignment
std::vector<core::agent> name_sorted_agents(const core::preference_table& t);

// Rotations exposed in t: cycles of the successor map x -> last(second(x))
// over rows with at least two entries.  Empty and singleton rows are ignored;
// throws precondition_error if the chain escapes (t's live part not valid).
// Canonical forms, sorted by leading agent name.
std::vector<core::rotation> exposed_rotations(const core::preference_table& t);

// same, with the name order precomputed once by callers that scan many tables
// over one shared universe
std::vector<core::rotation> exposed_rotations(const core::preference_table& t,
                                              const std::vector<core::agent>& name_order);

// cut each y_i's row right below x_{i-1}; requires rho exposed in t
core::preference_table eliminate_rotation(const core::preference_table& t,
                                          const core::rotation& rho);

// Eliminate exposed rotations (smallest leading agent first) until every row
// is a singleton (the stable matching) or some row dies (nullopt: no stable
// matching).  Rejects tables that are not a clean phase-1 reduction.
std::optional<core::matching> phase2(const core::preference_table& reduced);

}  // namespace roommate
