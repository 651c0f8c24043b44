#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"

namespace marriage {

// Exposure in the loose sense: every pair is matched in m, every agent moves
// to a strictly worse partner while the receiving agent strictly improves,
// and all touched edges lie in t.
bool is_exposed(const core::preference_table& t, const core::matching& m,
                const core::rotation& rho);

// Rotations exposed in m in the strict sense for the given proposing side:
// each successor is the FIRST entry below the current partner that would take
// the proposer.  Found as the cycles of the successor map; canonical forms,
// sorted by serialization.
std::vector<core::rotation> exposed_rotations(const core::preference_table& t,
                                              const core::matching& m,
                                              core::table_side side = core::table_side::left);

// cyclic shift: pair agents keep their successors, everyone else is untouched
core::matching eliminate_rotation(const core::preference_table& t, const core::matching& m,
                                  const core::rotation& rho);

// the full rotation set of t for the proposing side, in elimination
// (topological) order, walking from the side-optimal matching down to its
// opposite
std::vector<core::rotation> all_rotations(const core::preference_table& t,
                                          core::table_side side = core::table_side::left);

// direct precedence arcs between the rotations of t (not transitively closed);
// elements in topological order
struct rotation_order {
    std::vector<core::rotation> elements;
    std::vector<std::vector<int>> direct;  // arcs i -> j, meaning i is eliminated before j

    // sorted indices of every rotation forced before elements[idx]
    std::vector<int> predecessors(int idx) const;
    // index of the canonical form, -1 when absent
    int find(const core::preference_table& t, const core::rotation& rho) const;
};

rotation_order rotation_order_of(const core::preference_table& t);

// transitively closed order plus downward-closed-set enumeration
struct rotation_poset {
    std::vector<core::rotation> elements;   // topological order
    std::vector<std::vector<bool>> before;  // strict order, transitively closed

    std::vector<int> predecessor_closure(int idx) const;
    // every downward-closed subset, each as a sorted index list; throws
    // core::cap_exceeded when there are more than cap of them
    std::vector<std::vector<int>> closed_sets(std::size_t cap = 1u << 20) const;
    std::string serialize(const core::preference_table& t) const;
};

rotation_poset rotation_poset_of(const core::preference_table& t);

// subtable of the edges lying on some stable matching: the right-optimal
// matching's edges plus every rotation pair
core::preference_table stable_subtable(const core::preference_table& t);

// sub is a subtable of host and every edge of sub lies on a stable matching
// of sub
bool is_stable_subtable(const core::preference_table& host, const core::preference_table& sub);

// Digraph whose cycles are the loosely exposed rotations: a proposing-side
// agent points at every entry it would settle for that would take it, and a
// receiving-side agent points at its partner.
struct rotation_digraph {
    std::vector<std::vector<core::agent>> out;  // per agent, sorted by target name
    core::table_side side = core::table_side::left;
};

rotation_digraph rotation_digraph_of(const core::preference_table& t, const core::matching& m,
                                     core::table_side side);

bool digraph_acyclic(const rotation_digraph& d);

// deterministic pick: the cycle through the smallest-named agent lying on any
// cycle, decoded against m; nullopt when acyclic
std::optional<core::rotation> find_exposed_cycle(const core::preference_table& t,
                                                 const core::matching& m,
                                                 const rotation_digraph& d);

// deterministic pick of a cycle different from rho's own: scans proposing-side
// choice arcs outside rho in name order and closes each through a DFS;
// nullopt when rho's cycle is the only one
std::optional<core::rotation> find_other_cycle(const core::preference_table& t,
                                               const core::matching& m, const rotation_digraph& d,
                                               const core::rotation& rho);

}  // namespace marriage
