#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"
#include "reduction/sat.hpp"

namespace reduction {

// Roommate instance encoding a 3-CNF formula.  Each variable vj owns a cycle
// of agents z<j>_<i>, w<j>_<i> whose two stable halves stand for true and
// false, a fixed pair z0 w0 anchors the instance, and every consecutive
// clause pair is wired with antipodal edges between literal agents, so a
// stitched rotation wrt the stable part exists exactly when the formula is
// satisfiable.
struct gadget {
    cnf_formula phi;
    core::preference_table host;         // the full instance, clause wiring included
    core::preference_table stable_part;  // union of host's stable matchings, same universe
    std::vector<int> cycle_length;       // per variable: twice its occurrence count
    std::vector<core::rotation> cycle;      // per variable: (z_1,w_1),...,(z_nj,w_nj)
    std::vector<core::rotation> cycle_bar;  // its dual, the other stable half
    std::vector<std::array<std::string, 3>> literal_agent;  // clause r, slot i -> agent name
};

// construction is validated before returning: the stable part must be a valid
// stable table whose rotations are exactly the variable cycles (one dual pair
// each), every wiring edge antipodal; a failure is a construction bug
gadget build_gadget(const cnf_formula& phi);

// The forward certificate: one true literal per clause turns into a cycle of
// wiring edges that passes is_stitched_rotation.  Unsatisfying assignments
// are rejected; so is a satisfying assignment of a one-clause formula with a
// single true literal, which leaves no two edges to close a cycle.
core::rotation assignment_to_stitched(const gadget& g, const std::vector<bool>& assignment);

// the backward certificate: the reluctant end of every pair names a literal;
// making those literals true satisfies the formula
std::vector<bool> stitched_to_assignment(const gadget& g, const core::rotation& rho);

// sidecar describing the encoding: literal-to-agent lines and the per-variable
// cycle agents, so certificates can be checked without rebuilding the gadget
struct manifest {
    int clauses = 0;
    int variables = 0;
    std::vector<std::array<std::string, 3>> literal_agent;
    std::vector<std::vector<std::string>> cycle_agents;  // z and w names, alternating

    bool operator==(const manifest&) const = default;
};

std::string manifest_text(const gadget& g);
manifest parse_manifest(const std::string& text);

// decodes a rotation against a bare instance plus its manifest: verifies it
// is stitched wrt the instance's stable subtable, then reads the assignment
// off the reluctant ends (z side = false, w side = true, unnamed = false)
std::vector<bool> decode_certificate(const core::preference_table& host, const manifest& mf,
                                     const core::rotation& rho);

}  // namespace reduction
