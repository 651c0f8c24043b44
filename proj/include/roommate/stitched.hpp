#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/rotation.hpp"
#include "core/table.hpp"

namespace roommate {

struct undecided_error : std::runtime_error {
    explicit undecided_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Edge of host outside t_star, oriented so that x wants y more than anything
// t_star offers x, while y ranks x below every t_star partner.  Matchings
// through a non-antipodal extra edge are always blocked by t_star.
struct antipodal_edge {
    core::agent x = core::no_agent;
    core::agent y = core::no_agent;
    bool operator==(const antipodal_edge&) const = default;
};

// all antipodal edges of host wrt t_star, sorted by (x name, y name); t_star
// must be a stable table inside host covering every agent
std::vector<antipodal_edge> antipodal_edges(const core::preference_table& host,
                                            const core::preference_table& t_star);

// same, for callers that already enumerated t_star's stable matchings; the
// members must be exactly enumerate_stable_matchings(t_star)
std::vector<antipodal_edge> antipodal_edges(const core::preference_table& host,
                                            const core::preference_table& t_star,
                                            const std::vector<core::matching>& stable_members);

enum class search_outcome { found, none, budget_exceeded };

struct stitched_result {
    search_outcome outcome = search_outcome::none;
    std::optional<core::rotation> rot;  // set iff found
    std::uint64_t expansions = 0;
};

// Looks for a rotation of antipodal edges that is exposed once its pair edges
// are added to t_star and whose successor edges all sit inside one stable
// matching of t_star.  Such a rotation extends S(t_star) by a new matching
// without breaking internal stability; absence of one means S(t_star) is
// internally closed in host.  Cycle enumeration is a bounded DFS; the first
// hit in deterministic node order is returned.
stitched_result stitched_rotation_search(const core::preference_table& host,
                                         const core::preference_table& t_star,
                                         std::uint64_t budget = 1'000'000);

// checks a candidate rotation against the same acceptance rule the search
// uses: pairs are antipodal edges in that orientation, pairwise disjoint,
// each reluctant end is what the previous eager end holds in t_star, and one
// stable matching of t_star pairs every eager end with its t_star favorite.
// Throws like antipodal_edges when t_star is not a stable base.
bool is_stitched_rotation(const core::preference_table& host,
                          const core::preference_table& t_star, const core::rotation& rho);

enum class decision { yes, no, budget_exceeded };

// yes iff no stitched rotation exists wrt t_tilde
decision check_internally_closed_roommate(const core::preference_table& host,
                                          const core::preference_table& t_tilde,
                                          std::uint64_t budget = 1'000'000);

// When t_tilde's stable set equals host's, vNM stability reduces to internal
// closedness; otherwise falls back to brute force over all matchings of host
// (hosts above brute_cap agents raise undecided_error).
decision check_vnm_roommate(const core::preference_table& host,
                            const core::preference_table& t_tilde,
                            std::uint64_t budget = 1'000'000, int brute_cap = 20);

}  // namespace roommate
