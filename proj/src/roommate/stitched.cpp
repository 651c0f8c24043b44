#include "roommate/stitched.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "core/stability.hpp"
#include "roommate/catalog.hpp"
#include "roommate/irving.hpp"

namespace roommate {

using core::agent;
using core::matching;
using core::preference_table;
using core::rotation;

namespace {

// the cheap half of the base checks, for callers that already hold the
// stable matchings of t_star
void verify_stable_base(const preference_table& host, const preference_table& t_star,
                        const std::vector<matching>& members) {
    if (!core::same_universe(host, t_star))
        throw core::precondition_error("base table does not share the host universe");
    if (!core::is_subtable(t_star, host))
        throw core::precondition_error("base table is not a subtable of the host");
    for (agent a = 0; a < t_star.agent_count(); ++a)
        if (t_star.row(a).empty())
            throw core::precondition_error("base table leaves " + t_star.name(a) +
                                           " without stable partners");
    if (!(core::matchings_union_table(t_star, members) == t_star))
        throw core::precondition_error(
            "base table is not a stable table: its stable matchings do not cover it");
}

// t_star must live inside host, cover every agent, and be exactly the union
// of its own stable matchings; those matchings are handed back for reuse
std::vector<matching> require_stable_base(const preference_table& host,
                                          const preference_table& t_star) {
    if (!core::same_universe(host, t_star))
        throw core::precondition_error("base table does not share the host universe");
    if (!core::is_subtable(t_star, host))
        throw core::precondition_error("base table is not a subtable of the host");
    auto members = enumerate_stable_matchings(t_star);
    verify_stable_base(host, t_star, members);
    return members;
}

// the closure machinery is developed for solvable hosts whose phase 1 keeps
// every agent in play; anything else is reported, not guessed at
void require_supported_host(const preference_table& host) {
    const auto p1 = phase1(host);
    if (!p1.removed.empty())
        throw core::precondition_error("phase 1 removes " + p1.removed.front() +
                                       " from the host: outside the supported setting");
    if (!phase2(p1.reduced).has_value())
        throw unsolvable_error("host has no stable matching");
}

std::vector<antipodal_edge> compute_antipodal(const preference_table& host,
                                              const preference_table& t_star) {
    auto eager_reluctant = [&](agent x, agent y) {
        return host.prefers(x, y, t_star.first(x)) && host.prefers(y, t_star.last(y), x);
    };
    std::vector<antipodal_edge> out;
    for (const auto& [a, b] : host.edges()) {
        if (t_star.has_edge(a, b)) continue;
        const bool ab = eager_reluctant(a, b);
        const bool ba = eager_reluctant(b, a);
        if (ab && ba) throw std::logic_error("edge antipodal in both orientations");
        if (ab)
            out.push_back({a, b});
        else if (ba)
            out.push_back({b, a});
    }
    std::sort(out.begin(), out.end(), [&](const antipodal_edge& l, const antipodal_edge& r) {
        return std::pair(host.name(l.x), host.name(l.y)) <
               std::pair(host.name(r.x), host.name(r.y));
    });
    return out;
}

// the search proper; base and host preconditions are the caller's business
stitched_result search_unchecked(const preference_table& host, const preference_table& t_star,
                                 const std::vector<matching>& members, std::uint64_t budget) {
    const auto nodes = compute_antipodal(host, t_star);
    const int n = static_cast<int>(nodes.size());
    // arc i -> j when j's reluctant end is what i's eager end holds in t_star
    std::vector<std::vector<int>> arcs(n);
    for (int i = 0; i < n; ++i) {
        const agent target = t_star.first(nodes[i].x);
        for (int j = 0; j < n; ++j)
            if (nodes[j].y == target) arcs[i].push_back(j);
    }

    // A closed antipodal cycle joins the family exactly when one stable
    // matching of t_star pairs every eager end with its t_star favorite.
    // Tracked as a bitmask of surviving members along the path, which also
    // prunes branches no member supports.
    const int mwords = members.empty() ? 1 : (static_cast<int>(members.size()) + 63) / 64;
    std::vector<std::uint64_t> favorite(static_cast<std::size_t>(n) * mwords, 0);
    for (int i = 0; i < n; ++i)
        for (std::size_t m = 0; m < members.size(); ++m)
            if (members[m].partner(nodes[i].x) == t_star.first(nodes[i].x))
                favorite[static_cast<std::size_t>(i) * mwords + (m >> 6)] |= std::uint64_t{1}
                                                                             << (m & 63);

    // defensive: the accepted cycle must be exposed in t_star plus its pairs
    auto accept = [&](const std::vector<int>& path) -> rotation {
        rotation rho;
        for (int id : path) rho.pairs.push_back({nodes[id].x, nodes[id].y});
        auto union_edges = t_star.edges();
        for (const auto& p : rho.pairs) union_edges.push_back(core::make_edge(p.first, p.second));
        const preference_table u = host.subtable_from_edges(union_edges);
        const int r = rho.length();
        for (int i = 0; i < r; ++i) {
            const agent x = rho.pairs[i].first;
            const agent y = rho.pairs[i].second;
            const agent y_next = rho.pairs[(i + 1) % r].second;
            if (u.first(x) != y || u.second(x) != y_next || u.last(y) != x)
                throw std::logic_error("antipodal cycle fails the exposure conditions");
        }
        return rho.canonical(host);
    };

    stitched_result res;
    std::vector<char> on_path(n, 0);
    std::vector<char> used(host.agent_count(), 0);
    std::vector<int> path;
    std::vector<std::uint64_t> live((static_cast<std::size_t>(n) + 1) * mwords, 0);
    bool exceeded = false;
    std::optional<rotation> got;

    // simple cycles, each enumerated from its smallest node only
    auto dfs = [&](auto&& self, int v, int s) -> bool {  // true = stop the search
        if (++res.expansions > budget) {
            exceeded = true;
            return true;
        }
        const std::size_t depth = path.size();
        std::uint64_t any = 0;
        for (int w = 0; w < mwords; ++w) {
            const std::uint64_t x =
                (depth == 0 ? ~std::uint64_t{0} : live[(depth - 1) * mwords + w]) &
                favorite[static_cast<std::size_t>(v) * mwords + w];
            live[depth * mwords + w] = x;
            any |= x;
        }
        if (!any) return false;  // no stable matching backs this prefix
        on_path[v] = 1;
        used[nodes[v].x] = used[nodes[v].y] = 1;
        path.push_back(v);
        bool stop = false;
        for (int w : arcs[v]) {
            if (w == s && path.size() >= 2) {
                got = accept(path);
                stop = true;
                break;
            }
            if (w > s && !on_path[w] && !used[nodes[w].x] && !used[nodes[w].y]) {
                if (self(self, w, s)) {
                    stop = true;
                    break;
                }
            }
        }
        path.pop_back();
        on_path[v] = 0;
        used[nodes[v].x] = used[nodes[v].y] = 0;
        return stop;
    };
    for (int s = 0; s < n; ++s)
        if (dfs(dfs, s, s)) break;

    if (exceeded) {
        res.outcome = search_outcome::budget_exceeded;
        return res;
    }
    if (got) {
        res.outcome = search_outcome::found;
        res.rot = std::move(got);
        return res;
    }
    res.outcome = search_outcome::none;
    return res;
}

}  // namespace

std::vector<antipodal_edge> antipodal_edges(const preference_table& host,
                                            const preference_table& t_star) {
    require_stable_base(host, t_star);
    return compute_antipodal(host, t_star);
}

std::vector<antipodal_edge> antipodal_edges(const preference_table& host,
                                            const preference_table& t_star,
                                            const std::vector<matching>& stable_members) {
    verify_stable_base(host, t_star, stable_members);
    return compute_antipodal(host, t_star);
}

stitched_result stitched_rotation_search(const preference_table& host,
                                         const preference_table& t_star, std::uint64_t budget) {
    const auto members = require_stable_base(host, t_star);
    require_supported_host(host);
    return search_unchecked(host, t_star, members, budget);
}

bool is_stitched_rotation(const preference_table& host, const preference_table& t_star,
                          const rotation& rho) {
    const auto members = require_stable_base(host, t_star);
    const int r = rho.length();
    if (r < 2) return false;
    std::vector<char> seen(host.agent_count(), 0);
    for (const auto& [x, y] : rho.pairs) {
        if (x < 0 || y < 0 || x >= host.agent_count() || y >= host.agent_count()) return false;
        if (seen[x]++ || seen[y]++) return false;
    }
    const auto anti = compute_antipodal(host, t_star);
    for (int i = 0; i < r; ++i) {
        const auto& [x, y] = rho.pairs[i];
        if (std::find(anti.begin(), anti.end(), antipodal_edge{x, y}) == anti.end()) return false;
        if (rho.pairs[(i + 1) % r].second != t_star.first(x)) return false;
    }
    for (const matching& m : members) {
        bool holds_all = true;
        for (const auto& p : rho.pairs)
            if (m.partner(p.first) != t_star.first(p.first)) {
                holds_all = false;
                break;
            }
        if (holds_all) return true;
    }
    return false;
}

decision check_internally_closed_roommate(const preference_table& host,
                                          const preference_table& t_tilde,
                                          std::uint64_t budget) {
    const auto members = require_stable_base(host, t_tilde);
    require_supported_host(host);
    const auto r = search_unchecked(host, t_tilde, members, budget);
    if (r.outcome == search_outcome::budget_exceeded) return decision::budget_exceeded;
    return r.outcome == search_outcome::found ? decision::no : decision::yes;
}

decision check_vnm_roommate(const preference_table& host, const preference_table& t_tilde,
                            std::uint64_t budget, int brute_cap) {
    if (!core::same_universe(host, t_tilde))
        throw core::precondition_error("base table does not share the host universe");
    if (!core::is_subtable(t_tilde, host))
        throw core::precondition_error("base table is not a subtable of the host");
    const auto members = enumerate_stable_matchings(t_tilde);
    if (!(core::matchings_union_table(t_tilde, members) == t_tilde))
        throw core::precondition_error(
            "base table is not a stable table: its stable matchings do not cover it");

    // matching stable sets on an in-scope host: vNM stability and internal
    // closedness coincide, so the stitched machinery decides
    bool reducible = false;
    {
        const auto p1 = phase1(host);
        if (p1.removed.empty() && phase2(p1.reduced).has_value()) {
            bool covered = true;
            for (agent a = 0; a < t_tilde.agent_count(); ++a)
                if (t_tilde.row(a).empty()) covered = false;
            reducible = covered && enumerate_stable_matchings(host) == members;
        }
    }
    if (reducible) {
        const auto r = search_unchecked(host, t_tilde, members, budget);
        if (r.outcome != search_outcome::budget_exceeded)
            return r.outcome == search_outcome::found ? decision::no : decision::yes;
    }
    try {
        return core::is_vnm_stable_bruteforce(host, members, brute_cap) ? decision::yes
                                                                        : decision::no;
    } catch (const core::cap_exceeded&) {
        if (reducible) return decision::budget_exceeded;
        throw undecided_error("stable sets differ and the host is too large to brute force");
    }
}

}  // namespace roommate
