#include "roommate/irving.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace roommate {

using core::agent;
using core::matching;
using core::no_agent;
using core::preference_table;
using core::rotation;

namespace {

// proposal loop over mutable rows; returns the surviving edges
std::vector<core::edge> run_proposals(const preference_table& t) {
    const int n = t.agent_count();
    std::vector<std::vector<agent>> alive(n);
    for (agent a = 0; a < n; ++a) alive[a] = t.row(a);

    auto drop = [&](agent a, agent b) {
        std::erase(alive[a], b);
        std::erase(alive[b], a);
    };

    const std::vector<agent> order = name_sorted_agents(t);
    std::vector<int> slot(n);
    for (int i = 0; i < n; ++i) slot[order[i]] = i;

    std::vector<agent> engaged_to(n, no_agent);  // proposer -> current target
    std::set<int> free_pool;
    for (int i = 0; i < n; ++i) free_pool.insert(i);

    while (!free_pool.empty()) {
        const agent x = order[*free_pool.begin()];
        free_pool.erase(free_pool.begin());
        if (alive[x].empty()) continue;  // out of options, stays unassigned

        const agent y = alive[x].front();
        // everything y likes strictly less than x goes, old holder included
        std::vector<agent> tail;
        bool seen_x = false;
        for (agent z : alive[y]) {
            if (seen_x) tail.push_back(z);
            if (z == x) seen_x = true;
        }
        for (agent z : tail) {
            drop(y, z);
            if (engaged_to[z] == y) {
                engaged_to[z] = no_agent;
                free_pool.insert(slot[z]);
            }
        }
        engaged_to[x] = y;
    }

    std::vector<core::edge> kept;
    for (agent a = 0; a < n; ++a)
        for (agent b : alive[a])
            if (a < b) kept.push_back({a, b});
    return kept;
}

}  // namespace

preference_table phase1_table(const preference_table& t) {
    return t.subtable_from_edges(run_proposals(t));
}

phase1_result phase1(const preference_table& t) {
    const preference_table full = phase1_table(t);
    std::vector<agent> gone;
    phase1_result out;
    for (agent a = 0; a < full.agent_count(); ++a)
        if (full.row(a).empty()) {
            gone.push_back(a);
            out.removed.push_back(full.name(a));
        }
    std::sort(out.removed.begin(), out.removed.end());
    out.reduced = full.without_agents(gone);
    return out;
}

bool is_valid_table(const preference_table& t) {
    for (agent a = 0; a < t.agent_count(); ++a)
        if (t.row(a).empty()) return false;
    for (agent a = 0; a < t.agent_count(); ++a) {
        if (t.last(t.first(a)) != a) return false;  // w = f(z) but z != l(w)
        if (t.first(t.last(a)) != a) return false;  // z = l(w) but w != f(z)
    }
    return true;
}

bool is_valid_table(const preference_table& t, const preference_table& host) {
    if (!is_valid_table(t)) return false;
    if (t.agent_count() != host.agent_count()) return false;
    if (!core::is_subtable(t, host)) return false;
    // host agent -> t agent, by name
    std::vector<agent> to_t(host.agent_count());
    for (agent a = 0; a < host.agent_count(); ++a) {
        const agent b = t.find(host.name(a));
        if (b == no_agent) return false;
        to_t[a] = b;
    }
    for (const auto& [z, w] : host.edges()) {
        const agent tz = to_t[z], tw = to_t[w];
        const bool present = t.has_edge(tz, tw);
        const bool cut = host.prefers(z, host.require(t.name(t.last(tz))), w) ||
                         host.prefers(w, host.require(t.name(t.last(tw))), z);
        if (present == cut) return false;
    }
    return true;
}

std::vector<agent> name_sorted_agents(const preference_table& t) {
    std::vector<agent> order(t.agent_count());
    for (agent a = 0; a < t.agent_count(); ++a) order[a] = a;
    std::sort(order.begin(), order.end(),
              [&](agent a, agent b) { return t.name(a) < t.name(b); });
    return order;
}

std::vector<rotation> exposed_rotations(const preference_table& t) {
    return exposed_rotations(t, name_sorted_agents(t));
}

std::vector<rotation> exposed_rotations(const preference_table& t,
                                        const std::vector<agent>& name_order) {
    const int n = t.agent_count();
    std::vector<agent> nxt(n, no_agent);
    for (agent a = 0; a < n; ++a) {
        if (t.row(a).size() < 2) continue;
        const agent z = t.last(t.second(a));
        if (t.row(z).size() < 2)
            throw core::precondition_error("table is not valid: successor chain of " + t.name(a) +
                                           " dies at " + t.name(z));
        nxt[a] = z;
    }

    std::vector<rotation> found;
    std::vector<int> state(n, 0);  // 0 untouched, 1 on current walk, 2 settled
    for (agent start : name_order) {
        if (nxt[start] == no_agent || state[start] != 0) continue;
        std::vector<agent> walk;
        agent cur = start;
        while (state[cur] == 0) {
            state[cur] = 1;
            walk.push_back(cur);
            cur = nxt[cur];
        }
        if (state[cur] == 1) {  // closed a fresh cycle: cut it out of the walk
            rotation rho;
            auto it = std::find(walk.begin(), walk.end(), cur);
            for (; it != walk.end(); ++it) rho.pairs.push_back({*it, t.first(*it)});
            if (rho.length() < 2)  // x succeeded by itself: valid tables cannot do this
                throw core::precondition_error("table is not valid: successor chain loops on " +
                                               t.name(cur));
            found.push_back(rho.canonical(t));
        }
        for (agent a : walk) state[a] = 2;
    }
    std::sort(found.begin(), found.end(), [&](const rotation& a, const rotation& b) {
        return t.name(a.pairs.front().first) < t.name(b.pairs.front().first);
    });
    return found;
}

preference_table eliminate_rotation(const preference_table& t, const rotation& rho) {
    const int r = rho.length();
    if (r < 2) throw core::precondition_error("a rotation needs at least two pairs");
    for (int i = 0; i < r; ++i) {
        const agent x = rho.pairs[i].first;
        const agent y = rho.pairs[i].second;
        const agent y_next = rho.pairs[(i + 1) % r].second;
        if (t.first(x) != y || t.second(x) != y_next || t.last(y) != x)
            throw core::precondition_error("rotation is not exposed in the table");
    }

    std::set<core::edge> doomed;
    for (int i = 0; i < r; ++i) {
        const agent y = rho.pairs[i].second;
        const agent keeper = rho.pairs[(i + r - 1) % r].first;
        for (agent z : t.row(y))
            if (t.prefers(y, keeper, z)) doomed.insert(core::make_edge(y, z));
    }

    std::vector<core::edge> kept;
    for (core::edge e : t.edges())
        if (!doomed.contains(e)) kept.push_back(e);
    return t.subtable_from_edges(kept);
}

std::optional<matching> phase2(const preference_table& reduced) {
    for (agent a = 0; a < reduced.agent_count(); ++a)
        if (reduced.row(a).empty())
            throw core::precondition_error("row of " + reduced.name(a) +
                                           " is empty: not a clean phase-1 reduction");
    if (!is_valid_table(reduced))
        throw core::precondition_error("input is not a phase-1 reduction");

    preference_table cur = reduced;
    for (;;) {
        bool longest_done = true;
        for (agent a = 0; a < cur.agent_count(); ++a) {
            if (cur.row(a).empty()) return std::nullopt;
            if (cur.row(a).size() > 1) longest_done = false;
        }
        if (longest_done) break;
        const auto rots = exposed_rotations(cur);
        if (rots.empty()) throw std::logic_error("valid table with long rows exposes no rotation");
        cur = eliminate_rotation(cur, rots.front());
    }

    matching m(cur.agent_count());
    for (agent a = 0; a < cur.agent_count(); ++a) {
        if (m.matched(a)) continue;
        const agent b = cur.first(a);
        if (cur.first(b) != a) throw std::logic_error("singleton rows disagree");
        m.match(a, b);
    }
    return m;
}

}  // namespace roommate
