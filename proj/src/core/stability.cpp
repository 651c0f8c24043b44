#include "core/stability.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace core {

namespace {

void check_fits(const preference_table& t, const matching& m) {
    if (m.slot_count() != t.agent_count())
        throw precondition_error("matching universe does not match table");
}

bool edge_blocks(const preference_table& t, agent a, agent b, const matching& m) {
    return t.prefers(a, b, m.partner(a)) && t.prefers(b, a, m.partner(b));
}

// name-lexicographic edge order for output determinism
void sort_edges_by_name(const preference_table& t, std::vector<edge>& es) {
    std::sort(es.begin(), es.end(), [&](edge a, edge b) {
        std::string a1 = t.name(a.first), a2 = t.name(a.second);
        if (a2 < a1) std::swap(a1, a2);
        std::string b1 = t.name(b.first), b2 = t.name(b.second);
        if (b2 < b1) std::swap(b1, b2);
        return std::tie(a1, a2) < std::tie(b1, b2);
    });
}

void enumerate_rec(const preference_table& t, agent a, matching& cur,
                   const std::function<void(const matching&)>& sink) {
    int n = t.agent_count();
    while (a < n && cur.matched(a)) ++a;
    if (a == n) {
        sink(cur);
        return;
    }
    enumerate_rec(t, a + 1, cur, sink);  // a stays single for good
    for (agent b : t.row(a)) {
        if (b < a || cur.matched(b)) continue;  // earlier agents are already decided
        cur.match(a, b);
        enumerate_rec(t, a + 1, cur, sink);
        cur.unmatch(a);
    }
}

void for_each_matching(const preference_table& t, int cap,
                       const std::function<void(const matching&)>& sink) {
    if (t.agent_count() > cap)
        throw cap_exceeded("table has " + std::to_string(t.agent_count()) +
                           " agents, above the brute-force cap of " + std::to_string(cap));
    matching cur(t.agent_count());
    enumerate_rec(t, 0, cur, sink);
}

}  // namespace

std::vector<edge> blocking_pairs(const preference_table& t, const matching& m) {
    check_fits(t, m);
    std::vector<edge> out;
    for (edge e : t.edges())
        if (edge_blocks(t, e.first, e.second, m)) out.push_back(e);
    sort_edges_by_name(t, out);
    return out;
}

bool is_stable(const preference_table& t, const matching& m) {
    check_fits(t, m);
    for (edge e : m.edges())
        if (!t.has_edge(e.first, e.second)) return false;
    return blocking_pairs(t, m).empty();
}

std::vector<matching> enumerate_matchings(const preference_table& t, int cap) {
    std::vector<matching> out;
    for_each_matching(t, cap, [&](const matching& m) { out.push_back(m); });
    return out;
}

std::vector<matching> stable_matchings_bruteforce(const preference_table& t, int cap) {
    std::vector<matching> out;
    for_each_matching(t, cap, [&](const matching& m) {
        if (blocking_pairs(t, m).empty()) out.push_back(m);
    });
    return out;
}

bool mutually_nonblocking(const preference_table& t, const matching& a, const matching& b) {
    check_fits(t, a);
    check_fits(t, b);
    for (edge e : a.edges())
        if (edge_blocks(t, e.first, e.second, b)) return false;
    for (edge e : b.edges())
        if (edge_blocks(t, e.first, e.second, a)) return false;
    return true;
}

bool is_internally_stable(const preference_table& t, const std::vector<matching>& set) {
    for (const matching& m : set) {
        check_fits(t, m);
        for (edge e : m.edges())
            if (!t.has_edge(e.first, e.second))
                throw precondition_error("set member uses an edge outside the table");
    }
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!mutually_nonblocking(t, set[i], set[j])) return false;
    return true;
}

namespace {

// enumerate matchings mutually nonblocking with every member of `set`;
// prunes on "new edge blocks a member" while extending agent by agent
void candidates_rec(const preference_table& t, const std::vector<matching>& set, agent a,
                    matching& cur, const std::function<void(const matching&)>& sink) {
    int n = t.agent_count();
    while (a < n && cur.matched(a)) ++a;
    if (a == n) {
        for (const matching& m : set)
            for (edge e : m.edges())
                if (edge_blocks(t, e.first, e.second, cur)) return;
        sink(cur);
        return;
    }
    candidates_rec(t, set, a + 1, cur, sink);
    for (agent b : t.row(a)) {
        if (b < a || cur.matched(b)) continue;
        bool ok = true;
        for (const matching& m : set)
            if (edge_blocks(t, a, b, m)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cur.match(a, b);
        candidates_rec(t, set, a + 1, cur, sink);
        cur.unmatch(a);
    }
}

}  // namespace

std::vector<matching> closure_candidates(const preference_table& t,
                                         const std::vector<matching>& set, int cap) {
    if (t.agent_count() > cap)
        throw cap_exceeded("table has " + std::to_string(t.agent_count()) +
                           " agents, above the brute-force cap of " + std::to_string(cap));
    if (!is_internally_stable(t, set))
        throw precondition_error("closure_candidates requires an internally stable set");
    std::set<matching> members(set.begin(), set.end());
    std::vector<matching> out;
    matching cur(t.agent_count());
    candidates_rec(t, set, 0, cur, [&](const matching& m) {
        if (!members.count(m)) out.push_back(m);
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool is_internally_closed_bruteforce(const preference_table& t, const std::vector<matching>& set,
                                     int cap) {
    if (t.agent_count() > cap)
        throw cap_exceeded("table has " + std::to_string(t.agent_count()) +
                           " agents, above the brute-force cap of " + std::to_string(cap));
    if (!is_internally_stable(t, set)) return false;
    std::set<matching> members(set.begin(), set.end());
    bool closed = true;
    matching cur(t.agent_count());
    candidates_rec(t, set, 0, cur, [&](const matching& m) {
        if (!members.count(m)) closed = false;
    });
    return closed;
}

bool is_vnm_stable_bruteforce(const preference_table& t, const std::vector<matching>& set,
                              int cap) {
    if (!is_internally_stable(t, set)) return false;
    std::set<matching> members(set.begin(), set.end());
    bool external = true;
    for_each_matching(t, cap, [&](const matching& m) {
        if (!external || members.count(m)) return;
        for (const matching& mem : set)
            for (edge e : mem.edges())
                if (edge_blocks(t, e.first, e.second, m)) return;
        external = false;  // unblocked outsider
    });
    return external;
}

std::vector<std::vector<matching>> all_vnm_sets_bruteforce(const preference_table& t, int cap) {
    std::vector<edge> es = t.edges();
    if (t.agent_count() > cap)
        throw cap_exceeded("table has " + std::to_string(t.agent_count()) +
                           " agents, above the brute-force cap of " + std::to_string(cap));
    if (es.size() > 24)
        throw cap_exceeded("table has " + std::to_string(es.size()) +
                           " edges, above the vNM sweep limit of 24");
    std::set<std::vector<matching>> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << es.size()); ++mask) {
        std::vector<edge> sub;
        for (std::size_t i = 0; i < es.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) sub.push_back(es[i]);
        preference_table sp = t.subtable_from_edges(sub);
        std::vector<matching> cand = stable_matchings_bruteforce(sp, cap);
        std::sort(cand.begin(), cand.end());
        if (found.count(cand)) continue;
        if (is_vnm_stable_bruteforce(t, cand, cap)) found.insert(cand);
    }
    return {found.begin(), found.end()};
}

symdiff_analysis analyze_symmetric_difference(const preference_table& t, const matching& a,
                                              const matching& b) {
    check_fits(t, a);
    check_fits(t, b);
    int n = t.agent_count();
    symdiff_analysis out;

    out.matched_sets_equal = true;
    for (agent x = 0; x < n; ++x)
        if (a.matched(x) != b.matched(x)) out.matched_sets_equal = false;

    // adjacency in a^b: at most one neighbour from each matching
    std::vector<std::vector<agent>> adj(n);
    for (agent x = 0; x < n; ++x) {
        agent pa = a.partner(x), pb = b.partner(x);
        if (pa != no_agent && pa != pb) adj[x].push_back(pa);
        if (pb != no_agent && pb != pa) adj[x].push_back(pb);
    }

    std::vector<bool> seen(n, false);
    out.cycles_all_even = true;
    for (agent start = 0; start < n; ++start) {
        if (seen[start] || adj[start].empty()) continue;
        // walk to an endpoint if this is a path
        agent head = start, prev = no_agent;
        int safety = 2 * n + 2;
        while (adj[head].size() == 2 && safety-- > 0) {
            agent next = adj[head][0] == prev ? adj[head][1] : adj[head][0];
            if (next == start) break;  // cycle closed
            prev = head;
            head = next;
        }
        bool is_cycle = adj[head].size() == 2;
        symdiff_component comp;
        comp.is_cycle = is_cycle;
        agent cur = head;
        prev = no_agent;
        while (cur != no_agent && !seen[cur]) {
            seen[cur] = true;
            comp.agents.push_back(cur);
            agent next = no_agent;
            for (agent nb : adj[cur])
                if (nb != prev && !seen[nb]) next = nb;
            prev = cur;
            cur = next;
        }
        if (is_cycle && comp.agents.size() % 2 != 0) out.cycles_all_even = false;
        out.components.push_back(std::move(comp));
    }

    std::set<edge> union_edges;
    for (edge e : a.edges()) union_edges.insert(e);
    for (edge e : b.edges()) union_edges.insert(e);
    for (edge e : union_edges) {
        auto lean = [&](agent z) {
            agent pa = a.partner(z), pb = b.partner(z);
            if (pa == pb) return 0;
            return t.prefers(z, pa, pb) ? 1 : -1;
        };
        int lu = lean(e.first), lv = lean(e.second);
        if (lu != 0 && lu == lv) out.irregular_edges.push_back(e);
    }
    sort_edges_by_name(t, out.irregular_edges);
    return out;
}

}  // namespace core
