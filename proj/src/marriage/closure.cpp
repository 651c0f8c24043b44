#include "marriage/closure.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "marriage/lattice.hpp"
#include "marriage/rotations.hpp"

using core::agent;
using core::edge;
using core::matching;
using core::no_agent;
using core::preference_table;
using core::rotation;
using core::table_side;

namespace marriage {

namespace {

table_side opposite(table_side s) {
    return s == table_side::left ? table_side::right : table_side::left;
}

preference_table grow(const preference_table& host, const preference_table& cur,
                      const std::vector<edge>& extra) {
    std::set<edge> es;
    for (edge e : cur.edges()) es.insert(e);
    for (edge e : extra) es.insert(e);
    return host.subtable_from_edges({es.begin(), es.end()});
}

}  // namespace

std::vector<rotation> dissect_rotation(const preference_table& host,
                                       const preference_table& t_prime, const rotation& rho,
                                       closure_stats* stats) {
    if (stats) ++stats->dissect_calls;
    if (!core::is_subtable(t_prime, host))
        throw core::precondition_error("not a subtable of the host");
    rotation_order ord = rotation_order_of(t_prime);
    int idx = ord.find(t_prime, rho);
    if (idx < 0) throw core::precondition_error("not a rotation of the subtable");
    rotation canon = ord.elements[idx];

    // the matching just above rho: everything forced before it is eliminated
    matching m0 = deferred_acceptance(t_prime, table_side::left);
    for (int p : ord.predecessors(idx)) m0 = eliminate_rotation(t_prime, m0, ord.elements[p]);
    matching mstar = eliminate_rotation(t_prime, m0, canon);

    // window: host edges both endpoints rank between their two ends of the move
    std::vector<edge> win;
    for (edge e : host.edges()) {
        agent x = host.side(e.first) == table_side::left ? e.first : e.second;
        agent y = x == e.first ? e.second : e.first;
        if (host.rank(x, m0.partner(x)) <= host.rank(x, y) &&
            host.rank(x, y) <= host.rank(x, mstar.partner(x)) &&
            host.rank(y, mstar.partner(y)) <= host.rank(y, x) &&
            host.rank(y, x) <= host.rank(y, m0.partner(y)))
            win.push_back(e);
    }
    preference_table window = host.subtable_from_edges(win);
    if (!is_exposed(window, m0, canon))
        throw std::logic_error("window lost the rotation it was built around");

    rotation_digraph d = rotation_digraph_of(window, m0, table_side::left);
    std::optional<rotation> other = find_other_cycle(window, m0, d, canon);
    if (!other) return {canon};  // rho's own cycle is the only one
    if (stats) ++stats->splits;

    std::vector<rotation> out{*other};
    matching m1 = eliminate_rotation(window, m0, *other);

    // the rest of rho's effect, read off the m1-vs-mstar alternating cycles
    std::vector<char> seen(host.agent_count(), 0);
    for (agent x = 0; x < host.agent_count(); ++x) {
        if (host.side(x) != table_side::left || seen[x]) continue;
        if (m1.partner(x) == mstar.partner(x)) continue;
        rotation piece;
        agent cur = x;
        while (cur != no_agent && !seen[cur]) {
            seen[cur] = 1;
            piece.pairs.push_back({cur, m1.partner(cur)});
            agent y = mstar.partner(cur);
            cur = y == no_agent ? no_agent : m1.partner(y);
        }
        if (cur != x) throw std::logic_error("replay difference is not a union of cycles");
        out.push_back(piece.canonical(host));
    }
    if (out.size() < 2) throw std::logic_error("split produced a single piece");

    // the pieces jointly replay rho
    matching replay = m1;
    for (std::size_t i = 1; i < out.size(); ++i)
        replay = eliminate_rotation(host, replay, out[i]);
    if (!(replay == mstar)) throw std::logic_error("dissection replay mismatch");
    return out;
}

preference_table dissect_all(const preference_table& host, preference_table t_prime,
                             std::vector<rotation> worklist, closure_stats* stats) {
    std::deque<rotation> queue(worklist.begin(), worklist.end());
    while (!queue.empty()) {
        rotation rho = queue.front();
        queue.pop_front();
        std::vector<rotation> out = dissect_rotation(host, t_prime, rho, stats);
        if (out.size() < 2) continue;
        std::size_t had = t_prime.edge_count();
        std::vector<edge> extra;
        for (const rotation& r : out)
            for (edge e : r.all_edges()) extra.push_back(e);
        t_prime = grow(host, t_prime, extra);
        if (t_prime.edge_count() == had) throw std::logic_error("dissection made no progress");
        for (const rotation& r : out) queue.push_back(r);
    }
    return t_prime;
}

preference_table internal_closure(const preference_table& host, const preference_table& t0,
                                  closure_stats* stats) {
    if (!is_stable_subtable(host, t0))
        throw core::precondition_error("starting table is not a stable subtable of the host");
    preference_table cur = dissect_all(host, t0, all_rotations(t0), stats);
    bool changed = true;
    while (changed) {
        changed = false;
        if (stats) ++stats->passes;
        for (table_side z : {table_side::left, table_side::right}) {
            while (true) {
                matching m = deferred_acceptance(cur, opposite(z));
                rotation_digraph d = rotation_digraph_of(host, m, z);
                std::optional<rotation> cyc = find_exposed_cycle(host, m, d);
                if (!cyc) break;
                if (stats) ++stats->absorbed_cycles;
                cur = grow(host, cur, cyc->all_edges());
                rotation xform = z == table_side::left ? *cyc : cyc->reversed();
                cur = dissect_all(host, cur, {xform.canonical(host)}, stats);
                changed = true;
            }
        }
    }
    return cur;
}

bool check_internally_closed(const preference_table& host, const preference_table& t_tilde) {
    if (!is_stable_subtable(host, t_tilde))
        throw core::precondition_error("candidate is not a stable subtable of the host");
    if (!digraph_acyclic(rotation_digraph_of(host, deferred_acceptance(t_tilde, table_side::right),
                                             table_side::left)))
        return false;
    if (!digraph_acyclic(rotation_digraph_of(host, deferred_acceptance(t_tilde, table_side::left),
                                             table_side::right)))
        return false;
    for (const rotation& rho : all_rotations(t_tilde))
        if (dissect_rotation(host, t_tilde, rho).size() != 1) return false;
    return true;
}

}  // namespace marriage
