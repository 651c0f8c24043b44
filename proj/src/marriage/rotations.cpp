#include "marriage/rotations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "marriage/lattice.hpp"

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

void require_marriage(const preference_table& t) {
    if (t.kind() != core::table_kind::marriage)
        throw core::precondition_error("rotation machinery needs a marriage table");
}

std::vector<edge> sorted_edges(const preference_table& t) {
    std::vector<edge> es = t.edges();
    std::sort(es.begin(), es.end());
    return es;
}

}  // namespace

bool is_exposed(const preference_table& t, const matching& m, const rotation& rho) {
    int r = rho.length();
    if (r < 2) return false;
    if (m.slot_count() != t.agent_count()) return false;
    std::set<agent> fst, snd;
    for (auto [x, y] : rho.pairs) {
        if (x < 0 || y < 0 || x >= t.agent_count() || y >= t.agent_count()) return false;
        if (!fst.insert(x).second || !snd.insert(y).second) return false;
        if (m.partner(x) != y || !t.has_edge(x, y)) return false;
    }
    for (int i = 0; i < r; ++i) {
        auto [x, y] = rho.pairs[i];
        agent ynext = rho.pairs[(i + 1) % r].second;
        if (!t.has_edge(x, ynext)) return false;
        if (!t.prefers(x, y, ynext)) return false;                 // mover strictly worsens
        if (!t.prefers(ynext, x, m.partner(ynext))) return false;  // receiver strictly gains
    }
    return true;
}

std::vector<rotation> exposed_rotations(const preference_table& t, const matching& m,
                                        table_side side) {
    require_marriage(t);
    int n = t.agent_count();
    std::vector<agent> succ(n, no_agent);
    for (agent x = 0; x < n; ++x) {
        if (t.side(x) != side || !m.matched(x)) continue;
        const std::vector<agent>& row = t.row(x);
        for (std::size_t k = static_cast<std::size_t>(t.rank(x, m.partner(x))); k < row.size();
             ++k) {
            agent y = row[k];
            if (t.prefers(y, x, m.partner(y))) {
                if (m.matched(y)) succ[x] = m.partner(y);
                break;  // the first entry that would take x decides
            }
        }
    }

    // cycles of the successor map
    std::vector<rotation> out;
    std::vector<int> state(n, 0);  // 0 fresh, 1 on current walk, 2 done
    for (agent x = 0; x < n; ++x) {
        if (state[x] != 0 || succ[x] == no_agent) continue;
        std::vector<agent> walk;
        agent cur = x;
        while (cur != no_agent && state[cur] == 0) {
            state[cur] = 1;
            walk.push_back(cur);
            cur = succ[cur];
        }
        if (cur != no_agent && state[cur] == 1) {
            std::size_t at = 0;
            while (walk[at] != cur) ++at;
            rotation rho;
            for (std::size_t k = at; k < walk.size(); ++k)
                rho.pairs.push_back({walk[k], m.partner(walk[k])});
            out.push_back(rho.canonical(t));
        }
        for (agent z : walk) state[z] = 2;
    }
    std::sort(out.begin(), out.end(), [&](const rotation& a, const rotation& b) {
        return a.serialize(t) < b.serialize(t);
    });
    return out;
}

matching eliminate_rotation(const preference_table& t, const matching& m, const rotation& rho) {
    if (!is_exposed(t, m, rho))
        throw core::precondition_error("rotation is not exposed in the matching");
    matching out = m;
    for (auto [x, y] : rho.pairs) out.unmatch(x);
    int r = rho.length();
    for (int i = 0; i < r; ++i) out.match(rho.pairs[i].first, rho.pairs[(i + 1) % r].second);
    return out;
}

std::vector<rotation> all_rotations(const preference_table& t, table_side side) {
    require_marriage(t);
    matching m = deferred_acceptance(t, side);
    std::vector<rotation> out;
    while (true) {
        std::vector<rotation> exp = exposed_rotations(t, m, side);
        if (exp.empty()) break;
        m = eliminate_rotation(t, m, exp.front());
        out.push_back(exp.front());
    }
    if (!(m == deferred_acceptance(t, opposite(side))))
        throw std::logic_error("rotation walk missed the opposite optimum");
    return out;
}

std::vector<int> rotation_order::predecessors(int idx) const {
    std::vector<std::vector<int>> rev(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (int j : direct[i]) rev[j].push_back(static_cast<int>(i));
    std::vector<char> seen(elements.size(), 0);
    std::deque<int> queue{idx};
    seen[idx] = 1;
    std::vector<int> out;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int p : rev[cur])
            if (!seen[p]) {
                seen[p] = 1;
                out.push_back(p);
                queue.push_back(p);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int rotation_order::find(const preference_table& t, const rotation& rho) const {
    rotation canon = rho.canonical(t);
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == canon) return static_cast<int>(i);
    return -1;
}

rotation_order rotation_order_of(const preference_table& t) {
    rotation_order ord;
    ord.elements = all_rotations(t);
    int nrot = static_cast<int>(ord.elements.size());
    ord.direct.assign(nrot, {});

    std::map<std::pair<agent, agent>, int> moved_to;  // (mover, target) -> rotation
    for (int r = 0; r < nrot; ++r) {
        const auto& ps = ord.elements[r].pairs;
        for (std::size_t i = 0; i < ps.size(); ++i)
            moved_to[{ps[i].first, ps[(i + 1) % ps.size()].second}] = r;
    }
    // receiver trajectories: (old partner rank, new partner rank, rotation)
    std::vector<std::vector<std::tuple<int, int, int>>> lifts(t.agent_count());
    for (int r = 0; r < nrot; ++r) {
        const auto& ps = ord.elements[r].pairs;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            agent ynext = ps[(i + 1) % ps.size()].second;
            lifts[ynext].push_back(
                {t.rank(ynext, ps[(i + 1) % ps.size()].first), t.rank(ynext, ps[i].first), r});
        }
    }

    auto add_arc = [&](int a, int b) {
        if (a == b) throw std::logic_error("rotation precedence self-loop");
        ord.direct[a].push_back(b);
    };
    for (int r = 0; r < nrot; ++r) {
        const auto& ps = ord.elements[r].pairs;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            auto [x, y] = ps[i];
            agent ynext = ps[(i + 1) % ps.size()].second;
            // whoever delivered x to y runs first
            auto it = moved_to.find({x, y});
            if (it != moved_to.end()) add_arc(it->second, r);
            // every entry skipped on the way down must already be dead:
            // the rotation lifting its holder strictly past x runs first
            const std::vector<agent>& row = t.row(x);
            for (int k = t.rank(x, y); k < t.rank(x, ynext) - 1; ++k) {
                agent w = row[k];
                int rx = t.rank(w, x);
                for (auto [old_rank, new_rank, lifter] : lifts[w])
                    if (old_rank >= rx && new_rank < rx) {
                        add_arc(lifter, r);
                        break;
                    }
            }
        }
    }
    for (auto& v : ord.direct) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return ord;
}

std::vector<int> rotation_poset::predecessor_closure(int idx) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (before[i][idx]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<std::vector<int>> rotation_poset::closed_sets(std::size_t cap) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> in(elements.size(), 0);
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (out.size() >= cap) throw core::cap_exceeded("closed-set family larger than cap");
        out.push_back(cur);
        for (std::size_t i = start; i < elements.size(); ++i) {
            bool ready = true;
            for (std::size_t j = 0; j < elements.size(); ++j)
                if (before[j][i] && !in[j]) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            in[i] = 1;
            cur.push_back(static_cast<int>(i));
            self(self, i + 1);
            in[i] = 0;
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::string rotation_poset::serialize(const preference_table& t) const {
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i)
        out += "rho" + std::to_string(i) + ": " + elements[i].serialize(t) + "\n";
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (before[i][j])
                out += "rho" + std::to_string(i) + " < rho" + std::to_string(j) + "\n";
    return out;
}

rotation_poset rotation_poset_of(const preference_table& t) {
    rotation_order ord = rotation_order_of(t);
    rotation_poset p;
    p.elements = ord.elements;
    std::size_t n = p.elements.size();
    p.before.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        std::deque<int> queue(ord.direct[i].begin(), ord.direct[i].end());
        while (!queue.empty()) {
            int j = queue.front();
            queue.pop_front();
            if (p.before[i][j]) continue;
            p.before[i][j] = true;
            for (int k : ord.direct[j]) queue.push_back(k);
        }
        if (p.before[i][i]) throw std::logic_error("rotation precedence is cyclic");
    }
    return p;
}

preference_table stable_subtable(const preference_table& t) {
    require_marriage(t);
    std::set<edge> es;
    for (edge e : deferred_acceptance(t, table_side::right).edges()) es.insert(e);
    for (const rotation& rho : all_rotations(t))
        for (edge e : rho.pair_edges()) es.insert(e);
    return t.subtable_from_edges({es.begin(), es.end()});
}

bool is_stable_subtable(const preference_table& host, const preference_table& sub) {
    if (!core::is_subtable(sub, host)) return false;
    return sorted_edges(stable_subtable(sub)) == sorted_edges(sub);
}

rotation_digraph rotation_digraph_of(const preference_table& t, const matching& m,
                                     table_side side) {
    require_marriage(t);
    if (m.slot_count() != t.agent_count())
        throw core::precondition_error("matching not over this table");
    rotation_digraph d;
    d.side = side;
    int n = t.agent_count();
    d.out.assign(n, {});
    for (agent a = 0; a < n; ++a) {
        if (t.side(a) == side) {
            if (!m.matched(a)) continue;
            for (agent y : t.row(a)) {
                if (!t.prefers(a, m.partner(a), y)) continue;  // only settle downward
                if (!t.prefers(y, a, m.partner(y))) continue;  // target must gain
                d.out[a].push_back(y);
            }
        } else if (m.matched(a)) {
            d.out[a].push_back(m.partner(a));
        }
    }
    for (auto& v : d.out)
        std::sort(v.begin(), v.end(), [&](agent p, agent q) { return t.name(p) < t.name(q); });
    return d;
}

bool digraph_acyclic(const rotation_digraph& d) {
    std::size_t n = d.out.size();
    std::vector<int> indeg(n, 0);
    for (const auto& v : d.out)
        for (agent to : v) ++indeg[to];
    std::deque<agent> queue;
    for (std::size_t a = 0; a < n; ++a)
        if (indeg[a] == 0) queue.push_back(static_cast<agent>(a));
    std::size_t done = 0;
    while (!queue.empty()) {
        agent a = queue.front();
        queue.pop_front();
        ++done;
        for (agent to : d.out[a])
            if (--indeg[to] == 0) queue.push_back(to);
    }
    return done == n;
}

namespace {

// nodes lying in some strongly connected component with an arc inside it
std::vector<char> cyclic_nodes(const rotation_digraph& d) {
    int n = static_cast<int>(d.out.size());
    std::vector<std::vector<agent>> rev(n);
    for (agent a = 0; a < n; ++a)
        for (agent to : d.out[a]) rev[to].push_back(a);

    std::vector<int> finish;  // forward DFS finish order
    std::vector<char> seen(n, 0);
    for (agent s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<agent, std::size_t>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [a, k] = stack.back();
            if (k < d.out[a].size()) {
                agent to = d.out[a][k++];
                if (!seen[to]) {
                    seen[to] = 1;
                    stack.push_back({to, 0});
                }
            } else {
                finish.push_back(a);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] != -1) continue;
        std::vector<agent> stack{*it};
        comp[*it] = ncomp;
        while (!stack.empty()) {
            agent a = stack.back();
            stack.pop_back();
            for (agent to : rev[a])
                if (comp[to] == -1) {
                    comp[to] = ncomp;
                    stack.push_back(to);
                }
        }
        ++ncomp;
    }
    std::vector<int> size(ncomp, 0);
    for (agent a = 0; a < n; ++a) ++size[comp[a]];
    std::vector<char> cyc(n, 0);
    for (agent a = 0; a < n; ++a)
        if (size[comp[a]] > 1) cyc[a] = 1;  // no self-arcs: sides alternate
    return cyc;
}

rotation decode_cycle(const preference_table& t, const matching& m, table_side side,
                      const std::vector<agent>& nodes) {
    std::size_t start = 0;
    while (t.side(nodes[start]) != side) ++start;
    rotation rho;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        agent z = nodes[(start + k) % nodes.size()];
        if (t.side(z) == side) rho.pairs.push_back({z, m.partner(z)});
    }
    return rho.canonical(t);
}

// simple path from `from` to `to`, arcs explored in stored (name) order
std::vector<agent> dfs_path(const rotation_digraph& d, agent from, agent to,
                            const std::vector<char>* allowed) {
    std::vector<char> seen(d.out.size(), 0);
    std::vector<std::pair<agent, std::size_t>> stack{{from, 0}};
    seen[from] = 1;
    while (!stack.empty()) {
        auto& [a, k] = stack.back();
        if (k >= d.out[a].size()) {
            stack.pop_back();
            continue;
        }
        agent nxt = d.out[a][k++];
        if (nxt == to) {
            std::vector<agent> path;
            for (const auto& frame : stack) path.push_back(frame.first);
            path.push_back(to);
            return path;
        }
        if (seen[nxt] || (allowed && !(*allowed)[nxt])) continue;
        seen[nxt] = 1;
        stack.push_back({nxt, 0});
    }
    return {};
}

}  // namespace

std::optional<rotation> find_exposed_cycle(const preference_table& t, const matching& m,
                                           const rotation_digraph& d) {
    std::vector<char> cyc = cyclic_nodes(d);
    agent best = no_agent;
    for (agent a = 0; a < t.agent_count(); ++a)
        if (cyc[a] && (best == no_agent || t.name(a) < t.name(best))) best = a;
    if (best == no_agent) return std::nullopt;

    // walk back to `best` inside the cyclic kernel
    std::vector<agent> cycle{best};
    for (agent nxt : d.out[best]) {
        if (!cyc[nxt]) continue;
        std::vector<agent> path = dfs_path(d, nxt, best, &cyc);
        if (path.empty()) continue;
        cycle.insert(cycle.end(), path.begin(), path.end() - 1);
        return decode_cycle(t, m, d.side, cycle);
    }
    throw std::logic_error("kernel node lost its cycle");
}

std::optional<rotation> find_other_cycle(const preference_table& t, const matching& m,
                                         const rotation_digraph& d, const rotation& rho) {
    std::set<std::pair<agent, agent>> banned;
    int r = rho.length();
    for (int i = 0; i < r; ++i)
        banned.insert({rho.pairs[i].first, rho.pairs[(i + 1) % r].second});

    std::vector<agent> order(t.agent_count());
    for (agent a = 0; a < t.agent_count(); ++a) order[a] = a;
    std::sort(order.begin(), order.end(),
              [&](agent p, agent q) { return t.name(p) < t.name(q); });
    for (agent x : order) {
        if (t.side(x) != d.side) continue;
        for (agent y : d.out[x]) {
            if (banned.count({x, y})) continue;
            std::vector<agent> path = dfs_path(d, y, x, nullptr);
            if (path.empty()) continue;
            std::vector<agent> cycle{x};
            cycle.insert(cycle.end(), path.begin(), path.end() - 1);
            return decode_cycle(t, m, d.side, cycle);
        }
    }
    return std::nullopt;
}

}  // namespace marriage
