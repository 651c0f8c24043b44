#include "roommate/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "roommate/irving.hpp"

namespace roommate {

using core::agent;
using core::matching;
using core::preference_table;
using core::rotation;

namespace {

struct walk_result {
    std::vector<matching> matchings;   // one per all-singleton table reached
    std::vector<rotation> rotations;   // canonical, discovery order, deduped
};

// Depth-first over every elimination order starting from t0; rows empty in t0
// belong to agents dropped by phase 1 and are carried along untouched.  Every
// reachable table holds a subset of t0's edges, so states are memoized as edge
// bitmasks and a child table is only materialized the first time its mask
// shows up.
walk_result explore(const preference_table& t0, std::uint64_t cap) {
    walk_result out;
    const int v = t0.agent_count();
    const std::vector<core::edge> base_edges = t0.edges();
    const int ne = static_cast<int>(base_edges.size());
    const int words = ne == 0 ? 1 : (ne + 63) / 64;

    std::vector<int> edge_slot(static_cast<std::size_t>(v) * v, -1);
    for (int i = 0; i < ne; ++i)
        edge_slot[static_cast<std::size_t>(base_edges[i].first) * v + base_edges[i].second] = i;
    const auto slot_of = [&](agent a, agent b) {
        if (a > b) std::swap(a, b);
        return edge_slot[static_cast<std::size_t>(a) * v + b];
    };

    using bitmask = std::vector<std::uint64_t>;
    const auto key_of = [&](const bitmask& b) {
        return std::string(reinterpret_cast<const char*>(b.data()), b.size() * sizeof(b[0]));
    };

    std::unordered_set<std::string> seen;
    std::set<std::vector<std::pair<agent, agent>>> known_rotation;  // canonical pair lists
    const std::vector<agent> order = name_sorted_agents(t0);

    bitmask root(words, 0);
    for (int i = 0; i < ne; ++i) root[i >> 6] |= std::uint64_t{1} << (i & 63);
    seen.insert(key_of(root));

    auto visit = [&](auto&& self, const preference_table& cur, const bitmask& held) -> void {
        if (seen.size() > cap)
            throw core::cap_exceeded("elimination walk visited more than " + std::to_string(cap) +
                                     " tables");
        bool grown = false, died = false;
        for (agent a = 0; a < cur.agent_count(); ++a) {
            if (cur.row(a).size() > 1) grown = true;
            if (cur.row(a).empty() && !t0.row(a).empty()) died = true;
        }
        if (died) return;  // this order ran out of entries: no matching here
        if (!grown) {
            matching m(cur.agent_count());
            for (agent a = 0; a < cur.agent_count(); ++a) {
                if (cur.row(a).empty() || m.matched(a)) continue;
                const agent b = cur.first(a);
                if (cur.first(b) != a) throw std::logic_error("singleton rows disagree");
                m.match(a, b);
            }
            out.matchings.push_back(m);
            return;
        }
        const auto exposed = exposed_rotations(cur, order);
        for (const auto& rho : exposed)
            if (known_rotation.insert(rho.pairs).second) out.rotations.push_back(rho);
        for (const auto& rho : exposed) {
            // elimination cuts each y's row right below the previous x; those
            // entries are a suffix of the row
            bitmask child = held;
            const int r = rho.length();
            for (int i = 0; i < r; ++i) {
                const agent y = rho.pairs[i].second;
                const agent keeper = rho.pairs[(i + r - 1) % r].first;
                const auto& row = cur.row(y);
                for (auto it = row.rbegin(); it != row.rend(); ++it) {
                    if (!cur.prefers(y, keeper, *it)) break;
                    const int s = slot_of(y, *it);
                    child[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
                }
            }
            if (!seen.insert(key_of(child)).second) continue;
            std::vector<core::edge> kept;
            for (agent a = 0; a < cur.agent_count(); ++a)
                for (agent b : cur.row(a))
                    if (a < b) {
                        const int s = slot_of(a, b);
                        if (child[s >> 6] & (std::uint64_t{1} << (s & 63)))
                            kept.push_back({a, b});
                    }
            self(self, cur.subtable_from_edges(kept), child);
        }
    };
    visit(visit, t0, root);
    return out;
}

rotation_catalog build_catalog(std::vector<rotation>&& rotations, const preference_table& t) {
    rotation_catalog cat;
    cat.all = std::move(rotations);
    std::sort(cat.all.begin(), cat.all.end(), [&](const rotation& a, const rotation& b) {
        return a.serialize(t) < b.serialize(t);
    });
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(cat.all.size()); ++i) index[cat.all[i].serialize(t)] = i;
    cat.dual.assign(cat.all.size(), -1);
    for (int i = 0; i < static_cast<int>(cat.all.size()); ++i) {
        const auto it = index.find(cat.all[i].reversed().canonical(t).serialize(t));
        if (it != index.end()) cat.dual[i] = it->second;
    }
    return cat;
}

}  // namespace

std::vector<int> rotation_catalog::singular() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(dual.size()); ++i)
        if (dual[i] < 0) out.push_back(i);
    return out;
}

std::vector<int> rotation_catalog::nonsingular() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(dual.size()); ++i)
        if (dual[i] >= 0) out.push_back(i);
    return out;
}

std::vector<matching> enumerate_stable_matchings(const preference_table& t, std::uint64_t cap) {
    auto walked = explore(phase1_table(t), cap);
    std::sort(walked.matchings.begin(), walked.matchings.end());
    return walked.matchings;
}

rotation_catalog classify_rotations(const preference_table& t, std::uint64_t cap) {
    auto walked = explore(phase1_table(t), cap);
    if (walked.matchings.empty())
        throw unsolvable_error("table has no stable matching; rotations are undefined");
    return build_catalog(std::move(walked.rotations), t);
}

stable_analysis analyze_table(const preference_table& t, std::uint64_t cap) {
    auto walked = explore(phase1_table(t), cap);
    if (walked.matchings.empty())
        throw unsolvable_error("table has no stable matching; rotations are undefined");
    stable_analysis out;
    std::sort(walked.matchings.begin(), walked.matchings.end());
    out.matchings = std::move(walked.matchings);
    out.catalog = build_catalog(std::move(walked.rotations), t);
    return out;
}

preference_table stable_subtable_roommate(const preference_table& t, std::uint64_t cap) {
    // the union of the stable matchings themselves; reading the edges off the
    // rotation catalog instead is tempting but wrong (an edge can enter every
    // stable matching as the successor edge of a rotation without a partner)
    auto walked = explore(phase1_table(t), cap);
    if (walked.matchings.empty())
        throw unsolvable_error("table has no stable matching; the stable subtable is undefined");
    return core::matchings_union_table(t, walked.matchings);
}

}  // namespace roommate
