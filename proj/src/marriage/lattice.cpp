#include "marriage/lattice.hpp"

#include <deque>
#include <vector>

using core::agent;
using core::matching;
using core::no_agent;
using core::preference_table;
using core::table_side;

namespace marriage {

matching deferred_acceptance(const preference_table& t, table_side optimal) {
    if (t.kind() != core::table_kind::marriage)
        throw core::precondition_error("deferred_acceptance needs a marriage table");

    int n = t.agent_count();
    matching m(n);
    std::vector<std::size_t> next(n, 0);  // next row slot each proposer will try
    std::deque<agent> free;
    for (agent a = 0; a < n; ++a)
        if (t.side(a) == optimal && !t.row(a).empty()) free.push_back(a);

    while (!free.empty()) {
        agent x = free.front();
        free.pop_front();
        if (m.matched(x)) continue;
        while (next[x] < t.row(x).size()) {
            agent y = t.row(x)[next[x]++];
            agent holder = m.partner(y);
            if (holder == no_agent) {
                m.match(x, y);
                break;
            }
            if (t.prefers(y, x, holder)) {
                m.unmatch(y);
                m.match(x, y);
                free.push_back(holder);
                break;
            }
        }
    }
    return m;
}

bool side_weakly_prefers(const preference_table& t, const matching& a, const matching& b,
                         table_side side) {
    for (agent z = 0; z < t.agent_count(); ++z) {
        if (t.side(z) != side) continue;
        if (t.rank(z, a.partner(z)) > t.rank(z, b.partner(z))) return false;
    }
    return true;
}

namespace {

matching pointwise(const preference_table& t, const matching& a, const matching& b, bool better) {
    if (t.kind() != core::table_kind::marriage)
        throw core::precondition_error("lattice operations need a marriage table");
    if (a.slot_count() != t.agent_count() || b.slot_count() != t.agent_count())
        throw core::precondition_error("matchings not over this table");

    matching out(t.agent_count());
    for (agent x = 0; x < t.agent_count(); ++x) {
        if (t.side(x) != table_side::left) continue;
        agent pa = a.partner(x);
        agent pb = b.partner(x);
        agent pick = (t.rank(x, pa) <= t.rank(x, pb)) == better ? pa : pb;
        if (pick == no_agent) continue;
        if (out.matched(pick))
            throw lattice_error("selection pairs " + t.name(out.partner(pick)) + " and " +
                                t.name(x) + " both with " + t.name(pick));
        out.match(x, pick);
    }
    return out;
}

}  // namespace

matching lattice_join(const preference_table& t, const matching& a, const matching& b) {
    return pointwise(t, a, b, true);
}

matching lattice_meet(const preference_table& t, const matching& a, const matching& b) {
    return pointwise(t, a, b, false);
}

}  // namespace marriage
