#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/rotation.hpp"
#include "core/stability.hpp"
#include "core/table.hpp"
#include "helpers.hpp"

using namespace core;
using helpers::make_octet;
using helpers::make_quartet;
using helpers::make_split;
using helpers::make_trio;

namespace {

std::vector<matching> sorted(std::vector<matching> ms) {
    std::sort(ms.begin(), ms.end());
    return ms;
}

std::string edge_names(const preference_table& t, const std::vector<edge>& es) {
    std::string out;
    for (edge e : es) {
        std::string a = t.name(e.first), b = t.name(e.second);
        if (b < a) std::swap(a, b);
        out += a + "-" + b + " ";
    }
    return out;
}

// independent matching enumeration: scan all edge subsets
std::vector<matching> matchings_by_subset_scan(const preference_table& t) {
    std::vector<edge> es = t.edges();
    REQUIRE(es.size() <= 20);
    std::vector<matching> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << es.size()); ++mask) {
        std::vector<int> used(t.agent_count(), 0);
        bool ok = true;
        std::vector<edge> sub;
        for (std::size_t i = 0; i < es.size() && ok; ++i) {
            if (!(mask & (std::uint64_t{1} << i))) continue;
            if (used[es[i].first]++ || used[es[i].second]++) ok = false;
            sub.push_back(es[i]);
        }
        if (ok) out.push_back(matching::from_edges(t, sub));
    }
    return sorted(out);
}

}  // namespace

TEST_CASE("roommate parse and canonical serialization round-trip") {
    std::string text =
        "# a comment\n"
        "\n"
        "x1: x2 x3\n"
        "x2:  x1\n"
        "x3: x1\n";
    preference_table t = preference_table::parse(text);
    CHECK(t.kind() == table_kind::roommate);
    CHECK(t.agent_count() == 3);
    CHECK(t.serialize() == "#kind roommate\nx1: x2 x3\nx2: x1\nx3: x1\n");
    preference_table again = preference_table::parse(t.serialize());
    CHECK(again == t);
}

TEST_CASE("marriage parse requires sections and opposite sides") {
    std::string text =
        "#kind marriage\n"
        "[X]\n"
        "1: A\n"
        "[Y]\n"
        "A: 1\n";
    preference_table t = preference_table::parse(text);
    CHECK(t.kind() == table_kind::marriage);
    CHECK(t.side(t.require("1")) == table_side::left);
    CHECK(t.side(t.require("A")) == table_side::right);
    CHECK(t.serialize() == "#kind marriage\n[X]\n1: A\n[Y]\nA: 1\n");

    CHECK_THROWS_AS(preference_table::parse("#kind marriage\n1: A\nA: 1\n"), parse_error);
    CHECK_THROWS_AS(
        preference_table::parse("#kind marriage\n[X]\n1: A 2\n2:\n[Y]\nA: 1\n"), parse_error);
    CHECK_THROWS_AS(preference_table::parse("[X]\na: b\n"), parse_error);
}

TEST_CASE("parse rejects malformed tables with line information") {
    try {
        preference_table::parse("a: b\nb: a\nbogus line\n");
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(preference_table::parse("a: b\n"), parse_error);            // asymmetric
    CHECK_THROWS_AS(preference_table::parse("a: a\n"), parse_error);            // self
    CHECK_THROWS_AS(preference_table::parse("a: b b\nb: a\n"), parse_error);    // duplicate entry
    CHECK_THROWS_AS(preference_table::parse("a: b\na: b\nb: a\n"), parse_error);  // duplicate row
    CHECK_THROWS_AS(preference_table::parse("a: c\n"), parse_error);            // unknown agent
    CHECK_THROWS_AS(preference_table::parse("#kind widget\na:\n"), parse_error);
}

TEST_CASE("rank helpers treat unlisted partners as worst") {
    auto q = make_quartet();
    agent x3 = q.host.require("3");
    CHECK(q.host.rank(x3, q.host.require("C")) == 1);
    CHECK(q.host.rank(x3, q.host.require("A")) == 2);
    CHECK(q.host.rank(x3, q.host.require("D")) == 3);
    CHECK(q.host.rank(x3, q.host.require("B")) == absent_rank);
    CHECK(q.host.rank(x3, no_agent) == absent_rank);
    CHECK(q.host.prefers(x3, q.host.require("C"), q.host.require("A")));
    CHECK(q.host.prefers(x3, q.host.require("D"), no_agent));
    CHECK_FALSE(q.host.prefers(x3, no_agent, q.host.require("D")));
    CHECK(q.host.first(x3) == q.host.require("C"));
    CHECK(q.host.second(x3) == q.host.require("A"));
    CHECK(q.host.last(x3) == q.host.require("D"));
    preference_table empty_row = preference_table::parse("a:\nb:\n");
    CHECK(empty_row.first(0) == no_agent);
    CHECK(empty_row.last(0) == no_agent);
    CHECK(empty_row.second(0) == no_agent);
}

TEST_CASE("subtable construction keeps host order and universe") {
    auto q = make_quartet();
    CHECK(q.tprime.agent_count() == q.host.agent_count());
    CHECK(is_subtable(q.tprime, q.host));
    CHECK(is_subtable(q.tstar, q.tprime));
    CHECK_FALSE(is_subtable(q.host, q.tprime));
    agent a = q.host.require("A");
    // A's host row is 3 2 1; tprime keeps 2 and 1 in that order
    REQUIRE(q.tprime.row(a).size() == 2);
    CHECK(q.tprime.name(q.tprime.row(a)[0]) == "2");
    CHECK(q.tprime.name(q.tprime.row(a)[1]) == "1");
    CHECK_THROWS_AS(q.tstar.subtable_from_edges(
                        {core::make_edge(q.host.require("3"), q.host.require("A"))}),
                    precondition_error);
}

TEST_CASE("without_agents drops rows and occurrences") {
    preference_table t = preference_table::parse("a: b c\nb: a\nc: a d\nd: c\n");
    preference_table r = t.without_agents({t.require("d")});
    CHECK(r.agent_count() == 3);
    CHECK(r.find("d") == no_agent);
    CHECK(r.row(r.require("c")).size() == 1);
    CHECK(r.name(r.row(r.require("c"))[0]) == "a");
}

TEST_CASE("union and intersection of subtables") {
    auto q = make_quartet();
    preference_table m2t = q.host.subtable_from_edges(q.m2.edges());
    CHECK(table_union(q.host, q.tstar, m2t) == q.tprime);
    CHECK(table_intersection(q.host, q.tprime, q.tstar) == q.tstar);
    CHECK(tables_equivalent(q.tprime, q.tprime));
    CHECK_FALSE(tables_equivalent(q.tprime, q.tstar));
}

TEST_CASE("matching parse, serialize and translate") {
    auto q = make_quartet();
    std::string text = q.m1.serialize(q.host);
    CHECK(text == "1 A\n2 B\n3 C\n4 D\n");
    CHECK(matching::parse(q.host, text) == q.m1);
    CHECK_THROWS_AS(matching::parse(q.host, "1 A\n2 A\n"), parse_error);
    CHECK_THROWS_AS(matching::parse(q.host, "1 C\n"), parse_error);  // not an edge
    matching inside = matching::parse(q.tprime, "1 A\n");
    CHECK(translate(q.tprime, inside, q.host) == matching::parse(q.host, "1 A\n"));
}

TEST_CASE("matching sets round-trip and distinguish empty set from empty member") {
    auto q = make_quartet();
    matching none(q.host.agent_count());
    std::vector<matching> just_empty = {none};
    std::string a = serialize_matching_set(q.host, {});
    std::string b = serialize_matching_set(q.host, just_empty);
    CHECK(a != b);
    CHECK(parse_matching_set(q.host, a).empty());
    CHECK(parse_matching_set(q.host, b) == just_empty);
    std::vector<matching> both = {q.m1, q.m2};
    CHECK(parse_matching_set(q.host, serialize_matching_set(q.host, both)) == both);
    CHECK_THROWS_AS(parse_matching_set(q.host, "1 A\n"), parse_error);
}

TEST_CASE("blocking pairs on the quartet instance") {
    auto q = make_quartet();
    CHECK(blocking_pairs(q.host, q.m1).empty());
    std::vector<edge> bp = blocking_pairs(q.host, q.m2);
    REQUIRE(bp.size() == 1);
    CHECK(edge_names(q.host, bp) == "3-A ");
    CHECK(is_stable(q.host, q.m1));
    CHECK_FALSE(is_stable(q.host, q.m2));
    CHECK(is_stable(q.tprime, q.m2));
}

TEST_CASE("blocking pairs on the cyclic trio") {
    preference_table t = make_trio();
    matching m = matching::parse(t, "x1 x2\n");
    std::vector<edge> bp = blocking_pairs(t, m);
    REQUIRE(bp.size() == 1);
    CHECK(edge_names(t, bp) == "x2-x3 ");
    matching none(t.agent_count());
    CHECK(blocking_pairs(t, none).size() == 3);
}

TEST_CASE("matching enumeration agrees with subset scan") {
    preference_table trio = make_trio();
    std::vector<matching> all = enumerate_matchings(trio);
    CHECK(all.size() == 4);  // empty plus three single edges
    CHECK(sorted(all) == matchings_by_subset_scan(trio));

    auto q = make_quartet();
    CHECK(sorted(enumerate_matchings(q.host)) == matchings_by_subset_scan(q.host));

    std::mt19937_64 rng(12345);
    for (int it = 0; it < 25; ++it) {
        preference_table t = helpers::random_roommate(rng, 7, 0.5);
        if (t.edges().size() > 16) continue;
        CHECK(sorted(enumerate_matchings(t)) == matchings_by_subset_scan(t));
        preference_table m = helpers::random_marriage(rng, 4, 4, 0.6);
        CHECK(sorted(enumerate_matchings(m)) == matchings_by_subset_scan(m));
    }
}

TEST_CASE("enumeration refuses tables above the cap") {
    std::mt19937_64 rng(7);
    preference_table big = helpers::random_roommate(rng, 21, 0.2);
    CHECK_THROWS_AS(enumerate_matchings(big), cap_exceeded);
    CHECK_THROWS_AS(enumerate_matchings(big, 20), cap_exceeded);
    preference_table ok = helpers::random_roommate(rng, 6, 0.5);
    CHECK_NOTHROW(enumerate_matchings(ok, 6));
}

TEST_CASE("brute-force stable sets of the worked instances") {
    auto q = make_quartet();
    CHECK(sorted(stable_matchings_bruteforce(q.host)) == sorted({q.m1, q.mixb}));
    CHECK(stable_matchings_bruteforce(q.tstar) == std::vector<matching>{q.m1});
    // tprime decomposes into the independent blocks {1,2,A,B} and {3,4,C,D},
    // each with two stable configurations
    CHECK(sorted(stable_matchings_bruteforce(q.tprime)) ==
          sorted({q.m1, q.m2, q.mixa, q.mixb}));
    CHECK(stable_matchings_bruteforce(q.tsecond) == std::vector<matching>{q.m1});
    CHECK(stable_matchings_bruteforce(make_trio()).empty());
    auto o = make_octet();
    CHECK(sorted(stable_matchings_bruteforce(o.host)) == sorted({o.m1, o.m2}));
    CHECK(sorted(stable_matchings_bruteforce(o.tstar)) == sorted({o.m1, o.m2}));
}

TEST_CASE("internal stability and closedness by brute force") {
    auto q = make_quartet();
    CHECK(is_internally_stable(q.host, {q.m1, q.m2}));
    CHECK(mutually_nonblocking(q.host, q.m1, q.m2));
    CHECK_FALSE(is_internally_closed_bruteforce(q.host, {q.m1}));
    CHECK(sorted(closure_candidates(q.host, {q.m1})) == sorted({q.m2, q.mixa, q.mixb}));
    // {m1, m2} admits the block-mixed outsiders, so it is not maximal
    CHECK_FALSE(is_internally_closed_bruteforce(q.host, {q.m1, q.m2}));
    CHECK_FALSE(is_internally_closed_bruteforce(q.host, {q.m1, q.mixb}));
    CHECK(is_internally_closed_bruteforce(q.host, {q.m1, q.m2, q.mixa, q.mixb}));

    preference_table trio = make_trio();
    matching none(trio.agent_count());
    CHECK(is_internally_closed_bruteforce(trio, {none}));
    CHECK_FALSE(is_vnm_stable_bruteforce(trio, {none}));
}

TEST_CASE("vNM sweep finds exactly the known stable sets") {
    auto q = make_quartet();
    std::vector<std::vector<matching>> sets = all_vnm_sets_bruteforce(q.host);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0] == sorted({q.m1, q.m2, q.mixa, q.mixb}));
    CHECK(is_vnm_stable_bruteforce(q.host, {q.m1, q.m2, q.mixa, q.mixb}));
    // {m1, m2} leaves mixb unblocked, so external stability fails
    CHECK_FALSE(is_vnm_stable_bruteforce(q.host, {q.m1, q.m2}));
    CHECK_FALSE(is_vnm_stable_bruteforce(q.host, {q.m1}));

    CHECK(all_vnm_sets_bruteforce(make_trio()).empty());
}

TEST_CASE("symmetric difference of the two quartet matchings") {
    auto q = make_quartet();
    symdiff_analysis an = analyze_symmetric_difference(q.host, q.m1, q.m2);
    CHECK(an.matched_sets_equal);
    CHECK(an.cycles_all_even);
    CHECK(an.irregular_edges.empty());
    REQUIRE(an.components.size() == 2);
    for (const auto& c : an.components) {
        CHECK(c.is_cycle);
        CHECK(c.agents.size() == 4);
    }
}

TEST_CASE("mutually nonblocking matchings decompose into singletons and even cycles") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        preference_table t = it % 2 ? helpers::random_roommate(rng, 8, 0.5)
                                    : helpers::random_marriage(rng, 4, 4, 0.7);
        std::vector<matching> all = enumerate_matchings(t);
        if (all.size() > 400) continue;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                if (!mutually_nonblocking(t, all[i], all[j])) continue;
                symdiff_analysis an = analyze_symmetric_difference(t, all[i], all[j]);
                ++checked;
                CHECK(an.matched_sets_equal);
                CHECK(an.cycles_all_even);
                CHECK(an.irregular_edges.empty());
                for (const auto& c : an.components) {
                    CHECK(c.is_cycle);
                    CHECK(c.agents.size() >= 4);
                }
            }
    }
    CHECK(checked >= 20);
}

TEST_CASE("rotation text round-trips and canonicalization") {
    auto s = make_split();
    CHECK(s.rho.serialize(s.host) == "(x1,y4),(x3,y3),(x2,y2),(x4,y1)");
    CHECK(rotation::parse(s.host, "(x1,y4),(x3,y3),(x2,y2),(x4,y1)") == s.rho);
    rotation shifted;
    shifted.pairs = {s.rho.pairs[2], s.rho.pairs[3], s.rho.pairs[0], s.rho.pairs[1]};
    CHECK(shifted.canonical(s.host) == s.rho);
    // double reversal returns a cyclic shift of the original
    CHECK(s.rho.reversed().reversed().canonical(s.host) == s.rho);
    CHECK(s.rho1.reversed().serialize(s.host) == "(y1,x1),(y4,x4)");
    std::vector<edge> all = s.rho1.all_edges();
    CHECK(all.size() == 4);
    CHECK_THROWS_AS(rotation::parse(s.host, "(x1 y4)"), parse_error);
}

TEST_CASE("union table of a matching family") {
    auto q = make_quartet();
    CHECK(matchings_union_table(q.host, {q.m1, q.m2}) == q.tprime);
    CHECK(matchings_union_table(q.host, {q.m1}) == q.tstar);
}
