#pragma once

// fixtures and deterministic random-instance generators shared by the suites

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/rotation.hpp"
#include "core/stability.hpp"
#include "core/table.hpp"

namespace helpers {

using core::matching;
using core::preference_table;
using core::rotation;

// --- canonical worked instances -------------------------------------------

// 4+4 marriage instance with a unique stable matching m1 and a second
// matching m2 that together form the interesting two-member closed set
struct quartet_instance {
    preference_table host;     // full table
    preference_table tstar;    // edges of m1 only
    preference_table tprime;   // edges of m1 and m2
    preference_table tsecond;  // tstar plus the edge "3 A"
    matching m1, m2;
    matching mixa, mixb;  // the two block-mixed stable matchings of tprime
};

inline quartet_instance make_quartet() {
    quartet_instance q;
    q.host = preference_table::marriage_from_rows(
        {{"1", {"A", "B"}}, {"2", {"B", "A"}}, {"3", {"C", "A", "D"}}, {"4", {"D", "C"}}},
        {{"A", {"3", "2", "1"}}, {"B", {"1", "2"}}, {"C", {"4", "3"}}, {"D", {"3", "4"}}});
    auto e = [&](const char* a, const char* b) {
        return core::make_edge(q.host.require(a), q.host.require(b));
    };
    q.m1 = matching::from_edges(q.host, {e("1", "A"), e("2", "B"), e("3", "C"), e("4", "D")});
    q.m2 = matching::from_edges(q.host, {e("1", "B"), e("2", "A"), e("3", "D"), e("4", "C")});
    q.mixa = matching::from_edges(q.host, {e("1", "A"), e("2", "B"), e("3", "D"), e("4", "C")});
    q.mixb = matching::from_edges(q.host, {e("1", "B"), e("2", "A"), e("3", "C"), e("4", "D")});
    q.tstar = q.host.subtable_from_edges(q.m1.edges());
    std::vector<core::edge> both = q.m1.edges();
    for (core::edge x : q.m2.edges()) both.push_back(x);
    q.tprime = q.host.subtable_from_edges(both);
    std::vector<core::edge> second = q.m1.edges();
    second.push_back(e("3", "A"));
    q.tsecond = q.host.subtable_from_edges(second);
    return q;
}

// 4+4 marriage instance whose reduced table exposes one long rotation that
// splits into two shorter ones inside the host
struct split_instance {
    preference_table host;
    preference_table tprime;  // host minus the edge x1 y1
    matching m0, m1, m2;
    rotation rho;   // (x1,y4),(x3,y3),(x2,y2),(x4,y1)
    rotation rho1;  // (x1,y4),(x4,y1)
    rotation rho2;  // (x1,y1),(x3,y3),(x2,y2)
};

inline split_instance make_split() {
    split_instance s;
    s.host = preference_table::marriage_from_rows(
        {{"x1", {"y4", "y1", "y3"}},
         {"x2", {"y2", "y1"}},
         {"x3", {"y3", "y2"}},
         {"x4", {"y1", "y4"}}},
        {{"y1", {"x2", "x1", "x4"}},
         {"y2", {"x3", "x2"}},
         {"y3", {"x1", "x3"}},
         {"y4", {"x4", "x1"}}});
    auto a = [&](const char* nm) { return s.host.require(nm); };
    auto e = [&](const char* x, const char* y) { return core::make_edge(a(x), a(y)); };
    std::vector<core::edge> pruned;
    for (core::edge x : s.host.edges())
        if (x != e("x1", "y1")) pruned.push_back(x);
    s.tprime = s.host.subtable_from_edges(pruned);
    s.m0 = matching::from_edges(s.host, {e("x1", "y4"), e("x2", "y2"), e("x3", "y3"), e("x4", "y1")});
    s.m1 = matching::from_edges(s.host, {e("x1", "y1"), e("x2", "y2"), e("x3", "y3"), e("x4", "y4")});
    s.m2 = matching::from_edges(s.host, {e("x1", "y3"), e("x2", "y1"), e("x3", "y2"), e("x4", "y4")});
    s.rho.pairs = {{a("x1"), a("y4")}, {a("x3"), a("y3")}, {a("x2"), a("y2")}, {a("x4"), a("y1")}};
    s.rho1.pairs = {{a("x1"), a("y4")}, {a("x4"), a("y1")}};
    s.rho2.pairs = {{a("x1"), a("y1")}, {a("x3"), a("y3")}, {a("x2"), a("y2")}};
    return s;
}

// 8-agent roommate instance with two stable matchings and four extra edges,
// all antipodal with respect to the union of the stable matchings
struct octet_instance {
    preference_table host;
    preference_table tstar;  // union of the two stable matchings
    preference_table t1;     // tstar plus edges x1x3 and x2x4
    matching m1, m2;
};

inline octet_instance make_octet() {
    octet_instance o;
    o.host = preference_table::roommate_from_rows({{"x1", {"x2", "x3"}},
                                                   {"x2", {"x4", "x1"}},
                                                   {"x3", {"x5", "x1", "x4"}},
                                                   {"x4", {"x3", "x6", "x2"}},
                                                   {"x5", {"x6", "x7", "x3"}},
                                                   {"x6", {"x4", "x8", "x5"}},
                                                   {"x7", {"x5", "x8"}},
                                                   {"x8", {"x7", "x6"}}});
    auto e = [&](const char* a, const char* b) {
        return core::make_edge(o.host.require(a), o.host.require(b));
    };
    o.m1 = matching::from_edges(o.host,
                                {e("x1", "x2"), e("x3", "x4"), e("x5", "x6"), e("x7", "x8")});
    o.m2 = matching::from_edges(o.host,
                                {e("x1", "x2"), e("x3", "x4"), e("x5", "x7"), e("x6", "x8")});
    std::vector<core::edge> star = o.m1.edges();
    for (core::edge x : o.m2.edges()) star.push_back(x);
    o.tstar = o.host.subtable_from_edges(star);
    std::vector<core::edge> one = star;
    one.push_back(e("x1", "x3"));
    one.push_back(e("x2", "x4"));
    o.t1 = o.host.subtable_from_edges(one);
    return o;
}

// 3-agent cyclic roommate instance: solvable matchings exist but none stable
inline preference_table make_trio() {
    return preference_table::roommate_from_rows(
        {{"x1", {"x2", "x3"}}, {"x2", {"x3", "x1"}}, {"x3", {"x1", "x2"}}});
}

// Latin-square marriage instance: x_i ranks y_{i+t} at position t while y_j
// ranks x_{j+1+t} at position t (indices mod n).  Every diagonal matching
// x_i -> y_{i+k} is stable, so the instance carries a long rotation chain.
inline preference_table cyclic_marriage(int n) {
    std::vector<std::pair<std::string, std::vector<std::string>>> left, right;
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> row;
        for (int t = 0; t < n; ++t) row.push_back("y" + std::to_string((i + t) % n));
        left.push_back({"x" + std::to_string(i), row});
    }
    for (int j = 0; j < n; ++j) {
        std::vector<std::string> row;
        for (int t = 0; t < n; ++t) row.push_back("x" + std::to_string((j + 1 + t) % n));
        right.push_back({"y" + std::to_string(j), row});
    }
    return preference_table::marriage_from_rows(left, right);
}

// the diagonal matching x_i -> y_{(i+k) mod n} of cyclic_marriage(n)
inline matching cyclic_diagonal(const preference_table& t, int n, int k) {
    std::vector<core::edge> es;
    for (int i = 0; i < n; ++i)
        es.push_back(core::make_edge(t.require("x" + std::to_string(i)),
                                     t.require("y" + std::to_string((i + k) % n))));
    return matching::from_edges(t, es);
}

// --- deterministic randomness ----------------------------------------------

inline std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

template <class T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rnd_below(rng, i)]);
}

inline bool rnd_chance(std::mt19937_64& rng, double p) {
    return (rng() >> 11) * 0x1.0p-53 < p;
}

inline preference_table random_roommate(std::mt19937_64& rng, int n, double density) {
    std::vector<std::vector<int>> partners(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rnd_chance(rng, density)) {
                partners[a].push_back(b);
                partners[b].push_back(a);
            }
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (int a = 0; a < n; ++a) {
        shuffle_vec(rng, partners[a]);
        std::vector<std::string> entries;
        for (int b : partners[a]) entries.push_back("a" + std::to_string(b));
        rows.push_back({"a" + std::to_string(a), entries});
    }
    return preference_table::roommate_from_rows(rows);
}

inline preference_table random_marriage(std::mt19937_64& rng, int nx, int ny, double density) {
    std::vector<std::vector<int>> xs(nx), ys(ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            if (rnd_chance(rng, density)) {
                xs[x].push_back(y);
                ys[y].push_back(x);
            }
    std::vector<std::pair<std::string, std::vector<std::string>>> left, right;
    for (int x = 0; x < nx; ++x) {
        shuffle_vec(rng, xs[x]);
        std::vector<std::string> entries;
        for (int y : xs[x]) entries.push_back("y" + std::to_string(y));
        left.push_back({"x" + std::to_string(x), entries});
    }
    for (int y = 0; y < ny; ++y) {
        shuffle_vec(rng, ys[y]);
        std::vector<std::string> entries;
        for (int x : ys[y]) entries.push_back("x" + std::to_string(x));
        right.push_back({"y" + std::to_string(y), entries});
    }
    return preference_table::marriage_from_rows(left, right);
}

// union of a random nonempty subset of the brute-force stable set; empty
// optional result when the instance has no stable matching
inline bool random_stable_union(std::mt19937_64& rng, const preference_table& host,
                                preference_table& out) {
    std::vector<matching> stable = core::stable_matchings_bruteforce(host, 24);
    if (stable.empty()) return false;
    std::vector<matching> picked;
    while (picked.empty())
        for (const matching& m : stable)
            if (rnd_chance(rng, 0.5)) picked.push_back(m);
    out = core::matchings_union_table(host, picked);
    return true;
}

// --- exhaustive 3-SAT corpus -------------------------------------------------

// literal code: variable index v in [0,3), sign bit; code = 2*v + (negated?1:0)
inline std::string literal_text(int code) {
    std::string s = code % 2 ? "-" : "";
    return s + std::to_string(code / 2 + 1);
}

// all multisets {l1 <= l2 <= l3} over the 6 literal codes; 56 clauses
inline std::vector<std::array<int, 3>> all_three_var_clauses() {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b)
            for (int c = b; c < 6; ++c) out.push_back({a, b, c});
    return out;
}

inline std::string dimacs_text(const std::vector<std::array<int, 3>>& clauses) {
    std::string out = "p cnf 3 " + std::to_string(clauses.size()) + "\n";
    for (const auto& cl : clauses) {
        for (int code : cl) out += literal_text(code) + " ";
        out += "0\n";
    }
    return out;
}

}  // namespace helpers
