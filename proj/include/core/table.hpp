#pragma once

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace core {

using agent = int;
inline constexpr agent no_agent = -1;

// rank of someone not on the list: worse than any listed partner
inline constexpr int absent_rank = INT_MAX;

struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

enum class table_kind { roommate, marriage };
enum class table_side { left, right };  // marriage proposing side is "left"

// canonical edge: smaller agent id first
using edge = std::pair<agent, agent>;

inline edge make_edge(agent a, agent b) { return a < b ? edge{a, b} : edge{b, a}; }

// A preference table: a set of mutually-listed pairs plus, for every agent, a
// strict order over its listed partners.  Rows may be empty.  Marriage tables
// carry a bipartition and only cross-side pairs.
class preference_table {
  public:
    preference_table() = default;

    static preference_table parse(const std::string& text);
    static preference_table roommate_from_rows(
        const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);
    static preference_table marriage_from_rows(
        const std::vector<std::pair<std::string, std::vector<std::string>>>& left_rows,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& right_rows);

    table_kind kind() const { return kind_; }
    int agent_count() const { return static_cast<int>(rows_.size()); }
    const std::string& name(agent a) const { return names_[a]; }
    agent find(const std::string& nm) const;
    agent require(const std::string& nm) const;
    table_side side(agent a) const { return sides_[a]; }

    const std::vector<agent>& row(agent a) const { return rows_[a]; }
    int rank(agent a, agent b) const {
        return b == no_agent ? absent_rank : rank_[static_cast<std::size_t>(a) * names_.size() + b];
    }
    bool has_edge(agent a, agent b) const { return rank(a, b) != absent_rank; }
    // b strictly better than c in a's eyes (absent/no_agent ranks worst)
    bool prefers(agent a, agent b, agent c) const { return rank(a, b) < rank(a, c); }
    agent first(agent a) const { return rows_[a].empty() ? no_agent : rows_[a].front(); }
    agent second(agent a) const { return rows_[a].size() < 2 ? no_agent : rows_[a][1]; }
    agent last(agent a) const { return rows_[a].empty() ? no_agent : rows_[a].back(); }

    std::vector<edge> edges() const;
    std::size_t edge_count() const;
    std::string serialize() const;

    // same universe, rows filtered to the given edges (host order kept)
    preference_table subtable_from_edges(const std::vector<edge>& es) const;
    // smaller universe: listed agents removed from the name set and all rows
    preference_table without_agents(const std::vector<agent>& removed) const;

    bool operator==(const preference_table& other) const {
        return kind_ == other.kind_ && names_ == other.names_ && sides_ == other.sides_ &&
               rows_ == other.rows_;
    }

  private:
    void build_index();
    void build_ranks();

    table_kind kind_ = table_kind::roommate;
    std::vector<std::string> names_;
    std::vector<table_side> sides_;
    std::vector<std::vector<agent>> rows_;
    std::vector<int> rank_;  // n*n, 1-based position in row, absent_rank when unlisted
    std::unordered_map<std::string, agent> index_;
};

// name-based: every agent of `small` exists in `big` and each row of `small`
// is an order-preserving subsequence of the corresponding row of `big`
bool is_subtable(const preference_table& small, const preference_table& big);

// same kind, same name set, rows equal as name sequences (universe order may differ)
bool tables_equivalent(const preference_table& a, const preference_table& b);

bool same_universe(const preference_table& a, const preference_table& b);

// edge-set union/intersection of two subtables of host, materialized over host
preference_table table_union(const preference_table& host, const preference_table& a,
                             const preference_table& b);
preference_table table_intersection(const preference_table& host, const preference_table& a,
                                    const preference_table& b);

// A (possibly partial) matching over a table's universe.
class matching {
  public:
    matching() = default;
    explicit matching(int n) : partner_(n, no_agent) {}

    static matching from_edges(const preference_table& t, const std::vector<edge>& es);
    static matching parse(const preference_table& t, const std::string& text);

    std::string serialize(const preference_table& t) const;
    agent partner(agent a) const { return partner_[a]; }
    bool matched(agent a) const { return partner_[a] != no_agent; }
    void match(agent a, agent b) {
        partner_[a] = b;
        partner_[b] = a;
    }
    void unmatch(agent a) {
        if (partner_[a] != no_agent) {
            partner_[partner_[a]] = no_agent;
            partner_[a] = no_agent;
        }
    }
    std::vector<edge> edges() const;
    int edge_count() const;
    int slot_count() const { return static_cast<int>(partner_.size()); }
    bool empty() const { return edge_count() == 0; }

    auto operator<=>(const matching& other) const = default;

  private:
    std::vector<agent> partner_;
};

// maps a matching between universes by agent name; every matched agent of
// `from` must exist in `to`
matching translate(const preference_table& from, const matching& m, const preference_table& to);

// matching-set files: "# matchings: N" header, blocks of edge lines split by "---"
std::vector<matching> parse_matching_set(const preference_table& t, const std::string& text);
std::string serialize_matching_set(const preference_table& t, const std::vector<matching>& ms);

// union of the members' edges as a subtable of t
preference_table matchings_union_table(const preference_table& t, const std::vector<matching>& ms);

}  // namespace core
