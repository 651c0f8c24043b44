#include "core/table.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "core/rotation.hpp"

namespace core {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
              c == '+'))
            return false;
    }
    return true;
}

struct row_spec {
    std::string name;
    std::vector<std::string> entries;
    table_side side = table_side::left;
    int line = 0;
};

}  // namespace

void preference_table::build_index() {
    index_.clear();
    for (agent a = 0; a < agent_count(); ++a) index_[names_[a]] = a;
    build_ranks();
}

void preference_table::build_ranks() {
    std::size_t n = names_.size();
    rank_.assign(n * n, absent_rank);
    for (agent a = 0; a < agent_count(); ++a) {
        int r = 1;
        for (agent b : rows_[a]) rank_[static_cast<std::size_t>(a) * n + b] = r++;
    }
}

agent preference_table::find(const std::string& nm) const {
    auto it = index_.find(nm);
    return it == index_.end() ? no_agent : it->second;
}

agent preference_table::require(const std::string& nm) const {
    agent a = find(nm);
    if (a == no_agent) throw precondition_error("unknown agent name: " + nm);
    return a;
}

preference_table preference_table::parse(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    bool kind_set = false;
    bool any_row = false;
    table_kind kind = table_kind::roommate;
    bool in_section = false;
    table_side section = table_side::left;
    std::vector<row_spec> specs;
    std::set<std::string> seen;

    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("#kind", 0) == 0) {
            if (kind_set) throw parse_error("duplicate #kind directive", line_no);
            if (any_row || in_section)
                throw parse_error("#kind must precede all rows and sections", line_no);
            std::vector<std::string> toks = split_ws(line.substr(5));
            if (toks.size() != 1) throw parse_error("malformed #kind directive", line_no);
            if (toks[0] == "roommate")
                kind = table_kind::roommate;
            else if (toks[0] == "marriage")
                kind = table_kind::marriage;
            else
                throw parse_error("unknown table kind: " + toks[0], line_no);
            kind_set = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (line == "[X]" || line == "[Y]") {
            if (kind != table_kind::marriage)
                throw parse_error("side sections are only valid in marriage tables", line_no);
            in_section = true;
            section = line == "[X]" ? table_side::left : table_side::right;
            continue;
        }
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw parse_error("expected 'name: entries...'", line_no);
        row_spec spec;
        spec.name = trim(line.substr(0, colon));
        spec.entries = split_ws(line.substr(colon + 1));
        spec.line = line_no;
        if (!valid_name(spec.name))
            throw parse_error("invalid agent name: '" + spec.name + "'", line_no);
        for (const std::string& e : spec.entries)
            if (!valid_name(e)) throw parse_error("invalid agent name: '" + e + "'", line_no);
        if (kind == table_kind::marriage) {
            if (!in_section) throw parse_error("marriage row outside [X]/[Y] section", line_no);
            spec.side = section;
        }
        if (!seen.insert(spec.name).second)
            throw parse_error("duplicate row for agent " + spec.name, line_no);
        specs.push_back(std::move(spec));
        any_row = true;
    }

    preference_table t;
    t.kind_ = kind;
    // marriage rows grouped left-then-right regardless of section interleaving
    std::vector<const row_spec*> ordered;
    for (const row_spec& s : specs)
        if (kind != table_kind::marriage || s.side == table_side::left) ordered.push_back(&s);
    if (kind == table_kind::marriage)
        for (const row_spec& s : specs)
            if (s.side == table_side::right) ordered.push_back(&s);

    for (const row_spec* s : ordered) {
        t.names_.push_back(s->name);
        t.sides_.push_back(s->side);
    }
    t.rows_.resize(t.names_.size());
    t.build_index();

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const row_spec& s = *ordered[i];
        agent a = static_cast<agent>(i);
        std::set<std::string> row_seen;
        for (const std::string& pname : s.entries) {
            agent b = t.find(pname);
            if (b == no_agent)
                throw parse_error("row of " + s.name + " lists unknown agent " + pname, s.line);
            if (b == a) throw parse_error(s.name + " lists itself", s.line);
            if (!row_seen.insert(pname).second)
                throw parse_error("row of " + s.name + " lists " + pname + " twice", s.line);
            if (kind == table_kind::marriage && t.sides_[a] == t.sides_[b])
                throw parse_error("row of " + s.name + " lists same-side agent " + pname, s.line);
            t.rows_[a].push_back(b);
        }
    }
    t.build_index();

    for (agent a = 0; a < t.agent_count(); ++a)
        for (agent b : t.rows_[a])
            if (!t.has_edge(b, a))
                throw parse_error("asymmetric pair: " + t.names_[a] + " lists " + t.names_[b] +
                                      " but not vice versa",
                                  0);
    return t;
}

preference_table preference_table::roommate_from_rows(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
    std::string text = "#kind roommate\n";
    for (const auto& [nm, entries] : rows) {
        text += nm + ":";
        for (const std::string& e : entries) text += " " + e;
        text += "\n";
    }
    return parse(text);
}

preference_table preference_table::marriage_from_rows(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& left_rows,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& right_rows) {
    std::string text = "#kind marriage\n[X]\n";
    for (const auto& [nm, entries] : left_rows) {
        text += nm + ":";
        for (const std::string& e : entries) text += " " + e;
        text += "\n";
    }
    text += "[Y]\n";
    for (const auto& [nm, entries] : right_rows) {
        text += nm + ":";
        for (const std::string& e : entries) text += " " + e;
        text += "\n";
    }
    return parse(text);
}

std::vector<edge> preference_table::edges() const {
    std::vector<edge> out;
    for (agent a = 0; a < agent_count(); ++a)
        for (agent b : rows_[a])
            if (a < b) out.push_back({a, b});
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t preference_table::edge_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total / 2;
}

std::string preference_table::serialize() const {
    std::string out;
    out += kind_ == table_kind::marriage ? "#kind marriage\n" : "#kind roommate\n";
    auto emit = [&](agent a) {
        out += names_[a];
        out += ":";
        for (agent b : rows_[a]) {
            out += " ";
            out += names_[b];
        }
        out += "\n";
    };
    if (kind_ == table_kind::marriage) {
        out += "[X]\n";
        for (agent a = 0; a < agent_count(); ++a)
            if (sides_[a] == table_side::left) emit(a);
        out += "[Y]\n";
        for (agent a = 0; a < agent_count(); ++a)
            if (sides_[a] == table_side::right) emit(a);
    } else {
        for (agent a = 0; a < agent_count(); ++a) emit(a);
    }
    return out;
}

preference_table preference_table::subtable_from_edges(const std::vector<edge>& es) const {
    std::vector<edge> keep;
    keep.reserve(es.size());
    for (edge e : es) {
        if (!has_edge(e.first, e.second))
            throw precondition_error("edge " + names_[e.first] + " " + names_[e.second] +
                                     " not present in host table");
        keep.push_back(make_edge(e.first, e.second));
    }
    std::sort(keep.begin(), keep.end());
    preference_table t;
    t.kind_ = kind_;
    t.names_ = names_;
    t.sides_ = sides_;
    t.index_ = index_;  // same universe, only the rows shrink
    t.rows_.resize(names_.size());
    for (agent a = 0; a < agent_count(); ++a)
        for (agent b : rows_[a])
            if (std::binary_search(keep.begin(), keep.end(), make_edge(a, b)))
                t.rows_[a].push_back(b);
    t.build_ranks();
    return t;
}

preference_table preference_table::without_agents(const std::vector<agent>& removed) const {
    std::vector<bool> gone(names_.size(), false);
    for (agent a : removed) gone[a] = true;
    preference_table t;
    t.kind_ = kind_;
    std::vector<agent> remap(names_.size(), no_agent);
    for (agent a = 0; a < agent_count(); ++a) {
        if (gone[a]) continue;
        remap[a] = static_cast<agent>(t.names_.size());
        t.names_.push_back(names_[a]);
        t.sides_.push_back(sides_[a]);
    }
    t.rows_.resize(t.names_.size());
    for (agent a = 0; a < agent_count(); ++a) {
        if (gone[a]) continue;
        for (agent b : rows_[a])
            if (!gone[b]) t.rows_[remap[a]].push_back(remap[b]);
    }
    t.build_index();
    return t;
}

bool is_subtable(const preference_table& small, const preference_table& big) {
    if (small.kind() != big.kind()) return false;
    for (agent a = 0; a < small.agent_count(); ++a) {
        agent ba = big.find(small.name(a));
        if (ba == no_agent) return false;
        if (small.kind() == table_kind::marriage && small.side(a) != big.side(ba)) return false;
        const auto& srow = small.row(a);
        const auto& brow = big.row(ba);
        std::size_t j = 0;
        for (agent sb : srow) {
            const std::string& want = small.name(sb);
            while (j < brow.size() && big.name(brow[j]) != want) ++j;
            if (j == brow.size()) return false;
            ++j;
        }
    }
    return true;
}

bool tables_equivalent(const preference_table& a, const preference_table& b) {
    if (a.kind() != b.kind() || a.agent_count() != b.agent_count()) return false;
    for (agent x = 0; x < a.agent_count(); ++x) {
        agent y = b.find(a.name(x));
        if (y == no_agent) return false;
        if (a.kind() == table_kind::marriage && a.side(x) != b.side(y)) return false;
        if (a.row(x).size() != b.row(y).size()) return false;
        for (std::size_t i = 0; i < a.row(x).size(); ++i)
            if (a.name(a.row(x)[i]) != b.name(b.row(y)[i])) return false;
    }
    return true;
}

bool same_universe(const preference_table& a, const preference_table& b) {
    if (a.kind() != b.kind() || a.agent_count() != b.agent_count()) return false;
    for (agent x = 0; x < a.agent_count(); ++x) {
        if (a.name(x) != b.name(x)) return false;
        if (a.kind() == table_kind::marriage && a.side(x) != b.side(x)) return false;
    }
    return true;
}

namespace {

std::vector<edge> edge_set_of_subtable(const preference_table& host, const preference_table& t,
                                       const char* what) {
    if (!same_universe(host, t) || !is_subtable(t, host))
        throw precondition_error(std::string(what) + " is not a subtable of the host");
    return t.edges();
}

}  // namespace

preference_table table_union(const preference_table& host, const preference_table& a,
                             const preference_table& b) {
    std::vector<edge> ea = edge_set_of_subtable(host, a, "first operand");
    std::vector<edge> eb = edge_set_of_subtable(host, b, "second operand");
    std::vector<edge> out;
    std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return host.subtable_from_edges(out);
}

preference_table table_intersection(const preference_table& host, const preference_table& a,
                                    const preference_table& b) {
    std::vector<edge> ea = edge_set_of_subtable(host, a, "first operand");
    std::vector<edge> eb = edge_set_of_subtable(host, b, "second operand");
    std::vector<edge> out;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return host.subtable_from_edges(out);
}

matching matching::from_edges(const preference_table& t, const std::vector<edge>& es) {
    matching m(t.agent_count());
    for (edge e : es) {
        if (!t.has_edge(e.first, e.second))
            throw precondition_error("matching edge " + t.name(e.first) + " " + t.name(e.second) +
                                     " not present in table");
        if (m.matched(e.first) || m.matched(e.second))
            throw precondition_error("agent matched twice in matching");
        m.match(e.first, e.second);
    }
    return m;
}

matching matching::parse(const preference_table& t, const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    std::vector<edge> es;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> toks = split_ws(line);
        if (toks.size() != 2) throw parse_error("expected 'name name' matching line", line_no);
        agent a = t.find(toks[0]);
        agent b = t.find(toks[1]);
        if (a == no_agent) throw parse_error("unknown agent name: " + toks[0], line_no);
        if (b == no_agent) throw parse_error("unknown agent name: " + toks[1], line_no);
        es.push_back(make_edge(a, b));
    }
    try {
        return from_edges(t, es);
    } catch (const precondition_error& e) {
        throw parse_error(e.what(), 0);
    }
}

std::vector<edge> matching::edges() const {
    std::vector<edge> out;
    for (agent a = 0; a < static_cast<agent>(partner_.size()); ++a)
        if (partner_[a] > a) out.push_back({a, partner_[a]});
    return out;
}

int matching::edge_count() const {
    int c = 0;
    for (agent a = 0; a < static_cast<agent>(partner_.size()); ++a)
        if (partner_[a] > a) ++c;
    return c;
}

std::string matching::serialize(const preference_table& t) const {
    std::vector<std::pair<std::string, std::string>> lines;
    for (edge e : edges()) {
        std::string na = t.name(e.first), nb = t.name(e.second);
        if (nb < na) std::swap(na, nb);
        lines.push_back({na, nb});
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& [a, b] : lines) out += a + " " + b + "\n";
    return out;
}

matching translate(const preference_table& from, const matching& m, const preference_table& to) {
    matching out(to.agent_count());
    for (edge e : m.edges()) out.match(to.require(from.name(e.first)), to.require(from.name(e.second)));
    return out;
}

std::vector<matching> parse_matching_set(const preference_table& t, const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    long declared = -1;
    std::vector<std::string> blocks;
    std::string current;
    bool in_body = false;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (declared < 0) {
            if (line.empty()) continue;
            if (line.rfind("# matchings:", 0) == 0) {
                try {
                    declared = std::stol(trim(line.substr(12)));
                } catch (const std::exception&) {
                    throw parse_error("malformed matching count", line_no);
                }
                if (declared < 0) throw parse_error("malformed matching count", line_no);
                if (declared > 0) in_body = true;
                continue;
            }
            throw parse_error("matching-set file must start with '# matchings: N'", line_no);
        }
        if (line == "---") {
            blocks.push_back(current);
            current.clear();
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (!in_body) throw parse_error("content after a zero-member matching set", line_no);
        current += line + "\n";
    }
    if (in_body) blocks.push_back(current);
    if (declared < 0) throw parse_error("matching-set file must start with '# matchings: N'", 0);
    if (static_cast<long>(blocks.size()) != declared)
        throw parse_error("matching-set declares " + std::to_string(declared) + " members but has " +
                              std::to_string(blocks.size()),
                          0);
    std::vector<matching> out;
    for (const std::string& b : blocks) out.push_back(matching::parse(t, b));
    return out;
}

std::string serialize_matching_set(const preference_table& t, const std::vector<matching>& ms) {
    std::string out = "# matchings: " + std::to_string(ms.size()) + "\n";
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i > 0) out += "---\n";
        out += ms[i].serialize(t);
    }
    return out;
}

preference_table matchings_union_table(const preference_table& t, const std::vector<matching>& ms) {
    std::set<edge> es;
    for (const matching& m : ms)
        for (edge e : m.edges()) es.insert(e);
    return t.subtable_from_edges({es.begin(), es.end()});
}

rotation rotation::canonical(const preference_table& t) const {
    if (pairs.empty()) return *this;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (t.name(pairs[i].first) < t.name(pairs[best].first)) best = i;
    rotation out;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out.pairs.push_back(pairs[(best + i) % pairs.size()]);
    return out;
}

rotation rotation::reversed() const {
    // Twin form seen from the other side: the movers' targets become the new
    // movers, paired with what they hold after the shift.  Applying it twice
    // gives back a cyclic shift of the original.
    rotation out;
    std::size_t r = pairs.size();
    for (std::size_t i = 0; i < r; ++i)
        out.pairs.push_back({pairs[(i + 1) % r].second, pairs[i].first});
    return out;
}

std::vector<edge> rotation::pair_edges() const {
    std::vector<edge> out;
    for (const auto& [x, y] : pairs) out.push_back(make_edge(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<edge> rotation::successor_edges() const {
    std::vector<edge> out;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out.push_back(make_edge(pairs[i].first, pairs[(i + 1) % pairs.size()].second));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<edge> rotation::all_edges() const {
    std::vector<edge> a = pair_edges(), b = successor_edges(), out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string rotation::serialize(const preference_table& t) const {
    std::string out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) out += ",";
        out += "(" + t.name(pairs[i].first) + "," + t.name(pairs[i].second) + ")";
    }
    return out;
}

rotation rotation::parse(const preference_table& t, const std::string& text) {
    rotation rho;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw parse_error("expected '(' in rotation text", 0);
        std::size_t comma = s.find(',', i);
        std::size_t close = s.find(')', i);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw parse_error("malformed rotation pair", 0);
        std::string xa = s.substr(i + 1, comma - i - 1);
        std::string ya = s.substr(comma + 1, close - comma - 1);
        rho.pairs.push_back({t.require(xa), t.require(ya)});
        i = close + 1;
        if (i < s.size()) {
            if (s[i] != ',') throw parse_error("expected ',' between rotation pairs", 0);
            ++i;
        }
    }
    if (rho.pairs.empty()) throw parse_error("empty rotation", 0);
    return rho;
}

}  // namespace core
