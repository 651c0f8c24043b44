#include "reduction/gadget.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "roommate/catalog.hpp"
#include "roommate/irving.hpp"
#include "roommate/stitched.hpp"

namespace reduction {

using core::agent;
using core::matching;
using core::precondition_error;
using core::preference_table;
using core::rotation;

namespace {

std::string z_name(int var, int slot) {
    return "z" + std::to_string(var) + "_" + std::to_string(slot);
}

std::string w_name(int var, int slot) {
    return "w" + std::to_string(var) + "_" + std::to_string(slot);
}

void check_formula(const cnf_formula& phi) {
    if (phi.variables < 1) throw precondition_error("formula needs at least one variable");
    if (phi.clauses.empty()) throw precondition_error("formula needs at least one clause");
    std::vector<char> used(phi.variables, 0);
    for (const auto& cl : phi.clauses)
        for (int lit : cl) {
            const int v = lit > 0 ? lit : -lit;
            if (lit == 0 || v > phi.variables)
                throw precondition_error("literal " + std::to_string(lit) +
                                         " is out of range for " +
                                         std::to_string(phi.variables) + " variables");
            used[v - 1] = 1;
        }
    for (int j = 0; j < phi.variables; ++j)
        if (!used[j])
            throw precondition_error("variable " + std::to_string(j + 1) +
                                     " never occurs; densify the formula first");
}

// structural sanity of a freshly built gadget.  failures here are construction
// bugs, not bad input, hence logic_error.
void validate_gadget(const gadget& g) {
    if (!roommate::is_valid_table(g.stable_part))
        throw std::logic_error("gadget stable part is not a valid stable table");

    const int k = g.phi.variables;
    const auto analysis = roommate::analyze_table(g.stable_part);
    if (!analysis.catalog.singular().empty())
        throw std::logic_error("gadget stable part exposes a singular rotation");
    std::set<std::string> have;
    std::set<std::string> want;
    for (const auto& rho : analysis.catalog.all) have.insert(rho.serialize(g.stable_part));
    for (int j = 0; j < k; ++j) {
        want.insert(g.cycle[j].serialize(g.stable_part));
        want.insert(g.cycle_bar[j].serialize(g.stable_part));
    }
    if (have != want)
        throw std::logic_error("gadget rotations are not exactly the variable cycles");

    if (analysis.matchings.size() != (std::size_t{1} << k))
        throw std::logic_error("gadget stable part does not offer one binary choice per variable");

    const auto anti = roommate::antipodal_edges(g.host, g.stable_part, analysis.matchings);
    if (anti.size() != g.host.edge_count() - g.stable_part.edge_count())
        throw std::logic_error("a wiring edge of the gadget is not antipodal");

    if (!(roommate::stable_subtable_roommate(g.host) == g.stable_part))
        throw std::logic_error("stable edges of the host differ from the built stable part");

    // decoding reads variable polarities off the reluctant ends of a stitched
    // rotation, so no literal agent may double as another literal's holder.
    std::set<std::string> images;
    std::set<std::string> holders;
    for (const auto& slots : g.literal_agent)
        for (const auto& nm : slots) {
            const agent a = g.stable_part.require(nm);
            images.insert(nm);
            holders.insert(g.stable_part.name(g.stable_part.last(a)));
        }
    for (const auto& nm : images)
        if (holders.count(nm))
            throw std::logic_error("a literal agent doubles as a holder agent");
}

}  // namespace

gadget build_gadget(const cnf_formula& phi) {
    check_formula(phi);
    const int k = phi.variables;
    const int n = phi.clause_count();

    gadget g;
    g.phi = phi;

    // an even cycle length (two slots per occurrence) keeps one unused slot
    // between consecutive occurrence slots and across the wrap, so wiring
    // edges never collide with cycle edges and a variable with a single
    // occurrence still owns a genuine dual rotation pair.
    g.cycle_length.assign(k, 0);
    for (const auto& cl : phi.clauses)
        for (int lit : cl) g.cycle_length[(lit > 0 ? lit : -lit) - 1] += 2;

    // occurrence slot 2b-1 for the b-th appearance of a variable, z side for
    // negative literals, w side for positive ones.
    g.literal_agent.assign(n, {});
    {
        std::vector<int> seen(k, 0);
        for (int r = 0; r < n; ++r)
            for (int i = 0; i < 3; ++i) {
                const int lit = phi.clauses[r][i];
                const int v = lit > 0 ? lit : -lit;
                const int slot = 2 * ++seen[v - 1] - 1;
                g.literal_agent[r][i] = lit < 0 ? z_name(v, slot) : w_name(v, slot);
            }
    }

    // fixed anchor pair first, then one block of z agents and one of w agents
    // per variable; each cycle agent ranks its own partner above the next one
    // around the cycle.
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    rows.push_back({"z0", {"w0"}});
    rows.push_back({"w0", {"z0"}});
    for (int j = 1; j <= k; ++j) {
        const int nj = g.cycle_length[j - 1];
        for (int i = 1; i <= nj; ++i)
            rows.push_back({z_name(j, i), {w_name(j, i), w_name(j, i % nj + 1)}});
        for (int i = 1; i <= nj; ++i)
            rows.push_back({w_name(j, i), {z_name(j, (i + nj - 2) % nj + 1), z_name(j, i)}});
    }
    g.stable_part = preference_table::roommate_from_rows(rows);

    const auto holder_of = [&](const std::string& nm) {
        return g.stable_part.name(g.stable_part.last(g.stable_part.require(nm)));
    };

    // wiring: for every clause transition r -> r+1 (cyclically), the holder of
    // each literal agent of clause r learns to prefer every literal agent of
    // clause r+1 over its own row; the mirror additions go after the receiving
    // agent's own row.  first endpoint of a new edge gets the eager side.
    std::unordered_map<std::string, std::vector<std::string>> fronts;
    std::unordered_map<std::string, std::vector<std::string>> backs;
    std::set<std::pair<std::string, std::string>> present;
    for (const auto& [nm, entries] : rows)
        for (const std::string& e : entries) present.insert(std::minmax(nm, e));
    std::vector<std::string> wired;
    std::unordered_set<std::string> wired_set;
    const auto mark_wired = [&](const std::string& nm) {
        if (wired_set.insert(nm).second) wired.push_back(nm);
    };
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < 3; ++i) {
            const std::string x = holder_of(g.literal_agent[r][i]);
            for (int q = 0; q < 3; ++q) {
                const std::string& y = g.literal_agent[(r + 1) % n][q];
                if (x == y) continue;
                if (!present.insert(std::minmax(x, y)).second) continue;
                fronts[x].push_back(y);
                backs[y].push_back(x);
                mark_wired(x);
                mark_wired(y);
            }
        }

    // every wired agent also gets an edge to the anchor z0, ranked right after
    // its own row; z0 ranks them all above w0.
    std::vector<std::pair<std::string, std::vector<std::string>>> host_rows;
    host_rows.reserve(rows.size());
    for (const auto& [nm, stable_row] : rows) {
        std::vector<std::string> full;
        if (nm == "z0") {
            full = wired;
            full.push_back("w0");
        } else {
            if (const auto fit = fronts.find(nm); fit != fronts.end()) full = fit->second;
            full.insert(full.end(), stable_row.begin(), stable_row.end());
            if (wired_set.count(nm)) full.push_back("z0");
            if (const auto bit = backs.find(nm); bit != backs.end())
                full.insert(full.end(), bit->second.begin(), bit->second.end());
        }
        host_rows.push_back({nm, std::move(full)});
    }
    g.host = preference_table::roommate_from_rows(host_rows);

    for (int j = 1; j <= k; ++j) {
        rotation rho;
        const int nj = g.cycle_length[j - 1];
        for (int i = 1; i <= nj; ++i)
            rho.pairs.push_back({g.host.require(z_name(j, i)), g.host.require(w_name(j, i))});
        g.cycle.push_back(rho.canonical(g.host));
        g.cycle_bar.push_back(rho.reversed().canonical(g.host));
    }

    validate_gadget(g);
    return g;
}

rotation assignment_to_stitched(const gadget& g, const std::vector<bool>& assignment) {
    if (!evaluate(g.phi, assignment))
        throw precondition_error("assignment does not satisfy the formula");
    const int n = g.phi.clause_count();

    // smallest true position in each clause
    std::vector<int> pick(n, -1);
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < 3 && pick[r] < 0; ++i) {
            const int lit = g.phi.clauses[r][i];
            if (assignment[(lit > 0 ? lit : -lit) - 1] == (lit > 0)) pick[r] = i;
        }

    const auto image = [&](int r, int i) { return g.host.require(g.literal_agent[r][i]); };

    rotation rho;
    if (n == 1) {
        // a one-clause cycle needs two distinct true literal agents to stitch
        int second = -1;
        for (int i = pick[0] + 1; i < 3 && second < 0; ++i) {
            const int lit = g.phi.clauses[0][i];
            if (assignment[(lit > 0 ? lit : -lit) - 1] == (lit > 0) &&
                g.literal_agent[0][i] != g.literal_agent[0][pick[0]])
                second = i;
        }
        if (second < 0)
            throw precondition_error(
                "only one literal agent of the single clause is true under this assignment; "
                "a certificate cycle needs two");
        const agent a = image(0, pick[0]);
        const agent b = image(0, second);
        rho.pairs.push_back({g.stable_part.last(a), b});
        rho.pairs.push_back({g.stable_part.last(b), a});
    } else {
        for (int t = 0; t < n; ++t) {
            const int r = n - 1 - t;
            const agent y = image((r + 1) % n, pick[(r + 1) % n]);
            rho.pairs.push_back({g.stable_part.last(image(r, pick[r])), y});
        }
    }
    rho = rho.canonical(g.host);
    if (!roommate::is_stitched_rotation(g.host, g.stable_part, rho))
        throw std::logic_error("constructed certificate fails the stitched-rotation check");
    return rho;
}

std::vector<bool> stitched_to_assignment(const gadget& g, const rotation& rho) {
    if (!roommate::is_stitched_rotation(g.host, g.stable_part, rho))
        throw precondition_error("rotation is not a stitched rotation of this gadget");

    std::unordered_map<std::string, int> named;  // literal agent -> literal
    for (int r = 0; r < g.phi.clause_count(); ++r)
        for (int i = 0; i < 3; ++i) named[g.literal_agent[r][i]] = g.phi.clauses[r][i];

    std::vector<int> forced(g.phi.variables, 0);
    for (const auto& [x, y] : rho.pairs) {
        const auto it = named.find(g.host.name(y));
        if (it == named.end())
            throw std::logic_error("stitched pair lands outside the literal agents");
        const int lit = it->second;
        const int v = lit > 0 ? lit : -lit;
        const int want = lit > 0 ? 1 : -1;
        if (forced[v - 1] != 0 && forced[v - 1] != want)
            throw std::logic_error("stitched rotation names both polarities of a variable");
        forced[v - 1] = want;
    }
    std::vector<bool> a(g.phi.variables, false);
    for (int j = 0; j < g.phi.variables; ++j) a[j] = forced[j] > 0;
    if (!evaluate(g.phi, a))
        throw std::logic_error("decoded assignment does not satisfy the formula");
    return a;
}

std::string manifest_text(const gadget& g) {
    std::ostringstream out;
    out << "# 3-sat gadget manifest\n";
    out << "clauses: " << g.phi.clause_count() << "\n";
    out << "variables: " << g.phi.variables << "\n";
    for (int r = 0; r < g.phi.clause_count(); ++r)
        for (int i = 0; i < 3; ++i)
            out << "h[" << r << "][" << i + 1 << "] -> " << g.literal_agent[r][i] << "\n";
    for (int j = 1; j <= g.phi.variables; ++j) {
        out << "cycle v" << j << ":";
        for (int i = 1; i <= g.cycle_length[j - 1]; ++i)
            out << " " << z_name(j, i) << " " << w_name(j, i);
        out << "\n";
    }
    return out.str();
}

manifest parse_manifest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    manifest mf;
    bool saw_clauses = false;
    bool saw_vars = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "clauses:") {
            if (saw_clauses) throw core::parse_error("duplicate clause count", line_no);
            if (!(ls >> mf.clauses) || mf.clauses < 1)
                throw core::parse_error("bad clause count", line_no);
            mf.literal_agent.assign(mf.clauses, {});
            saw_clauses = true;
        } else if (head == "variables:") {
            if (saw_vars) throw core::parse_error("duplicate variable count", line_no);
            if (!(ls >> mf.variables) || mf.variables < 1)
                throw core::parse_error("bad variable count", line_no);
            mf.cycle_agents.assign(mf.variables, {});
            saw_vars = true;
        } else if (head.rfind("h[", 0) == 0) {
            int r = -1;
            int i = -1;
            if (!saw_clauses) throw core::parse_error("literal mapping before clause count", line_no);
            if (std::sscanf(head.c_str(), "h[%d][%d]", &r, &i) != 2 || r < 0 || r >= mf.clauses ||
                i < 1 || i > 3)
                throw core::parse_error("bad literal key '" + head + "'", line_no);
            std::string arrow;
            std::string nm;
            if (!(ls >> arrow >> nm) || arrow != "->" || nm.empty())
                throw core::parse_error("bad literal mapping line", line_no);
            if (!mf.literal_agent[r][i - 1].empty())
                throw core::parse_error("duplicate literal key '" + head + "'", line_no);
            mf.literal_agent[r][i - 1] = nm;
        } else if (head == "cycle") {
            if (!saw_vars) throw core::parse_error("cycle before variable count", line_no);
            std::string key;
            if (!(ls >> key) || key.size() < 3 || key.front() != 'v' || key.back() != ':')
                throw core::parse_error("bad cycle key", line_no);
            int j = 0;
            try {
                j = std::stoi(key.substr(1, key.size() - 2));
            } catch (const std::exception&) {
                throw core::parse_error("bad cycle key '" + key + "'", line_no);
            }
            if (j < 1 || j > mf.variables)
                throw core::parse_error("cycle index out of range", line_no);
            auto& cyc = mf.cycle_agents[j - 1];
            if (!cyc.empty()) throw core::parse_error("duplicate cycle v" + std::to_string(j), line_no);
            std::string nm;
            while (ls >> nm) cyc.push_back(nm);
            if (cyc.size() < 4 || cyc.size() % 2 != 0)
                throw core::parse_error("cycle needs an even number of agents, at least four",
                                        line_no);
        } else {
            throw core::parse_error("unrecognized manifest line", line_no);
        }
    }
    if (!saw_clauses || !saw_vars)
        throw core::parse_error("manifest is missing the clause or variable count", line_no);
    for (int r = 0; r < mf.clauses; ++r)
        for (int i = 0; i < 3; ++i)
            if (mf.literal_agent[r][i].empty())
                throw core::parse_error("missing literal mapping h[" + std::to_string(r) + "][" +
                                            std::to_string(i + 1) + "]",
                                        line_no);
    for (int j = 0; j < mf.variables; ++j)
        if (mf.cycle_agents[j].empty())
            throw core::parse_error("missing cycle v" + std::to_string(j + 1), line_no);
    return mf;
}

std::vector<bool> decode_certificate(const preference_table& host, const manifest& mf,
                                     const rotation& rho) {
    const auto t_tilde = roommate::stable_subtable_roommate(host);
    if (!roommate::is_stitched_rotation(host, t_tilde, rho))
        throw precondition_error("certificate is not a stitched rotation of this instance");

    // cycle agents alternate z, w starting on the z side; z side means the
    // literal was negative, so landing on it makes the variable false.
    std::unordered_map<std::string, std::pair<int, bool>> side;
    for (int j = 0; j < mf.variables; ++j)
        for (std::size_t p = 0; p < mf.cycle_agents[j].size(); ++p)
            side[mf.cycle_agents[j][p]] = {j, p % 2 == 0};
    std::unordered_set<std::string> named;
    for (const auto& slots : mf.literal_agent)
        for (const auto& nm : slots) named.insert(nm);

    std::vector<int> forced(mf.variables, 0);
    for (const auto& [x, y] : rho.pairs) {
        const std::string& nm = host.name(y);
        if (!named.count(nm))
            throw precondition_error("certificate pair lands outside the literal agents");
        const auto it = side.find(nm);
        if (it == side.end())
            throw precondition_error("manifest lists no cycle for literal agent " + nm);
        const int want = it->second.second ? -1 : 1;
        auto& f = forced[it->second.first];
        if (f != 0 && f != want)
            throw precondition_error("certificate names both polarities of variable v" +
                                     std::to_string(it->second.first + 1));
        f = want;
    }
    std::vector<bool> a(mf.variables, false);
    for (int j = 0; j < mf.variables; ++j) a[j] = forced[j] > 0;
    return a;
}

}  // namespace reduction
