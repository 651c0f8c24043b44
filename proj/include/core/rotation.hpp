#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/table.hpp"

namespace core {

// An ordered cyclic sequence of pairs (x_i, y_i); indices wrap.  Used for both
// marriage rotations (all x on one side) and roommate rotations.
struct rotation {
    std::vector<std::pair<agent, agent>> pairs;

    int length() const { return static_cast<int>(pairs.size()); }

    // cyclic shift so the lexicographically smallest x-name comes first
    rotation canonical(const preference_table& t) const;

    // twin traversal from the other side: (x_0,y_0),...,(x_{r-1},y_{r-1})
    // becomes (y_1,x_0),(y_2,x_1),...  A rotation discovered on one side of a
    // marriage table maps to the matching rotation on the other side, and a
    // roommate rotation maps to its dual.
    rotation reversed() const;

    std::vector<edge> pair_edges() const;                  // {x_i y_i}
    std::vector<edge> successor_edges() const;             // {x_i y_{i+1}}
    std::vector<edge> all_edges() const;                   // union of the two

    std::string serialize(const preference_table& t) const;  // (a,b),(c,d)
    static rotation parse(const preference_table& t, const std::string& text);

    bool operator==(const rotation& other) const = default;
};

}  // namespace core
