#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seqig/ci.hpp"

namespace seqig {

// DAG over stochastic nodes plus at most one regime-indicator node
// (conventionally named "sigma"; always parentless).
class InfluenceDiagram {
public:
    struct Node {
        std::string name;
        bool is_regime = false;
    };

    // Throws InputError on cycles, duplicate edges, duplicate nodes,
    // unknown endpoints, or a regime node with parents.
    static InfluenceDiagram build(std::vector<Node> nodes,
                                  const std::vector<std::pair<std::string, std::string>>& edges);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int node_id(std::string_view name) const;  // -1 when absent
    int regime_node() const { return regime_; }

    uint32_t parents(int v) const { return parents_[v]; }
    uint32_t children(int v) const { return children_[v]; }

private:
    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<uint32_t> parents_, children_;  // bitmask adjacency (<= 32 nodes)
    int regime_ = -1;
};

struct SeparationResult {
    bool separated = true;
    std::vector<std::string> active_path;  // a witnessing trail when not separated
};

// Path-blocking criterion; sets given by node name. Throws on unknown or
// overlapping sets.
SeparationResult d_separated(const InfluenceDiagram& dag, const std::vector<std::string>& x,
                             const std::vector<std::string>& y, const std::vector<std::string>& z);

// Ancestral subgraph + moralization + undirected separation. Agrees with
// d_separated on every query.
bool moral_separated(const InfluenceDiagram& dag, const std::vector<std::string>& x,
                     const std::vector<std::string>& y, const std::vector<std::string>& z);

// Mask-level core used by the exhaustive equivalence tests.
bool d_separated_masks(const InfluenceDiagram& dag, uint32_t x, uint32_t y, uint32_t z);
bool moral_separated_masks(const InfluenceDiagram& dag, uint32_t x, uint32_t y, uint32_t z);

// All CI statements (disjoint nonempty sides, unordered) implied by the
// diagram under d-separation, with the regime node mapped onto sigma flags.
// Throws when the diagram has more than `node_cap` nodes.
std::vector<CIStatement> implied_ci(const InfluenceDiagram& dag, int node_cap = 10);

struct RepresentsReport {
    struct Row {
        CIStatement stmt;
        bool implied = false;
    };
    std::vector<Row> rows;
    bool all_implied = true;
};

// Which of the given statements the diagram implies.
RepresentsReport represents(const InfluenceDiagram& dag, const std::vector<CIStatement>& stmts);

// Statement evaluation used by `represents`: sigma flags map to the regime
// node (error when the diagram has none and a flag is set).
bool implies(const InfluenceDiagram& dag, const CIStatement& stmt);

}  // namespace seqig
