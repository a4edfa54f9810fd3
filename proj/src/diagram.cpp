#include "seqig/diagram.hpp"

#include <algorithm>
#include <set>

#include "seqig/errors.hpp"

namespace seqig {

namespace {

int popcount(uint32_t m) { return __builtin_popcount(m); }

// Ancestors of the seed set, including the seeds.
uint32_t ancestral_closure(const InfluenceDiagram& dag, uint32_t seed) {
    uint32_t acc = seed;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t v = 0; v < dag.nodes().size(); ++v)
            if ((acc >> v) & 1) {
                uint32_t np = acc | dag.parents(static_cast<int>(v));
                if (np != acc) {
                    acc = np;
                    grew = true;
                }
            }
    }
    return acc;
}

}  // namespace

InfluenceDiagram InfluenceDiagram::build(
    std::vector<Node> nodes, const std::vector<std::pair<std::string, std::string>>& edges) {
    InfluenceDiagram dag;
    if (nodes.size() > 32) throw InputError("diagrams are limited to 32 nodes");
    std::set<std::string> seen;
    for (auto& n : nodes) {
        if (n.name.empty()) throw InputError("diagram node with empty name");
        if (!seen.insert(n.name).second) throw InputError("duplicate node '" + n.name + "'");
        if (n.name == "sigma") n.is_regime = true;
        if (n.is_regime) {
            if (dag.regime_ >= 0) throw InputError("at most one regime node allowed");
            dag.regime_ = static_cast<int>(&n - nodes.data());
        }
    }
    dag.nodes_ = std::move(nodes);
    dag.parents_.assign(dag.nodes_.size(), 0);
    dag.children_.assign(dag.nodes_.size(), 0);

    std::set<std::pair<int, int>> edge_set;
    for (const auto& [from, to] : edges) {
        int a = dag.node_id(from), b = dag.node_id(to);
        if (a < 0) throw InputError("unknown node '" + from + "' in edge");
        if (b < 0) throw InputError("unknown node '" + to + "' in edge");
        if (a == b) throw InputError("self-loop on '" + from + "'");
        if (!edge_set.insert({a, b}).second)
            throw InputError("duplicate edge " + from + " -> " + to);
        if (b == dag.regime_)
            throw InputError("the regime node may not have parents (edge " + from + " -> " + to +
                             ")");
        dag.edges_.push_back({a, b});
        dag.parents_[b] |= uint32_t(1) << a;
        dag.children_[a] |= uint32_t(1) << b;
    }

    // Cycle check: repeatedly strip sources.
    std::vector<int> indeg(dag.nodes_.size());
    for (std::size_t v = 0; v < dag.nodes_.size(); ++v) indeg[v] = popcount(dag.parents_[v]);
    std::vector<int> queue;
    for (std::size_t v = 0; v < dag.nodes_.size(); ++v)
        if (indeg[v] == 0) queue.push_back(static_cast<int>(v));
    std::size_t removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        uint32_t ch = dag.children_[v];
        for (std::size_t c = 0; c < dag.nodes_.size(); ++c)
            if ((ch >> c) & 1 && --indeg[c] == 0) queue.push_back(static_cast<int>(c));
    }
    if (removed != dag.nodes_.size()) throw InputError("diagram contains a cycle");
    return dag;
}

int InfluenceDiagram::node_id(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

uint32_t mask_of(const InfluenceDiagram& dag, const std::vector<std::string>& names) {
    uint32_t m = 0;
    for (const auto& n : names) {
        int id = dag.node_id(n);
        if (id < 0) throw InputError("unknown node '" + n + "'");
        m |= uint32_t(1) << id;
    }
    return m;
}

// Trail search over (node, arrived-via-head) states. Returns an active trail
// from x to y given z, or empty when separated.
std::vector<int> find_active_trail(const InfluenceDiagram& dag, uint32_t x, uint32_t y,
                                   uint32_t z) {
    const std::size_t n = dag.nodes().size();
    uint32_t anz = ancestral_closure(dag, z);  // nodes with a descendant in z (incl. z)

    // state = node * 2 + (1 if the previous edge points into the node)
    std::vector<int> prev(2 * n, -1);   // predecessor state, -2 = start
    std::vector<int> queue;
    for (std::size_t v = 0; v < n; ++v)
        if ((x >> v) & 1) {
            prev[2 * v] = -2;  // virtual tail arrival
            queue.push_back(static_cast<int>(2 * v));
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int state = queue[head];
        int v = state / 2;
        bool via_head = state % 2;
        auto push = [&](int u, bool head_at_u) {
            int s = 2 * u + (head_at_u ? 1 : 0);
            if (prev[s] < 0 && prev[s] != -2) {
                prev[s] = state;
                queue.push_back(s);
            }
        };
        // Leave through tail edges v -> c : junction at v is a chain or fork.
        if (!((z >> v) & 1)) {
            uint32_t ch = dag.children(v);
            for (std::size_t c = 0; c < n; ++c)
                if ((ch >> c) & 1) push(static_cast<int>(c), true);
        }
        // Leave through head edges p -> v : collider iff we arrived via head.
        bool can_leave_head = via_head ? ((anz >> v) & 1) : !((z >> v) & 1);
        if (can_leave_head) {
            uint32_t pa = dag.parents(v);
            for (std::size_t p = 0; p < n; ++p)
                if ((pa >> p) & 1) push(static_cast<int>(p), false);
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (!((y >> v) & 1)) continue;
        for (int side = 0; side < 2; ++side) {
            int s = static_cast<int>(2 * v + side);
            if (prev[s] == -1) continue;
            std::vector<int> trail;
            for (int cur = s; cur != -2; cur = prev[cur]) trail.push_back(cur / 2);
            std::reverse(trail.begin(), trail.end());
            return trail;
        }
    }
    return {};
}

}  // namespace

bool d_separated_masks(const InfluenceDiagram& dag, uint32_t x, uint32_t y, uint32_t z) {
    return find_active_trail(dag, x, y, z).empty();
}

SeparationResult d_separated(const InfluenceDiagram& dag, const std::vector<std::string>& x,
                             const std::vector<std::string>& y,
                             const std::vector<std::string>& z) {
    uint32_t mx = mask_of(dag, x), my = mask_of(dag, y), mz = mask_of(dag, z);
    if ((mx & my) || (mx & mz) || (my & mz))
        throw InputError("d-separation query requires disjoint node sets");
    SeparationResult result;
    auto trail = find_active_trail(dag, mx, my, mz);
    result.separated = trail.empty();
    for (int v : trail) result.active_path.push_back(dag.nodes()[v].name);
    return result;
}

bool moral_separated_masks(const InfluenceDiagram& dag, uint32_t x, uint32_t y, uint32_t z) {
    const std::size_t n = dag.nodes().size();
    uint32_t keep = ancestral_closure(dag, x | y | z);

    // Moral graph of the ancestral subgraph.
    std::vector<uint32_t> adj(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (!((keep >> v) & 1)) continue;
        uint32_t pa = dag.parents(static_cast<int>(v)) & keep;
        for (std::size_t p = 0; p < n; ++p)
            if ((pa >> p) & 1) {
                adj[p] |= uint32_t(1) << v;
                adj[v] |= uint32_t(1) << p;
                adj[p] |= pa & ~(uint32_t(1) << p);  // marry co-parents
            }
    }

    // Undirected reachability from x to y avoiding z.
    uint32_t frontier = x & keep & ~z, seen = frontier;
    while (frontier) {
        uint32_t next = 0;
        for (std::size_t v = 0; v < n; ++v)
            if ((frontier >> v) & 1) next |= adj[v];
        next &= keep & ~z & ~seen;
        seen |= next;
        frontier = next;
    }
    return (seen & y) == 0;
}

bool moral_separated(const InfluenceDiagram& dag, const std::vector<std::string>& x,
                     const std::vector<std::string>& y, const std::vector<std::string>& z) {
    uint32_t mx = mask_of(dag, x), my = mask_of(dag, y), mz = mask_of(dag, z);
    if ((mx & my) || (mx & mz) || (my & mz))
        throw InputError("separation query requires disjoint node sets");
    return moral_separated_masks(dag, mx, my, mz);
}

namespace {

CIStatement statement_from_masks(const InfluenceDiagram& dag, uint32_t x, uint32_t y, uint32_t z) {
    const int regime = dag.regime_node();
    auto names = [&](uint32_t m) {
        std::vector<std::string> out;
        for (std::size_t v = 0; v < dag.nodes().size(); ++v)
            if ((m >> v) & 1 && static_cast<int>(v) != regime)
                out.push_back(dag.nodes()[v].name);
        return out;
    };
    bool sy = regime >= 0 && ((y >> regime) & 1);
    bool sz = regime >= 0 && ((z >> regime) & 1);
    return CIStatement::make(names(x), names(y), names(z), sy, sz);
}

}  // namespace

std::vector<CIStatement> implied_ci(const InfluenceDiagram& dag, int node_cap) {
    const int n = static_cast<int>(dag.nodes().size());
    if (n > node_cap)
        throw InputError("diagram has " + std::to_string(n) + " nodes; implied-CI cap is " +
                         std::to_string(node_cap));
    const int regime = dag.regime_node();

    std::vector<CIStatement> out;
    // Assign each node to one of {X, Y, Z, out}; keep X nonempty and either
    // Y nonempty or the regime node on the Y side.
    std::vector<int> slot(n, 0);
    const uint64_t total = [&] {
        uint64_t t = 1;
        for (int i = 0; i < n; ++i) t *= 4;
        return t;
    }();
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        uint32_t x = 0, y = 0, z = 0;
        for (int v = 0; v < n; ++v, c /= 4) {
            switch (c % 4) {
                case 1: x |= uint32_t(1) << v; break;
                case 2: y |= uint32_t(1) << v; break;
                case 3: z |= uint32_t(1) << v; break;
            }
        }
        if (x == 0 || y == 0) continue;
        if (regime >= 0 && ((x >> regime) & 1)) continue;  // sigma never on the left
        // Unordered {X, Y}: emit each pair once. When the regime node is in
        // play it is pinned to the Y side, so those pairs are already unique.
        if (!(regime >= 0 && ((y >> regime) & 1)) && x > y) continue;
        if (d_separated_masks(dag, x, y, z)) out.push_back(statement_from_masks(dag, x, y, z));
    }
    return out;
}

bool implies(const InfluenceDiagram& dag, const CIStatement& stmt) {
    std::vector<std::string> y = stmt.y, z = stmt.z;
    if (stmt.sigma_in_y || stmt.sigma_in_z) {
        int regime = dag.regime_node();
        if (regime < 0)
            throw InputError("statement '" + stmt.text() +
                             "' references the regime indicator but the diagram has no regime node");
        (stmt.sigma_in_y ? y : z).push_back(dag.nodes()[regime].name);
    }
    uint32_t mx = mask_of(dag, stmt.x), my = mask_of(dag, y), mz = mask_of(dag, z);
    if ((mx & my) || (mx & mz) || (my & mz))
        throw InputError("statement '" + stmt.text() + "' has overlapping node sets");
    return d_separated_masks(dag, mx, my, mz);
}

RepresentsReport represents(const InfluenceDiagram& dag, const std::vector<CIStatement>& stmts) {
    RepresentsReport report;
    for (const auto& s : stmts) {
        bool ok = implies(dag, s);
        report.rows.push_back({s, ok});
        report.all_implied = report.all_implied && ok;
    }
    return report;
}

}  // namespace seqig
