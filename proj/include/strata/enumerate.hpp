#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "strata/canon.hpp"
#include "strata/lift.hpp"

namespace strata {

struct UnlabeledTree {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
};

/// All unlabeled trees with 1..max_edges edges, one representative per
/// isomorphism class, in a deterministic order.
std::vector<UnlabeledTree> enumerate_trees(int max_edges);

/// Combinatorial type of an admissible multicurve on a genus-0 quotient:
/// a tree, a distribution of the cone points over the vertices, and a list
/// of arcs pairing order-2 cone points.
struct DecoratedTree {
    struct Arc {
        int vertex = 0;
        std::array<int, 2> endpoints{};
    };

    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> vertex_cones;
    std::vector<Arc> arcs;

    int curve_count() const {
        return static_cast<int>(edges.size() + arcs.size());
    }
};

/// All admissible multicurve classes, where two decorated trees are
/// equivalent when a tree isomorphism matches the per-vertex multisets of
/// meridian images and the per-arc image pairs. Sorted by class key.
std::vector<DecoratedTree> enumerate_multicurves(const ActionPtr& action);

DecoratedDualGraph decorated_graph_from_tree(const ActionPtr& action, const DecoratedTree& tree);

struct StratumEntry {
    CanonicalForm key;
    StableGraph graph;                    // lift of the first class, representative
    std::vector<DecoratedTree> classes;   // provenance, in class-key order
    std::vector<CanonicalForm> class_keys;
};

struct StrataCatalog {
    std::vector<StratumEntry> entries;    // sorted by key

    std::size_t class_count() const;
};

/// Lift every multicurve class, canonicalize, and deduplicate. The result
/// is independent of the worker count.
StrataCatalog boundary_strata(const ActionPtr& action, int jobs = 1);

/// Stable graph of the nested multicurve of the cyclotomic action of Z_p
/// (generating vector with exponents 1..p-1): r curves, the first ones
/// enclosing the exponent pairs (i, p-i), later ones nested around them.
/// Built by gluing p copies of the source tree along its terminal vertices.
StableGraph cyclotomic_family(std::int64_t p, std::int64_t r);

} // namespace strata
