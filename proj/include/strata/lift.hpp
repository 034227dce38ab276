#pragma once

#include <cstdint>
#include <vector>

#include "strata/canon.hpp"
#include "strata/dualgraph.hpp"

namespace strata {

/// Underlying combinatorial shape of a dual graph, used to compare the
/// deck-group quotient of a lift against its source.
struct GraphShape {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edge_ends;   // normalized u <= v
    std::vector<int> semiedge_vertex;

    bool operator==(const GraphShape&) const = default;
};

GraphShape shape_of(const DecoratedDualGraph& graph);

/// Weighted multigraph of the lifted multicurve. One vertex per coset of a
/// vertex image, one edge per coset of a curve image; labels carry the
/// source piece and the canonical coset representative.
struct StableGraph {
    struct Vertex {
        int source = 0;                 // vertex id in the source graph
        std::int64_t coset_rep = 0;
        std::int64_t weight = 0;
    };
    struct Edge {
        int source = 0;                 // edge or semiedge id in the source graph
        bool from_semiedge = false;
        std::int64_t coset_rep = 0;
        int u = 0;
        int v = 0;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    // deck-action context; absent on graphs re-read from serialized form
    GroupPtr group;
    std::vector<SubgroupPtr> vertex_images;
    std::vector<SubgroupPtr> edge_images;
    std::vector<SubgroupPtr> semiedge_images;
    GraphShape source_shape;

    bool has_context() const { return group != nullptr; }
    int find_vertex(int source, std::int64_t rep) const;
};

/// Per-source-vertex counts feeding the closed-form degree and weight
/// expressions of the prime-order fast paths.
struct VertexLocalCounts {
    int n = 0;   // incident edges lifting to a single copy
    int m = 0;   // incident edges lifting to |G| copies
    int s = 0;   // incident semiedges
    int c = 0;   // interior cone points
};

Multigraph to_multigraph(const StableGraph& graph);

/// The general engine. Weights come from the closed form
/// w = 1 - (|Im Phi_j| chi(O_j) + D_j)/2 and are cross-checked against the
/// counted incidence degree and against genus conservation; a mismatch
/// aborts rather than trusting either value.
StableGraph lift_graph(const DecoratedDualGraph& graph);

/// Sum of weights plus the first Betti number.
std::int64_t stable_genus(const StableGraph& graph);

struct DeckAutomorphism {
    std::vector<int> vertex_map;
    std::vector<int> edge_map;
};

/// Left translation of all coset labels by g; a weight-preserving
/// automorphism commuting with the fiber map.
DeckAutomorphism deck_action(const StableGraph& graph, std::int64_t g);

/// Collapses the deck-group orbits and checks the result against the source
/// shape; throws QuotientMismatch when labels are inconsistent.
GraphShape quotient_check(const StableGraph& graph);

/// Closed-form lift for prime cyclic actions with quotient (0; p,...,p),
/// p >= 3, built from exponent sums alone (no subgroup decorations).
StableGraph pgonal_fast_path(const DecoratedDualGraph& graph, std::int64_t p);

/// Closed-form lift for the order-2 action on (0; 2,...,2), including arcs.
StableGraph hyperelliptic_fast_path(const DecoratedDualGraph& graph);

struct SingleCurveFamily {
    enum class Kind { SeparatingBipartite, NonSeparatingCycle, ArcLoops, ArcParallel };
    Kind kind;
    std::int64_t m = 0;       // vertex fiber of the first side
    std::int64_t n = 0;       // vertex fiber of the second side (bipartite case)
    std::int64_t d = 0;       // edge multiplicity (bipartite / cycle cases)
    std::int64_t count = 0;   // total number of lifted curves
};

/// Recognizes the lift of a one-curve multicurve over an abelian group as a
/// complete bipartite multigraph, a multiple cycle, or an arc family, and
/// verifies the realized lift is isomorphic to the named family.
SingleCurveFamily classify_single_curve(const DecoratedDualGraph& graph);

/// The family graph with the realized weights, for cross-checking.
StableGraph single_curve_family_graph(const SingleCurveFamily& family,
                                      std::int64_t weight_first, std::int64_t weight_second);

} // namespace strata
