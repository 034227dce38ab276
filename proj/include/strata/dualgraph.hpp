#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "strata/action.hpp"

namespace strata {

/// Connected component of the complement of the multicurve.
struct DualVertex {
    std::int64_t genus = 0;
    std::vector<int> cone_points;                          // indices into the cone list
    std::optional<std::vector<std::int64_t>> explicit_image;   // table-group inputs only
};

/// Closed curve of the multicurve. `u == v` is a loop. For positive-genus
/// quotients `explicit_class` carries the homology class of the curve and
/// `explicit_dual` the image of a dual curve crossing it once.
struct DualEdge {
    int u = 0;
    int v = 0;
    std::optional<std::int64_t> explicit_class;
    std::optional<std::int64_t> explicit_dual;
    std::optional<std::vector<std::int64_t>> explicit_image;

    bool is_loop() const { return u == v; }
};

/// Arc joining two cone points of order 2.
struct DualSemiedge {
    int vertex = 0;
    std::array<int, 2> endpoints{};                        // cone indices
    std::optional<std::vector<std::int64_t>> explicit_image;
    std::optional<std::int64_t> explicit_dual;
};

/// Dual graph of an admissible multicurve, optionally annotated with the
/// image subgroups of its pieces and the images of the dual curves.
class DecoratedDualGraph {
public:
    /// Validates the structural invariants: index ranges, disjoint coverage
    /// of the cone points, connectedness, genus accounting, and the
    /// explicit-field rules for the quotient genus. Throws BadGraphStructure.
    static DecoratedDualGraph build(ActionPtr action, std::vector<DualVertex> vertices,
                                    std::vector<DualEdge> edges,
                                    std::vector<DualSemiedge> semiedges,
                                    std::optional<std::vector<std::vector<int>>> handle_assignment =
                                        std::nullopt);

    const ActionPtr& action() const { return action_; }
    const std::vector<DualVertex>& vertices() const { return vertices_; }
    const std::vector<DualEdge>& edges() const { return edges_; }
    const std::vector<DualSemiedge>& semiedges() const { return semiedges_; }
    const std::optional<std::vector<std::vector<int>>>& handle_assignment() const {
        return handle_assignment_;
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int semiedge_count() const { return static_cast<int>(semiedges_.size()); }

    /// Edge ends incident to v, loops counted twice, plus incident semiedges.
    int boundary_circles(int v) const;

    bool decorated() const { return decorated_; }
    const SubgroupPtr& vertex_image(int v) const;
    const SubgroupPtr& edge_image(int e) const;
    std::int64_t edge_dual(int e) const;
    const SubgroupPtr& semiedge_image(int s) const;
    std::int64_t semiedge_dual(int s) const;

    friend DecoratedDualGraph derive_decorations(const DecoratedDualGraph& graph);

private:
    DecoratedDualGraph() = default;

    ActionPtr action_;
    std::vector<DualVertex> vertices_;
    std::vector<DualEdge> edges_;
    std::vector<DualSemiedge> semiedges_;
    std::optional<std::vector<std::vector<int>>> handle_assignment_;

    bool decorated_ = false;
    std::vector<SubgroupPtr> vertex_images_;
    std::vector<SubgroupPtr> edge_images_;
    std::vector<std::int64_t> edge_duals_;
    std::vector<SubgroupPtr> semiedge_images_;
    std::vector<std::int64_t> semiedge_duals_;
};

/// chi of the bordered suborbifold at v: 2 - 2 genus(v) - boundary circles
/// - sum over interior cone points of (1 - 1/m). Cone points on arcs belong
/// to the arcs, not to the vertex.
Rational suborbifold_chi(const DecoratedDualGraph& graph, int v);

struct AdmissibilityReport {
    std::vector<int> negative_chi_failures;   // vertices with chi >= 0
    std::vector<int> bad_semiedges;           // arcs with an endpoint of order != 2

    bool admissible() const {
        return negative_chi_failures.empty() && bad_semiedges.empty();
    }
};

AdmissibilityReport check_admissible(const DecoratedDualGraph& graph);

/// Fills in the image subgroups and dual-curve images.
///
/// Abelian genus-0 quotient: everything is derived from the meridian images
/// (the graph is a tree; all closed-curve duals are trivial). Abelian
/// positive genus: every edge needs an explicit class; edges without an
/// explicit dual must form a forest and get the trivial dual. Table groups:
/// images must be supplied explicitly everywhere, duals on semiedges and on
/// edges closing cycles.
DecoratedDualGraph derive_decorations(const DecoratedDualGraph& graph);

} // namespace strata
