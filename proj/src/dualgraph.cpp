#include "strata/dualgraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace strata {

namespace {

std::vector<std::vector<int>> adjacency(int n, const std::vector<DualEdge>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        if (!e.is_loop()) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    return adj;
}

bool connected(int n, const std::vector<DualEdge>& edges) {
    if (n == 0) return false;
    auto adj = adjacency(n, edges);
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void check_element(const GroupPtr& group, std::int64_t x, const char* what) {
    if (x < 0 || x >= group->order()) {
        throw Error(ErrorCode::BadGraphStructure, std::string(what) + " is not a group element");
    }
}

} // namespace

DecoratedDualGraph DecoratedDualGraph::build(
    ActionPtr action, std::vector<DualVertex> vertices, std::vector<DualEdge> edges,
    std::vector<DualSemiedge> semiedges,
    std::optional<std::vector<std::vector<int>>> handle_assignment) {
    if (!action) {
        throw Error(ErrorCode::BadGraphStructure, "missing action");
    }
    const int n = static_cast<int>(vertices.size());
    const int cone_count = static_cast<int>(action->signature.cone_count());
    if (n == 0) {
        throw Error(ErrorCode::BadGraphStructure, "graph needs at least one vertex");
    }
    if (edges.empty() && semiedges.empty()) {
        throw Error(ErrorCode::BadGraphStructure, "multicurve is empty");
    }

    // cone points are distributed among vertex interiors and arc endpoints,
    // each used exactly once
    std::vector<int> usage(cone_count, 0);
    for (const auto& v : vertices) {
        if (v.genus < 0) {
            throw Error(ErrorCode::BadGraphStructure, "negative vertex genus");
        }
        for (int c : v.cone_points) {
            if (c < 0 || c >= cone_count) {
                throw Error(ErrorCode::BadGraphStructure, "cone index out of range");
            }
            ++usage[c];
        }
    }
    for (const auto& s : semiedges) {
        if (s.vertex < 0 || s.vertex >= n) {
            throw Error(ErrorCode::BadGraphStructure, "semiedge vertex out of range");
        }
        if (s.endpoints[0] == s.endpoints[1]) {
            throw Error(ErrorCode::BadGraphStructure, "arc endpoints must be distinct");
        }
        for (int c : s.endpoints) {
            if (c < 0 || c >= cone_count) {
                throw Error(ErrorCode::BadGraphStructure, "arc endpoint out of range");
            }
            ++usage[c];
        }
    }
    for (int c = 0; c < cone_count; ++c) {
        if (usage[c] != 1) {
            throw Error(ErrorCode::BadGraphStructure,
                        "cone point " + std::to_string(c) + " used " + std::to_string(usage[c]) +
                            " times");
        }
    }

    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
            throw Error(ErrorCode::BadGraphStructure, "edge endpoint out of range");
        }
    }
    if (!connected(n, edges)) {
        throw Error(ErrorCode::BadGraphStructure, "underlying graph is not connected");
    }

    // total genus: sum of vertex genera plus the first Betti number of the
    // underlying graph equals the quotient genus
    const std::int64_t b1 =
        static_cast<std::int64_t>(edges.size()) - n + 1;
    std::int64_t genus_sum = 0;
    for (const auto& v : vertices) genus_sum += v.genus;
    if (genus_sum + b1 != action->signature.genus) {
        throw Error(ErrorCode::BadGraphStructure,
                    "vertex genera plus graph cycles do not add up to the quotient genus");
    }

    const bool genus_zero = action->signature.genus == 0;
    // decorations are derivable only for groups in coordinate form; a table
    // group goes through the explicit path even when it is commutative
    const bool derives = dynamic_cast<const AbelianGroup*>(action->group.get()) != nullptr;
    for (const auto& e : edges) {
        if (genus_zero && derives &&
            (e.explicit_class || e.explicit_dual || e.explicit_image)) {
            throw Error(ErrorCode::BadGraphStructure,
                        "explicit edge decorations are not accepted for genus-0 quotients");
        }
        if (e.explicit_class) check_element(action->group, *e.explicit_class, "edge class");
        if (e.explicit_dual) check_element(action->group, *e.explicit_dual, "edge dual");
        if (e.explicit_image) {
            for (std::int64_t x : *e.explicit_image) check_element(action->group, x, "edge image");
        }
    }
    for (const auto& v : vertices) {
        if (genus_zero && derives && v.explicit_image) {
            throw Error(ErrorCode::BadGraphStructure,
                        "explicit vertex decorations are not accepted for genus-0 quotients");
        }
        if (v.explicit_image) {
            for (std::int64_t x : *v.explicit_image)
                check_element(action->group, x, "vertex image");
        }
    }
    for (const auto& s : semiedges) {
        if (s.explicit_image) {
            for (std::int64_t x : *s.explicit_image)
                check_element(action->group, x, "semiedge image");
        }
        if (s.explicit_dual) check_element(action->group, *s.explicit_dual, "semiedge dual");
    }

    if (handle_assignment) {
        if (static_cast<int>(handle_assignment->size()) != n) {
            throw Error(ErrorCode::BadGraphStructure,
                        "handle assignment must list every vertex");
        }
        std::vector<int> handle_usage(action->signature.genus, 0);
        for (int v = 0; v < n; ++v) {
            const auto& hs = (*handle_assignment)[v];
            if (static_cast<std::int64_t>(hs.size()) != vertices[v].genus) {
                throw Error(ErrorCode::BadGraphStructure,
                            "vertex " + std::to_string(v) + " needs exactly genus(v) handles");
            }
            for (int h : hs) {
                if (h < 0 || h >= action->signature.genus) {
                    throw Error(ErrorCode::BadGraphStructure, "handle index out of range");
                }
                ++handle_usage[h];
            }
        }
        for (int count : handle_usage) {
            if (count > 1) {
                throw Error(ErrorCode::BadGraphStructure, "handle assigned twice");
            }
        }
    } else {
        for (const auto& v : vertices) {
            if (v.genus > 0 && derives) {
                throw Error(ErrorCode::BadGraphStructure,
                            "positive-genus vertices need a handle assignment");
            }
        }
    }

    DecoratedDualGraph g;
    g.action_ = std::move(action);
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.semiedges_ = std::move(semiedges);
    g.handle_assignment_ = std::move(handle_assignment);
    return g;
}

int DecoratedDualGraph::boundary_circles(int v) const {
    int count = 0;
    for (const auto& e : edges_) {
        if (e.u == v) ++count;
        if (e.v == v) ++count;
    }
    for (const auto& s : semiedges_) {
        if (s.vertex == v) ++count;
    }
    return count;
}

const SubgroupPtr& DecoratedDualGraph::vertex_image(int v) const {
    if (!decorated_) throw Error(ErrorCode::NotDecorated, "decorations not derived yet");
    return vertex_images_.at(v);
}

const SubgroupPtr& DecoratedDualGraph::edge_image(int e) const {
    if (!decorated_) throw Error(ErrorCode::NotDecorated, "decorations not derived yet");
    return edge_images_.at(e);
}

std::int64_t DecoratedDualGraph::edge_dual(int e) const {
    if (!decorated_) throw Error(ErrorCode::NotDecorated, "decorations not derived yet");
    return edge_duals_.at(e);
}

const SubgroupPtr& DecoratedDualGraph::semiedge_image(int s) const {
    if (!decorated_) throw Error(ErrorCode::NotDecorated, "decorations not derived yet");
    return semiedge_images_.at(s);
}

std::int64_t DecoratedDualGraph::semiedge_dual(int s) const {
    if (!decorated_) throw Error(ErrorCode::NotDecorated, "decorations not derived yet");
    return semiedge_duals_.at(s);
}

Rational suborbifold_chi(const DecoratedDualGraph& graph, int v) {
    if (v < 0 || v >= graph.vertex_count()) {
        throw Error(ErrorCode::BadGraphStructure, "vertex id out of range");
    }
    const auto& vertex = graph.vertices()[v];
    Rational chi(2 - 2 * vertex.genus - graph.boundary_circles(v), 1);
    const auto& orders = graph.action()->signature.cone_orders;
    for (int c : vertex.cone_points) {
        chi -= Rational(orders[c] - 1, orders[c]);
    }
    return chi;
}

AdmissibilityReport check_admissible(const DecoratedDualGraph& graph) {
    AdmissibilityReport report;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (suborbifold_chi(graph, v) >= Rational(0)) {
            report.negative_chi_failures.push_back(v);
        }
    }
    const auto& orders = graph.action()->signature.cone_orders;
    for (int s = 0; s < graph.semiedge_count(); ++s) {
        const auto& arc = graph.semiedges()[s];
        if (orders[arc.endpoints[0]] != 2 || orders[arc.endpoints[1]] != 2) {
            report.bad_semiedges.push_back(s);
        }
    }
    return report;
}

namespace {

/// Vertices on the v-side of the tree edge (u, v), with the edge removed.
std::vector<bool> side_of(const DecoratedDualGraph& g, int edge_index) {
    const auto& e = g.edges()[edge_index];
    std::vector<bool> in_side(g.vertex_count(), false);
    std::vector<int> stack{e.v};
    in_side[e.v] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int i = 0; i < g.edge_count(); ++i) {
            if (i == edge_index) continue;
            const auto& f = g.edges()[i];
            for (auto [a, b] : {std::pair{f.u, f.v}, std::pair{f.v, f.u}}) {
                if (a == x && !in_side[b]) {
                    in_side[b] = true;
                    stack.push_back(b);
                }
            }
        }
    }
    return in_side;
}

/// Sum of the meridian images over all cone points carried by the marked
/// vertices, arc endpoints included.
std::int64_t side_meridian_sum(const DecoratedDualGraph& g, const std::vector<bool>& in_side) {
    const Group& group = *g.action()->group;
    const auto& mer = g.action()->meridian_images;
    std::int64_t sum = Group::kIdentity;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!in_side[v]) continue;
        for (int c : g.vertices()[v].cone_points) sum = group.op(sum, mer[c]);
    }
    for (const auto& s : g.semiedges()) {
        if (in_side[s.vertex]) {
            sum = group.op(sum, mer[s.endpoints[0]]);
            sum = group.op(sum, mer[s.endpoints[1]]);
        }
    }
    return sum;
}

/// Indices of edges that lie on some cycle of the underlying multigraph,
/// i.e. are not bridges. Loops count.
std::vector<bool> non_bridge_edges(const DecoratedDualGraph& g) {
    std::vector<bool> out(g.edge_count(), false);
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        if (e.is_loop()) {
            out[i] = true;
            continue;
        }
        // e is on a cycle iff removing it keeps its endpoints connected
        auto side = side_of(g, i);
        if (side[e.u]) out[i] = true;
    }
    return out;
}

} // namespace

DecoratedDualGraph derive_decorations(const DecoratedDualGraph& graph) {
    DecoratedDualGraph g = graph;
    const GroupPtr& group = g.action_->group;
    const auto& mer = g.action_->meridian_images;
    const bool derives = dynamic_cast<const AbelianGroup*>(group.get()) != nullptr;
    const bool genus_zero = g.action_->signature.genus == 0;

    g.edge_images_.resize(g.edges_.size());
    g.edge_duals_.assign(g.edges_.size(), Group::kIdentity);
    g.semiedge_images_.resize(g.semiedges_.size());
    g.semiedge_duals_.assign(g.semiedges_.size(), Group::kIdentity);
    g.vertex_images_.resize(g.vertices_.size());

    std::vector<std::int64_t> edge_classes(g.edges_.size(), Group::kIdentity);

    if (!derives) {
        // explicit decorations only; the homology shortcut is unavailable
        auto bridge_or_not = non_bridge_edges(g);
        for (std::size_t i = 0; i < g.edges_.size(); ++i) {
            const auto& e = g.edges_[i];
            if (!e.explicit_image) {
                throw Error(ErrorCode::NonAbelianDerivation,
                            "edge " + std::to_string(i) + " needs an explicit image subgroup");
            }
            g.edge_images_[i] = subgroup_generated(group, *e.explicit_image);
            if (e.explicit_dual) {
                g.edge_duals_[i] = *e.explicit_dual;
            } else if (bridge_or_not[i]) {
                throw Error(ErrorCode::NonAbelianDerivation,
                            "edge " + std::to_string(i) + " closes a cycle and needs a dual");
            }
        }
        for (std::size_t i = 0; i < g.semiedges_.size(); ++i) {
            const auto& s = g.semiedges_[i];
            if (!s.explicit_image || !s.explicit_dual) {
                throw Error(ErrorCode::NonAbelianDerivation,
                            "semiedge " + std::to_string(i) + " needs explicit image and dual");
            }
            g.semiedge_images_[i] = subgroup_generated(group, *s.explicit_image);
            g.semiedge_duals_[i] = *s.explicit_dual;
        }
        for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
            if (!g.vertices_[v].explicit_image) {
                throw Error(ErrorCode::NonAbelianDerivation,
                            "vertex " + std::to_string(v) + " needs an explicit image subgroup");
            }
            g.vertex_images_[v] = subgroup_generated(group, *g.vertices_[v].explicit_image);
        }
        g.decorated_ = true;
        return g;
    }

    if (genus_zero) {
        // tree case: the class of an edge is the sum of the meridian images
        // on one side, read from the side holding the lowest cone index
        for (std::size_t i = 0; i < g.edges_.size(); ++i) {
            auto in_side = side_of(g, static_cast<int>(i));
            std::int64_t sum = side_meridian_sum(g, in_side);
            // global relation: the two side sums are inverse to each other
            bool lowest_on_side = false;
            for (int v = 0; v < g.vertex_count() && !lowest_on_side; ++v) {
                if (!in_side[v]) continue;
                for (int c : g.vertices_[v].cone_points) {
                    if (c == 0) lowest_on_side = true;
                }
            }
            for (const auto& s : g.semiedges_) {
                if (in_side[s.vertex] && (s.endpoints[0] == 0 || s.endpoints[1] == 0)) {
                    lowest_on_side = true;
                }
            }
            edge_classes[i] = lowest_on_side ? sum : group->inverse(sum);
            g.edge_images_[i] = subgroup_generated(group, {edge_classes[i]});
            g.edge_duals_[i] = Group::kIdentity;
        }
    } else {
        for (std::size_t i = 0; i < g.edges_.size(); ++i) {
            const auto& e = g.edges_[i];
            if (!e.explicit_class) {
                throw Error(ErrorCode::MissingExplicitDecoration,
                            "edge " + std::to_string(i) +
                                " needs an explicit class on a positive-genus quotient");
            }
            edge_classes[i] = *e.explicit_class;
            g.edge_images_[i] = subgroup_generated(group, {edge_classes[i]});
        }
        // edges without a dual play the role of spanning-tree edges, so
        // they must not close a cycle among themselves
        std::vector<int> root(g.vertex_count());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        for (std::size_t i = 0; i < g.edges_.size(); ++i) {
            const auto& e = g.edges_[i];
            if (e.explicit_dual) {
                g.edge_duals_[i] = *e.explicit_dual;
                continue;
            }
            int a = find(e.u), b = find(e.v);
            if (a == b) {
                throw Error(ErrorCode::MissingExplicitDecoration,
                            "edge " + std::to_string(i) +
                                " closes a cycle and needs an explicit dual");
            }
            root[a] = b;
            g.edge_duals_[i] = Group::kIdentity;
        }
    }

    for (std::size_t i = 0; i < g.semiedges_.size(); ++i) {
        const auto& s = g.semiedges_[i];
        std::int64_t a = mer[s.endpoints[0]];
        std::int64_t b = mer[s.endpoints[1]];
        g.semiedge_images_[i] = subgroup_generated(group, {a, b});
        // the dual curve of an arc is a meridian of its first endpoint
        g.semiedge_duals_[i] = a;
    }

    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<std::int64_t> gens;
        for (int c : g.vertices_[v].cone_points) gens.push_back(mer[c]);
        for (std::size_t i = 0; i < g.edges_.size(); ++i) {
            const auto& e = g.edges_[i];
            if (e.u == v || e.v == v) gens.push_back(edge_classes[i]);
        }
        for (const auto& s : g.semiedges_) {
            if (s.vertex == v) {
                gens.push_back(group->op(mer[s.endpoints[0]], mer[s.endpoints[1]]));
            }
        }
        if (g.vertices_[v].genus > 0) {
            const auto& assigned = (*g.handle_assignment_)[v];
            for (int h : assigned) {
                gens.push_back(g.action_->handle_images[h].first);
                gens.push_back(g.action_->handle_images[h].second);
            }
        }
        g.vertex_images_[v] = subgroup_generated(group, gens);
    }

    g.decorated_ = true;
    return g;
}

} // namespace strata
