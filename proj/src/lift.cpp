#include "strata/lift.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace strata {

namespace {

void require_decorated(const DecoratedDualGraph& g) {
    if (!g.decorated()) {
        throw Error(ErrorCode::NotDecorated, "derive decorations before lifting");
    }
}

void require_admissible(const DecoratedDualGraph& g) {
    auto report = check_admissible(g);
    if (!report.admissible()) {
        throw Error(ErrorCode::NotAdmissible, "multicurve is not admissible");
    }
}

bool graph_connected(const StableGraph& sg) {
    if (sg.vertices.empty()) return false;
    std::vector<std::vector<int>> adj(sg.vertices.size());
    for (const auto& e : sg.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(sg.vertices.size(), false);
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

} // namespace

GraphShape shape_of(const DecoratedDualGraph& graph) {
    GraphShape shape;
    shape.vertex_count = graph.vertex_count();
    for (const auto& e : graph.edges()) {
        shape.edge_ends.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    for (const auto& s : graph.semiedges()) {
        shape.semiedge_vertex.push_back(s.vertex);
    }
    return shape;
}

int StableGraph::find_vertex(int source, std::int64_t rep) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].source == source && vertices[i].coset_rep == rep) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

Multigraph to_multigraph(const StableGraph& graph) {
    Multigraph g = Multigraph::empty(static_cast<int>(graph.vertices.size()));
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        std::string payload;
        detail::append_u64(payload, static_cast<std::uint64_t>(graph.vertices[i].weight));
        g.vertex_payload[i] = std::move(payload);
    }
    for (const auto& e : graph.edges) {
        g.add_edge(e.u, e.v);
    }
    return g;
}

StableGraph lift_graph(const DecoratedDualGraph& graph) {
    require_decorated(graph);
    require_admissible(graph);

    const GroupPtr& group = graph.action()->group;
    const std::int64_t group_order = group->order();

    StableGraph sg;
    sg.group = group;
    sg.source_shape = shape_of(graph);

    // vertices: one per coset of each vertex image, weights by the closed form
    std::map<std::pair<int, std::int64_t>, int> vertex_index;
    std::vector<std::int64_t> source_weight(graph.vertex_count());
    std::vector<Rational> degree_formula(graph.vertex_count());
    for (int j = 0; j < graph.vertex_count(); ++j) {
        const SubgroupPtr& image = graph.vertex_image(j);
        sg.vertex_images.push_back(image);

        Rational degree(0);
        for (int e = 0; e < graph.edge_count(); ++e) {
            const auto& edge = graph.edges()[e];
            std::int64_t curve_size = graph.edge_image(e)->size();
            if (edge.is_loop()) {
                if (edge.u == j) degree += Rational(2, 1) / Rational(curve_size);
            } else {
                if (edge.u == j) degree += Rational(1, 1) / Rational(curve_size);
                if (edge.v == j) degree += Rational(1, 1) / Rational(curve_size);
            }
        }
        for (int s = 0; s < graph.semiedge_count(); ++s) {
            if (graph.semiedges()[s].vertex == j) {
                degree += Rational(2, 1) / Rational(graph.semiedge_image(s)->size());
            }
        }
        degree *= Rational(image->size());
        degree_formula[j] = degree;
        if (degree.denominator() != 1) {
            throw Error(ErrorCode::NonIntegralWeight,
                        "degree formula is fractional at vertex " + std::to_string(j) +
                            "; decorations are inconsistent");
        }

        Rational weight = Rational(1) -
                          (Rational(image->size()) * suborbifold_chi(graph, j) + degree) /
                              Rational(2);
        if (weight.denominator() != 1) {
            throw Error(ErrorCode::NonIntegralWeight,
                        "weight is fractional at vertex " + std::to_string(j));
        }
        if (weight.numerator() < 0) {
            throw Error(ErrorCode::NegativeWeight,
                        "weight is negative at vertex " + std::to_string(j));
        }
        source_weight[j] = weight.numerator();

        for (const Coset& coset : coset_partition(image)) {
            vertex_index[{j, coset.rep}] = static_cast<int>(sg.vertices.size());
            sg.vertices.push_back({j, coset.rep, source_weight[j]});
        }
    }

    // edges: one per coset of each curve image, endpoints by translation of
    // the coset representative, the far end twisted by the dual image
    auto attach = [&](int source, bool from_semiedge, const SubgroupPtr& image,
                      std::int64_t dual, int j_from, int j_to) {
        for (const Coset& coset : coset_partition(image)) {
            std::int64_t from_rep = coset_rep(*graph.vertex_image(j_from), coset.rep);
            std::int64_t to_rep =
                coset_rep(*graph.vertex_image(j_to), group->op(coset.rep, dual));
            sg.edges.push_back({source, from_semiedge, coset.rep,
                               vertex_index.at({j_from, from_rep}),
                               vertex_index.at({j_to, to_rep})});
        }
    };
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edges()[e];
        sg.edge_images.push_back(graph.edge_image(e));
        attach(e, false, graph.edge_image(e), graph.edge_dual(e), edge.u, edge.v);
    }
    for (int s = 0; s < graph.semiedge_count(); ++s) {
        const auto& semi = graph.semiedges()[s];
        sg.semiedge_images.push_back(graph.semiedge_image(s));
        attach(s, true, graph.semiedge_image(s), graph.semiedge_dual(s), semi.vertex,
               semi.vertex);
    }

    // every lifted vertex must realize the closed-form degree exactly
    std::vector<std::int64_t> counted(sg.vertices.size(), 0);
    for (const auto& e : sg.edges) {
        counted[e.u] += 1;
        counted[e.v] += 1;   // loops count twice
    }
    for (std::size_t i = 0; i < sg.vertices.size(); ++i) {
        if (counted[i] != degree_formula[sg.vertices[i].source].numerator()) {
            throw Error(ErrorCode::DegreeCheckFailed,
                        "vertex " + std::to_string(i) + " has counted degree " +
                            std::to_string(counted[i]) + " but the formula gives " +
                            std::to_string(degree_formula[sg.vertices[i].source].numerator()));
        }
    }

    // fiber cardinalities are forced by the partitions; recheck cheaply
    for (int j = 0; j < graph.vertex_count(); ++j) {
        std::int64_t fiber = std::count_if(sg.vertices.begin(), sg.vertices.end(),
                                           [&](const auto& v) { return v.source == j; });
        if (fiber * graph.vertex_image(j)->size() != group_order) {
            throw Error(ErrorCode::DegreeCheckFailed, "vertex fiber has the wrong size");
        }
    }

    if (!graph_connected(sg)) {
        throw Error(ErrorCode::DisconnectedLift,
                    "lift is disconnected; decorations do not generate the group");
    }

    // genus conservation is the built-in oracle for the weight formula
    std::int64_t total = stable_genus(sg);
    std::int64_t expected = covering_genus(*graph.action());
    if (total != expected) {
        throw Error(ErrorCode::GenusCheckFailed,
                    "stable genus " + std::to_string(total) + " differs from covering genus " +
                        std::to_string(expected));
    }
    return sg;
}

std::int64_t stable_genus(const StableGraph& graph) {
    if (!graph_connected(graph)) {
        throw Error(ErrorCode::DisconnectedLift, "stable genus needs a connected graph");
    }
    std::int64_t weights = 0;
    for (const auto& v : graph.vertices) weights += v.weight;
    return weights + static_cast<std::int64_t>(graph.edges.size()) -
           static_cast<std::int64_t>(graph.vertices.size()) + 1;
}

DeckAutomorphism deck_action(const StableGraph& graph, std::int64_t g) {
    if (!graph.has_context()) {
        throw Error(ErrorCode::QuotientMismatch, "graph carries no deck-action context");
    }
    const Group& group = *graph.group;
    if (g < 0 || g >= group.order()) {
        throw Error(ErrorCode::ElementNotInGroup, "deck element out of range");
    }

    std::map<std::pair<int, std::int64_t>, int> vertex_index;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        vertex_index[{graph.vertices[i].source, graph.vertices[i].coset_rep}] =
            static_cast<int>(i);
    }
    std::map<std::tuple<bool, int, std::int64_t>, int> edge_index;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        edge_index[{e.from_semiedge, e.source, e.coset_rep}] = static_cast<int>(i);
    }

    DeckAutomorphism out;
    out.vertex_map.resize(graph.vertices.size());
    out.edge_map.resize(graph.edges.size());
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const auto& v = graph.vertices[i];
        std::int64_t rep =
            coset_rep(*graph.vertex_images[v.source], group.op(g, v.coset_rep));
        out.vertex_map[i] = vertex_index.at({v.source, rep});
        if (graph.vertices[out.vertex_map[i]].weight != v.weight) {
            throw Error(ErrorCode::QuotientMismatch, "deck action does not preserve weights");
        }
    }
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        const SubgroupPtr& image =
            e.from_semiedge ? graph.semiedge_images[e.source] : graph.edge_images[e.source];
        std::int64_t rep = coset_rep(*image, group.op(g, e.coset_rep));
        int target = edge_index.at({e.from_semiedge, e.source, rep});
        out.edge_map[i] = target;
        const auto& f = graph.edges[target];
        if (f.u != out.vertex_map[e.u] || f.v != out.vertex_map[e.v]) {
            throw Error(ErrorCode::QuotientMismatch, "deck action breaks an incidence");
        }
    }
    return out;
}

GraphShape quotient_check(const StableGraph& graph) {
    if (!graph.has_context()) {
        throw Error(ErrorCode::QuotientMismatch, "graph carries no deck-action context");
    }
    const Group& group = *graph.group;

    // orbits under the full deck group
    std::vector<int> root(graph.vertices.size());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    auto unite = [&](int a, int b) { root[find(a)] = find(b); };

    std::vector<int> edge_root(graph.edges.size());
    std::iota(edge_root.begin(), edge_root.end(), 0);
    std::function<int(int)> edge_find = [&](int x) {
        while (edge_root[x] != x) x = edge_root[x] = edge_root[edge_root[x]];
        return x;
    };

    for (std::int64_t g = 0; g < group.order(); ++g) {
        DeckAutomorphism a = deck_action(graph, g);
        for (std::size_t i = 0; i < a.vertex_map.size(); ++i) {
            unite(static_cast<int>(i), a.vertex_map[i]);
        }
        for (std::size_t i = 0; i < a.edge_map.size(); ++i) {
            edge_root[edge_find(static_cast<int>(i))] = edge_find(a.edge_map[i]);
        }
    }

    // each vertex orbit must be exactly one source fiber
    std::map<int, std::set<int>> orbits_by_source;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        orbits_by_source[graph.vertices[i].source].insert(find(static_cast<int>(i)));
    }
    for (const auto& [source, orbits] : orbits_by_source) {
        if (orbits.size() != 1) {
            throw Error(ErrorCode::QuotientMismatch,
                        "deck action is not transitive on the fiber of vertex " +
                            std::to_string(source));
        }
    }

    GraphShape shape;
    shape.vertex_count = static_cast<int>(orbits_by_source.size());
    shape.edge_ends.resize(graph.edge_images.size(), {-1, -1});
    shape.semiedge_vertex.resize(graph.semiedge_images.size(), -1);

    std::map<std::pair<bool, int>, std::set<int>> edge_orbits;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        edge_orbits[{e.from_semiedge, e.source}].insert(edge_find(static_cast<int>(i)));
        int su = graph.vertices[e.u].source;
        int sv = graph.vertices[e.v].source;
        auto ends = std::minmax(su, sv);
        if (e.from_semiedge) {
            if (su != sv) {
                throw Error(ErrorCode::QuotientMismatch, "semiedge lift leaves its fiber");
            }
            int& slot = shape.semiedge_vertex[e.source];
            if (slot >= 0 && slot != su) {
                throw Error(ErrorCode::QuotientMismatch, "semiedge orbit is inconsistent");
            }
            slot = su;
        } else {
            auto& slot = shape.edge_ends[e.source];
            if (slot.first >= 0 && slot != std::pair{ends.first, ends.second}) {
                throw Error(ErrorCode::QuotientMismatch, "edge orbit is inconsistent");
            }
            slot = {ends.first, ends.second};
        }
    }
    for (const auto& [key, orbits] : edge_orbits) {
        if (orbits.size() != 1) {
            throw Error(ErrorCode::QuotientMismatch,
                        "deck action is not transitive on an edge fiber");
        }
    }

    if (!(shape == graph.source_shape)) {
        throw Error(ErrorCode::QuotientMismatch, "orbit quotient differs from the source graph");
    }
    return shape;
}

namespace {

/// Common core of the two prime fast paths: identification of p copies of
/// the source graph along the pieces lifting to a single copy.
StableGraph prime_copies_lift(const DecoratedDualGraph& graph, std::int64_t p,
                              const std::vector<bool>& edge_multiple,
                              const std::vector<bool>& vertex_multiple,
                              const std::vector<std::int64_t>& weight) {
    const GroupPtr& group = graph.action()->group;
    StableGraph sg;
    sg.group = group;
    sg.source_shape = shape_of(graph);

    std::map<std::pair<int, std::int64_t>, int> vertex_index;
    for (int j = 0; j < graph.vertex_count(); ++j) {
        sg.vertex_images.push_back(vertex_multiple[j] ? trivial_subgroup(group)
                                                      : full_subgroup(group));
        std::int64_t copies = vertex_multiple[j] ? p : 1;
        for (std::int64_t t = 0; t < copies; ++t) {
            vertex_index[{j, t}] = static_cast<int>(sg.vertices.size());
            sg.vertices.push_back({j, t, weight[j]});
        }
    }
    auto end_vertex = [&](int j, std::int64_t t) {
        return vertex_index.at({j, vertex_multiple[j] ? t : 0});
    };
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edges()[e];
        sg.edge_images.push_back(edge_multiple[e] ? trivial_subgroup(group)
                                                  : full_subgroup(group));
        std::int64_t copies = edge_multiple[e] ? p : 1;
        for (std::int64_t t = 0; t < copies; ++t) {
            sg.edges.push_back({e, false, t, end_vertex(edge.u, t), end_vertex(edge.v, t)});
        }
    }
    // semiedges: one lifted closed curve each; a loop at the single lift of
    // an odd vertex, or an edge joining the two lifts of an even vertex
    for (int s = 0; s < graph.semiedge_count(); ++s) {
        const auto& semi = graph.semiedges()[s];
        sg.semiedge_images.push_back(full_subgroup(group));
        if (vertex_multiple[semi.vertex]) {
            sg.edges.push_back({s, true, 0, end_vertex(semi.vertex, 0),
                               end_vertex(semi.vertex, 1)});
        } else {
            int v = end_vertex(semi.vertex, 0);
            sg.edges.push_back({s, true, 0, v, v});
        }
    }
    if (!graph_connected(sg)) {
        throw Error(ErrorCode::DisconnectedLift, "fast-path lift is disconnected");
    }
    std::int64_t total = stable_genus(sg);
    std::int64_t expected = covering_genus(*graph.action());
    if (total != expected) {
        throw Error(ErrorCode::GenusCheckFailed,
                    "fast path: stable genus " + std::to_string(total) +
                        " differs from covering genus " + std::to_string(expected));
    }
    return sg;
}

std::vector<std::int64_t> exponent_side_sums(const DecoratedDualGraph& graph) {
    // for each edge: sum of the exponents strictly beyond it, arc endpoints
    // included, as plain integers (cyclic group of prime order)
    std::vector<std::int64_t> sums(graph.edge_count(), 0);
    const auto& mer = graph.action()->meridian_images;
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edges()[e];
        std::vector<bool> in_side(graph.vertex_count(), false);
        std::vector<int> stack{edge.v};
        in_side[edge.v] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int i = 0; i < graph.edge_count(); ++i) {
                if (i == e) continue;
                const auto& f = graph.edges()[i];
                for (auto [a, b] : {std::pair{f.u, f.v}, std::pair{f.v, f.u}}) {
                    if (a == x && !in_side[b]) {
                        in_side[b] = true;
                        stack.push_back(b);
                    }
                }
            }
        }
        std::int64_t sum = 0;
        for (int v = 0; v < graph.vertex_count(); ++v) {
            if (!in_side[v]) continue;
            for (int c : graph.vertices()[v].cone_points) sum += mer[c];
        }
        for (const auto& s : graph.semiedges()) {
            if (in_side[s.vertex]) sum += mer[s.endpoints[0]] + mer[s.endpoints[1]];
        }
        sums[e] = sum;
    }
    return sums;
}

VertexLocalCounts local_counts(const DecoratedDualGraph& graph, int j,
                               const std::vector<bool>& edge_multiple) {
    VertexLocalCounts counts;
    counts.c = static_cast<int>(graph.vertices()[j].cone_points.size());
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edges()[e];
        int ends = (edge.u == j) + (edge.v == j);
        if (edge_multiple[e]) {
            counts.m += ends;
        } else {
            counts.n += ends;
        }
    }
    for (const auto& s : graph.semiedges()) {
        if (s.vertex == j) ++counts.s;
    }
    return counts;
}

} // namespace

StableGraph pgonal_fast_path(const DecoratedDualGraph& graph, std::int64_t p) {
    std::int64_t detected = 0;
    if (!is_pgonal(*graph.action(), &detected) || detected != p) {
        throw Error(ErrorCode::NotPGonal, "action is not p-gonal for p = " + std::to_string(p));
    }
    require_admissible(graph);
    if (graph.semiedge_count() != 0) {
        throw Error(ErrorCode::NotPGonal, "arcs cannot occur without order-2 cone points");
    }

    auto sums = exponent_side_sums(graph);
    std::vector<bool> edge_multiple(graph.edge_count());
    for (int e = 0; e < graph.edge_count(); ++e) {
        edge_multiple[e] = (sums[e] % p == 0);
    }
    std::vector<bool> vertex_multiple(graph.vertex_count());
    std::vector<std::int64_t> weight(graph.vertex_count());
    for (int j = 0; j < graph.vertex_count(); ++j) {
        VertexLocalCounts counts = local_counts(graph, j, edge_multiple);
        vertex_multiple[j] = (counts.c + counts.n == 0);
        weight[j] = vertex_multiple[j] ? 0 : (p - 1) / 2 * (counts.n + counts.c - 2);
        if (weight[j] < 0) {
            throw Error(ErrorCode::NegativeWeight, "fast-path weight is negative");
        }
    }
    return prime_copies_lift(graph, p, edge_multiple, vertex_multiple, weight);
}

StableGraph hyperelliptic_fast_path(const DecoratedDualGraph& graph) {
    if (!is_hyperelliptic_action(*graph.action())) {
        throw Error(ErrorCode::NotHyperelliptic, "action is not the hyperelliptic involution");
    }
    require_admissible(graph);

    auto sums = exponent_side_sums(graph);
    std::vector<bool> edge_even(graph.edge_count());
    for (int e = 0; e < graph.edge_count(); ++e) {
        edge_even[e] = (sums[e] % 2 == 0);
    }
    std::vector<bool> vertex_even(graph.vertex_count());
    std::vector<std::int64_t> weight(graph.vertex_count());
    for (int j = 0; j < graph.vertex_count(); ++j) {
        VertexLocalCounts counts = local_counts(graph, j, edge_even);
        // a semiedge contributes nothing to the vertex image: the boundary
        // class of an arc is the sum of two order-2 meridians
        vertex_even[j] = (counts.c + counts.n == 0);
        if (vertex_even[j]) {
            weight[j] = 0;
        } else {
            if ((counts.n + counts.c) % 2 != 0) {
                throw Error(ErrorCode::NonIntegralWeight, "odd vertex with odd n + c");
            }
            weight[j] = (counts.n + counts.c - 2) / 2;
            if (weight[j] < 0) {
                throw Error(ErrorCode::NegativeWeight, "fast-path weight is negative");
            }
        }
    }
    return prime_copies_lift(graph, 2, edge_even, vertex_even, weight);
}

StableGraph single_curve_family_graph(const SingleCurveFamily& family,
                                      std::int64_t weight_first, std::int64_t weight_second) {
    StableGraph sg;
    switch (family.kind) {
        case SingleCurveFamily::Kind::SeparatingBipartite:
            for (std::int64_t i = 0; i < family.m; ++i) sg.vertices.push_back({0, i, weight_first});
            for (std::int64_t i = 0; i < family.n; ++i)
                sg.vertices.push_back({1, i, weight_second});
            for (std::int64_t i = 0; i < family.m; ++i)
                for (std::int64_t j = 0; j < family.n; ++j)
                    for (std::int64_t k = 0; k < family.d; ++k)
                        sg.edges.push_back({0, false, 0, static_cast<int>(i),
                                           static_cast<int>(family.m + j)});
            break;
        case SingleCurveFamily::Kind::NonSeparatingCycle:
            for (std::int64_t i = 0; i < family.m; ++i) sg.vertices.push_back({0, i, weight_first});
            for (std::int64_t i = 0; i < family.m; ++i)
                for (std::int64_t k = 0; k < family.d; ++k)
                    sg.edges.push_back({0, false, 0, static_cast<int>(i),
                                       static_cast<int>((i + 1) % family.m)});
            break;
        case SingleCurveFamily::Kind::ArcLoops:
            sg.vertices.push_back({0, 0, weight_first});
            for (std::int64_t k = 0; k < family.count; ++k) sg.edges.push_back({0, true, 0, 0, 0});
            break;
        case SingleCurveFamily::Kind::ArcParallel:
            sg.vertices.push_back({0, 0, weight_first});
            sg.vertices.push_back({0, 1, weight_first});
            for (std::int64_t k = 0; k < family.count; ++k) sg.edges.push_back({0, true, 0, 0, 1});
            break;
    }
    return sg;
}

SingleCurveFamily classify_single_curve(const DecoratedDualGraph& graph) {
    if (graph.edge_count() + graph.semiedge_count() != 1) {
        throw Error(ErrorCode::NotSingleCurve, "multicurve has more than one component");
    }
    if (!graph.action()->group->is_abelian()) {
        throw Error(ErrorCode::NotSingleCurve, "classification needs an abelian group");
    }
    require_decorated(graph);
    const std::int64_t group_order = graph.action()->group->order();

    SingleCurveFamily family{};
    StableGraph lifted = lift_graph(graph);

    if (graph.edge_count() == 1) {
        const auto& edge = graph.edges()[0];
        std::int64_t r = group_order / graph.edge_image(0)->size();
        if (!edge.is_loop()) {
            family.kind = SingleCurveFamily::Kind::SeparatingBipartite;
            std::int64_t m = group_order / graph.vertex_image(0)->size();
            std::int64_t n = group_order / graph.vertex_image(1)->size();
            std::int64_t w0 = lifted.vertices.front().weight;
            std::int64_t w1 = lifted.vertices.back().weight;
            if (m > n) {
                std::swap(m, n);
                std::swap(w0, w1);
            }
            family.m = m;
            family.n = n;
            family.d = r / (m * n);
            family.count = r;
            StableGraph expected = single_curve_family_graph(family, w0, w1);
            if (!is_isomorphic(lifted, expected)) {
                throw Error(ErrorCode::NotSingleCurve, "lift is not the named bipartite family");
            }
        } else {
            family.kind = SingleCurveFamily::Kind::NonSeparatingCycle;
            family.m = group_order / graph.vertex_image(0)->size();
            family.d = graph.vertex_image(0)->size() / graph.edge_image(0)->size();
            family.count = r;
            StableGraph expected =
                single_curve_family_graph(family, lifted.vertices.front().weight, 0);
            if (!is_isomorphic(lifted, expected)) {
                throw Error(ErrorCode::NotSingleCurve, "lift is not the named cycle family");
            }
        }
    } else {
        std::int64_t fiber = group_order / graph.vertex_image(0)->size();
        std::int64_t count = group_order / graph.semiedge_image(0)->size();
        if (fiber == 1) {
            family.kind = SingleCurveFamily::Kind::ArcLoops;
        } else if (fiber == 2) {
            family.kind = SingleCurveFamily::Kind::ArcParallel;
        } else {
            throw Error(ErrorCode::NotSingleCurve, "arc complement has fiber > 2");
        }
        family.m = fiber;
        family.count = count;
        StableGraph expected =
            single_curve_family_graph(family, lifted.vertices.front().weight, 0);
        if (!is_isomorphic(lifted, expected)) {
            throw Error(ErrorCode::NotSingleCurve, "lift is not the named arc family");
        }
    }
    return family;
}

} // namespace strata
