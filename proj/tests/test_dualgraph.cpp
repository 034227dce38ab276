#include <doctest.h>

#include "helpers.hpp"

using namespace strata;
using namespace testutil;

namespace {

ActionPtr example1_action() {
    auto g = make_group({2, 3, 5});
    return make_action(g, 0, {2, 2, 5, 5, 2, 2, 3, 3},
                       {g->index_of({1, 0, 0}), g->index_of({1, 0, 0}), g->index_of({0, 0, 1}),
                        g->index_of({0, 0, 4}), g->index_of({1, 0, 0}), g->index_of({1, 0, 0}),
                        g->index_of({0, 1, 0}), g->index_of({0, 2, 0})});
}

} // namespace

TEST_CASE("suborbifold chi") {
    auto ex1 = example1_action();
    auto graph = tree_graph(ex1, {{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 1}});
    CHECK(suborbifold_chi(graph, 0) == Rational(-8, 5));
    CHECK(suborbifold_chi(graph, 1) == Rational(-4, 3));

    // genus-1 vertex with one arc and no interior cone points
    auto g12 = make_group({2, 2, 3});
    auto arc_action = make_action(g12, 1, {2, 2},
                                  {g12->index_of({1, 0, 0}), g12->index_of({1, 0, 0})},
                                  {{g12->index_of({0, 1, 0}), g12->index_of({0, 0, 1})}});
    std::vector<DualVertex> vs(1);
    vs[0].genus = 1;
    auto arc_graph = DecoratedDualGraph::build(arc_action, vs, {}, {{0, {0, 1}, {}, {}}},
                                               std::vector<std::vector<int>>{{0}});
    CHECK(suborbifold_chi(arc_graph, 0) == Rational(-1));

    // pair of pants: three edge-ends, no cones
    auto phi7 = make_pgonal_action(3, {1, 1, 1, 1, 1, 1});
    auto star = tree_graph(phi7, {{}, {0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(suborbifold_chi(star, 0) == Rational(-1));
}

TEST_CASE("admissibility") {
    auto fig3 = make_pgonal_action(3, {1, 1, 2, 2});
    CHECK(check_admissible(tree_graph(fig3, {{0, 1}, {2, 3}}, {{0, 1}})).admissible());

    // middle vertex is an annulus
    auto report =
        check_admissible(tree_graph(fig3, {{0, 1}, {}, {2, 3}}, {{0, 1}, {1, 2}}));
    CHECK_FALSE(report.admissible());
    CHECK(report.negative_chi_failures == std::vector<int>{1});

    // arcs must join order-2 cone points
    auto bad_arc = tree_graph(fig3, {{2, 3}}, {}, {{0, {0, 1}, {}, {}}});
    report = check_admissible(bad_arc);
    CHECK(report.bad_semiedges == std::vector<int>{0});
}

TEST_CASE("derivation on a genus-0 tree") {
    auto fig3 = make_pgonal_action(3, {1, 1, 2, 2});

    auto mixed = derive_decorations(tree_graph(fig3, {{0, 2}, {1, 3}}, {{0, 1}}));
    CHECK(mixed.edge_image(0)->is_trivial());   // 1 + 2 = 0 in Z_3
    CHECK(mixed.edge_dual(0) == 0);
    CHECK(mixed.vertex_image(0)->is_full());
    CHECK(mixed.vertex_image(1)->is_full());

    auto split = derive_decorations(tree_graph(fig3, {{0, 1}, {2, 3}}, {{0, 1}}));
    CHECK(split.edge_image(0)->is_full());      // 1 + 1 = 2 generates Z_3
    CHECK(split.vertex_image(0)->is_full());
}

TEST_CASE("derivation with arcs") {
    auto hyper = make_pgonal_action(2, {1, 1, 1, 1, 1, 1});
    auto graph = derive_decorations(
        tree_graph(hyper, {{2, 3, 4, 5}}, {}, {{0, {0, 1}, {}, {}}}));
    // an arc image is generated by two order-2 meridians
    CHECK(graph.semiedge_image(0)->size() == 2);
    CHECK(graph.semiedge_dual(0) == 1);
    CHECK(graph.vertex_image(0)->size() == 2);

    // all six points on arcs: the vertex image collapses
    auto arcs3 = derive_decorations(tree_graph(
        hyper, {{}}, {}, {{0, {0, 1}, {}, {}}, {0, {2, 3}, {}, {}}, {0, {4, 5}, {}, {}}}));
    CHECK(arcs3.vertex_image(0)->is_trivial());
}

TEST_CASE("derivation with explicit classes on a positive-genus quotient") {
    // torus quotient with two order-3 cone points, group Z_3 x Z_4
    auto g = make_group({3, 4});
    auto action = make_action(g, 1, {3, 3}, {g->index_of({1, 0}), g->index_of({2, 0})},
                              {{g->index_of({0, 0}), g->index_of({0, 1})}});
    std::vector<DualVertex> vs(1);
    vs[0].cone_points = {0, 1};
    std::vector<DualEdge> loop{{0, 0, g->index_of({0, 0}), g->index_of({0, 1}), {}}};
    auto graph = DecoratedDualGraph::build(action, vs, loop, {},
                                           std::vector<std::vector<int>>{{}});
    auto derived = derive_decorations(graph);
    CHECK(derived.vertex_image(0)->size() == 3);
    CHECK(derived.vertex_image(0)->contains(g->index_of({1, 0})));
    CHECK(derived.edge_image(0)->is_trivial());
    CHECK(derived.edge_dual(0) == g->index_of({0, 1}));

    // same loop without the explicit dual
    std::vector<DualEdge> bare{{0, 0, g->index_of({0, 0}), {}, {}}};
    auto missing = DecoratedDualGraph::build(action, vs, bare, {},
                                             std::vector<std::vector<int>>{{}});
    CHECK_THROWS_AS(derive_decorations(missing), Error);
    try {
        derive_decorations(missing);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingExplicitDecoration);
    }
}

TEST_CASE("side independence of derived edge images") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto action = random_abelian_action(rng, 40, 8);
        auto graph = random_multicurve(rng, action);
        if (graph.edge_count() == 0) continue;
        auto derived = derive_decorations(graph);
        const auto& group = action->group;
        for (int e = 0; e < graph.edge_count(); ++e) {
            // recompute both side sums directly
            const auto& edge = graph.edges()[e];
            std::vector<bool> side(graph.vertex_count(), false);
            std::vector<int> stack{edge.v};
            side[edge.v] = true;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int i = 0; i < graph.edge_count(); ++i) {
                    if (i == e) continue;
                    const auto& f = graph.edges()[i];
                    for (auto [a, b] : {std::pair{f.u, f.v}, std::pair{f.v, f.u}}) {
                        if (a == x && !side[b]) {
                            side[b] = true;
                            stack.push_back(b);
                        }
                    }
                }
            }
            std::int64_t sum_v = Group::kIdentity;
            std::int64_t sum_u = Group::kIdentity;
            for (int v = 0; v < graph.vertex_count(); ++v) {
                for (int c : graph.vertices()[v].cone_points) {
                    auto& target = side[v] ? sum_v : sum_u;
                    target = group->op(target, action->meridian_images[c]);
                }
            }
            for (const auto& s : graph.semiedges()) {
                auto& target = side[s.vertex] ? sum_v : sum_u;
                target = group->op(target, action->meridian_images[s.endpoints[0]]);
                target = group->op(target, action->meridian_images[s.endpoints[1]]);
            }
            CHECK(sum_u == group->inverse(sum_v));
            CHECK(same_subgroup(*subgroup_generated(group, {sum_u}),
                                *subgroup_generated(group, {sum_v})));
            CHECK(same_subgroup(*derived.edge_image(e), *subgroup_generated(group, {sum_v})));
        }
    }
}

TEST_CASE("decoration containment and surjectivity") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        auto action = random_abelian_action(rng, 40, 8);
        auto derived = derive_decorations(random_multicurve(rng, action));
        std::vector<std::int64_t> all;
        for (int e = 0; e < derived.edge_count(); ++e) {
            const auto& edge = derived.edges()[e];
            for (std::int64_t x : derived.edge_image(e)->elements) {
                CHECK(derived.vertex_image(edge.u)->contains(x));
                CHECK(derived.vertex_image(edge.v)->contains(x));
            }
            all.push_back(derived.edge_dual(e));
        }
        for (int s = 0; s < derived.semiedge_count(); ++s) {
            all.push_back(derived.semiedge_dual(s));
        }
        for (int v = 0; v < derived.vertex_count(); ++v) {
            for (std::int64_t x : derived.vertex_image(v)->elements) all.push_back(x);
        }
        // vertex images together with the dual-curve images generate
        // everything; this is what keeps lifts connected
        CHECK(subgroup_generated(action->group, all)->is_full());
    }
}

TEST_CASE("structural validation") {
    auto fig3 = make_pgonal_action(3, {1, 1, 2, 2});

    // unused cone point
    CHECK_THROWS_AS(tree_graph(fig3, {{0, 1}, {2}}, {{0, 1}}), Error);
    // doubly used cone point
    CHECK_THROWS_AS(tree_graph(fig3, {{0, 1, 2}, {2, 3}}, {{0, 1}}), Error);
    // disconnected
    CHECK_THROWS_AS(tree_graph(fig3, {{0, 1}, {2, 3}}, {}), Error);
    // genus accounting: a cycle on a genus-0 quotient
    CHECK_THROWS_AS(tree_graph(fig3, {{0, 1}, {2, 3}}, {{0, 1}, {0, 1}}), Error);
    // explicit fields are rejected on genus-0 abelian inputs
    std::vector<DualVertex> vs(2);
    vs[0].cone_points = {0, 1};
    vs[1].cone_points = {2, 3};
    std::vector<DualEdge> es{{0, 1, std::int64_t{1}, {}, {}}};
    CHECK_THROWS_AS(DecoratedDualGraph::build(fig3, vs, es, {}), Error);

    // handle bookkeeping
    auto g = make_group({2, 2});
    auto torus = make_action(g, 1, {2, 2}, {1, 1}, {{g->index_of({1, 0}), g->index_of({0, 1})}});
    std::vector<DualVertex> tv(1);
    tv[0].genus = 1;
    std::vector<DualEdge> none;
    CHECK_THROWS_AS(
        DecoratedDualGraph::build(torus, tv, none, {{0, {0, 1}, {}, {}}}),
        Error);   // positive-genus vertex without a handle assignment
    CHECK_THROWS_AS(DecoratedDualGraph::build(torus, tv, none, {{0, {0, 1}, {}, {}}},
                                              std::vector<std::vector<int>>{{0, 0}}),
                    Error);
    CHECK_NOTHROW(DecoratedDualGraph::build(torus, tv, none, {{0, {0, 1}, {}, {}}},
                                            std::vector<std::vector<int>>{{0}}));
}

TEST_CASE("table groups require explicit decorations") {
    // Z_4 by table, quotient (0; 2^6), meridians all the order-2 element
    std::vector<std::vector<std::int64_t>> t(4, std::vector<std::int64_t>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = (i + j) % 4;
    GroupPtr z4 = std::make_shared<const TableGroup>(t);
    auto action = make_action(z4, 0, {2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2});

    std::vector<DualVertex> vs(2);
    vs[0].cone_points = {0, 1, 2};
    vs[1].cone_points = {3, 4, 5};
    std::vector<DualEdge> es{{0, 1, {}, {}, {}}};
    auto bare = DecoratedDualGraph::build(action, vs, es, {});
    CHECK_THROWS_AS(derive_decorations(bare), Error);
    try {
        derive_decorations(bare);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonAbelianDerivation);
    }

    vs[0].explicit_image = std::vector<std::int64_t>{2};
    vs[1].explicit_image = std::vector<std::int64_t>{2};
    es[0].explicit_image = std::vector<std::int64_t>{2};
    auto decorated = derive_decorations(DecoratedDualGraph::build(action, vs, es, {}));
    CHECK(decorated.vertex_image(0)->size() == 2);
    CHECK(decorated.edge_dual(0) == 0);
}
