#include <doctest.h>

#include <map>
#include <set>

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

std::multiset<std::int64_t> weight_multiset(const StableGraph& g) {
    std::multiset<std::int64_t> out;
    for (const auto& v : g.vertices) out.insert(v.weight);
    return out;
}

// Z_d x Z_m action on a torus quotient with two order-d cone points and a
// one-loop multicurve
DecoratedDualGraph cycle_example(std::int64_t d, std::int64_t m) {
    auto g = make_group({d, m});
    auto action = make_action(g, 1, {d, d}, {g->index_of({1, 0}), g->index_of({d - 1, 0})},
                              {{g->index_of({0, 0}), g->index_of({0, 1})}});
    std::vector<DualVertex> vs(1);
    vs[0].cone_points = {0, 1};
    std::vector<DualEdge> loop{{0, 0, g->index_of({0, 0}), g->index_of({0, 1}), {}}};
    return DecoratedDualGraph::build(action, vs, loop, {},
                                     std::vector<std::vector<int>>{{}});
}

} // namespace

TEST_CASE("lift of the genus-2 three-gonal splits") {
    auto action = make_pgonal_action(3, {1, 1, 2, 2});

    auto even = lift_graph(derive_decorations(tree_graph(action, {{0, 1}, {2, 3}}, {{0, 1}})));
    CHECK(even.vertices.size() == 2);
    CHECK(even.edges.size() == 1);
    CHECK(weight_multiset(even) == std::multiset<std::int64_t>{1, 1});
    CHECK(stable_genus(even) == 2);
    CHECK(is_isomorphic(even, plain_graph({1, 1}, {{0, 1}})));

    auto mixed = lift_graph(derive_decorations(tree_graph(action, {{0, 2}, {1, 3}}, {{0, 1}})));
    CHECK(mixed.vertices.size() == 2);
    CHECK(mixed.edges.size() == 3);
    CHECK(weight_multiset(mixed) == std::multiset<std::int64_t>{0, 0});
    CHECK(stable_genus(mixed) == 2);
    CHECK(is_isomorphic(mixed, plain_graph({0, 0}, {{0, 1}, {0, 1}, {0, 1}})));
}

TEST_CASE("lift of the order-30 separating example") {
    auto graph = derive_decorations(
        tree_graph(example1_action(), {{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 1}}));
    auto lifted = lift_graph(graph);
    CHECK(lifted.vertices.size() == 8);
    CHECK(lifted.edges.size() == 30);
    CHECK(weight_multiset(lifted) == std::multiset<std::int64_t>{2, 2, 2, 2, 2, 4, 4, 4});
    CHECK(stable_genus(lifted) == 45);
    CHECK(stable_genus(lifted) == covering_genus(*graph.action()));

    // fibers: 3 lifts on the left, 5 on the right, equal weights inside
    std::map<int, std::set<std::int64_t>> fiber_weights;
    std::map<int, int> fiber_sizes;
    for (const auto& v : lifted.vertices) {
        fiber_weights[v.source].insert(v.weight);
        fiber_sizes[v.source] += 1;
    }
    CHECK(fiber_sizes[0] == 3);
    CHECK(fiber_sizes[1] == 5);
    CHECK(fiber_weights[0].size() == 1);
    CHECK(fiber_weights[1].size() == 1);

    // complete bipartite of order 2: every cross pair is joined by exactly
    // two edges
    std::map<std::pair<int, int>, int> pair_count;
    for (const auto& e : lifted.edges) {
        CHECK(lifted.vertices[e.u].source != lifted.vertices[e.v].source);
        auto key = std::minmax(e.u, e.v);
        pair_count[{key.first, key.second}] += 1;
    }
    CHECK(pair_count.size() == 15);
    for (const auto& [pair, count] : pair_count) CHECK(count == 2);
}

TEST_CASE("deck action") {
    auto action = make_pgonal_action(3, {1, 1, 2, 2});
    auto mixed = lift_graph(derive_decorations(tree_graph(action, {{0, 2}, {1, 3}}, {{0, 1}})));

    auto id = deck_action(mixed, 0);
    for (std::size_t i = 0; i < id.vertex_map.size(); ++i) CHECK(id.vertex_map[i] == (int)i);
    for (std::size_t i = 0; i < id.edge_map.size(); ++i) CHECK(id.edge_map[i] == (int)i);

    // vertices have full images, so they stay put; the three parallel edges
    // rotate in a 3-cycle
    auto rot = deck_action(mixed, 1);
    for (std::size_t i = 0; i < rot.vertex_map.size(); ++i) CHECK(rot.vertex_map[i] == (int)i);
    std::set<int> orbit{0};
    int at = 0;
    for (int step = 0; step < 3; ++step) {
        at = rot.edge_map[at];
        orbit.insert(at);
    }
    CHECK(at == 0);
    CHECK(orbit.size() == 3);

    // rotation of the lifted cycle by one step
    auto cycle = lift_graph(derive_decorations(cycle_example(3, 4)));
    auto g = std::dynamic_pointer_cast<const AbelianGroup>(cycle.group);
    auto step = deck_action(cycle, g->index_of({0, 1}));
    std::set<int> seen;
    at = 0;
    for (int k = 0; k < 4; ++k) {
        seen.insert(at);
        at = step.vertex_map[at];
    }
    CHECK(at == 0);
    CHECK(seen.size() == 4);
}

TEST_CASE("quotient check recovers the source shape") {
    auto action = make_pgonal_action(3, {1, 1, 2, 2});
    auto source = tree_graph(action, {{0, 2}, {1, 3}}, {{0, 1}});
    auto lifted = lift_graph(derive_decorations(source));
    CHECK(quotient_check(lifted) == shape_of(source));

    auto cyc = cycle_example(3, 4);
    CHECK(quotient_check(lift_graph(derive_decorations(cyc))) == shape_of(cyc));

    // arcs collapse back to semiedges
    auto hyper = make_pgonal_action(2, {1, 1, 1, 1, 1, 1});
    auto arc = tree_graph(hyper, {{2, 3, 4, 5}}, {}, {{0, {0, 1}, {}, {}}});
    CHECK(quotient_check(lift_graph(derive_decorations(arc))) == shape_of(arc));
}

TEST_CASE("stable genus") {
    CHECK(stable_genus(plain_graph({1, 1}, {{0, 1}})) == 2);
    std::vector<std::pair<int, int>> k37;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 10; ++j) k37.emplace_back(i, j);
    CHECK(stable_genus(plain_graph(std::vector<std::int64_t>(10, 0), k37)) == 12);
    CHECK_THROWS_AS(stable_genus(plain_graph({0, 0}, {{0, 0}})), Error);
}

TEST_CASE("p-gonal fast path") {
    // genus 3: split {1,1} | {1,1,2}
    auto fig4 = make_pgonal_action(3, {1, 1, 1, 1, 2});
    auto split = tree_graph(fig4, {{0, 1}, {2, 3, 4}}, {{0, 1}});
    auto fast = pgonal_fast_path(split, 3);
    CHECK(weight_multiset(fast) == std::multiset<std::int64_t>{1, 2});
    CHECK(fast.edges.size() == 1);
    CHECK(stable_genus(fast) == 3);
    CHECK(is_isomorphic(fast, lift_graph(derive_decorations(split))));

    // order-5 rows
    auto phi12 = make_pgonal_action(5, {1, 1, 1, 2});
    auto row12 = tree_graph(phi12, {{0, 1}, {2, 3}}, {{0, 1}});
    auto fast12 = pgonal_fast_path(row12, 5);
    CHECK(weight_multiset(fast12) == std::multiset<std::int64_t>{2, 2});
    CHECK(fast12.edges.size() == 1);

    auto phi13 = make_pgonal_action(5, {1, 1, 4, 4});
    auto row13 = tree_graph(phi13, {{0, 2}, {1, 3}}, {{0, 1}});
    auto fast13 = pgonal_fast_path(row13, 5);
    CHECK(weight_multiset(fast13) == std::multiset<std::int64_t>{0, 0});
    CHECK(fast13.edges.size() == 5);
    CHECK(is_isomorphic(fast13, lift_graph(derive_decorations(row13))));

    CHECK_THROWS_AS(pgonal_fast_path(row13, 3), Error);
    auto hyper = make_pgonal_action(2, {1, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(
        pgonal_fast_path(tree_graph(hyper, {{0, 1, 2}, {3, 4, 5}}, {{0, 1}}), 2), Error);
}

TEST_CASE("hyperelliptic fast path") {
    auto hyper = make_pgonal_action(2, {1, 1, 1, 1, 1, 1});

    // an arc at an odd vertex lifts to a loop
    auto odd_arc = tree_graph(hyper, {{2, 3, 4, 5}}, {}, {{0, {0, 1}, {}, {}}});
    auto lifted = hyperelliptic_fast_path(odd_arc);
    CHECK(lifted.vertices.size() == 1);
    REQUIRE(lifted.edges.size() == 1);
    CHECK(lifted.edges[0].u == lifted.edges[0].v);
    CHECK(weight_multiset(lifted) == std::multiset<std::int64_t>{1});
    CHECK(stable_genus(lifted) == 2);
    CHECK(is_isomorphic(lifted, lift_graph(derive_decorations(odd_arc))));

    // three arcs make the vertex even; each arc joins its two lifts
    auto even_arcs = tree_graph(
        hyper, {{}}, {}, {{0, {0, 1}, {}, {}}, {0, {2, 3}, {}, {}}, {0, {4, 5}, {}, {}}});
    auto even = hyperelliptic_fast_path(even_arcs);
    CHECK(even.vertices.size() == 2);
    CHECK(even.edges.size() == 3);
    for (const auto& e : even.edges) CHECK(e.u != e.v);
    CHECK(weight_multiset(even) == std::multiset<std::int64_t>{0, 0});
    CHECK(stable_genus(even) == 2);
    CHECK(is_isomorphic(even, lift_graph(derive_decorations(even_arcs))));

    // separating curve with three cone points per side
    auto split = tree_graph(hyper, {{0, 1, 2}, {3, 4, 5}}, {{0, 1}});
    auto both = hyperelliptic_fast_path(split);
    CHECK(weight_multiset(both) == std::multiset<std::int64_t>{1, 1});
    CHECK(both.edges.size() == 1);
    CHECK(is_isomorphic(both, lift_graph(derive_decorations(split))));

    CHECK_THROWS_AS(hyperelliptic_fast_path(cycle_example(3, 4)), Error);
}

TEST_CASE("fast paths agree with the engine on random inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        auto action = random_pgonal_action(rng);
        auto graph = random_multicurve(rng, action);
        std::int64_t p = action->group->order();
        CHECK(is_isomorphic(pgonal_fast_path(graph, p),
                            lift_graph(derive_decorations(graph))));
    }
    for (int trial = 0; trial < 40; ++trial) {
        auto action = random_hyperelliptic_action(rng);
        auto graph = random_multicurve(rng, action);
        CHECK(is_isomorphic(hyperelliptic_fast_path(graph),
                            lift_graph(derive_decorations(graph))));
    }
}

TEST_CASE("single-curve classification") {
    // separating: complete bipartite K^2_{3,5}
    auto ex1 = derive_decorations(
        tree_graph(example1_action(), {{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 1}}));
    auto fam = classify_single_curve(ex1);
    CHECK(fam.kind == SingleCurveFamily::Kind::SeparatingBipartite);
    CHECK(fam.m == 3);
    CHECK(fam.n == 5);
    CHECK(fam.d == 2);

    // non-separating: multiple cycle C^3_4
    auto cyc = derive_decorations(cycle_example(3, 4));
    fam = classify_single_curve(cyc);
    CHECK(fam.kind == SingleCurveFamily::Kind::NonSeparatingCycle);
    CHECK(fam.m == 4);
    CHECK(fam.d == 3);
    auto cyc_lift = lift_graph(cyc);
    CHECK(cyc_lift.vertices.size() == 4);
    CHECK(cyc_lift.edges.size() == 12);
    CHECK(weight_multiset(cyc_lift) == std::multiset<std::int64_t>{0, 0, 0, 0});
    CHECK(stable_genus(cyc_lift) == 9);

    // non-separating on a genus-2 surface quotient: C^1_m
    auto g6 = make_group({3, 2});
    auto action2 = make_action(
        g6, 2, {}, {},
        {{g6->index_of({1, 0}), g6->index_of({0, 1})}, {g6->index_of({0, 1}), g6->index_of({0, 1})}});
    std::vector<DualVertex> vs(1);
    vs[0].genus = 1;
    std::vector<DualEdge> loop{{0, 0, g6->index_of({0, 1}), g6->index_of({1, 0}), {}}};
    auto c1m = derive_decorations(DecoratedDualGraph::build(
        action2, vs, loop, {}, std::vector<std::vector<int>>{{1}}));
    fam = classify_single_curve(c1m);
    CHECK(fam.kind == SingleCurveFamily::Kind::NonSeparatingCycle);
    CHECK(fam.m == 3);
    CHECK(fam.d == 1);
    CHECK(stable_genus(lift_graph(c1m)) == covering_genus(*action2));

    // arc with a full vertex image: loops
    auto g2 = make_group({2, 1, 1});
    auto arc_action = make_action(g2, 1, {2, 2, 2, 2},
                                  {1, 1, 1, 1},
                                  {{g2->index_of({0, 0, 0}), g2->index_of({0, 0, 0})}});
    std::vector<DualVertex> av(1);
    av[0].genus = 1;
    av[0].cone_points = {2, 3};
    auto arc_graph = derive_decorations(DecoratedDualGraph::build(
        arc_action, av, {}, {{0, {0, 1}, {}, {}}}, std::vector<std::vector<int>>{{0}}));
    fam = classify_single_curve(arc_graph);
    CHECK(fam.kind == SingleCurveFamily::Kind::ArcLoops);
    CHECK(fam.count == 1);
    auto arc_lift = lift_graph(arc_graph);
    CHECK(arc_lift.vertices.size() == 1);
    CHECK(arc_lift.vertices[0].weight == 2);
    CHECK(stable_genus(arc_lift) == 3);

    // arc with an index-2 vertex image: parallel edges
    auto z8 = make_group({2, 2, 2});
    auto ex3iv = make_action(z8, 0, {2, 2, 2, 2, 2},
                             {z8->index_of({1, 1, 0}), z8->index_of({1, 0, 1}),
                              z8->index_of({0, 1, 1}), z8->index_of({0, 0, 1}),
                              z8->index_of({0, 0, 1})});
    std::vector<DualVertex> bv(1);
    bv[0].cone_points = {2, 3, 4};
    auto iv = derive_decorations(
        DecoratedDualGraph::build(ex3iv, bv, {}, {{0, {0, 1}, {}, {}}}));
    CHECK(iv.semiedge_image(0)->size() == 4);
    fam = classify_single_curve(iv);
    CHECK(fam.kind == SingleCurveFamily::Kind::ArcParallel);
    CHECK(fam.count == 2);
    auto iv_lift = lift_graph(iv);
    CHECK(iv_lift.vertices.size() == 2);
    CHECK(iv_lift.edges.size() == 2);
    CHECK(stable_genus(iv_lift) == covering_genus(*ex3iv));

    // more than one curve
    auto fig4 = make_pgonal_action(3, {1, 1, 1, 1, 2});
    auto two = derive_decorations(
        tree_graph(fig4, {{0, 1}, {2}, {3, 4}}, {{0, 1}, {1, 2}}));
    CHECK_THROWS_AS(classify_single_curve(two), Error);
}

TEST_CASE("engine rejects inconsistent explicit decorations") {
    auto table_of = [](std::int64_t n) {
        std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        return t;
    };

    // decorations inside a proper subgroup: the lift falls apart
    GroupPtr z4 = std::make_shared<const TableGroup>(table_of(4));
    auto action = make_action(z4, 0, {2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2});
    std::vector<DualVertex> vs(2);
    vs[0].cone_points = {0, 1, 2};
    vs[0].explicit_image = std::vector<std::int64_t>{2};
    vs[1].cone_points = {3, 4, 5};
    vs[1].explicit_image = std::vector<std::int64_t>{2};
    std::vector<DualEdge> es{{0, 1, {}, {}, std::vector<std::int64_t>{2}}};
    auto disconnected = derive_decorations(DecoratedDualGraph::build(action, vs, es, {}));
    CHECK_THROWS_AS(lift_graph(disconnected), Error);
    try {
        lift_graph(disconnected);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DisconnectedLift);
    }

    // curve image larger than the vertex image: fractional degree
    vs[0].explicit_image = std::vector<std::int64_t>{2};
    vs[1].explicit_image = std::vector<std::int64_t>{2};
    es[0].explicit_image = std::vector<std::int64_t>{1};
    auto fractional = derive_decorations(DecoratedDualGraph::build(action, vs, es, {}));
    CHECK_THROWS_AS(lift_graph(fractional), Error);
    try {
        lift_graph(fractional);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonIntegralWeight);
    }

    // a spread of trivial images drives the closed-form weight negative
    GroupPtr z2 = std::make_shared<const TableGroup>(table_of(2));
    auto big = make_action(z2, 0, std::vector<std::int64_t>(12, 2),
                           std::vector<std::int64_t>(12, 1));
    std::vector<DualVertex> one(1);
    one[0].cone_points = {8, 9, 10, 11};
    one[0].explicit_image = std::vector<std::int64_t>{};
    std::vector<DualSemiedge> arcs;
    for (int a = 0; a < 4; ++a) {
        DualSemiedge s;
        s.vertex = 0;
        s.endpoints = {2 * a, 2 * a + 1};
        s.explicit_image = std::vector<std::int64_t>{};
        s.explicit_dual = 0;
        arcs.push_back(s);
    }
    auto negative = derive_decorations(DecoratedDualGraph::build(big, one, {}, arcs));
    CHECK_THROWS_AS(lift_graph(negative), Error);
    try {
        lift_graph(negative);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeWeight);
    }
}
