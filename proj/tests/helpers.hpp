#pragma once

#include <random>
#include <set>

#include "strata/enumerate.hpp"

namespace testutil {

using namespace strata;

inline ActionPtr make_action(GroupPtr group, std::int64_t genus,
                             std::vector<std::int64_t> cone_orders,
                             std::vector<std::int64_t> meridians,
                             std::vector<std::pair<std::int64_t, std::int64_t>> handles = {}) {
    auto action = std::make_shared<OrbifoldAction>();
    action->group = std::move(group);
    action->signature.genus = genus;
    action->signature.cone_orders = std::move(cone_orders);
    action->meridian_images = std::move(meridians);
    action->handle_images = std::move(handles);
    return action;
}

/// Genus-0 graph: a tree given by edges, cones distributed per vertex.
inline DecoratedDualGraph tree_graph(const ActionPtr& action,
                                     std::vector<std::vector<int>> cones,
                                     std::vector<std::pair<int, int>> edges,
                                     std::vector<DualSemiedge> semiedges = {}) {
    std::vector<DualVertex> vertices(cones.size());
    for (std::size_t v = 0; v < cones.size(); ++v) vertices[v].cone_points = cones[v];
    std::vector<DualEdge> es;
    for (auto [u, v] : edges) es.push_back({u, v, {}, {}, {}});
    return DecoratedDualGraph::build(action, std::move(vertices), std::move(es),
                                     std::move(semiedges));
}

/// Structural stable graph without deck context, for canon tests.
inline StableGraph plain_graph(std::vector<std::int64_t> weights,
                               std::vector<std::pair<int, int>> edges) {
    StableGraph g;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        g.vertices.push_back({0, static_cast<std::int64_t>(i), weights[i]});
    }
    for (auto [u, v] : edges) g.edges.push_back({0, false, 0, u, v});
    return g;
}

inline StableGraph relabeled(const StableGraph& g, const std::vector<int>& perm) {
    StableGraph out;
    out.vertices.resize(g.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        out.vertices[perm[i]] = g.vertices[i];
    }
    for (const auto& e : g.edges) {
        out.edges.push_back({e.source, e.from_semiedge, e.coset_rep, perm[e.u], perm[e.v]});
    }
    return out;
}

/// Exhaustive isomorphism test for small weighted multigraphs.
inline bool brute_isomorphic(const StableGraph& a, const StableGraph& b) {
    const int n = static_cast<int>(a.vertices.size());
    if (static_cast<int>(b.vertices.size()) != n || a.edges.size() != b.edges.size()) {
        return false;
    }
    auto adjacency = [n](const StableGraph& g) {
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        for (const auto& e : g.edges) {
            if (e.u == e.v) {
                m[e.u][e.u] += 1;
            } else {
                m[e.u][e.v] += 1;
                m[e.v][e.u] += 1;
            }
        }
        return m;
    };
    auto ma = adjacency(a);
    auto mb = adjacency(b);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (a.vertices[i].weight != b.vertices[perm[i]].weight) ok = false;
            for (int j = i; j < n && ok; ++j) {
                if (ma[i][j] != mb[perm[i]][perm[j]]) ok = false;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::int64_t below(std::int64_t n) {
        return static_cast<std::int64_t>(eng() % static_cast<std::uint64_t>(n));
    }
    std::int64_t in(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }
};

/// Valid genus-0 action on a random abelian group: cone orders are read off
/// the sampled elements, the relation is closed by construction, and
/// non-surjective or non-hyperbolic draws are rejected.
inline ActionPtr random_abelian_action(Rng& rng, std::int64_t max_order = 60,
                                       int max_cones = 10) {
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<std::int64_t> orders;
        int k = static_cast<int>(rng.in(1, 3));
        std::int64_t product = 1;
        for (int i = 0; i < k; ++i) {
            std::int64_t n = rng.in(1, 6);
            if (product * n > max_order) n = 1;
            orders.push_back(n);
            product *= n;
        }
        if (product < 2) continue;
        auto group = make_group(orders);
        int r = static_cast<int>(rng.in(4, max_cones));
        std::vector<std::int64_t> meridians;
        std::int64_t sum = Group::kIdentity;
        bool ok = true;
        for (int i = 0; i < r - 1; ++i) {
            std::int64_t x = rng.in(1, group->order() - 1);
            meridians.push_back(x);
            sum = group->op(sum, x);
        }
        std::int64_t last = group->inverse(sum);
        if (last == Group::kIdentity) continue;
        meridians.push_back(last);
        std::vector<std::int64_t> cone_orders;
        for (std::int64_t x : meridians) cone_orders.push_back(group->element_order(x));
        auto action = make_action(group, 0, cone_orders, meridians);
        if (!subgroup_generated(group, meridians)->is_full()) continue;
        if (!is_hyperbolic(action->signature)) continue;
        if (!validate_action(*action).valid()) continue;
        return action;
    }
    throw std::runtime_error("random action generation exhausted its attempts");
}

inline ActionPtr random_pgonal_action(Rng& rng) {
    const std::int64_t primes[] = {3, 5, 7};
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::int64_t p = primes[rng.below(3)];
        int m = static_cast<int>(rng.in(4, 8));
        std::vector<std::int64_t> exponents;
        std::int64_t sum = 0;
        for (int i = 0; i < m - 1; ++i) {
            std::int64_t e = rng.in(1, p - 1);
            exponents.push_back(e);
            sum += e;
        }
        std::int64_t last = (p - sum % p) % p;
        if (last == 0) continue;
        exponents.push_back(last);
        return make_pgonal_action(p, exponents);
    }
    throw std::runtime_error("random p-gonal generation exhausted its attempts");
}

inline ActionPtr random_hyperelliptic_action(Rng& rng) {
    std::int64_t genus = rng.in(2, 5);
    return make_pgonal_action(2, std::vector<std::int64_t>(2 * genus + 2, 1));
}

/// Admissible multicurve on a genus-0 quotient, sampled by rejection.
inline DecoratedDualGraph random_multicurve(Rng& rng, const ActionPtr& action) {
    const int r = static_cast<int>(action->signature.cone_count());
    std::vector<int> order2;
    for (int c = 0; c < r; ++c) {
        if (action->signature.cone_orders[c] == 2) order2.push_back(c);
    }
    for (int attempt = 0; attempt < 20000; ++attempt) {
        int max_edges = std::min(r - 3, 4);
        int e = max_edges >= 1 ? static_cast<int>(rng.in(0, max_edges)) : 0;
        int max_arcs = std::min<int>(2, static_cast<int>(order2.size()) / 2);
        int s = max_arcs >= 1 ? static_cast<int>(rng.in(0, max_arcs)) : 0;
        if (e + s == 0) continue;
        int vertex_count = e + 1;

        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < vertex_count; ++v) {
            edges.emplace_back(static_cast<int>(rng.below(v)), v);
        }

        std::vector<int> arc_pool = order2;
        for (std::size_t i = arc_pool.size(); i > 1; --i) {
            std::swap(arc_pool[i - 1], arc_pool[rng.below(static_cast<std::int64_t>(i))]);
        }
        std::vector<DualSemiedge> semiedges;
        std::set<int> used;
        for (int i = 0; i < s; ++i) {
            int a = arc_pool[2 * i], b = arc_pool[2 * i + 1];
            semiedges.push_back(
                {static_cast<int>(rng.below(vertex_count)), {std::min(a, b), std::max(a, b)}});
            used.insert(a);
            used.insert(b);
        }
        std::vector<std::vector<int>> cones(vertex_count);
        for (int c = 0; c < r; ++c) {
            if (used.count(c)) continue;
            cones[rng.below(vertex_count)].push_back(c);
        }
        try {
            auto graph = tree_graph(action, cones, edges, semiedges);
            if (check_admissible(graph).admissible()) return graph;
        } catch (const Error&) {
            continue;
        }
    }
    throw std::runtime_error("random multicurve generation exhausted its attempts");
}

} // namespace testutil
