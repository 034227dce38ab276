#include "strata/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace strata {

namespace {

UnlabeledTree tree_from_pruefer(const std::vector<int>& seq, int n) {
    UnlabeledTree tree;
    tree.vertex_count = n;
    std::vector<int> degree(n, 1);
    for (int s : seq) ++degree[s];
    std::vector<bool> used(n, false);
    std::vector<int> work = seq;
    for (int s : work) {
        int leaf = -1;
        for (int v = 0; v < n; ++v) {
            if (degree[v] == 1 && !used[v]) {
                leaf = v;
                break;
            }
        }
        tree.edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
        used[leaf] = true;
        --degree[s];
    }
    std::vector<int> last;
    for (int v = 0; v < n; ++v) {
        if (!used[v] && degree[v] == 1) last.push_back(v);
    }
    tree.edges.emplace_back(last[0], last[1]);
    return tree;
}

CanonicalForm tree_shape_key(const UnlabeledTree& tree) {
    Multigraph g = Multigraph::empty(tree.vertex_count);
    for (auto [u, v] : tree.edges) g.add_edge(u, v);
    return canonical_form(g);
}

} // namespace

std::vector<UnlabeledTree> enumerate_trees(int max_edges) {
    if (max_edges < 1) {
        throw Error(ErrorCode::BadRange, "max_edges must be >= 1");
    }
    if (max_edges > 7) {
        throw Error(ErrorCode::SizeBoundExceeded, "tree enumeration is bounded at 7 edges");
    }
    std::vector<UnlabeledTree> out;
    for (int n = 2; n <= max_edges + 1; ++n) {
        std::map<std::string, UnlabeledTree> seen;
        if (n == 2) {
            UnlabeledTree t;
            t.vertex_count = 2;
            t.edges = {{0, 1}};
            seen[tree_shape_key(t).bytes] = t;
        } else {
            std::vector<int> seq(n - 2, 0);
            for (;;) {
                UnlabeledTree t = tree_from_pruefer(seq, n);
                seen.emplace(tree_shape_key(t).bytes, t);
                int pos = n - 3;
                while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
                if (pos < 0) break;
                ++seq[pos];
            }
        }
        for (auto& [key, t] : seen) out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct ExponentClass {
    std::int64_t element = 0;
    std::int64_t order = 0;
    std::vector<int> cones;   // ascending cone indices carrying this image
};

struct MulticurveSearch {
    const ActionPtr& action;
    std::vector<ExponentClass> classes;
    std::vector<std::pair<int, int>> pair_types;   // (class, class) with both of order 2
    std::map<std::string, DecoratedTree>& out;

    const UnlabeledTree* tree = nullptr;
    std::vector<int> degree;
    std::vector<int> rem;
    std::vector<std::vector<int>> interior;                 // vertex -> class -> count
    std::vector<std::vector<std::pair<int, int>>> arcs;     // vertex -> pair types

    MulticurveSearch(const ActionPtr& a, std::map<std::string, DecoratedTree>& sink)
        : action(a), out(sink) {
        std::map<std::int64_t, std::vector<int>> by_element;
        for (std::size_t c = 0; c < a->meridian_images.size(); ++c) {
            by_element[a->meridian_images[c]].push_back(static_cast<int>(c));
        }
        for (auto& [element, cones] : by_element) {
            classes.push_back({element, a->group->element_order(element), cones});
        }
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].order != 2) continue;
            for (std::size_t j = i; j < classes.size(); ++j) {
                if (classes[j].order != 2) continue;
                pair_types.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }

    void run(const UnlabeledTree& t) {
        tree = &t;
        degree.assign(t.vertex_count, 0);
        for (auto [u, v] : t.edges) {
            ++degree[u];
            ++degree[v];
        }
        rem.clear();
        for (const auto& cls : classes) rem.push_back(static_cast<int>(cls.cones.size()));
        interior.assign(t.vertex_count, std::vector<int>(classes.size(), 0));
        arcs.assign(t.vertex_count, {});
        place_vertex(0);
    }

    bool vertex_admissible(int v) const {
        Rational chi(2 - degree[v] - static_cast<std::int64_t>(arcs[v].size()), 1);
        for (std::size_t k = 0; k < classes.size(); ++k) {
            chi -= Rational(classes[k].order - 1, classes[k].order) * interior[v][k];
        }
        return chi < Rational(0);
    }

    void place_vertex(int v) {
        if (v == tree->vertex_count) {
            if (std::any_of(rem.begin(), rem.end(), [](int r) { return r != 0; })) return;
            record();
            return;
        }
        choose_arcs(v, 0);
    }

    void choose_arcs(int v, int min_pair) {
        choose_interior(v, 0);
        for (int p = min_pair; p < static_cast<int>(pair_types.size()); ++p) {
            auto [a, b] = pair_types[p];
            int need_a = (a == b) ? 2 : 1;
            if (rem[a] < need_a || (a != b && rem[b] < 1)) continue;
            rem[a] -= 1;
            rem[b] -= 1;
            arcs[v].push_back(pair_types[p]);
            choose_arcs(v, p);
            arcs[v].pop_back();
            rem[a] += 1;
            rem[b] += 1;
        }
    }

    void choose_interior(int v, int k) {
        if (k == static_cast<int>(classes.size())) {
            if (!vertex_admissible(v)) return;
            place_vertex(v + 1);
            return;
        }
        for (int take = 0; take <= rem[k]; ++take) {
            rem[k] -= take;
            interior[v][k] = take;
            choose_interior(v, k + 1);
            interior[v][k] = 0;
            rem[k] += take;
        }
    }

    void record() {
        if (tree->edges.empty()) {
            bool any_arcs = std::any_of(arcs.begin(), arcs.end(),
                                        [](const auto& a) { return !a.empty(); });
            if (!any_arcs) return;   // empty multicurve
        }
        DecoratedTree dt;
        dt.vertex_count = tree->vertex_count;
        dt.edges = tree->edges;
        dt.vertex_cones.assign(tree->vertex_count, {});
        std::vector<std::size_t> next(classes.size(), 0);
        auto pop = [&](int k) { return classes[k].cones[next[k]++]; };
        for (int v = 0; v < tree->vertex_count; ++v) {
            for (std::size_t k = 0; k < classes.size(); ++k) {
                for (int i = 0; i < interior[v][k]; ++i) dt.vertex_cones[v].push_back(pop(static_cast<int>(k)));
            }
        }
        for (int v = 0; v < tree->vertex_count; ++v) {
            for (auto [a, b] : arcs[v]) {
                int ca = pop(a);
                int cb = pop(b);
                dt.arcs.push_back({v, {ca, cb}});
            }
        }
        out.emplace(tree_class_key(*action, dt).bytes, std::move(dt));
    }
};

} // namespace

std::vector<DecoratedTree> enumerate_multicurves(const ActionPtr& action) {
    if (action->signature.genus != 0) {
        throw Error(ErrorCode::NotGenusZero, "enumeration needs a genus-0 quotient");
    }
    if (!action->group->is_abelian()) {
        throw Error(ErrorCode::NonAbelianDerivation,
                    "enumeration derives decorations, which needs an abelian group");
    }
    const int r = static_cast<int>(action->signature.cone_count());

    std::map<std::string, DecoratedTree> found;
    MulticurveSearch search(action, found);

    UnlabeledTree lone;
    lone.vertex_count = 1;
    search.run(lone);
    if (r - 3 >= 1) {
        for (const auto& tree : enumerate_trees(r - 3)) {
            search.run(tree);
        }
    }

    std::vector<DecoratedTree> out;
    out.reserve(found.size());
    for (auto& [key, tree] : found) out.push_back(std::move(tree));
    return out;
}

DecoratedDualGraph decorated_graph_from_tree(const ActionPtr& action, const DecoratedTree& tree) {
    std::vector<DualVertex> vertices(tree.vertex_count);
    for (int v = 0; v < tree.vertex_count; ++v) {
        vertices[v].cone_points = tree.vertex_cones[v];
    }
    std::vector<DualEdge> edges;
    for (auto [u, v] : tree.edges) edges.push_back({u, v, {}, {}, {}});
    std::vector<DualSemiedge> semiedges;
    for (const auto& arc : tree.arcs) semiedges.push_back({arc.vertex, arc.endpoints, {}, {}});
    return DecoratedDualGraph::build(action, std::move(vertices), std::move(edges),
                                     std::move(semiedges));
}

std::size_t StrataCatalog::class_count() const {
    std::size_t total = 0;
    for (const auto& entry : entries) total += entry.classes.size();
    return total;
}

StrataCatalog boundary_strata(const ActionPtr& action, int jobs) {
    std::vector<DecoratedTree> classes = enumerate_multicurves(action);

    struct Lifted {
        CanonicalForm key;
        StableGraph graph;
    };
    std::vector<Lifted> lifted(classes.size());
    auto work = [&](std::size_t i) {
        StableGraph sg = lift_graph(derive_decorations(decorated_graph_from_tree(action, classes[i])));
        lifted[i] = {canonical_form(sg), std::move(sg)};
    };
    if (jobs <= 1 || classes.size() < 2) {
        for (std::size_t i = 0; i < classes.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        int count = std::min<int>(jobs, static_cast<int>(classes.size()));
        for (int t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= classes.size()) return;
                    work(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // deterministic merge: classes arrive in class-key order, entries are
    // then sorted by canonical form
    std::map<std::string, std::size_t> index;
    StrataCatalog catalog;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto [it, fresh] = index.emplace(lifted[i].key.bytes, catalog.entries.size());
        if (fresh) {
            catalog.entries.push_back(
                {lifted[i].key, std::move(lifted[i].graph), {}, {}});
        }
        auto& entry = catalog.entries[it->second];
        entry.classes.push_back(classes[i]);
        entry.class_keys.push_back(tree_class_key(*action, classes[i]));
    }
    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const StratumEntry& a, const StratumEntry& b) { return a.key < b.key; });
    return catalog;
}

StableGraph cyclotomic_family(std::int64_t p, std::int64_t r) {
    if (!is_prime(p) || p < 5) {
        throw Error(ErrorCode::BadRange, "p must be a prime >= 5");
    }
    if (r < 1 || r > p - 4) {
        throw Error(ErrorCode::BadRange,
                    "r must lie in 1.." + std::to_string(p - 4));
    }
    std::vector<std::int64_t> exponents(p - 1);
    std::iota(exponents.begin(), exponents.end(), 1);
    ActionPtr action = make_pgonal_action(p, exponents);

    const std::int64_t pairs = std::min(r, (p - 1) / 2);
    const std::int64_t nested = r - pairs;

    // vertices: leaves 0..pairs-1, then nested shells, center last
    std::vector<DualVertex> vertices;
    std::vector<DualEdge> edges;
    for (std::int64_t i = 1; i <= pairs; ++i) {
        DualVertex leaf;
        leaf.cone_points = {static_cast<int>(i - 1), static_cast<int>(p - 1 - i)};
        vertices.push_back(leaf);
    }
    const int center = static_cast<int>(pairs + nested);
    for (std::int64_t t = 1; t <= nested; ++t) {
        vertices.push_back({});   // shell around the first t+1 pairs
        int shell = static_cast<int>(pairs + t - 1);
        if (t == 1) {
            // innermost shell holds the first two leaves
            edges.push_back({0, shell, {}, {}, {}});
            edges.push_back({1, shell, {}, {}, {}});
        } else {
            // shell t holds the previous shell and leaf t+1
            edges.push_back({shell - 1, shell, {}, {}, {}});
            edges.push_back({static_cast<int>(t), shell, {}, {}, {}});
        }
    }
    DualVertex centre;
    for (std::int64_t c = pairs; c <= p - 2 - pairs; ++c) {
        centre.cone_points.push_back(static_cast<int>(c));
    }
    vertices.push_back(centre);
    if (nested == 0) {
        for (std::int64_t i = 0; i < pairs; ++i) {
            edges.push_back({static_cast<int>(i), center, {}, {}, {}});
        }
    } else {
        edges.push_back({static_cast<int>(pairs + nested - 1), center, {}, {}, {}});
        for (std::int64_t i = nested + 1; i < pairs; ++i) {
            edges.push_back({static_cast<int>(i), center, {}, {}, {}});
        }
    }

    DecoratedDualGraph graph = DecoratedDualGraph::build(action, std::move(vertices),
                                                         std::move(edges), {});
    return pgonal_fast_path(graph, p);
}

} // namespace strata
