#include "strata/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "strata/enumerate.hpp"
#include "strata/lift.hpp"

namespace strata {

namespace detail {

void append_u32(std::string& out, std::uint32_t value) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<char>((value >> shift) & 0xff));
    }
}

void append_u64(std::string& out, std::uint64_t value) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<char>((value >> shift) & 0xff));
    }
}

} // namespace detail

std::string CanonicalForm::hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

Multigraph Multigraph::empty(int n) {
    Multigraph g;
    g.vertex_payload.assign(n, std::string());
    g.adj.assign(n, std::vector<std::uint32_t>(n, 0));
    return g;
}

void Multigraph::add_edge(int u, int v, std::uint32_t count) {
    if (u == v) {
        adj[u][u] += count;
    } else {
        adj[u][v] += count;
        adj[v][u] += count;
    }
}

namespace {

using Colors = std::vector<int>;

struct Canonicalizer {
    const Multigraph& g;
    int n;
    std::vector<int> payload_rank;
    std::vector<std::string> payload_table;   // sorted distinct payloads

    explicit Canonicalizer(const Multigraph& graph) : g(graph), n(graph.size()) {
        payload_table = g.vertex_payload;
        std::sort(payload_table.begin(), payload_table.end());
        payload_table.erase(std::unique(payload_table.begin(), payload_table.end()),
                            payload_table.end());
        payload_rank.resize(n);
        for (int v = 0; v < n; ++v) {
            payload_rank[v] = static_cast<int>(
                std::lower_bound(payload_table.begin(), payload_table.end(),
                                 g.vertex_payload[v]) -
                payload_table.begin());
        }
    }

    Colors refine(Colors colors) const {
        int classes = 0;
        for (;;) {
            std::vector<std::pair<std::vector<std::int64_t>, int>> keyed(n);
            for (int v = 0; v < n; ++v) {
                std::vector<std::int64_t> key;
                key.push_back(colors[v]);
                key.push_back(g.adj[v][v]);
                std::vector<std::pair<std::int64_t, std::int64_t>> nbrs;
                nbrs.reserve(n - 1);
                for (int w = 0; w < n; ++w) {
                    if (w == v) continue;
                    nbrs.emplace_back(colors[w], g.adj[v][w]);
                }
                std::sort(nbrs.begin(), nbrs.end());
                for (auto [c, m] : nbrs) {
                    key.push_back(c);
                    key.push_back(m);
                }
                keyed[v] = {std::move(key), v};
            }
            std::sort(keyed.begin(), keyed.end());
            Colors next(n);
            int rank = -1;
            const std::vector<std::int64_t>* prev = nullptr;
            for (const auto& [key, v] : keyed) {
                if (!prev || key != *prev) {
                    ++rank;
                    prev = &key;
                }
                next[v] = rank;
            }
            if (rank + 1 == classes) return next;
            classes = rank + 1;
            colors = std::move(next);
        }
    }

    std::vector<std::vector<int>> cells(const Colors& colors) const {
        int classes = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
        std::vector<std::vector<int>> out(classes);
        for (int v = 0; v < n; ++v) out[colors[v]].push_back(v);
        return out;
    }

    /// Every pair in the cell has identical adjacency to the rest of the
    /// graph, so any internal order yields the same encoding.
    bool twin_cell(const std::vector<int>& cell) const {
        for (std::size_t i = 0; i < cell.size(); ++i) {
            for (std::size_t j = i + 1; j < cell.size(); ++j) {
                int u = cell[i], w = cell[j];
                if (g.adj[u][u] != g.adj[w][w]) return false;
                for (int x = 0; x < n; ++x) {
                    if (x == u || x == w) continue;
                    if (g.adj[u][x] != g.adj[w][x]) return false;
                }
            }
        }
        return true;
    }

    std::string encode(const Colors& colors) const {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (colors[a] != colors[b]) return colors[a] < colors[b];
            return a < b;
        });
        std::uint32_t m = 0;
        for (int v = 0; v < n; ++v)
            for (int w = v; w < n; ++w) m += g.adj[v][w];
        std::string out;
        detail::append_u32(out, static_cast<std::uint32_t>(n));
        detail::append_u32(out, m);
        detail::append_u32(out, static_cast<std::uint32_t>(payload_table.size()));
        for (const auto& payload : payload_table) {
            detail::append_u32(out, static_cast<std::uint32_t>(payload.size()));
            out += payload;
        }
        for (int i = 0; i < n; ++i) {
            detail::append_u32(out, static_cast<std::uint32_t>(payload_rank[order[i]]));
        }
        for (int i = 0; i < n; ++i) {
            detail::append_u32(out, g.adj[order[i]][order[i]]);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                detail::append_u32(out, g.adj[order[i]][order[j]]);
            }
        }
        return out;
    }

    std::vector<int> ordering(const Colors& colors) const {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (colors[a] != colors[b]) return colors[a] < colors[b];
            return a < b;
        });
        return order;
    }

    // search state: the minimal encoding seen, the vertex order achieving
    // it, the current individualization path, one orbit partition per open
    // node for automorphism pruning, and the backjump target
    mutable std::string best;
    mutable bool have_best = false;
    mutable std::vector<int> best_order;
    mutable std::vector<int> path;
    mutable std::vector<std::vector<int>> orbit_stack;
    mutable std::size_t unwind_to = 0;
    mutable bool unwinding = false;

    static int uf_find(std::vector<int>& parent, int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    /// An equal-encoding leaf reveals an automorphism. Record its orbit
    /// fusion in every open node whose individualized prefix it fixes
    /// pointwise, and unwind to the deepest such node: the abandoned
    /// subtrees are automorphic images of subtrees rooted at an earlier
    /// sibling, so their minima are already accounted for.
    void record_automorphism(const std::vector<int>& image) const {
        std::size_t fixed = 0;
        while (fixed < path.size() && image[path[fixed]] == path[fixed]) {
            ++fixed;
        }
        for (std::size_t level = 0; level <= fixed && level < orbit_stack.size(); ++level) {
            auto& parent = orbit_stack[level];
            for (int v = 0; v < n; ++v) {
                int a = uf_find(parent, v);
                int b = uf_find(parent, image[v]);
                if (a != b) parent[a] = b;
            }
        }
        if (fixed < orbit_stack.size()) {
            unwind_to = fixed;
            unwinding = true;
        }
    }

    void leaf(const Colors& colors) const {
        std::vector<int> order = ordering(colors);
        std::string candidate = encode(colors);
        if (!have_best || candidate < best) {
            best = std::move(candidate);
            best_order = std::move(order);
            have_best = true;
            return;
        }
        if (candidate == best) {
            // equal encodings: position-wise matching is a graph automorphism
            std::vector<int> image(n);
            for (int i = 0; i < n; ++i) image[best_order[i]] = order[i];
            record_automorphism(image);
        }
    }

    void search(Colors colors) const {
        colors = refine(std::move(colors));
        auto cs = cells(colors);
        const std::vector<int>* target = nullptr;
        for (const auto& cell : cs) {
            if (cell.size() > 1 && !twin_cell(cell)) {
                target = &cell;
                break;
            }
        }
        if (!target) {
            leaf(colors);
            return;
        }
        orbit_stack.emplace_back(n);
        std::iota(orbit_stack.back().begin(), orbit_stack.back().end(), 0);
        const std::size_t level = orbit_stack.size() - 1;
        std::vector<int> tried;
        for (int v : *target) {
            bool redundant = false;
            for (int w : tried) {
                if (uf_find(orbit_stack[level], v) == uf_find(orbit_stack[level], w)) {
                    redundant = true;
                    break;
                }
            }
            if (redundant) continue;
            tried.push_back(v);
            Colors branched(n);
            for (int w = 0; w < n; ++w) {
                branched[w] = colors[w] * 2 + (w == v ? 0 : 1);
            }
            path.push_back(v);
            search(std::move(branched));
            path.pop_back();
            if (unwinding) {
                if (unwind_to < level) break;   // a deeper ancestor owns the backjump
                unwinding = false;              // this node is the backjump target
            }
        }
        orbit_stack.pop_back();
    }

    std::string run() const {
        if (n == 0) return std::string();
        best.clear();
        have_best = false;
        path.clear();
        orbit_stack.clear();
        unwinding = false;
        search(payload_rank);
        return best;
    }
};

} // namespace

CanonicalForm canonical_form(const Multigraph& graph, int size_bound) {
    if (graph.size() > size_bound) {
        throw Error(ErrorCode::SizeBoundExceeded,
                    "graph has " + std::to_string(graph.size()) + " vertices, bound is " +
                        std::to_string(size_bound));
    }
    return CanonicalForm{Canonicalizer(graph).run()};
}

CanonicalForm canonical_form(const StableGraph& graph, int size_bound) {
    return canonical_form(to_multigraph(graph), size_bound);
}

bool is_isomorphic(const StableGraph& a, const StableGraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) {
        return false;
    }
    auto weights = [](const StableGraph& g) {
        std::vector<std::int64_t> w;
        for (const auto& v : g.vertices) w.push_back(v.weight);
        std::sort(w.begin(), w.end());
        return w;
    };
    if (weights(a) != weights(b)) return false;
    return canonical_form(a) == canonical_form(b);
}

CanonicalForm tree_class_key(const OrbifoldAction& action, const DecoratedTree& tree) {
    Multigraph g = Multigraph::empty(tree.vertex_count);
    for (auto [u, v] : tree.edges) g.add_edge(u, v);
    std::vector<std::vector<std::int64_t>> exps(tree.vertex_count);
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> arcs(tree.vertex_count);
    for (int v = 0; v < tree.vertex_count; ++v) {
        for (int c : tree.vertex_cones[v]) exps[v].push_back(action.meridian_images[c]);
        std::sort(exps[v].begin(), exps[v].end());
    }
    for (const auto& arc : tree.arcs) {
        std::int64_t a = action.meridian_images[arc.endpoints[0]];
        std::int64_t b = action.meridian_images[arc.endpoints[1]];
        arcs[arc.vertex].emplace_back(std::min(a, b), std::max(a, b));
    }
    for (int v = 0; v < tree.vertex_count; ++v) {
        std::sort(arcs[v].begin(), arcs[v].end());
        std::string payload;
        detail::append_u32(payload, static_cast<std::uint32_t>(exps[v].size()));
        for (std::int64_t e : exps[v]) detail::append_u64(payload, static_cast<std::uint64_t>(e));
        detail::append_u32(payload, static_cast<std::uint32_t>(arcs[v].size()));
        for (auto [a, b] : arcs[v]) {
            detail::append_u64(payload, static_cast<std::uint64_t>(a));
            detail::append_u64(payload, static_cast<std::uint64_t>(b));
        }
        g.vertex_payload[v] = std::move(payload);
    }
    return canonical_form(g);
}

} // namespace strata
