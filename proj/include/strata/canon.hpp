#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "strata/errors.hpp"

namespace strata {

struct StableGraph;
struct DecoratedTree;
struct OrbifoldAction;

/// Canonical byte encoding of a payload-colored multigraph with loops.
/// Equal bytes if and only if the graphs are isomorphic respecting payloads.
/// All integers inside are fixed-width big-endian.
struct CanonicalForm {
    std::string bytes;

    auto operator<=>(const CanonicalForm&) const = default;
    std::string hex() const;
};

/// Undirected multigraph with loops and an arbitrary payload per vertex.
struct Multigraph {
    std::vector<std::string> vertex_payload;
    std::vector<std::vector<std::uint32_t>> adj;   // symmetric, diagonal = loop count

    int size() const { return static_cast<int>(vertex_payload.size()); }
    static Multigraph empty(int n);
    void add_edge(int u, int v, std::uint32_t count = 1);
};

inline constexpr int kCanonSizeBound = 64;

/// Canonical labeling by partition refinement on (payload, degree) colors
/// followed by individualization within the remaining cells. Cells whose
/// vertices are mutual twins are never branched on.
CanonicalForm canonical_form(const Multigraph& graph, int size_bound = kCanonSizeBound);

CanonicalForm canonical_form(const StableGraph& graph, int size_bound = kCanonSizeBound);

bool is_isomorphic(const StableGraph& a, const StableGraph& b);

/// Key of a decorated tree under tree isomorphism matching per-vertex
/// multisets of meridian images and per-arc image pairs.
CanonicalForm tree_class_key(const OrbifoldAction& action, const DecoratedTree& tree);

namespace detail {
void append_u32(std::string& out, std::uint32_t value);
void append_u64(std::string& out, std::uint64_t value);
}

} // namespace strata
