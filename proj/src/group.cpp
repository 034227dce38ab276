#include "strata/group.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace strata {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyOrders: return "EmptyOrders";
        case ErrorCode::OrderBoundExceeded: return "OrderBoundExceeded";
        case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
        case ErrorCode::ParentMismatch: return "ParentMismatch";
        case ErrorCode::InvalidTable: return "InvalidTable";
        case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
        case ErrorCode::BadExponent: return "BadExponent";
        case ErrorCode::RelationFails: return "RelationFails";
        case ErrorCode::BadGraphStructure: return "BadGraphStructure";
        case ErrorCode::MissingExplicitDecoration: return "MissingExplicitDecoration";
        case ErrorCode::NonAbelianDerivation: return "NonAbelianDerivation";
        case ErrorCode::NotDecorated: return "NotDecorated";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::NonIntegralWeight: return "NonIntegralWeight";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::DisconnectedLift: return "DisconnectedLift";
        case ErrorCode::QuotientMismatch: return "QuotientMismatch";
        case ErrorCode::DegreeCheckFailed: return "DegreeCheckFailed";
        case ErrorCode::GenusCheckFailed: return "GenusCheckFailed";
        case ErrorCode::NotPGonal: return "NotPGonal";
        case ErrorCode::NotHyperelliptic: return "NotHyperelliptic";
        case ErrorCode::NotSingleCurve: return "NotSingleCurve";
        case ErrorCode::NotGenusZero: return "NotGenusZero";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::SizeBoundExceeded: return "SizeBoundExceeded";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

std::int64_t Group::element_order(std::int64_t x) const {
    if (x < 0 || x >= order_) {
        throw Error(ErrorCode::ElementNotInGroup, "element index out of range");
    }
    std::int64_t acc = x;
    std::int64_t t = 1;
    while (acc != kIdentity) {
        acc = op(acc, x);
        ++t;
    }
    return t;
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> orders, std::int64_t order_bound)
    : Group(0), orders_(std::move(orders)) {
    if (orders_.empty()) {
        throw Error(ErrorCode::EmptyOrders, "a group needs at least one cyclic factor");
    }
    std::int64_t total = 1;
    for (std::int64_t n : orders_) {
        if (n < 1) {
            throw Error(ErrorCode::EmptyOrders, "factor orders must be >= 1");
        }
        if (total > order_bound / n) {
            throw Error(ErrorCode::OrderBoundExceeded,
                        "group order exceeds the bound " + std::to_string(order_bound));
        }
        total *= n;
    }
    order_ = total;
    strides_.assign(orders_.size(), 1);
    for (std::size_t i = orders_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * orders_[i];
    }
}

std::int64_t AbelianGroup::index_of(const Coords& coords) const {
    if (coords.size() != orders_.size()) {
        throw Error(ErrorCode::ElementNotInGroup,
                    "coordinate vector has length " + std::to_string(coords.size()) +
                        ", expected " + std::to_string(orders_.size()));
    }
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::int64_t c = coords[i] % orders_[i];
        if (c < 0) c += orders_[i];
        idx += c * strides_[i];
    }
    return idx;
}

Coords AbelianGroup::coords_of(std::int64_t index) const {
    if (index < 0 || index >= order_) {
        throw Error(ErrorCode::ElementNotInGroup, "element index out of range");
    }
    Coords c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        c[i] = index / strides_[i];
        index %= strides_[i];
    }
    return c;
}

std::int64_t AbelianGroup::op(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t ca = a / strides_[i];
        std::int64_t cb = b / strides_[i];
        a %= strides_[i];
        b %= strides_[i];
        out += ((ca + cb) % orders_[i]) * strides_[i];
    }
    return out;
}

std::int64_t AbelianGroup::inverse(std::int64_t a) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t ca = a / strides_[i];
        a %= strides_[i];
        out += ((orders_[i] - ca) % orders_[i]) * strides_[i];
    }
    return out;
}

AbelianGroupPtr make_group(std::vector<std::int64_t> orders, std::int64_t order_bound) {
    return std::make_shared<const AbelianGroup>(std::move(orders), order_bound);
}

TableGroup::TableGroup(std::vector<std::vector<std::int64_t>> table, std::int64_t order_bound)
    : Group(static_cast<std::int64_t>(table.size())), mul_(std::move(table)) {
    const std::int64_t n = order_;
    if (n == 0) {
        throw Error(ErrorCode::InvalidTable, "empty multiplication table");
    }
    if (n > order_bound) {
        throw Error(ErrorCode::OrderBoundExceeded,
                    "table size exceeds the bound " + std::to_string(order_bound));
    }
    for (const auto& row : mul_) {
        if (static_cast<std::int64_t>(row.size()) != n) {
            throw Error(ErrorCode::InvalidTable, "table is not square");
        }
        for (std::int64_t v : row) {
            if (v < 0 || v >= n) {
                throw Error(ErrorCode::InvalidTable, "table entry out of range");
            }
        }
    }
    for (std::int64_t i = 0; i < n; ++i) {
        if (mul_[0][i] != i || mul_[i][0] != i) {
            throw Error(ErrorCode::InvalidTable, "element 0 is not the identity");
        }
    }
    // rows and columns must be permutations
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::int64_t j = 0; j < n; ++j) {
            if (row_seen[mul_[i][j]] || col_seen[mul_[j][i]]) {
                throw Error(ErrorCode::InvalidTable, "table row or column is not a permutation");
            }
            row_seen[mul_[i][j]] = true;
            col_seen[mul_[j][i]] = true;
        }
    }
    inv_.assign(n, -1);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            if (mul_[i][j] == kIdentity) {
                if (mul_[j][i] != kIdentity) {
                    throw Error(ErrorCode::InvalidTable, "one-sided inverse");
                }
                inv_[i] = j;
                break;
            }
        }
        if (inv_[i] < 0) {
            throw Error(ErrorCode::InvalidTable, "element without inverse");
        }
    }
    // associativity: complete check for small tables, seeded samples otherwise
    if (n <= 100) {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b)
                for (std::int64_t c = 0; c < n; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) {
                        throw Error(ErrorCode::InvalidTable, "table is not associative");
                    }
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
        for (int t = 0; t < 200000; ++t) {
            std::int64_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) {
                throw Error(ErrorCode::InvalidTable, "table is not associative");
            }
        }
    }
    abelian_ = true;
    for (std::int64_t a = 0; a < n && abelian_; ++a)
        for (std::int64_t b = a + 1; b < n; ++b)
            if (mul_[a][b] != mul_[b][a]) {
                abelian_ = false;
                break;
            }
}

bool Subgroup::contains(std::int64_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

SubgroupPtr subgroup_generated(const GroupPtr& group, std::vector<std::int64_t> gens) {
    for (std::int64_t g : gens) {
        if (g < 0 || g >= group->order()) {
            throw Error(ErrorCode::ElementNotInGroup, "generator index out of range");
        }
    }
    // In a finite group the closure under multiplication by the generators
    // already contains all inverses.
    std::set<std::int64_t> seen{Group::kIdentity};
    std::deque<std::int64_t> todo{Group::kIdentity};
    while (!todo.empty()) {
        std::int64_t x = todo.front();
        todo.pop_front();
        for (std::int64_t g : gens) {
            std::int64_t y = group->op(x, g);
            if (seen.insert(y).second) {
                todo.push_back(y);
            }
        }
    }
    auto sub = std::make_shared<Subgroup>();
    sub->parent = group;
    sub->elements.assign(seen.begin(), seen.end());
    sub->generators = std::move(gens);
    return sub;
}

SubgroupPtr trivial_subgroup(const GroupPtr& group) {
    return subgroup_generated(group, {});
}

SubgroupPtr full_subgroup(const GroupPtr& group) {
    auto sub = std::make_shared<Subgroup>();
    sub->parent = group;
    sub->elements.resize(group->order());
    for (std::int64_t i = 0; i < group->order(); ++i) sub->elements[i] = i;
    sub->generators = sub->elements;
    return sub;
}

SubgroupPtr intersect_subgroups(const SubgroupPtr& h1, const SubgroupPtr& h2) {
    if (h1->parent != h2->parent) {
        throw Error(ErrorCode::ParentMismatch, "subgroups live in different groups");
    }
    auto sub = std::make_shared<Subgroup>();
    sub->parent = h1->parent;
    std::set_intersection(h1->elements.begin(), h1->elements.end(), h2->elements.begin(),
                          h2->elements.end(), std::back_inserter(sub->elements));
    sub->generators = sub->elements;
    return sub;
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
    return a.parent == b.parent && a.elements == b.elements;
}

bool operator==(const Coset& a, const Coset& b) {
    return a.rep == b.rep && same_subgroup(*a.sub, *b.sub);
}

std::int64_t coset_rep(const Subgroup& sub, std::int64_t g) {
    std::int64_t best = -1;
    for (std::int64_t h : sub.elements) {
        std::int64_t x = sub.parent->op(g, h);
        if (best < 0 || x < best) best = x;
    }
    return best;
}

Coset make_coset(const SubgroupPtr& sub, std::int64_t g) {
    if (g < 0 || g >= sub->parent->order()) {
        throw Error(ErrorCode::ElementNotInGroup, "coset base element out of range");
    }
    return Coset{sub, coset_rep(*sub, g)};
}

std::vector<Coset> coset_partition(const SubgroupPtr& sub) {
    const auto& group = *sub->parent;
    std::vector<bool> covered(group.order(), false);
    std::vector<Coset> out;
    for (std::int64_t g = 0; g < group.order(); ++g) {
        if (covered[g]) continue;
        // g is minimal in its coset because smaller indices are all covered
        out.push_back(Coset{sub, g});
        for (std::int64_t h : sub->elements) {
            covered[group.op(g, h)] = true;
        }
    }
    return out;
}

std::optional<Coset> coset_intersection(std::int64_t a, const SubgroupPtr& h1, std::int64_t b,
                                        const SubgroupPtr& h2) {
    if (h1->parent != h2->parent) {
        throw Error(ErrorCode::ParentMismatch, "subgroups live in different groups");
    }
    const auto& group = *h1->parent;
    std::int64_t b_inv = group.inverse(b);
    std::int64_t best = -1;
    std::int64_t count = 0;
    for (std::int64_t h : h1->elements) {
        std::int64_t x = group.op(a, h);
        if (h2->contains(group.op(b_inv, x))) {
            ++count;
            if (best < 0 || x < best) best = x;
        }
    }
    if (best < 0) return std::nullopt;
    auto meet = intersect_subgroups(h1, h2);
    // a nonempty intersection of left cosets is a left coset of the meet
    if (count != meet->size()) {
        throw Error(ErrorCode::ParentMismatch, "coset intersection is not a coset of the meet");
    }
    return Coset{meet, best};
}

} // namespace strata
