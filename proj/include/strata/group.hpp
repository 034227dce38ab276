#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "strata/errors.hpp"

namespace strata {

/// Coordinate vector of an element of a product of cyclic groups,
/// entry i reduced modulo the i-th factor order.
using Coords = std::vector<std::int64_t>;

/// Finite group whose elements are addressed by dense indices 0..order-1.
/// Index 0 is the identity in every implementation.
class Group {
public:
    static constexpr std::int64_t kIdentity = 0;

    virtual ~Group() = default;

    std::int64_t order() const { return order_; }

    /// Group operation on element indices.
    virtual std::int64_t op(std::int64_t a, std::int64_t b) const = 0;
    virtual std::int64_t inverse(std::int64_t a) const = 0;
    virtual bool is_abelian() const = 0;

    /// Least t >= 1 with x^t = identity.
    std::int64_t element_order(std::int64_t x) const;

protected:
    explicit Group(std::int64_t order) : order_(order) {}

    std::int64_t order_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Z_{n1} x ... x Z_{nk} in additive notation. Element indices are the
/// mixed-radix encoding with the first coordinate most significant, so
/// index order coincides with lexicographic order on coordinates and the
/// identity (zero vector) has index 0.
class AbelianGroup final : public Group {
public:
    static constexpr std::int64_t kDefaultOrderBound = 100000;

    explicit AbelianGroup(std::vector<std::int64_t> orders,
                          std::int64_t order_bound = kDefaultOrderBound);

    const std::vector<std::int64_t>& factor_orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }

    /// Accepts any integer coordinates; reduces them into range.
    std::int64_t index_of(const Coords& coords) const;
    Coords coords_of(std::int64_t index) const;

    std::int64_t op(std::int64_t a, std::int64_t b) const override;
    std::int64_t inverse(std::int64_t a) const override;
    bool is_abelian() const override { return true; }

private:
    std::vector<std::int64_t> orders_;
    std::vector<std::int64_t> strides_;
};

using AbelianGroupPtr = std::shared_ptr<const AbelianGroup>;

AbelianGroupPtr make_group(std::vector<std::int64_t> orders,
                           std::int64_t order_bound = AbelianGroup::kDefaultOrderBound);

/// Finite group given by its full multiplication table. Carrier for
/// explicitly decorated inputs whose group need not be abelian.
/// Requires row/column 0 to be the identity row/column.
class TableGroup final : public Group {
public:
    explicit TableGroup(std::vector<std::vector<std::int64_t>> table,
                        std::int64_t order_bound = AbelianGroup::kDefaultOrderBound);

    const std::vector<std::vector<std::int64_t>>& table() const { return mul_; }

    std::int64_t op(std::int64_t a, std::int64_t b) const override { return mul_[a][b]; }
    std::int64_t inverse(std::int64_t a) const override { return inv_[a]; }
    bool is_abelian() const override { return abelian_; }

private:
    std::vector<std::vector<std::int64_t>> mul_;
    std::vector<std::int64_t> inv_;
    bool abelian_ = false;
};

/// Subgroup materialized as its sorted element-index set.
struct Subgroup {
    GroupPtr parent;
    std::vector<std::int64_t> elements;   // sorted
    std::vector<std::int64_t> generators;

    std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
    bool contains(std::int64_t x) const;
    bool is_trivial() const { return elements.size() == 1; }
    bool is_full() const { return size() == parent->order(); }
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

/// Smallest subgroup containing the given elements; empty list gives the
/// trivial subgroup.
SubgroupPtr subgroup_generated(const GroupPtr& group, std::vector<std::int64_t> gens);

SubgroupPtr trivial_subgroup(const GroupPtr& group);
SubgroupPtr full_subgroup(const GroupPtr& group);

SubgroupPtr intersect_subgroups(const SubgroupPtr& h1, const SubgroupPtr& h2);

bool same_subgroup(const Subgroup& a, const Subgroup& b);

/// Left coset g.H, stored by its canonical representative: the minimal
/// element index (equivalently the lexicographically minimal member).
struct Coset {
    SubgroupPtr sub;
    std::int64_t rep = 0;
};

bool operator==(const Coset& a, const Coset& b);

Coset make_coset(const SubgroupPtr& sub, std::int64_t g);

/// Representative of g.H without building a Coset.
std::int64_t coset_rep(const Subgroup& sub, std::int64_t g);

/// All left cosets of H in its parent, ordered by representative.
std::vector<Coset> coset_partition(const SubgroupPtr& sub);

/// aH1 (intersect) bH2: empty, or a left coset of H1 (intersect) H2.
std::optional<Coset> coset_intersection(std::int64_t a, const SubgroupPtr& h1,
                                        std::int64_t b, const SubgroupPtr& h2);

} // namespace strata
