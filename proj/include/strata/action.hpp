#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "strata/group.hpp"

namespace strata {

using Rational = boost::rational<std::int64_t>;

/// Signature (genus, boundary components; cone orders m_1,...,m_r).
struct OrbifoldSignature {
    std::int64_t genus = 0;
    std::int64_t boundary_count = 0;
    std::vector<std::int64_t> cone_orders;   // each >= 2

    std::size_t cone_count() const { return cone_orders.size(); }
};

/// chi = 2 - 2g - c - sum(1 - 1/m_i), exact.
Rational euler_characteristic(const OrbifoldSignature& sig);

bool is_hyperbolic(const OrbifoldSignature& sig);

/// Epimorphism onto G from the homology of a closed quotient orbifold,
/// given on the standard generators: one meridian per cone point and one
/// (alpha, beta) pair per handle. All values are element indices.
struct OrbifoldAction {
    GroupPtr group;
    OrbifoldSignature signature;   // boundary_count must be 0
    std::vector<std::int64_t> meridian_images;
    std::vector<std::pair<std::int64_t, std::int64_t>> handle_images;
};

using ActionPtr = std::shared_ptr<const OrbifoldAction>;

struct ValidationReport {
    bool relation_ok = false;      // meridian images sum to the identity
    bool torsion_ok = false;       // each meridian image has order exactly its cone order
    bool surjective_ok = false;    // meridian and handle images generate the group
    bool hyperbolic_ok = false;    // chi(O) < 0
    bool genus_ok = false;         // covering genus is a non-negative integer
    std::optional<std::int64_t> genus;
    std::vector<std::string> failures;

    bool valid() const {
        return relation_ok && torsion_ok && surjective_ok && hyperbolic_ok && genus_ok;
    }
};

ValidationReport validate_action(const OrbifoldAction& action);

/// Genus of the covering surface: 2 - 2g = |G| chi(O).
/// Throws NonIntegralGenus when the right-hand side is not an even integer
/// or the resulting genus is negative.
std::int64_t covering_genus(const OrbifoldAction& action);

/// Action of Z_p on a surface with quotient signature (0; p,...,p), given
/// by the exponents of its generating vector.
ActionPtr make_pgonal_action(std::int64_t p, const std::vector<std::int64_t>& exponents,
                             std::int64_t order_bound = AbelianGroup::kDefaultOrderBound);

/// True when the action is p-gonal for some odd prime p (reported via p_out).
bool is_pgonal(const OrbifoldAction& action, std::int64_t* p_out = nullptr);

/// G = Z_2 with quotient (0; 2,...,2) and every meridian nontrivial.
bool is_hyperelliptic_action(const OrbifoldAction& action);

bool is_prime(std::int64_t n);

} // namespace strata
