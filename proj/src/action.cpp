#include "strata/action.hpp"

#include <algorithm>

namespace strata {

Rational euler_characteristic(const OrbifoldSignature& sig) {
    Rational chi(2 - 2 * sig.genus - sig.boundary_count, 1);
    for (std::int64_t m : sig.cone_orders) {
        chi -= Rational(m - 1, m);
    }
    return chi;
}

bool is_hyperbolic(const OrbifoldSignature& sig) {
    return euler_characteristic(sig) < Rational(0);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

ValidationReport validate_action(const OrbifoldAction& action) {
    ValidationReport report;
    const Group& group = *action.group;
    const auto& sig = action.signature;

    if (sig.boundary_count != 0) {
        report.failures.push_back("quotient orbifold must be closed");
        return report;
    }
    if (action.meridian_images.size() != sig.cone_count()) {
        report.failures.push_back("meridian image count differs from cone point count");
        return report;
    }
    if (static_cast<std::int64_t>(action.handle_images.size()) != sig.genus) {
        report.failures.push_back("handle image count differs from quotient genus");
        return report;
    }

    std::int64_t sum = Group::kIdentity;
    for (std::int64_t x : action.meridian_images) sum = group.op(sum, x);
    report.relation_ok = (sum == Group::kIdentity);
    if (!report.relation_ok) {
        report.failures.push_back("meridian images do not sum to the identity");
    }

    report.torsion_ok = true;
    for (std::size_t i = 0; i < action.meridian_images.size(); ++i) {
        if (group.element_order(action.meridian_images[i]) != sig.cone_orders[i]) {
            report.torsion_ok = false;
            report.failures.push_back("meridian " + std::to_string(i) +
                                      " does not have the order of its cone point");
        }
    }

    std::vector<std::int64_t> gens = action.meridian_images;
    for (const auto& [a, b] : action.handle_images) {
        gens.push_back(a);
        gens.push_back(b);
    }
    report.surjective_ok = subgroup_generated(action.group, gens)->is_full();
    if (!report.surjective_ok) {
        report.failures.push_back("images do not generate the group");
    }

    report.hyperbolic_ok = is_hyperbolic(sig);
    if (!report.hyperbolic_ok) {
        report.failures.push_back("quotient orbifold is not hyperbolic");
    }

    try {
        report.genus = covering_genus(action);
        report.genus_ok = true;
    } catch (const Error&) {
        report.genus_ok = false;
        report.failures.push_back("covering genus is not a non-negative integer");
    }
    return report;
}

std::int64_t covering_genus(const OrbifoldAction& action) {
    Rational lhs = Rational(action.group->order()) * euler_characteristic(action.signature);
    // 2 - 2g = |G| chi(O)
    Rational genus = (Rational(2) - lhs) / Rational(2);
    if (genus.denominator() != 1) {
        throw Error(ErrorCode::NonIntegralGenus, "covering genus is not an integer");
    }
    if (genus.numerator() < 0) {
        throw Error(ErrorCode::NonIntegralGenus, "covering genus is negative");
    }
    return genus.numerator();
}

ActionPtr make_pgonal_action(std::int64_t p, const std::vector<std::int64_t>& exponents,
                             std::int64_t order_bound) {
    if (!is_prime(p)) {
        throw Error(ErrorCode::BadExponent, "p must be prime");
    }
    std::int64_t sum = 0;
    for (std::int64_t e : exponents) {
        if (e < 1 || e >= p) {
            throw Error(ErrorCode::BadExponent,
                        "exponents must lie in 1.." + std::to_string(p - 1));
        }
        sum = (sum + e) % p;
    }
    if (sum != 0) {
        throw Error(ErrorCode::RelationFails, "exponent sum is not a multiple of p");
    }
    auto action = std::make_shared<OrbifoldAction>();
    action->group = make_group({p}, order_bound);
    action->signature.genus = 0;
    action->signature.cone_orders.assign(exponents.size(), p);
    action->meridian_images = exponents;   // element index of a^e in Z_p is e
    return action;
}

bool is_pgonal(const OrbifoldAction& action, std::int64_t* p_out) {
    const std::int64_t p = action.group->order();
    if (!is_prime(p) || p < 3) return false;
    if (action.signature.genus != 0 || action.signature.boundary_count != 0) return false;
    for (std::int64_t m : action.signature.cone_orders) {
        if (m != p) return false;
    }
    for (std::int64_t x : action.meridian_images) {
        if (x == Group::kIdentity) return false;
    }
    if (p_out) *p_out = p;
    return true;
}

bool is_hyperelliptic_action(const OrbifoldAction& action) {
    if (action.group->order() != 2) return false;
    if (action.signature.genus != 0 || action.signature.boundary_count != 0) return false;
    for (std::int64_t m : action.signature.cone_orders) {
        if (m != 2) return false;
    }
    for (std::int64_t x : action.meridian_images) {
        if (x == Group::kIdentity) return false;
    }
    return !action.signature.cone_orders.empty();
}

} // namespace strata
