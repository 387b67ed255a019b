#include "iwa/tate_local.hpp"

#include <numeric>

#include "iwa/errors.hpp"

namespace iwa {

namespace {

bool is_prime_power_of(std::uint64_t e, std::uint64_t p) {
    if (e == 0) return false;
    while (e % p == 0) e /= p;
    return e == 1;
}

bool is_prime_power(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        return n == 1;
    }
    return true; // prime
}

unsigned p_part_exponent(std::uint64_t n, std::uint64_t p) {
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

AbelianGroupStructure cyclic_group(std::uint64_t n) {
    AbelianGroupStructure g;
    if (n > 1) g.invariant_factors.push_back(n);
    return g;
}

} // namespace

void validate_place(const TateLocalData& t, std::uint64_t p, unsigned d) {
    if ((t.reduction == ReductionType::SplitMultiplicative) != (t.ord_v_j < 0))
        throw validation_error("place: split multiplicative iff ord_v(j) < 0");
    if (!is_prime_power(t.residue_size))
        throw validation_error("place: residue field size must be a prime power");
    switch (t.behavior.kind) {
        case PlaceBehaviorKind::Ramified:
            if (t.behavior.e < 2 || !is_prime_power_of(t.behavior.e, p))
                throw validation_error("place: ramification index must be a power of p > 1");
            if (t.behavior.d_v < 1 || t.behavior.d_v > d)
                throw validation_error("place: decomposition rank out of range");
            break;
        default:
            if (t.behavior.e != 1)
                throw validation_error("place: unramified place must have e = 1");
            break;
    }
}

LocalInvariants local_invariants(const TateLocalData& t) {
    if (t.reduction != ReductionType::SplitMultiplicative)
        throw hypothesis_error("local_invariants: split multiplicative reduction required");
    LocalInvariants out;
    out.component_order = t.component_order();
    out.tate_index = out.component_order * (t.residue_size - 1);
    out.h1_e0 = cyclic_group(t.behavior.e);
    return out;
}

TowerComponent tower_component_order(const TateLocalData& t, std::uint64_t e) {
    if (t.reduction != ReductionType::SplitMultiplicative)
        throw hypothesis_error("tower_component_order: split multiplicative reduction required");
    if (e == 0) throw validation_error("tower_component_order: e must be positive");
    return {t.component_order() * e, cyclic_group(e)};
}

KerDwClass ker_dw_classify(const TateLocalData& t, std::uint64_t l, std::uint64_t p, unsigned d) {
    validate_place(t, p, d);
    KerDwClass out;
    if (l != p) return out;                                      // local condition trivial
    if (t.reduction == ReductionType::Good) return out;          // good reduction
    switch (t.behavior.kind) {
        case PlaceBehaviorKind::SplitsCompletely:
            return out;
        case PlaceBehaviorKind::UnramifiedInert: {
            out.kind = KerDwClass::Kind::FiniteBounded;
            std::uint64_t bound = 1;
            for (unsigned i = 0; i < p_part_exponent(t.component_order(), p); ++i) bound *= p;
            out.bound = bound;
            return out;
        }
        case PlaceBehaviorKind::Ramified:
            out.kind = KerDwClass::Kind::CorankAtMost;
            out.corank = t.behavior.d_v;
            return out;
    }
    return out;
}

JPowerLevel j_power_level(const FqContext& F, const PolyFq& numerator,
                          const PolyFq& denominator) {
    if (poly_is_zero(numerator) || poly_is_zero(denominator))
        throw validation_error("j_power_level: numerator and denominator must be nonzero");
    // reduce the fraction
    PolyFq g = poly_gcd(F, numerator, denominator);
    PolyFq num = poly_divmod(F, numerator, g).first;
    PolyFq den = poly_divmod(F, denominator, g).first;
    if (poly_deg(num) == 0 && poly_deg(den) == 0)
        throw hypothesis_error("j_power_level: constant j-invariant (isotrivial curve)");
    std::uint64_t mult_gcd = 0;
    for (const PolyFq* part : {&num, &den}) {
        if (poly_deg(*part) == 0) continue; // constants are p-th powers
        PolyFactorization f = poly_factor(F, *part);
        for (const auto& [fac, mult] : f.factors)
            mult_gcd = std::gcd<std::uint64_t>(mult_gcd, mult);
    }
    JPowerLevel out;
    out.level = p_part_exponent(mult_gcd, F.p());
    out.max_torsion_order = 1;
    for (unsigned i = 0; i < 2 * out.level; ++i) out.max_torsion_order *= F.p();
    return out;
}

} // namespace iwa
