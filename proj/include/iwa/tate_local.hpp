#ifndef IWA_TATE_LOCAL_HPP
#define IWA_TATE_LOCAL_HPP

// Local invariants at places of an elliptic curve with good or split
// multiplicative reduction: component group orders, the Tate-period index,
// H^1(G, E_0) = Z/eZ, growth of component groups in towers, classification
// of the local restriction kernels, and the p-power level of a j-invariant.

#include <cstdint>
#include <optional>

#include "iwa/carlitz.hpp"
#include "iwa/pp_linalg.hpp"

namespace iwa {

enum class ReductionType { Good, SplitMultiplicative };

enum class PlaceBehaviorKind { SplitsCompletely, UnramifiedInert, Ramified };

struct PlaceBehavior {
    PlaceBehaviorKind kind = PlaceBehaviorKind::SplitsCompletely;
    unsigned d_v = 0;    // decomposition rank (Ramified only)
    std::uint64_t e = 1; // ramification index, a power of p (Ramified only)
};

struct TateLocalData {
    std::int64_t ord_v_j = 0;      // < 0 iff split multiplicative
    std::uint64_t residue_size = 2; // q_v, a prime power
    ReductionType reduction = ReductionType::Good;
    PlaceBehavior behavior;

    std::uint64_t component_order() const { return static_cast<std::uint64_t>(-ord_v_j); }
};

// Consistency of one place against the ambient tower (prime p, rank d).
void validate_place(const TateLocalData& t, std::uint64_t p, unsigned d);

struct LocalInvariants {
    std::uint64_t component_order; // -ord_v(j)
    std::uint64_t tate_index;      // (-ord_v(j)) * (q_v - 1)
    AbelianGroupStructure h1_e0;   // Z/eZ
};
// Requires split multiplicative reduction.
LocalInvariants local_invariants(const TateLocalData& t);

struct TowerComponent {
    std::uint64_t order;             // |T| * e
    AbelianGroupStructure quotient;  // T^{fixed}/T ~ Z/eZ
};
// Component group order after a local extension of ramification index e.
TowerComponent tower_component_order(const TateLocalData& t, std::uint64_t e);

struct KerDwClass {
    enum class Kind { Zero, FiniteBounded, CorankAtMost } kind = Kind::Zero;
    std::uint64_t bound = 0; // FiniteBounded: p-part of the component order
    unsigned corank = 0;     // CorankAtMost: d_v
};
// Classification of the kernel of the local restriction map for the prime l
// in a p-tower of rank d.
KerDwClass ker_dw_classify(const TateLocalData& t, std::uint64_t l, std::uint64_t p, unsigned d);

struct JPowerLevel {
    unsigned level;                 // n with j in (F*)^{p^n} - (F*)^{p^{n+1}}
    std::uint64_t max_torsion_order; // p^{2n}, the order of E[p^n]
};
// Level of a nonconstant j = num/den over F_q: the p-adic valuation of the
// gcd of all multiplicities in the irreducible factorization of the reduced
// fraction. Constant j is rejected (isotrivial).
JPowerLevel j_power_level(const FqContext& F, const PolyFq& numerator,
                          const PolyFq& denominator);

} // namespace iwa

#endif
