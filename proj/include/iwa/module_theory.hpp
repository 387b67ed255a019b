#ifndef IWA_MODULE_THEORY_HPP
#define IWA_MODULE_THEORY_HPP

// Finitely presented modules over finite-level rings: Fitting ideals,
// characteristic ideals of elementary modules, projections between
// truncated polynomial rings, pro-Fitting intersections, and the Nakayama
// minimal generator count.

#include "iwa/finite_level_algebra.hpp"

namespace iwa {

// Module = coker(Lambda^relations -> Lambda^generators), rows are relations.
struct ModulePresentation {
    FiniteLevelRing ring;
    std::size_t relations = 0;  // a
    std::size_t generators = 0; // b
    std::vector<FiniteLevelRing::Element> matrix; // row-major, a*b entries

    const FiniteLevelRing::Element& at(std::size_t i, std::size_t j) const {
        return matrix[i * generators + j];
    }
    FiniteLevelRing::Element& at(std::size_t i, std::size_t j) {
        return matrix[i * generators + j];
    }
};

ModulePresentation make_presentation(FiniteLevelRing ring, std::size_t relations,
                                     std::size_t generators,
                                     std::vector<FiniteLevelRing::Element> matrix);

// Lambda^r + sum of Lambda/(g_i^{e_i}).
struct ElementaryModuleSpec {
    FiniteLevelRing ring;
    unsigned free_rank = 0;
    std::vector<std::pair<FiniteLevelRing::Element, unsigned>> torsion_factors;
};

// Ideal of all b x b minors; the zero ideal when a < b. Generator count b is
// capped at 5 (cofactor expansion).
RingIdeal fitting_ideal(const ModulePresentation& pres);

// (prod g_i^{e_i}), or the zero ideal when free_rank > 0.
RingIdeal characteristic_ideal(const ElementaryModuleSpec& spec);

// Block-diagonal presentation of an elementary module: zero columns for the
// free part, one diagonal relation g_i^{e_i} per torsion factor.
ModulePresentation elementary_presentation(const ElementaryModuleSpec& spec);

// Determinant over a commutative finite-level ring (cofactor expansion).
FiniteLevelRing::Element ring_determinant(const FiniteLevelRing& ring,
                                          const std::vector<FiniteLevelRing::Element>& entries,
                                          std::size_t n);

// T_{keep+1}, ..., T_e |-> 0 on every generator; both rings truncated
// polynomial kind over the same coefficient ring.
RingIdeal project_ideal(const RingIdeal& ideal, unsigned keep);
// Lift generators to e variables and add the kernel generators T_{d+1..e}.
RingIdeal preimage_ideal(const RingIdeal& ideal, unsigned target_vars);
// Entry-wise projection of a presentation.
ModulePresentation project_presentation(const ModulePresentation& pres, unsigned keep);

// Intersection of finitely many ideals in the same ambient ring.
RingIdeal pro_fitting_intersection(const std::vector<RingIdeal>& ideals);

// dim over Z/l of M/mM for the maximal ideal m = (l, T_i) or (l, gamma_i-1);
// equals the minimal number of generators of coker by Nakayama. Requires the
// ring to be local (truncated polynomial, or group ring with group prime
// equal to the coefficient prime).
unsigned min_generators(const ModulePresentation& pres);

// Does g annihilate the presented module?
bool annihilates(const ModulePresentation& pres, const FiniteLevelRing::Element& g);

enum class FittCharRelation { Equal, FittInsideChar, Other };

// Elementary route: both ideals computed from the spec; must come out Equal.
FittCharRelation fitt_char_compare(const ElementaryModuleSpec& spec);
// Presentation plus a claimed elementary decomposition.
FittCharRelation fitt_char_compare(const ModulePresentation& pres,
                                   const ElementaryModuleSpec& claimed);

// Witness-based pseudo-nullity check: verifies that both witnesses
// annihilate the module and that their leading supports are coprime (no
// common variable in the leading monomials, coefficient valuations not both
// positive).
bool pseudo_null_witness(const ModulePresentation& pres,
                         const FiniteLevelRing::Element& ann1,
                         const FiniteLevelRing::Element& ann2);

} // namespace iwa

#endif
