#ifndef IWA_COHOMOLOGY_HPP
#define IWA_COHOMOLOGY_HPP

// Group cohomology H^0, H^1, H^2 of finite abelian p-groups acting on
// finite abelian l-primary modules, computed from the tensor product of
// 2-periodic resolutions (degrees 0..3), plus the pro-p limits, Pontryagin
// duality, and the l != p dual-quotient comparison.

#include "iwa/finite_level_algebra.hpp"
#include "iwa/pp_linalg.hpp"

namespace iwa {

// A finite abelian l-primary module B with a commuting action of
// G = prod Z/p^{k_i}. The module is B = sum of Z/l^{a_j} (a ascending); the
// action of the i-th generator is an invertible matrix over Z/l^{max a}
// acting on row vectors (x -> x A_i) in the invariant-factor basis.
struct GModuleData {
    FiniteAbelianPGroup group;
    std::uint64_t module_prime = 2;
    std::vector<unsigned> module_exponents; // ascending
    std::vector<PrimePowerMatrix> actions;  // one per group generator

    std::size_t module_rank() const { return module_exponents.size(); }
    unsigned max_exponent() const {
        return module_exponents.empty() ? 1 : module_exponents.back();
    }
    PrimePowerRing ambient_ring() const {
        return PrimePowerRing(module_prime, max_exponent());
    }
    AbelianGroupStructure module_structure() const {
        return AbelianGroupStructure::from_prime_exponents(module_prime, module_exponents);
    }
    unsigned __int128 module_order() const { return module_structure().order(); }
};

// Validates well-definedness of the action matrices, pairwise commutation,
// order dividing p^{k_i}, and invertibility (all as endomorphisms of B).
GModuleData make_g_module(FiniteAbelianPGroup group, std::uint64_t module_prime,
                          std::vector<unsigned> module_exponents,
                          std::vector<PrimePowerMatrix> actions);

// Trivial-action convenience constructor.
GModuleData trivial_g_module(FiniteAbelianPGroup group, std::uint64_t module_prime,
                             std::vector<unsigned> module_exponents);

// H^i(G, B) at the finite level, i in {0, 1, 2}.
AbelianGroupStructure cohomology_groups(const GModuleData& gm, unsigned i);

// H^i of Z_p^d acting through the declared finite quotient, i in {1, 2}:
// the colimit of the finite levels along inflation. Closed forms for d = 1
// (H^1 = coinvariants, H^2 = 0) and for l != p (everything vanishes); for
// d >= 2 the colimit is computed as a stabilized image across levels and a
// stabilization_error is thrown if two consecutive comparisons disagree
// after one retry.
AbelianGroupStructure cohomology_profinite(const GModuleData& gm, unsigned i);

// Same invariant factors, contragredient action.
GModuleData pontryagin_dual(const GModuleData& gm);

// For l != p: the two sides of the dual-quotient identity
//   M^dual / l*I*M^dual  ~  dual of (M^Gamma + M[l]);
// returned as (left, right) for comparison.
std::pair<AbelianGroupStructure, AbelianGroupStructure> li_dual_pair(const GModuleData& gm);

// Finite-level truncation (Z/p^N)^{d_v} of (Q_p/Z_p)^{d_v} with the corank
// recorded.
struct CorankDescriptor {
    AbelianGroupStructure finite_level;
    unsigned corank = 0;
};
CorankDescriptor corank_of_h2_trivial(unsigned d_v, unsigned d, std::uint64_t p, unsigned N);

// |H^1| <= |B|^d exactly; used by the CLI verdicts.
bool h1_bound_holds(const GModuleData& gm, const AbelianGroupStructure& h1);
// |H^2| <= |B|^{d(d-1)/2}; meaningful for the profinite op.
bool h2_bound_holds(const GModuleData& gm, const AbelianGroupStructure& h2);

} // namespace iwa

#endif
