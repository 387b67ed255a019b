#ifndef IWA_CARLITZ_HPP
#define IWA_CARLITZ_HPP

// Arithmetic of A = F_q[T] and the Carlitz module Phi_T(x) = Tx + x^q:
// torsion polynomials, torsion counts, and the Galois layer structure of
// the cyclotomic-at-p tower. Also the polynomial utilities (irreducibility,
// factorization, p-th roots) shared with the local-invariants layer.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "iwa/pp_linalg.hpp"

namespace iwa {

// F_q, q = p^f <= 64, as F_p[Y] modulo the lexicographically least monic
// irreducible of degree f. Elements are indices in [0, q) whose base-p
// digits are the coefficients.
class FqContext {
public:
    FqContext(std::uint64_t p, unsigned f);

    std::uint64_t p() const { return p_; }
    unsigned f() const { return f_; }
    std::uint64_t q() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_[a * q_ + b]; }
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    // unique p-th root (Frobenius is bijective)
    std::uint64_t pth_root(std::uint64_t a) const;

private:
    std::uint64_t p_;
    unsigned f_;
    std::uint64_t q_;
    std::vector<unsigned> modulus_;
    std::vector<std::uint64_t> mul_;
    std::vector<std::uint64_t> inv_;
};

// Polynomial over F_q, coefficients ascending, no trailing zeros (zero
// polynomial = empty vector).
using PolyFq = std::vector<std::uint16_t>;

PolyFq poly_trim(PolyFq a);
int poly_deg(const PolyFq& a); // -1 for the zero polynomial
bool poly_is_zero(const PolyFq& a);
bool poly_is_monic(const FqContext& F, const PolyFq& a);
PolyFq poly_from_coeffs(std::initializer_list<std::uint16_t> cs);
PolyFq poly_add(const FqContext& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_sub(const FqContext& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_scalar(const FqContext& F, std::uint64_t c, const PolyFq& a);
PolyFq poly_mul(const FqContext& F, const PolyFq& a, const PolyFq& b);
std::pair<PolyFq, PolyFq> poly_divmod(const FqContext& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mod(const FqContext& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_gcd(const FqContext& F, PolyFq a, PolyFq b); // monic
PolyFq poly_make_monic(const FqContext& F, const PolyFq& a);
PolyFq poly_pow(const FqContext& F, const PolyFq& a, std::uint64_t e);
bool poly_equal(const PolyFq& a, const PolyFq& b);
// f(T)^{q^i}: coefficients are fixed by Frobenius, exponents spread by q^i.
PolyFq poly_q_power_spread(const FqContext& F, const PolyFq& a, unsigned i);

// Deterministic trial division against monic polynomials of ascending
// degree. The budget caps the number of candidate divisors tried.
bool poly_irreducible(const FqContext& F, const PolyFq& a,
                      std::uint64_t budget = 4000000);
struct PolyFactorization {
    std::uint64_t leading;                           // constant in F_q*
    std::vector<std::pair<PolyFq, unsigned>> factors; // monic irreducible, multiplicity
};
PolyFactorization poly_factor(const FqContext& F, const PolyFq& a,
                              std::uint64_t budget = 4000000);
// g with g^p = a, if a is a p-th power.
std::optional<PolyFq> poly_pth_root(const FqContext& F, const PolyFq& a);

// Phi_a(x) = sum c_i x^{q^i} with c_i in A; c_0 = a, deg_x = q^{deg a}.
struct CarlitzPolynomial {
    PolyFq operand;
    std::vector<PolyFq> coeffs; // index i is the coefficient of x^{q^i}
};

CarlitzPolynomial carlitz_polynomial(const FqContext& F, const PolyFq& a);
// Composition of additive polynomials: (f o g)_k = sum_{i+j=k} c_i * d_j^{q^i}.
CarlitzPolynomial carlitz_compose(const FqContext& F, const CarlitzPolynomial& f,
                                  const CarlitzPolynomial& g);
bool carlitz_equal(const CarlitzPolynomial& a, const CarlitzPolynomial& b);

struct TorsionLayer {
    std::uint64_t torsion_count;     // q^{n deg p}
    std::uint64_t galois_order;      // |(A/p^n)*|
    std::uint64_t zp_part_order;     // q^{(n-1) deg p}
    std::uint64_t prime_to_p_order;  // q^{deg p} - 1
};
// Layer data of the cyclotomic tower at the monic irreducible prime;
// requires q^{n deg p} <= 10^6.
TorsionLayer torsion_layer(const FqContext& F, const PolyFq& prime, unsigned n);

// Invariant factors of (A/p^n)* by brute-force element-order census;
// requires |A/p^n| <= 10^5.
AbelianGroupStructure unit_group_structure(const FqContext& F, const PolyFq& prime, unsigned n);

} // namespace iwa

#endif
