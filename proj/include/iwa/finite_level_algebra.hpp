#ifndef IWA_FINITE_LEVEL_ALGEBRA_HPP
#define IWA_FINITE_LEVEL_ALGEBRA_HPP

// Finite-level models of Iwasawa algebras: group rings R[G] for finite
// abelian p-groups G over Z/l^N, and truncated multivariate polynomial
// rings Z/p^N[T_1..T_d]/(T_1^M..T_d^M), with ideals kept as Howell-form
// coefficient spans.

#include <cstdint>
#include <string>
#include <vector>

#include "iwa/pp_linalg.hpp"

namespace iwa {

// Resource guard on ring basis dimension. Overridable through the
// IWA_MAX_RING_CARDINALITY environment variable; default 10^7.
std::uint64_t ring_dimension_cap();

// G = product of Z/p^{k_i}; elements are exponent vectors.
struct FiniteAbelianPGroup {
    std::uint64_t p = 2;
    std::vector<unsigned> exponents; // k_i >= 1; empty = trivial group

    FiniteAbelianPGroup() = default;
    FiniteAbelianPGroup(std::uint64_t prime, std::vector<unsigned> exps);

    std::size_t rank() const { return exponents.size(); }
    // p^{k_i}
    std::uint64_t component_order(std::size_t i) const;
    unsigned __int128 order() const;
    bool operator==(const FiniteAbelianPGroup& o) const {
        return p == o.p && exponents == o.exponents;
    }
};

class FiniteLevelRing {
public:
    enum class Kind { GroupRing, TruncatedPoly };
    using Element = std::vector<std::uint64_t>; // coefficients on the fixed basis

    // Trivial placeholder ring (Z/2, no variables); real instances come from
    // the factories.
    FiniteLevelRing() : FiniteLevelRing(Kind::TruncatedPoly, PrimePowerRing(2, 1)) {
        cap_ = 1;
        finish_setup();
    }

    static FiniteLevelRing group_ring(PrimePowerRing coeff, FiniteAbelianPGroup group);
    static FiniteLevelRing truncated_poly(PrimePowerRing coeff, unsigned vars, unsigned degree_cap);

    Kind kind() const { return kind_; }
    const PrimePowerRing& coeff() const { return coeff_; }
    const FiniteAbelianPGroup& group() const { return group_; }
    unsigned vars() const { return vars_; }
    unsigned degree_cap() const { return cap_; }
    std::size_t dim() const { return dim_; }
    std::size_t positions() const { return radix_.size(); }

    // Basis indexing: mixed-radix little-endian over the exponent vector.
    std::vector<unsigned> exponents_of(std::size_t index) const;
    std::size_t index_of(const std::vector<unsigned>& exps) const;
    // Product of two basis elements; returns dim() when truncated to zero.
    std::size_t basis_mul(std::size_t i, std::size_t j) const;

    Element zero() const { return Element(dim_, 0); }
    Element one() const;
    Element monomial(std::size_t index, std::uint64_t c = 1) const;
    // gamma_i for group rings, T_i for truncated polynomial rings.
    Element generator(std::size_t i) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scalar_mul(std::uint64_t c, const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, unsigned e) const;
    bool is_zero(const Element& a) const;
    bool is_unit(const Element& a) const;

    bool operator==(const FiniteLevelRing& o) const;
    bool operator!=(const FiniteLevelRing& o) const { return !(*this == o); }

private:
    FiniteLevelRing(Kind k, PrimePowerRing coeff) : kind_(k), coeff_(coeff) {}
    void finish_setup();

    Kind kind_;
    PrimePowerRing coeff_;
    FiniteAbelianPGroup group_; // GroupRing only
    unsigned vars_ = 0, cap_ = 0; // TruncatedPoly only
    std::vector<std::uint64_t> radix_;
    std::size_t dim_ = 1;
};

// Spec-level free function; forwards to the ring.
FiniteLevelRing::Element ring_multiply(const FiniteLevelRing::Element& a,
                                       const FiniteLevelRing::Element& b,
                                       const FiniteLevelRing& ring);

// An ideal, stored as its generators plus the Howell form of the
// coefficient-vector span of {g * basis monomial}. The span is checked to be
// closed under multiplication by the ring generators at construction.
struct RingIdeal {
    FiniteLevelRing ring;
    std::vector<FiniteLevelRing::Element> generators;
    PrimePowerMatrix span; // Howell form, cols = ring.dim()

    bool contains(const FiniteLevelRing::Element& x) const;
    // log_p of the span cardinality
    unsigned size_exponent() const { return span_size_exponent(span); }
    bool same_span(const RingIdeal& other) const;
};

RingIdeal ideal_span(const FiniteLevelRing& ring,
                     std::vector<FiniteLevelRing::Element> generators);
RingIdeal ideal_product(const RingIdeal& a, const RingIdeal& b);
RingIdeal ideal_sum(const RingIdeal& a, const RingIdeal& b);
RingIdeal ideal_intersection(const RingIdeal& a, const RingIdeal& b);

// I^k for I = ker(augmentation) of a group ring; k >= 1.
RingIdeal augmentation_ideal_power(const FiniteLevelRing& ring, unsigned k);

// The finite-level isomorphism Z/p^N[Z/p^k] ~ Z/p^N[T]/((1+T)^{p^k} - 1)
// given by gamma |-> 1 + T. Polynomials are coefficient vectors of length
// p^k on the basis 1, T, ..., T^{p^k - 1}.
std::vector<std::uint64_t> group_ring_to_polynomial(const FiniteLevelRing::Element& x,
                                                    const FiniteLevelRing& ring);
FiniteLevelRing::Element polynomial_to_group_ring(const std::vector<std::uint64_t>& poly,
                                                  const FiniteLevelRing& ring);
// Multiplication in Z/p^N[T]/((1+T)^{p^k} - 1), independent of the group
// ring model (used to verify the map is multiplicative).
std::vector<std::uint64_t> cyclic_poly_mul(const std::vector<std::uint64_t>& a,
                                           const std::vector<std::uint64_t>& b,
                                           const PrimePowerRing& coeff, std::uint64_t p_k);

} // namespace iwa

#endif
