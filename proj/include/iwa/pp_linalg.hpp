#ifndef IWA_PP_LINALG_HPP
#define IWA_PP_LINALG_HPP

// Exact linear algebra over the chain ring Z/p^N: Howell and Smith normal
// forms, kernels, span comparison, and the structure of finite abelian
// groups presented by matrices.

#include <cstdint>
#include <optional>
#include <vector>

#include "iwa/errors.hpp"

namespace iwa {

bool is_prime_u64(std::uint64_t n);

// The coefficient ring Z/p^N. Elements are residues in [0, p^N).
class PrimePowerRing {
public:
    // p must be prime (trial division, p <= 10^4) and 1 <= N <= 16.
    // p^N must fit comfortably in 64 bits (< 2^62).
    PrimePowerRing(std::uint64_t p, unsigned N);

    std::uint64_t p() const { return p_; }
    unsigned precision() const { return N_; }
    std::uint64_t modulus() const { return q_; }

    std::uint64_t reduce(std::uint64_t x) const { return x % q_; }
    std::uint64_t reduce_signed(std::int64_t x) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b) % q_; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    // p-adic valuation of a residue; val(0) = N by convention.
    unsigned val(std::uint64_t x) const;
    // p^k for 0 <= k <= N.
    std::uint64_t p_pow(unsigned k) const;
    bool is_unit(std::uint64_t x) const { return x % p_ != 0; }
    // Inverse of a unit residue.
    std::uint64_t unit_inverse(std::uint64_t u) const;

    bool operator==(const PrimePowerRing& o) const {
        return p_ == o.p_ && N_ == o.N_;
    }
    bool operator!=(const PrimePowerRing& o) const { return !(*this == o); }

private:
    std::uint64_t p_;
    unsigned N_;
    std::uint64_t q_;
};

// Dense row-major matrix over Z/p^N. Values are immutable in spirit: all
// operations below return fresh matrices.
class PrimePowerMatrix {
public:
    PrimePowerMatrix(PrimePowerRing ring, std::size_t rows, std::size_t cols)
        : ring_(ring), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    PrimePowerMatrix(PrimePowerRing ring, std::size_t rows, std::size_t cols,
                     std::vector<std::uint64_t> entries);

    static PrimePowerMatrix identity(PrimePowerRing ring, std::size_t n);

    const PrimePowerRing& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const std::vector<std::uint64_t>& data() const { return a_; }

    std::vector<std::uint64_t> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<std::uint64_t>& r);

    PrimePowerMatrix mul(const PrimePowerMatrix& other) const;
    PrimePowerMatrix vstack(const PrimePowerMatrix& below) const;
    PrimePowerMatrix scaled(std::uint64_t c) const;
    PrimePowerMatrix negated() const;
    bool is_zero() const;
    bool operator==(const PrimePowerMatrix& o) const;

private:
    PrimePowerRing ring_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

// Invariant-factor description of a finite abelian group: a divisibility
// chain d_1 | d_2 | ... with every d_i >= 2 (empty chain = trivial group).
// The cohomology and linear-algebra layers only ever produce p-groups (all
// d_i powers of one prime); unit groups of residue rings use the general
// form.
struct AbelianGroupStructure {
    std::vector<std::uint64_t> invariant_factors;

    static AbelianGroupStructure trivial() { return {}; }
    static AbelianGroupStructure from_prime_exponents(std::uint64_t p,
                                                      std::vector<unsigned> exponents);
    // Reconstruct the structure from the multiset of element orders of the
    // whole group (brute-force census input).
    static AbelianGroupStructure from_order_census(const std::vector<std::uint64_t>& orders);

    unsigned __int128 order() const;
    bool is_trivial() const { return invariant_factors.empty(); }
    // Exponents of the p-part, ascending; empty if p does not divide the order.
    std::vector<unsigned> p_exponents(std::uint64_t p) const;
    AbelianGroupStructure sylow(std::uint64_t p) const;

    bool operator==(const AbelianGroupStructure& o) const {
        return invariant_factors == o.invariant_factors;
    }
    bool operator!=(const AbelianGroupStructure& o) const { return !(*this == o); }
};

// Howell normal form of the row span. Canonical: two matrices over the same
// ring with the same column count have equal row spans iff their Howell
// forms are identical. Zero rows are dropped, pivots are normalized to pure
// powers of p, entries above each pivot are reduced modulo the pivot.
PrimePowerMatrix howell_form(const PrimePowerMatrix& m);

// Howell form together with a transform T such that H = T * m.
struct HowellTransform {
    PrimePowerMatrix form;
    PrimePowerMatrix transform;
};
HowellTransform howell_form_with_transform(const PrimePowerMatrix& m);

// Membership of a row vector in the row span of a Howell form.
bool in_span(const PrimePowerMatrix& howell, const std::vector<std::uint64_t>& v);

// Solve x * m = target; returns x (length m.rows()) or nullopt.
std::optional<std::vector<std::uint64_t>> solve_left(const PrimePowerMatrix& m,
                                                     const std::vector<std::uint64_t>& target);

// log_p of the span cardinality, read off the Howell pivots.
unsigned span_size_exponent(const PrimePowerMatrix& howell);

struct SmithDecomposition {
    PrimePowerMatrix U, D, V; // U * m * V = D
};
// Smith normal form over Z/p^N: D diagonal with entries 1 = p^0, p, p^2, ...
// in divisibility order, units normalized to 1, zeros sorted last; U and V
// invertible.
SmithDecomposition smith_normal_form(const PrimePowerMatrix& m);

// Basis (as Howell form) of the left kernel {x : x * m = 0}.
PrimePowerMatrix kernel_basis(const PrimePowerMatrix& m);

// Rows x (first-block coordinates) spanning {x : x * m in rowspan(sub)}.
PrimePowerMatrix preimage_span(const PrimePowerMatrix& m, const PrimePowerMatrix& sub);

enum class SpanRelation { Equal, AContainsB, BContainsA, Incomparable };

struct SubmoduleComparison {
    SpanRelation relation;
    PrimePowerMatrix intersection; // Howell form
};
// Compare two row spans in the same ambient module and compute their
// intersection via the kernel of the concatenated map.
SubmoduleComparison submodule_compare(const PrimePowerMatrix& a, const PrimePowerMatrix& b);

// Structure of (Z/p^N)^cols / rowspan(m), as an abelian p-group.
AbelianGroupStructure cokernel_structure(const PrimePowerMatrix& m);

// Structure of span(k) / span(i); requires span(i) subset of span(k).
AbelianGroupStructure subquotient_structure(const PrimePowerMatrix& k, const PrimePowerMatrix& i);

} // namespace iwa

#endif
