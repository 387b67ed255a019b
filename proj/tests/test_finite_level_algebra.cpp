#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/finite_level_algebra.hpp"
#include "oracle.hpp"

using namespace iwa;
using Element = FiniteLevelRing::Element;

namespace {

Element random_element(std::mt19937_64& rng, const FiniteLevelRing& ring) {
    Element e(ring.dim());
    for (auto& c : e) c = rng() % ring.coeff().modulus();
    return e;
}

} // namespace

TEST_CASE("group ring multiplication basics") {
    // Z/9[Z/3]
    PrimePowerRing R(3, 2);
    FiniteLevelRing ring = FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(3, {1}));
    CHECK(ring.dim() == 3);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        Element a = random_element(rng, ring);
        CHECK(ring.mul(a, ring.one()) == a);
        Element b = random_element(rng, ring), c = random_element(rng, ring);
        CHECK(ring.mul(a, b) == ring.mul(b, a));
        CHECK(ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c)));
    }
}

TEST_CASE("(gamma - 1)^p matches the binomial convolution oracle") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        PrimePowerRing R(p, 2);
        FiniteLevelRing ring = FiniteLevelRing::group_ring(
            R, FiniteAbelianPGroup(p, {1}));
        Element gm1 = ring.sub(ring.generator(0), ring.one());
        Element power = ring.pow(gm1, static_cast<unsigned>(p));
        // oracle: (gamma-1)^p = sum_i C(p,i) (-1)^{p-i} gamma^i with
        // exponents folded mod p; binomials straight from the factorial
        // recursion mod p^2
        std::vector<std::uint64_t> binom(p + 1, 0);
        binom[0] = 1;
        for (std::uint64_t row = 1; row <= p; ++row)
            for (std::uint64_t j = row; j > 0; --j) binom[j] = R.add(binom[j], binom[j - 1]);
        Element expect = ring.zero();
        for (std::uint64_t i = 0; i <= p; ++i) {
            std::uint64_t c = binom[i];
            if ((p - i) % 2 == 1) c = R.neg(c);
            std::size_t idx = static_cast<std::size_t>(i % p);
            expect[idx] = R.add(expect[idx], c);
        }
        CHECK(power == expect);
    }
}

TEST_CASE("truncated polynomial ring truncates") {
    PrimePowerRing R(2, 3);
    FiniteLevelRing ring = FiniteLevelRing::truncated_poly(R, 1, 3);
    Element T = ring.generator(0);
    Element T2 = ring.mul(T, T);
    CHECK_FALSE(ring.is_zero(T2));
    CHECK(ring.is_zero(ring.mul(T, T2)));
}

TEST_CASE("gamma -> 1 + T is a ring isomorphism") {
    for (auto [p, N, k] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 2, 2},
                           {3, 2, 1},
                           {2, 3, 3},
                           {5, 1, 1}}) {
        PrimePowerRing R(p, N);
        FiniteLevelRing ring = FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(p, {k}));
        std::uint64_t pk = ring.dim();

        // gamma -> 1 + T
        auto img = group_ring_to_polynomial(ring.generator(0), ring);
        std::vector<std::uint64_t> expect(pk, 0);
        expect[0] = 1;
        if (pk > 1) expect[1] = 1;
        CHECK(img == expect);

        // norm element -> ((1+T)^{p^k} - 1)/T = sum_{j>=1} C(p^k, j) T^{j-1}
        Element norm = ring.zero();
        for (std::size_t i = 0; i < pk; ++i) norm[i] = 1;
        auto norm_img = group_ring_to_polynomial(norm, ring);
        // Pascal row p^k mod p^N
        std::vector<std::uint64_t> row(pk + 1, 0);
        row[0] = 1;
        for (std::uint64_t r = 1; r <= pk; ++r)
            for (std::uint64_t j = r; j > 0; --j) row[j] = R.add(row[j], row[j - 1]);
        std::vector<std::uint64_t> norm_expect(pk, 0);
        for (std::size_t j = 1; j <= pk; ++j) norm_expect[j - 1] = row[j];
        CHECK(norm_img == norm_expect);

        // (1+T)^{p^k} = 1 in the quotient
        std::vector<std::uint64_t> one_plus_T(pk, 0);
        one_plus_T[0] = 1;
        if (pk > 1) one_plus_T[1] = 1;
        std::vector<std::uint64_t> acc(pk, 0);
        acc[0] = 1;
        for (std::uint64_t i = 0; i < pk; ++i) acc = cyclic_poly_mul(acc, one_plus_T, R, pk);
        std::vector<std::uint64_t> unit(pk, 0);
        unit[0] = 1;
        CHECK(acc == unit);

        // additive, multiplicative, unital, and a two-sided inverse
        std::mt19937_64 rng(p * 100 + k);
        CHECK(group_ring_to_polynomial(ring.one(), ring) == unit);
        for (int t = 0; t < 25; ++t) {
            Element a = random_element(rng, ring), b = random_element(rng, ring);
            CHECK(group_ring_to_polynomial(ring.add(a, b), ring) ==
                  [&] {
                      auto x = group_ring_to_polynomial(a, ring);
                      auto y = group_ring_to_polynomial(b, ring);
                      for (std::size_t i = 0; i < x.size(); ++i) x[i] = R.add(x[i], y[i]);
                      return x;
                  }());
            CHECK(group_ring_to_polynomial(ring.mul(a, b), ring) ==
                  cyclic_poly_mul(group_ring_to_polynomial(a, ring),
                                  group_ring_to_polynomial(b, ring), R, pk));
            CHECK(polynomial_to_group_ring(group_ring_to_polynomial(a, ring), ring) == a);
        }
    }
}

TEST_CASE("augmentation ideal powers: the two coefficient regimes") {
    // l != p: I = I^2
    {
        PrimePowerRing R(5, 2); // l = 5
        FiniteLevelRing ring = FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(3, {1}));
        RingIdeal I = augmentation_ideal_power(ring, 1);
        RingIdeal I2 = augmentation_ideal_power(ring, 2);
        CHECK(I.span == I2.span);
    }
    // l = p: |I/I^2| = |G| for G = Z/p
    for (std::uint64_t p : {2ull, 3ull}) {
        PrimePowerRing R(p, 3);
        FiniteLevelRing ring = FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(p, {1}));
        RingIdeal I = augmentation_ideal_power(ring, 1);
        RingIdeal I2 = augmentation_ideal_power(ring, 2);
        CHECK(I.size_exponent() - I2.size_exponent() == 1); // p^1 = |G|
    }
    // trivial group: I = (0) for every k
    {
        PrimePowerRing R(2, 2);
        FiniteLevelRing ring = FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(2, {}));
        CHECK(augmentation_ideal_power(ring, 1).span.rows() == 0);
        CHECK(augmentation_ideal_power(ring, 3).span.rows() == 0);
        CHECK_THROWS_AS(augmentation_ideal_power(ring, 0), validation_error);
    }
}

TEST_CASE("|I/I^2| equals |G tensor Z/p^N| in general") {
    for (std::uint64_t p : {2ull, 3ull}) {
        for (unsigned N = 1; N <= 3; ++N) {
            for (const auto& exps : std::vector<std::vector<unsigned>>{{1}, {2}, {1, 1}, {2, 1}}) {
                PrimePowerRing R(p, N);
                FiniteLevelRing ring =
                    FiniteLevelRing::group_ring(R, FiniteAbelianPGroup(p, exps));
                RingIdeal I = augmentation_ideal_power(ring, 1);
                RingIdeal I2 = augmentation_ideal_power(ring, 2);
                unsigned expect = 0;
                for (unsigned k : exps) expect += std::min(k, N);
                CHECK(I.size_exponent() - I2.size_exponent() == expect);
            }
        }
    }
}

TEST_CASE("ideal span membership examples") {
    PrimePowerRing R(2, 3);
    FiniteLevelRing ring = FiniteLevelRing::truncated_poly(R, 1, 4);
    // generators {1}: unit ideal
    RingIdeal unit = ideal_span(ring, {ring.one()});
    CHECK(unit.size_exponent() == R.precision() * ring.dim());
    // maximal ideal (p, T)
    RingIdeal mx = ideal_span(ring, {ring.monomial(0, 2), ring.generator(0)});
    Element pT = ring.mul(ring.monomial(0, 2), ring.generator(0));
    CHECK(mx.contains(pT));
    CHECK_FALSE(mx.contains(ring.one()));
}

TEST_CASE("ideal span cardinality equals brute-force closure") {
    // (T^2 + p^2) in Z/8[T]/T^6
    PrimePowerRing R(2, 3);
    FiniteLevelRing ring = FiniteLevelRing::truncated_poly(R, 1, 6);
    Element g = ring.zero();
    g[0] = 4; // p^2
    g[2] = 1; // T^2
    RingIdeal ideal = ideal_span(ring, {g});
    // oracle: additive closure of all monomial multiples of g
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t j = 0; j < ring.dim(); ++j) {
        Element r = ring.mul(g, ring.monomial(j));
        if (!ring.is_zero(r)) rows.push_back(r);
    }
    PrimePowerMatrix m(R, rows.size(), ring.dim());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    auto closure = oracle::enumerate_span(m);
    CHECK(closure.size() == (std::size_t(1) << ideal.size_exponent()));
    for (std::size_t i = 0; i < ideal.span.rows(); ++i)
        CHECK(closure.count(ideal.span.row(i)) == 1);
}

TEST_CASE("ideal product: commutative, associative, inside the intersection") {
    std::mt19937_64 rng(42);
    PrimePowerRing R(2, 2);
    FiniteLevelRing ring = FiniteLevelRing::truncated_poly(R, 2, 3);
    for (int iter = 0; iter < 10; ++iter) {
        RingIdeal A = ideal_span(ring, {random_element(rng, ring)});
        RingIdeal B = ideal_span(ring, {random_element(rng, ring)});
        RingIdeal C = ideal_span(ring, {random_element(rng, ring)});
        CHECK(ideal_product(A, B).span == ideal_product(B, A).span);
        CHECK(ideal_product(ideal_product(A, B), C).span ==
              ideal_product(A, ideal_product(B, C)).span);
        RingIdeal prod = ideal_product(A, B);
        RingIdeal inter = ideal_intersection(A, B);
        auto cmp = submodule_compare(prod.span, inter.span);
        CHECK((cmp.relation == SpanRelation::Equal ||
               cmp.relation == SpanRelation::BContainsA));
    }
}

TEST_CASE("ring dimension cap guards construction") {
    PrimePowerRing R(2, 1);
    CHECK_THROWS_AS(FiniteLevelRing::truncated_poly(R, 9, 8), validation_error); // 8^9 > 10^7
}
