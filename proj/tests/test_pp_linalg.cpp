#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwa/pp_linalg.hpp"
#include "oracle.hpp"

using namespace iwa;

TEST_CASE("ring construction and arithmetic") {
    CHECK_THROWS_AS(PrimePowerRing(4, 2), validation_error);
    CHECK_THROWS_AS(PrimePowerRing(1, 2), validation_error);
    CHECK_THROWS_AS(PrimePowerRing(3, 0), validation_error);
    CHECK_THROWS_AS(PrimePowerRing(3, 17), validation_error);
    CHECK_THROWS_AS(PrimePowerRing(9973, 16), validation_error); // > 2^62

    PrimePowerRing R(3, 2);
    CHECK(R.modulus() == 9);
    CHECK(R.val(0) == 2);
    CHECK(R.val(3) == 1);
    CHECK(R.val(6) == 1);
    CHECK(R.val(5) == 0);
    CHECK(R.mul(R.unit_inverse(2), 2) == 1);
    CHECK(R.reduce_signed(-1) == 8);
}

TEST_CASE("howell form: fixed examples") {
    PrimePowerRing R9(3, 2);

    // zero matrix: canonical form has no nonzero rows and spans {0}
    PrimePowerMatrix z(R9, 1, 1, {0});
    PrimePowerMatrix hz = howell_form(z);
    CHECK(hz.rows() == 0);
    CHECK(howell_form(hz) == hz);

    // [[3]] over Z/9 is already canonical, span {0,3,6}
    PrimePowerMatrix m3(R9, 1, 1, {3});
    PrimePowerMatrix h3 = howell_form(m3);
    REQUIRE(h3.rows() == 1);
    CHECK(h3(0, 0) == 3);
    auto span3 = oracle::enumerate_span(h3);
    CHECK(span3.size() == 3);
    CHECK(span3.count({0}) == 1);
    CHECK(span3.count({3}) == 1);
    CHECK(span3.count({6}) == 1);

    // [[2,1],[0,3]] over Z/9: span has 27 elements, preserved by the form
    PrimePowerMatrix m(R9, 2, 2, {2, 1, 0, 3});
    PrimePowerMatrix h = howell_form(m);
    auto s1 = oracle::enumerate_span(m);
    auto s2 = oracle::enumerate_span(h);
    CHECK(s1.size() == 27);
    CHECK(s1 == s2);
    CHECK(span_size_exponent(h) == 3); // 3^3 = 27
}

TEST_CASE("howell form: canonical on random instances") {
    std::mt19937_64 rng(12345);
    int checked = 0;
    for (int iter = 0; iter < 120; ++iter) {
        std::uint64_t p = (iter % 2 == 0) ? 2 : 3;
        unsigned N = 1 + iter % 3;
        PrimePowerRing R(p, N);
        std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
        PrimePowerMatrix m = oracle::random_matrix(rng, R, rows, cols);
        PrimePowerMatrix h = howell_form(m);
        // idempotent and span-preserving
        CHECK(howell_form(h) == h);
        auto sm = oracle::enumerate_span(m);
        CHECK(sm == oracle::enumerate_span(h));
        // equal spans iff equal forms: span-preserving scramble
        PrimePowerMatrix m2 = oracle::randomize_span(rng, m);
        CHECK(howell_form(m2) == h);
        // different span (usually) gives a different form
        PrimePowerMatrix grown = oracle::random_matrix(rng, R, 1, cols).vstack(m);
        PrimePowerMatrix hg = howell_form(grown);
        bool spans_equal = oracle::enumerate_span(grown) == sm;
        CHECK((hg == h) == spans_equal);
        ++checked;
    }
    CHECK(checked == 120);
}

TEST_CASE("smith normal form: fixed examples") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        PrimePowerRing R(p, 3);
        // already diagonal with the divisibility chain
        PrimePowerMatrix d0(R, 2, 2, {p, 0, 0, p * p});
        auto s0 = smith_normal_form(d0);
        CHECK(s0.D(0, 0) == p);
        CHECK(s0.D(1, 1) == p * p);

        // permutation case
        PrimePowerMatrix d1(R, 2, 2, {0, p, p, 0});
        auto s1 = smith_normal_form(d1);
        CHECK(s1.D(0, 0) == p);
        CHECK(s1.D(1, 1) == p);

        // [[1,1],[1,1+p]] -> diag(1, p)
        PrimePowerMatrix d2(R, 2, 2, {1, 1, 1, 1 + p});
        auto s2 = smith_normal_form(d2);
        CHECK(s2.D(0, 0) == 1);
        CHECK(s2.D(1, 1) == p);
        CHECK(s2.U.mul(d2).mul(s2.V) == s2.D);
    }
}

TEST_CASE("smith normal form: random recomposition, divisibility, invertibility") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 150; ++iter) {
        std::uint64_t p = (iter % 3 == 0) ? 2 : (iter % 3 == 1) ? 3 : 5;
        unsigned N = 1 + iter % 4;
        PrimePowerRing R(p, N);
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        PrimePowerMatrix m = oracle::random_matrix(rng, R, rows, cols);
        auto s = smith_normal_form(m);
        CHECK(s.U.mul(m).mul(s.V) == s.D);
        // diagonal: powers of p (or 0), divisibility chain, off-diagonal zero
        unsigned prev = 0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (i != j) {
                    CHECK(s.D(i, j) == 0);
                } else {
                    std::uint64_t d = s.D(i, i);
                    unsigned v = R.val(d);
                    CHECK((d == 0 || d == R.p_pow(v)));
                    CHECK(v >= prev);
                    prev = v;
                }
            }
        // U, V invertible: their row spans are everything
        CHECK(span_size_exponent(howell_form(s.U)) == N * rows);
        CHECK(span_size_exponent(howell_form(s.V)) == N * cols);
    }
}

TEST_CASE("kernel basis: fixed examples") {
    for (std::uint64_t p : {2ull, 5ull}) {
        PrimePowerRing R(p, 2);
        PrimePowerMatrix id(R, 2, 2, {1, 0, 0, 1});
        CHECK(kernel_basis(id).rows() == 0);

        PrimePowerMatrix mp(R, 1, 1, {p});
        PrimePowerMatrix k = kernel_basis(mp);
        REQUIRE(k.rows() == 1);
        CHECK(k(0, 0) == p);
    }
    // [[2,4],[0,2]] over Z/8 against full enumeration
    PrimePowerRing R8(2, 3);
    PrimePowerMatrix m(R8, 2, 2, {2, 4, 0, 2});
    PrimePowerMatrix k = kernel_basis(m);
    std::size_t count = 0;
    for (std::uint64_t x = 0; x < 8; ++x)
        for (std::uint64_t y = 0; y < 8; ++y) {
            bool in_kernel = (R8.add(R8.mul(x, 2), 0) == 0) &&
                             (R8.add(R8.mul(x, 4), R8.mul(y, 2)) == 0);
            if (in_kernel) {
                ++count;
                CHECK(in_span(k, {x, y}));
            }
        }
    CHECK(oracle::enumerate_span(k).size() == count);
}

TEST_CASE("rank-nullity over Z/p^N on random instances") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 80; ++iter) {
        std::uint64_t p = (iter % 2) ? 2 : 3;
        unsigned N = 1 + iter % 2;
        PrimePowerRing R(p, N);
        std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
        PrimePowerMatrix m = oracle::random_matrix(rng, R, rows, cols);
        auto image = oracle::enumerate_span(m);
        auto kernel = oracle::enumerate_span(kernel_basis(m));
        unsigned __int128 ambient = 1;
        for (std::size_t i = 0; i < rows; ++i) ambient *= R.modulus();
        CHECK(static_cast<unsigned __int128>(image.size()) * kernel.size() == ambient);
    }
}

TEST_CASE("submodule compare: fixed examples") {
    PrimePowerRing R(3, 3);
    PrimePowerMatrix a(R, 1, 2, {3, 6});
    auto cmp = submodule_compare(a, a);
    CHECK(cmp.relation == SpanRelation::Equal);
    CHECK(cmp.intersection == howell_form(a));

    // pV contains p^2 V in (Z/p^3)^1
    PrimePowerMatrix pv(R, 1, 1, {3});
    PrimePowerMatrix ppv(R, 1, 1, {9});
    auto chain = submodule_compare(pv, ppv);
    CHECK(chain.relation == SpanRelation::AContainsB);
    CHECK(chain.intersection == howell_form(ppv));

    // incomparable axes over Z/p^2
    PrimePowerRing R2(2, 2);
    PrimePowerMatrix e1(R2, 1, 2, {1, 0});
    PrimePowerMatrix e2(R2, 1, 2, {0, 1});
    auto inc = submodule_compare(e1, e2);
    CHECK(inc.relation == SpanRelation::Incomparable);
    auto bf = oracle::set_intersection(oracle::enumerate_span(e1), oracle::enumerate_span(e2));
    CHECK(oracle::enumerate_span(inc.intersection) == bf);

    CHECK_THROWS_AS(submodule_compare(e1, PrimePowerMatrix(R2, 1, 3)), validation_error);
}

TEST_CASE("submodule intersections match set intersections on random instances") {
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 60; ++iter) {
        std::uint64_t p = (iter % 2) ? 2 : 3;
        PrimePowerRing R(p, 1 + iter % 2);
        std::size_t cols = 2 + rng() % 2;
        PrimePowerMatrix a = oracle::random_matrix(rng, R, 1 + rng() % 2, cols);
        PrimePowerMatrix b = oracle::random_matrix(rng, R, 1 + rng() % 2, cols);
        auto cmp = submodule_compare(a, b);
        auto sa = oracle::enumerate_span(a), sb = oracle::enumerate_span(b);
        auto expected = oracle::set_intersection(sa, sb);
        CHECK(oracle::enumerate_span(cmp.intersection) == expected);
        bool a_in_b = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
        bool b_in_a = std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
        SpanRelation expected_rel = a_in_b && b_in_a ? SpanRelation::Equal
                                  : b_in_a           ? SpanRelation::AContainsB
                                  : a_in_b           ? SpanRelation::BContainsA
                                                     : SpanRelation::Incomparable;
        CHECK(cmp.relation == expected_rel);
    }
}

TEST_CASE("cokernel and subquotient structure") {
    PrimePowerRing R(2, 3);
    // coker of diag(2,4) in (Z/8)^2 is Z/2 + Z/4
    PrimePowerMatrix m(R, 2, 2, {2, 0, 0, 4});
    auto g = cokernel_structure(m);
    CHECK(g == AbelianGroupStructure::from_prime_exponents(2, {1, 2}));
    // subquotient: (Z/8)^1 / span{2} = Z/2
    PrimePowerMatrix full = PrimePowerMatrix::identity(R, 1);
    PrimePowerMatrix sub(R, 1, 1, {2});
    CHECK(subquotient_structure(full, sub) ==
          AbelianGroupStructure::from_prime_exponents(2, {1}));
}

TEST_CASE("solve_left finds representations") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 60; ++iter) {
        PrimePowerRing R(3, 2);
        PrimePowerMatrix m = oracle::random_matrix(rng, R, 2 + rng() % 2, 3);
        // pick a random span element
        std::vector<std::uint64_t> x(m.rows());
        for (auto& c : x) c = rng() % R.modulus();
        std::vector<std::uint64_t> target(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                target[j] = R.add(target[j], R.mul(x[i], m(i, j)));
        auto sol = solve_left(m, target);
        REQUIRE(sol.has_value());
        std::vector<std::uint64_t> check(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                check[j] = R.add(check[j], R.mul((*sol)[i], m(i, j)));
        CHECK(check == target);
    }
}

TEST_CASE("group structure from order census") {
    // Z/6 from its element orders
    CHECK(AbelianGroupStructure::from_order_census({1, 2, 3, 3, 6, 6}).invariant_factors ==
          std::vector<std::uint64_t>{6});
    // Klein four group
    CHECK(AbelianGroupStructure::from_order_census({1, 2, 2, 2}).invariant_factors ==
          std::vector<std::uint64_t>{2, 2});
    // Z/2 + Z/4
    CHECK(AbelianGroupStructure::from_order_census({1, 2, 2, 2, 4, 4, 4, 4}).invariant_factors ==
          std::vector<std::uint64_t>{2, 4});
    // trivial group
    CHECK(AbelianGroupStructure::from_order_census({1}).is_trivial());
}
