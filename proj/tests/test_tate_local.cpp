#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/tate_local.hpp"

using namespace iwa;

namespace {

TateLocalData split_place(std::int64_t ord, std::uint64_t qv, PlaceBehavior b) {
    TateLocalData t;
    t.ord_v_j = ord;
    t.residue_size = qv;
    t.reduction = ReductionType::SplitMultiplicative;
    t.behavior = b;
    return t;
}

TateLocalData good_place(std::uint64_t qv, PlaceBehavior b) {
    TateLocalData t;
    t.ord_v_j = 0;
    t.residue_size = qv;
    t.reduction = ReductionType::Good;
    t.behavior = b;
    return t;
}

PolyFq random_nonzero(std::mt19937_64& rng, const FqContext& F, int deg) {
    PolyFq a(deg + 1);
    for (int i = 0; i <= deg; ++i) a[i] = static_cast<std::uint16_t>(rng() % F.q());
    while (a.back() == 0) a.back() = static_cast<std::uint16_t>(rng() % F.q());
    return a;
}

// independent route: strip p-th roots of the reduced fraction
unsigned level_by_root_extraction(const FqContext& F, PolyFq num, PolyFq den) {
    PolyFq g = poly_gcd(F, num, den);
    num = poly_divmod(F, num, g).first;
    den = poly_divmod(F, den, g).first;
    unsigned n = 0;
    for (;;) {
        bool num_const = poly_deg(num) == 0;
        bool den_const = poly_deg(den) == 0;
        auto rn = num_const ? std::optional<PolyFq>(num) : poly_pth_root(F, num);
        auto rd = den_const ? std::optional<PolyFq>(den) : poly_pth_root(F, den);
        if (!rn || !rd) return n;
        num = *rn;
        den = *rd;
        ++n;
    }
}

} // namespace

TEST_CASE("local invariants at split multiplicative places") {
    auto inv = local_invariants(split_place(-5, 4, {PlaceBehaviorKind::SplitsCompletely, 0, 1}));
    CHECK(inv.component_order == 5);
    CHECK(inv.tate_index == 15);
    CHECK(inv.h1_e0.is_trivial()); // e = 1

    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        auto ram = local_invariants(
            split_place(-3, 9, {PlaceBehaviorKind::Ramified, 1, p * p}));
        CHECK(ram.h1_e0.invariant_factors == std::vector<std::uint64_t>{p * p});
        CHECK(static_cast<std::uint64_t>(ram.h1_e0.order()) == p * p);
    }

    CHECK_THROWS_AS(local_invariants(good_place(4, {})), hypothesis_error);
}

TEST_CASE("tower component growth") {
    TateLocalData t = split_place(-5, 4, {PlaceBehaviorKind::Ramified, 1, 2});
    CHECK(tower_component_order(t, 1).order == 5);
    CHECK(tower_component_order(t, 2).order == 10);
    CHECK(tower_component_order(t, 2).quotient.invariant_factors ==
          std::vector<std::uint64_t>{2});

    // p-part grows by exactly e: |T| = p u with u prime to p, e = p^2
    for (std::uint64_t p : {2ull, 3ull}) {
        std::uint64_t u = (p == 2) ? 5 : 5;
        TateLocalData s = split_place(-static_cast<std::int64_t>(p * u), 4,
                                      {PlaceBehaviorKind::Ramified, 1, p * p});
        auto grown = tower_component_order(s, p * p);
        CHECK(grown.order == p * p * p * u);
    }

    // multiplicativity under composition
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        std::uint64_t e1 = 1 + rng() % 8, e2 = 1 + rng() % 8;
        std::int64_t ord = -static_cast<std::int64_t>(1 + rng() % 30);
        TateLocalData s = split_place(ord, 4, {PlaceBehaviorKind::SplitsCompletely, 0, 1});
        TateLocalData mid = s;
        mid.ord_v_j = ord * static_cast<std::int64_t>(e1);
        CHECK(tower_component_order(mid, e2).order == tower_component_order(s, e1 * e2).order);
    }
}

TEST_CASE("local kernel classification") {
    const std::uint64_t p = 3;
    const unsigned d = 2;

    // good reduction at l = p: zero
    auto g = ker_dw_classify(good_place(9, {}), p, p, d);
    CHECK(g.kind == KerDwClass::Kind::Zero);

    // split-complete bad place: zero
    auto sc = ker_dw_classify(split_place(-6, 4, {PlaceBehaviorKind::SplitsCompletely, 0, 1}),
                              p, p, d);
    CHECK(sc.kind == KerDwClass::Kind::Zero);

    // inert bad place with |T| = p^2 * 3... use p = 3, |T| = 9*2 = 18: p-part 9
    auto in = ker_dw_classify(split_place(-18, 4, {PlaceBehaviorKind::UnramifiedInert, 0, 1}),
                              p, p, d);
    CHECK(in.kind == KerDwClass::Kind::FiniteBounded);
    CHECK(in.bound == 9);

    // ramified bad place: corank at most d_v
    auto ram = ker_dw_classify(split_place(-5, 4, {PlaceBehaviorKind::Ramified, 2, 3}),
                               p, p, d);
    CHECK(ram.kind == KerDwClass::Kind::CorankAtMost);
    CHECK(ram.corank == 2);

    // l != p: always zero, across every behavior
    for (auto behavior : {PlaceBehavior{PlaceBehaviorKind::SplitsCompletely, 0, 1},
                          PlaceBehavior{PlaceBehaviorKind::UnramifiedInert, 0, 1},
                          PlaceBehavior{PlaceBehaviorKind::Ramified, 1, 3}}) {
        for (std::uint64_t l : {2ull, 5ull, 7ull}) {
            auto z = ker_dw_classify(split_place(-12, 8, behavior), l, p, d);
            CHECK(z.kind == KerDwClass::Kind::Zero);
            auto zg = ker_dw_classify(good_place(8, {}), l, p, d);
            CHECK(zg.kind == KerDwClass::Kind::Zero);
        }
    }
}

TEST_CASE("place validation") {
    CHECK_THROWS_AS(validate_place(good_place(6, {}), 2, 1), validation_error); // 6 not a prime power
    TateLocalData bad = split_place(1, 4, {});
    bad.reduction = ReductionType::SplitMultiplicative; // ord > 0 contradiction
    CHECK_THROWS_AS(validate_place(bad, 2, 1), validation_error);
    CHECK_THROWS_AS(
        validate_place(split_place(-2, 4, {PlaceBehaviorKind::Ramified, 1, 6}), 2, 1),
        validation_error); // e not a p-power
    CHECK_THROWS_AS(
        validate_place(split_place(-2, 4, {PlaceBehaviorKind::Ramified, 2, 2}), 2, 1),
        validation_error); // d_v exceeds d
}

TEST_CASE("j-invariant p-power level") {
    FqContext F2(2, 1);
    // j = T: level 0
    auto l0 = j_power_level(F2, poly_from_coeffs({0, 1}), poly_from_coeffs({1}));
    CHECK(l0.level == 0);
    CHECK(l0.max_torsion_order == 1);

    // j = T^p / (T+1)^p: level 1
    auto l1 = j_power_level(F2, poly_pow(F2, poly_from_coeffs({0, 1}), 2),
                            poly_pow(F2, poly_from_coeffs({1, 1}), 2));
    CHECK(l1.level == 1);
    CHECK(l1.max_torsion_order == 4);

    // constants are isotrivial
    CHECK_THROWS_AS(j_power_level(F2, poly_from_coeffs({1}), poly_from_coeffs({1})),
                    hypothesis_error);
    // reduction first: T^2/T^2 is constant
    CHECK_THROWS_AS(j_power_level(F2, poly_from_coeffs({0, 0, 1}),
                                  poly_from_coeffs({0, 0, 1})),
                    hypothesis_error);

    FqContext F3(3, 1);
    auto l3 = j_power_level(F3, poly_pow(F3, poly_from_coeffs({1, 1}), 3),
                            poly_from_coeffs({1}));
    CHECK(l3.level == 1);
    CHECK(l3.max_torsion_order == 9);
}

TEST_CASE("level functional law and the root-extraction cross-check") {
    std::mt19937_64 rng(23);
    for (auto [p, f] : {std::pair<std::uint64_t, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
        FqContext F(p, f);
        for (int iter = 0; iter < 25; ++iter) {
            PolyFq num = random_nonzero(rng, F, 1 + static_cast<int>(rng() % 3));
            PolyFq den = random_nonzero(rng, F, 1 + static_cast<int>(rng() % 2));
            if (poly_gcd(F, num, den) == num) continue; // keep j nonconstant after reduction
            unsigned base;
            try {
                base = j_power_level(F, num, den).level;
            } catch (const hypothesis_error&) {
                continue;
            }
            CHECK(base == level_by_root_extraction(F, num, den));
            // raising everything to the p-th power bumps the level by one
            PolyFq nump = poly_pow(F, num, F.p());
            PolyFq denp = poly_pow(F, den, F.p());
            CHECK(j_power_level(F, nump, denp).level == base + 1);
        }
    }
}
