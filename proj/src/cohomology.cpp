#include "iwa/cohomology.hpp"

#include <algorithm>

namespace iwa {

namespace {

// --------------------------------------------------------------------------
// Quotient model: B = (Z/l^N)^n / U with U spanned by l^{a_j} e_j. A matrix
// X over Z/l^N induces a well-defined endomorphism iff X_{ji} = 0 mod
// l^{max(0, a_i - a_j)}; two matrices induce the same endomorphism iff their
// difference has rows in U.
// --------------------------------------------------------------------------

PrimePowerMatrix relation_rows(const PrimePowerRing& R, const std::vector<unsigned>& exps,
                               std::size_t copies) {
    const std::size_t n = exps.size();
    PrimePowerMatrix U(R, copies * n, copies * n);
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t j = 0; j < n; ++j)
            U(c * n + j, c * n + j) = R.p_pow(exps[j]) % R.modulus();
    return U;
}

bool well_defined(const PrimePowerMatrix& X, const std::vector<unsigned>& exps) {
    const PrimePowerRing& R = X.ring();
    const std::size_t n = exps.size();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (exps[i] <= exps[j]) continue;
            if (X(j, i) % R.p_pow(exps[i] - exps[j]) != 0) return false;
        }
    return true;
}

bool same_endomorphism(const PrimePowerMatrix& X, const PrimePowerMatrix& Y,
                       const std::vector<unsigned>& exps) {
    const PrimePowerRing& R = X.ring();
    const std::size_t n = exps.size();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (R.sub(X(j, i), Y(j, i)) % R.p_pow(exps[i]) != 0) return false;
    return true;
}

bool surjective_endo(const PrimePowerMatrix& X, const std::vector<unsigned>& exps) {
    // rows(X) + U must span the full ambient
    PrimePowerMatrix full = X.vstack(relation_rows(X.ring(), exps, 1));
    return span_size_exponent(howell_form(full)) ==
           X.ring().precision() * static_cast<unsigned>(exps.size());
}

PrimePowerMatrix endo_pow(const PrimePowerMatrix& A, std::uint64_t e) {
    PrimePowerMatrix r = PrimePowerMatrix::identity(A.ring(), A.rows());
    PrimePowerMatrix b = A;
    while (e) {
        if (e & 1) r = r.mul(b);
        e >>= 1;
        if (e) b = b.mul(b);
    }
    return r;
}

// Norm = 1 + A + ... + A^{ord-1}, computed by the doubling identity
// N_{2m} = N_m + A^m N_m.
PrimePowerMatrix norm_matrix(const PrimePowerMatrix& A, std::uint64_t ord) {
    const PrimePowerRing& R = A.ring();
    const std::size_t n = A.rows();
    if (ord == 0) return PrimePowerMatrix(R, n, n);
    if (ord == 1) return PrimePowerMatrix::identity(R, n);
    PrimePowerMatrix half = norm_matrix(A, ord / 2);
    PrimePowerMatrix Ah = endo_pow(A, ord / 2);
    PrimePowerMatrix out(R, n, n);
    PrimePowerMatrix shifted = Ah.mul(half);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = R.add(half(i, j), shifted(i, j));
    if (ord % 2 == 1) {
        PrimePowerMatrix top = endo_pow(A, ord - 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = R.add(out(i, j), top(i, j));
    }
    return out;
}

PrimePowerMatrix minus_identity(const PrimePowerMatrix& A) {
    const PrimePowerRing& R = A.ring();
    PrimePowerMatrix out = A;
    for (std::size_t i = 0; i < A.rows(); ++i) out(i, i) = R.sub(out(i, i), 1 % R.modulus());
    return out;
}

// --------------------------------------------------------------------------
// Koszul complex for G = prod C_{p^{k_i}}: the degree-n term of the tensor
// product of 2-periodic resolutions is indexed by compositions j of n into
// d parts; the cochain differential block from j to j + e_i is
// (-1)^{j_1+..+j_{i-1}} times (A_i - 1) for j_i even, Norm_i for j_i odd.
// --------------------------------------------------------------------------

std::vector<std::vector<unsigned>> compositions(unsigned total, std::size_t parts) {
    std::vector<std::vector<unsigned>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<unsigned> cur(parts, 0);
    // lexicographic enumeration
    auto rec = [&](auto&& self, std::size_t pos, unsigned rem) -> void {
        if (pos + 1 == parts) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

std::size_t find_index(const std::vector<std::vector<unsigned>>& list,
                       const std::vector<unsigned>& key) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == key) return i;
    throw validation_error("internal: composition not found");
}

struct KoszulData {
    // per-generator matrices at the working level
    std::vector<PrimePowerMatrix> gamma_minus_one;
    std::vector<PrimePowerMatrix> norms;
    std::size_t n; // module rank
    PrimePowerRing R;
};

KoszulData koszul_data(const GModuleData& gm, const std::vector<std::uint64_t>& orders) {
    KoszulData k{ {}, {}, gm.module_rank(), gm.ambient_ring() };
    for (std::size_t i = 0; i < gm.actions.size(); ++i) {
        k.gamma_minus_one.push_back(minus_identity(gm.actions[i]));
        k.norms.push_back(norm_matrix(gm.actions[i], orders[i]));
    }
    return k;
}

// Differential C^deg -> C^{deg+1} as a (n*r_deg) x (n*r_{deg+1}) matrix.
PrimePowerMatrix cochain_differential(const KoszulData& k, std::size_t d_rank, unsigned deg) {
    auto src = compositions(deg, d_rank);
    auto dst = compositions(deg + 1, d_rank);
    const std::size_t n = k.n;
    PrimePowerMatrix D(k.R, n * src.size(), n * dst.size());
    for (std::size_t s = 0; s < src.size(); ++s) {
        for (std::size_t i = 0; i < d_rank; ++i) {
            std::vector<unsigned> t = src[s];
            ++t[i];
            std::size_t ti = find_index(dst, t);
            const PrimePowerMatrix& blk =
                (src[s][i] % 2 == 0) ? k.gamma_minus_one[i] : k.norms[i];
            unsigned sign = 0;
            for (std::size_t u = 0; u < i; ++u) sign += src[s][u];
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    std::uint64_t v = blk(r, c);
                    if (sign % 2 == 1) v = k.R.neg(v);
                    D(s * n + r, ti * n + c) = k.R.add(D(s * n + r, ti * n + c), v);
                }
        }
    }
    return D;
}

struct CochainSpaces {
    PrimePowerMatrix cocycles;    // preimage of U_{deg+1} under D_deg (includes U_deg)
    PrimePowerMatrix boundaries;  // rowspan(D_{deg-1}) + U_deg
};

CochainSpaces cochain_spaces(const GModuleData& gm, const KoszulData& k, unsigned deg) {
    const std::size_t d_rank = gm.group.rank();
    auto here = compositions(deg, d_rank);
    auto up = compositions(deg + 1, d_rank);
    PrimePowerMatrix U_here = relation_rows(k.R, gm.module_exponents, here.size());
    PrimePowerMatrix U_up = relation_rows(k.R, gm.module_exponents, up.size());

    PrimePowerMatrix D = cochain_differential(k, d_rank, deg);
    PrimePowerMatrix Z = preimage_span(D, U_up).vstack(U_here);

    PrimePowerMatrix Bnd = U_here;
    if (deg > 0) {
        PrimePowerMatrix Dprev = cochain_differential(k, d_rank, deg - 1);
        Bnd = Dprev.vstack(U_here);
    }
    return {howell_form(Z), howell_form(Bnd)};
}

std::vector<std::uint64_t> component_orders(const FiniteAbelianPGroup& g) {
    std::vector<std::uint64_t> o;
    for (std::size_t i = 0; i < g.rank(); ++i) o.push_back(g.component_order(i));
    return o;
}

} // namespace

GModuleData make_g_module(FiniteAbelianPGroup group, std::uint64_t module_prime,
                          std::vector<unsigned> module_exponents,
                          std::vector<PrimePowerMatrix> actions) {
    if (!is_prime_u64(module_prime))
        throw validation_error("make_g_module: module prime must be prime");
    if (!std::is_sorted(module_exponents.begin(), module_exponents.end()))
        throw validation_error("make_g_module: invariant factors must be in ascending order");
    for (unsigned a : module_exponents)
        if (a < 1) throw validation_error("make_g_module: invariant exponents must be >= 1");
    if (actions.size() != group.rank())
        throw validation_error("make_g_module: one action per group generator required");
    GModuleData gm{std::move(group), module_prime, std::move(module_exponents), std::move(actions)};
    const std::size_t n = gm.module_rank();
    PrimePowerRing R = gm.ambient_ring();
    for (const auto& A : gm.actions) {
        if (A.rows() != n || A.cols() != n || A.ring() != R)
            throw validation_error("make_g_module: action has wrong shape or ring");
        if (!well_defined(A, gm.module_exponents))
            throw validation_error("make_g_module: action not well defined on the module");
        if (!surjective_endo(A, gm.module_exponents))
            throw validation_error("make_g_module: action is not invertible");
    }
    for (std::size_t i = 0; i < gm.actions.size(); ++i) {
        PrimePowerMatrix Ai_ord = endo_pow(gm.actions[i], gm.group.component_order(i));
        if (!same_endomorphism(Ai_ord, PrimePowerMatrix::identity(R, n), gm.module_exponents))
            throw validation_error("make_g_module: action order does not divide the group order");
        for (std::size_t j = i + 1; j < gm.actions.size(); ++j) {
            if (!same_endomorphism(gm.actions[i].mul(gm.actions[j]),
                                   gm.actions[j].mul(gm.actions[i]), gm.module_exponents))
                throw validation_error("make_g_module: actions do not commute");
        }
    }
    return gm;
}

GModuleData trivial_g_module(FiniteAbelianPGroup group, std::uint64_t module_prime,
                             std::vector<unsigned> module_exponents) {
    std::sort(module_exponents.begin(), module_exponents.end());
    unsigned N = module_exponents.empty() ? 1 : module_exponents.back();
    PrimePowerRing R(module_prime, N);
    std::vector<PrimePowerMatrix> acts(group.rank(),
                                       PrimePowerMatrix::identity(R, module_exponents.size()));
    return make_g_module(std::move(group), module_prime, std::move(module_exponents),
                         std::move(acts));
}

AbelianGroupStructure cohomology_groups(const GModuleData& gm, unsigned i) {
    if (i > 2) throw validation_error("cohomology_groups: degree must be 0, 1 or 2");
    if (gm.module_rank() == 0) return AbelianGroupStructure::trivial();
    KoszulData k = koszul_data(gm, component_orders(gm.group));
    CochainSpaces sp = cochain_spaces(gm, k, i);
    return subquotient_structure(sp.cocycles, sp.boundaries);
}

namespace {

// Inflation from level m to level m+s multiplies the block indexed by the
// composition j with the diagonal factor p^{s * sum_i floor(j_i / 2)}.
PrimePowerMatrix inflate_rows(const PrimePowerMatrix& rows, const PrimePowerRing& R,
                              const std::vector<std::vector<unsigned>>& comps,
                              std::size_t n, unsigned s) {
    PrimePowerMatrix out = rows;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        unsigned f = 0;
        for (unsigned ji : comps[c]) f += ji / 2;
        f *= s;
        if (f == 0) continue;
        std::uint64_t mult = 1;
        for (unsigned t = 0; t < f && mult != 0; ++t) mult = R.mul(mult, R.p());
        for (std::size_t r = 0; r < out.rows(); ++r)
            for (std::size_t j = 0; j < n; ++j)
                out(r, c * n + j) = R.mul(out(r, c * n + j), mult);
    }
    return out;
}

// Image of H^i(level m) inside H^i(level m+s) along inflation.
AbelianGroupStructure stable_image(const GModuleData& gm, unsigned i, unsigned m, unsigned s) {
    const std::size_t d_rank = gm.group.rank();
    PrimePowerRing R = gm.ambient_ring();
    auto comps = compositions(i, d_rank);
    std::vector<std::uint64_t> ord_m, ord_ms;
    for (std::size_t t = 0; t < d_rank; ++t) {
        std::uint64_t base = 1;
        for (unsigned u = 0; u < m; ++u) base *= gm.group.p;
        ord_m.push_back(base);
        for (unsigned u = 0; u < s; ++u) base *= gm.group.p;
        ord_ms.push_back(base);
    }
    KoszulData k_m = koszul_data(gm, ord_m);
    KoszulData k_ms = koszul_data(gm, ord_ms);
    CochainSpaces low = cochain_spaces(gm, k_m, i);
    CochainSpaces high = cochain_spaces(gm, k_ms, i);
    PrimePowerMatrix mapped =
        inflate_rows(low.cocycles, R, comps, gm.module_rank(), s).vstack(high.boundaries);
    return subquotient_structure(howell_form(mapped), high.boundaries);
}

AbelianGroupStructure coinvariants(const GModuleData& gm) {
    PrimePowerRing R = gm.ambient_ring();
    const std::size_t n = gm.module_rank();
    PrimePowerMatrix full = PrimePowerMatrix::identity(R, n);
    PrimePowerMatrix denom =
        minus_identity(gm.actions[0]).vstack(relation_rows(R, gm.module_exponents, 1));
    return subquotient_structure(full.vstack(denom), denom);
}

} // namespace

AbelianGroupStructure cohomology_profinite(const GModuleData& gm, unsigned i) {
    if (i < 1 || i > 2) throw validation_error("cohomology_profinite: degree must be 1 or 2");
    if (gm.module_rank() == 0) return AbelianGroupStructure::trivial();
    // l != p: killed by the coprime pair (module order, group order)
    if (gm.module_prime != gm.group.p) return AbelianGroupStructure::trivial();
    const std::size_t d_rank = gm.group.rank();
    if (d_rank == 0) return AbelianGroupStructure::trivial();
    if (d_rank == 1) {
        if (i == 2) return AbelianGroupStructure::trivial();
        return coinvariants(gm);
    }
    unsigned m0 = 0;
    for (unsigned kexp : gm.group.exponents) m0 = std::max(m0, kexp);
    unsigned s = gm.max_exponent() + 1; // kills every class with a p-power factor
    AbelianGroupStructure first = stable_image(gm, i, m0, s);
    AbelianGroupStructure second = stable_image(gm, i, m0 + 1, s);
    if (first == second) return first;
    AbelianGroupStructure third = stable_image(gm, i, m0 + 2, s);
    if (second == third) return second;
    throw stabilization_error("cohomology_profinite: levels did not stabilize");
}

GModuleData pontryagin_dual(const GModuleData& gm) {
    PrimePowerRing R = gm.ambient_ring();
    const std::size_t n = gm.module_rank();
    const auto& a = gm.module_exponents;
    std::vector<PrimePowerMatrix> duals;
    PrimePowerMatrix U = relation_rows(R, a, 1);
    for (const auto& A : gm.actions) {
        // endomorphism inverse: solve row by row in x * [A; U] = e_j
        PrimePowerMatrix stacked = A.vstack(U);
        PrimePowerMatrix C(R, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::uint64_t> e(n, 0);
            e[j] = 1 % R.modulus();
            auto sol = solve_left(stacked, e);
            if (!sol) throw validation_error("pontryagin_dual: action not invertible");
            for (std::size_t c = 0; c < n; ++c) C(j, c) = (*sol)[c];
        }
        // weighted transpose: D_{ij} = C_{ji} * l^{a_j - a_i} (exact division
        // when a_i > a_j, guaranteed by well-definedness of C)
        PrimePowerMatrix D(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t c = C(j, i);
                if (a[j] >= a[i]) {
                    D(i, j) = R.mul(c, R.p_pow(a[j] - a[i]) % R.modulus());
                } else {
                    std::uint64_t div = R.p_pow(a[i] - a[j]);
                    if (c % div != 0)
                        throw validation_error("pontryagin_dual: inverse violates divisibility");
                    D(i, j) = c / div;
                }
            }
        duals.push_back(std::move(D));
    }
    return make_g_module(gm.group, gm.module_prime, gm.module_exponents, std::move(duals));
}

std::pair<AbelianGroupStructure, AbelianGroupStructure> li_dual_pair(const GModuleData& gm) {
    if (gm.module_prime == gm.group.p)
        throw hypothesis_error("li_dual_pair: requires l != p");
    PrimePowerRing R = gm.ambient_ring();
    const std::size_t n = gm.module_rank();
    PrimePowerMatrix U = relation_rows(R, gm.module_exponents, 1);

    // left: dual / (l * I * dual) with I the augmentation ideal
    GModuleData dual = pontryagin_dual(gm);
    PrimePowerMatrix denom(R, 0, n);
    std::uint64_t l = R.reduce(gm.module_prime);
    for (const auto& D : dual.actions)
        denom = denom.vstack(minus_identity(D).scaled(l));
    denom = denom.vstack(U);
    AbelianGroupStructure left =
        subquotient_structure(PrimePowerMatrix::identity(R, n).vstack(denom), denom);

    // right: dual of M^Gamma + M[l] (same invariant factors as the subgroup)
    PrimePowerMatrix fixed = PrimePowerMatrix::identity(R, n);
    if (std::size_t d_rank = gm.group.rank(); d_rank > 0) {
        // {x : x (A_i - 1) in U for all i} via one stacked system
        PrimePowerMatrix wide(R, n, n * d_rank);
        for (std::size_t i = 0; i < d_rank; ++i) {
            PrimePowerMatrix M = minus_identity(gm.actions[i]);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) wide(r, i * n + c) = M(r, c);
        }
        PrimePowerMatrix Ubig = relation_rows(R, gm.module_exponents, d_rank);
        fixed = preimage_span(wide, Ubig);
    }
    PrimePowerMatrix ltors =
        preimage_span(PrimePowerMatrix::identity(R, n).scaled(l), U);
    PrimePowerMatrix S = fixed.vstack(ltors).vstack(U);
    AbelianGroupStructure right = subquotient_structure(S, U);
    return {left, right};
}

CorankDescriptor corank_of_h2_trivial(unsigned d_v, unsigned d, std::uint64_t p, unsigned N) {
    if (d_v > d) throw validation_error("corank_of_h2_trivial: d(v) exceeds the tower rank");
    CorankDescriptor out;
    out.corank = d_v;
    out.finite_level =
        AbelianGroupStructure::from_prime_exponents(p, std::vector<unsigned>(d_v, N));
    return out;
}

bool h1_bound_holds(const GModuleData& gm, const AbelianGroupStructure& h1) {
    unsigned __int128 bound = 1;
    for (std::size_t i = 0; i < gm.group.rank(); ++i) bound *= gm.module_order();
    return h1.order() <= bound;
}

bool h2_bound_holds(const GModuleData& gm, const AbelianGroupStructure& h2) {
    std::size_t d = gm.group.rank();
    std::size_t e = d >= 1 ? d * (d - 1) / 2 : 0;
    unsigned __int128 bound = 1;
    for (std::size_t i = 0; i < e; ++i) bound *= gm.module_order();
    return h2.order() <= bound;
}

} // namespace iwa
