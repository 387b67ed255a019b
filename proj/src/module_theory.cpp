#include "iwa/module_theory.hpp"

#include <algorithm>

namespace iwa {

ModulePresentation make_presentation(FiniteLevelRing ring, std::size_t relations,
                                     std::size_t generators,
                                     std::vector<FiniteLevelRing::Element> matrix) {
    if (matrix.size() != relations * generators)
        throw validation_error("make_presentation: entry count mismatch");
    for (const auto& e : matrix)
        if (e.size() != ring.dim())
            throw validation_error("make_presentation: entry has wrong coefficient length");
    return ModulePresentation{std::move(ring), relations, generators, std::move(matrix)};
}

FiniteLevelRing::Element ring_determinant(const FiniteLevelRing& ring,
                                          const std::vector<FiniteLevelRing::Element>& entries,
                                          std::size_t n) {
    if (n == 0) return ring.one();
    if (n == 1) return entries[0];
    // cofactor expansion along the first row
    FiniteLevelRing::Element det = ring.zero();
    std::vector<FiniteLevelRing::Element> minor((n - 1) * (n - 1), ring.zero());
    for (std::size_t j = 0; j < n; ++j) {
        if (ring.is_zero(entries[j])) continue;
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[(r - 1) * (n - 1) + cc] = entries[r * n + c];
                ++cc;
            }
        }
        FiniteLevelRing::Element term = ring.mul(entries[j], ring_determinant(ring, minor, n - 1));
        det = (j % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
    }
    return det;
}

RingIdeal fitting_ideal(const ModulePresentation& pres) {
    const std::size_t a = pres.relations, b = pres.generators;
    if (b > 5) throw validation_error("fitting_ideal: more than 5 generators unsupported");
    if (a < b) return ideal_span(pres.ring, {});
    if (b == 0) {
        // 0-generated module: Fitt = (1)
        return ideal_span(pres.ring, {pres.ring.one()});
    }
    // all b x b minors: choose b of the a rows
    std::vector<FiniteLevelRing::Element> gens;
    std::vector<std::size_t> rows(b);
    for (std::size_t i = 0; i < b; ++i) rows[i] = i;
    for (;;) {
        std::vector<FiniteLevelRing::Element> sq;
        sq.reserve(b * b);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) sq.push_back(pres.at(rows[i], j));
        gens.push_back(ring_determinant(pres.ring, sq, b));
        // next combination
        std::size_t t = b;
        bool more = false;
        while (t-- > 0) {
            if (rows[t] + 1 <= a - (b - t)) {
                ++rows[t];
                for (std::size_t u = t + 1; u < b; ++u) rows[u] = rows[u - 1] + 1;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    return ideal_span(pres.ring, std::move(gens));
}

RingIdeal characteristic_ideal(const ElementaryModuleSpec& spec) {
    if (spec.free_rank > 0) return ideal_span(spec.ring, {});
    FiniteLevelRing::Element g = spec.ring.one();
    for (const auto& [gi, ei] : spec.torsion_factors) {
        if (ei < 1) throw validation_error("characteristic_ideal: multiplicity must be >= 1");
        g = spec.ring.mul(g, spec.ring.pow(gi, ei));
    }
    return ideal_span(spec.ring, {g});
}

ModulePresentation elementary_presentation(const ElementaryModuleSpec& spec) {
    const std::size_t s = spec.torsion_factors.size();
    const std::size_t b = spec.free_rank + s;
    ModulePresentation pres;
    pres.ring = spec.ring;
    pres.relations = s;
    pres.generators = b;
    pres.matrix.assign(s * b, spec.ring.zero());
    for (std::size_t i = 0; i < s; ++i) {
        const auto& [gi, ei] = spec.torsion_factors[i];
        pres.at(i, spec.free_rank + i) = spec.ring.pow(gi, ei);
    }
    return pres;
}

namespace {

FiniteLevelRing target_poly_ring(const FiniteLevelRing& src, unsigned keep) {
    if (src.kind() != FiniteLevelRing::Kind::TruncatedPoly)
        throw validation_error("project_ideal: truncated polynomial ring required");
    if (keep >= src.vars())
        throw validation_error("project_ideal: must drop at least one variable");
    return FiniteLevelRing::truncated_poly(src.coeff(), keep, src.degree_cap());
}

FiniteLevelRing::Element project_element(const FiniteLevelRing& src,
                                         const FiniteLevelRing& dst,
                                         const FiniteLevelRing::Element& x, unsigned keep) {
    FiniteLevelRing::Element out = dst.zero();
    for (std::size_t i = 0; i < src.dim(); ++i) {
        if (x[i] == 0) continue;
        std::vector<unsigned> e = src.exponents_of(i);
        bool survives = true;
        for (std::size_t t = keep; t < e.size(); ++t)
            if (e[t] != 0) { survives = false; break; }
        if (!survives) continue;
        e.resize(keep);
        std::size_t j = dst.index_of(e);
        out[j] = dst.coeff().add(out[j], x[i]);
    }
    return out;
}

FiniteLevelRing::Element lift_element(const FiniteLevelRing& src, const FiniteLevelRing& dst,
                                      const FiniteLevelRing::Element& x) {
    FiniteLevelRing::Element out = dst.zero();
    for (std::size_t i = 0; i < src.dim(); ++i) {
        if (x[i] == 0) continue;
        std::vector<unsigned> e = src.exponents_of(i);
        e.resize(dst.vars(), 0);
        out[dst.index_of(e)] = x[i];
    }
    return out;
}

} // namespace

RingIdeal project_ideal(const RingIdeal& ideal, unsigned keep) {
    FiniteLevelRing dst = target_poly_ring(ideal.ring, keep);
    std::vector<FiniteLevelRing::Element> gens;
    for (const auto& g : ideal.generators)
        gens.push_back(project_element(ideal.ring, dst, g, keep));
    return ideal_span(dst, std::move(gens));
}

RingIdeal preimage_ideal(const RingIdeal& ideal, unsigned target_vars) {
    if (ideal.ring.kind() != FiniteLevelRing::Kind::TruncatedPoly)
        throw validation_error("preimage_ideal: truncated polynomial ring required");
    if (target_vars <= ideal.ring.vars())
        throw validation_error("preimage_ideal: target must add variables");
    FiniteLevelRing dst = FiniteLevelRing::truncated_poly(ideal.ring.coeff(), target_vars,
                                                          ideal.ring.degree_cap());
    std::vector<FiniteLevelRing::Element> gens;
    for (const auto& g : ideal.generators) gens.push_back(lift_element(ideal.ring, dst, g));
    for (unsigned i = ideal.ring.vars(); i < target_vars; ++i) gens.push_back(dst.generator(i));
    return ideal_span(dst, std::move(gens));
}

ModulePresentation project_presentation(const ModulePresentation& pres, unsigned keep) {
    FiniteLevelRing dst = target_poly_ring(pres.ring, keep);
    ModulePresentation out;
    out.ring = dst;
    out.relations = pres.relations;
    out.generators = pres.generators;
    out.matrix.reserve(pres.matrix.size());
    for (const auto& e : pres.matrix)
        out.matrix.push_back(project_element(pres.ring, dst, e, keep));
    return out;
}

RingIdeal pro_fitting_intersection(const std::vector<RingIdeal>& ideals) {
    if (ideals.empty()) throw validation_error("pro_fitting_intersection: no ideals");
    RingIdeal acc = ideals.front();
    for (std::size_t i = 1; i < ideals.size(); ++i) {
        if (ideals[i].ring != acc.ring)
            throw validation_error("pro_fitting_intersection: ambient ring mismatch");
        acc = ideal_intersection(acc, ideals[i]);
    }
    return acc;
}

namespace {

// Image of an element under Lambda -> Z/l (kill l, T_i resp. gamma_i - 1).
std::uint64_t residue_image(const FiniteLevelRing& ring, const FiniteLevelRing::Element& x) {
    const PrimePowerRing& R = ring.coeff();
    std::uint64_t s = 0;
    if (ring.kind() == FiniteLevelRing::Kind::GroupRing) {
        for (std::uint64_t c : x) s = R.add(s, c); // augmentation
    } else {
        s = x[0]; // constant term
    }
    return s % R.p();
}

} // namespace

unsigned min_generators(const ModulePresentation& pres) {
    const FiniteLevelRing& ring = pres.ring;
    if (ring.kind() == FiniteLevelRing::Kind::GroupRing &&
        ring.group().p != ring.coeff().p())
        throw validation_error("min_generators: ring is not local (group prime != l)");
    const std::uint64_t l = ring.coeff().p();
    // rank over F_l of the residue matrix
    std::vector<std::vector<std::uint64_t>> m(pres.relations,
                                              std::vector<std::uint64_t>(pres.generators));
    for (std::size_t i = 0; i < pres.relations; ++i)
        for (std::size_t j = 0; j < pres.generators; ++j)
            m[i][j] = residue_image(ring, pres.at(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < pres.generators && rank < pres.relations; ++col) {
        std::size_t piv = rank;
        while (piv < pres.relations && m[piv][col] == 0) ++piv;
        if (piv == pres.relations) continue;
        std::swap(m[rank], m[piv]);
        // normalize and eliminate
        std::uint64_t inv = 1;
        {
            // inverse mod prime l
            std::uint64_t a = m[rank][col] % l, x = 1, b = a;
            // Fermat: a^(l-2)
            std::uint64_t e = l - 2;
            while (e) {
                if (e & 1) x = (x * b) % l;
                b = (b * b) % l;
                e >>= 1;
            }
            inv = x;
        }
        for (std::size_t j = 0; j < pres.generators; ++j) m[rank][j] = (m[rank][j] * inv) % l;
        for (std::size_t i = 0; i < pres.relations; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            std::uint64_t c = m[i][col];
            for (std::size_t j = 0; j < pres.generators; ++j)
                m[i][j] = (m[i][j] + l * l - c * m[rank][j] % l) % l;
        }
        ++rank;
    }
    return static_cast<unsigned>(pres.generators - rank);
}

namespace {

// Howell form of the Lambda-submodule of Lambda^b spanned by the relation
// rows (coefficient model: b blocks of ring.dim() columns).
PrimePowerMatrix relation_span(const ModulePresentation& pres) {
    const FiniteLevelRing& ring = pres.ring;
    const std::size_t dim = ring.dim(), b = pres.generators;
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t i = 0; i < pres.relations; ++i)
        for (std::size_t mono = 0; mono < dim; ++mono) {
            std::vector<std::uint64_t> flat(b * dim, 0);
            bool nonzero = false;
            for (std::size_t j = 0; j < b; ++j) {
                FiniteLevelRing::Element e = ring.mul(pres.at(i, j), ring.monomial(mono));
                for (std::size_t t = 0; t < dim; ++t) {
                    flat[j * dim + t] = e[t];
                    nonzero = nonzero || e[t] != 0;
                }
            }
            if (nonzero) rows.push_back(std::move(flat));
        }
    PrimePowerMatrix m(ring.coeff(), rows.size(), b * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return howell_form(m);
}

} // namespace

bool annihilates(const ModulePresentation& pres, const FiniteLevelRing::Element& g) {
    const FiniteLevelRing& ring = pres.ring;
    const std::size_t dim = ring.dim(), b = pres.generators;
    if (b == 0) return true;
    PrimePowerMatrix rel = relation_span(pres);
    // g kills coker iff g * e_t lies in the relation span for every t; the
    // span is closed under monomial multiplication, which covers g * x for
    // arbitrary x.
    for (std::size_t t = 0; t < b; ++t) {
        std::vector<std::uint64_t> flat(b * dim, 0);
        for (std::size_t c = 0; c < dim; ++c) flat[t * dim + c] = g[c];
        if (!in_span(rel, flat)) return false;
    }
    return true;
}

FittCharRelation fitt_char_compare(const ElementaryModuleSpec& spec) {
    return fitt_char_compare(elementary_presentation(spec), spec);
}

FittCharRelation fitt_char_compare(const ModulePresentation& pres,
                                   const ElementaryModuleSpec& claimed) {
    RingIdeal fitt = fitting_ideal(pres);
    RingIdeal chr = characteristic_ideal(claimed);
    SubmoduleComparison cmp = submodule_compare(fitt.span, chr.span);
    switch (cmp.relation) {
        case SpanRelation::Equal: return FittCharRelation::Equal;
        case SpanRelation::BContainsA: return FittCharRelation::FittInsideChar;
        default: return FittCharRelation::Other;
    }
}

bool pseudo_null_witness(const ModulePresentation& pres,
                         const FiniteLevelRing::Element& ann1,
                         const FiniteLevelRing::Element& ann2) {
    if (!annihilates(pres, ann1) || !annihilates(pres, ann2)) return false;
    const FiniteLevelRing& ring = pres.ring;
    // leading support: lowest basis index with nonzero coefficient
    auto lead = [&](const FiniteLevelRing::Element& x) -> std::size_t {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0) return i;
        return x.size();
    };
    std::size_t l1 = lead(ann1), l2 = lead(ann2);
    if (l1 == ann1.size() || l2 == ann2.size()) return false; // zero annihilator
    std::vector<unsigned> e1 = ring.exponents_of(l1), e2 = ring.exponents_of(l2);
    for (std::size_t t = 0; t < e1.size(); ++t)
        if (e1[t] > 0 && e2[t] > 0) return false; // common variable in the leads
    unsigned v1 = ring.coeff().val(ann1[l1]), v2 = ring.coeff().val(ann2[l2]);
    if (v1 > 0 && v2 > 0) return false; // both leading coefficients divisible by l
    return true;
}

} // namespace iwa
