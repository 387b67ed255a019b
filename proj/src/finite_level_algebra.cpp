#include "iwa/finite_level_algebra.hpp"

#include <algorithm>
#include <cstdlib>

namespace iwa {

std::uint64_t ring_dimension_cap() {
    static std::uint64_t cap = [] {
        const char* env = std::getenv("IWA_MAX_RING_CARDINALITY");
        if (env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t(10000000);
    }();
    return cap;
}

FiniteAbelianPGroup::FiniteAbelianPGroup(std::uint64_t prime, std::vector<unsigned> exps)
    : p(prime), exponents(std::move(exps)) {
    if (!is_prime_u64(p)) throw validation_error("FiniteAbelianPGroup: p must be prime");
    for (unsigned k : exponents)
        if (k < 1 || k > 62) throw validation_error("FiniteAbelianPGroup: bad exponent");
}

std::uint64_t FiniteAbelianPGroup::component_order(std::size_t i) const {
    std::uint64_t o = 1;
    for (unsigned t = 0; t < exponents[i]; ++t) o *= p;
    return o;
}

unsigned __int128 FiniteAbelianPGroup::order() const {
    unsigned __int128 o = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) o *= component_order(i);
    return o;
}

FiniteLevelRing FiniteLevelRing::group_ring(PrimePowerRing coeff, FiniteAbelianPGroup group) {
    FiniteLevelRing r(Kind::GroupRing, coeff);
    r.group_ = std::move(group);
    for (std::size_t i = 0; i < r.group_.rank(); ++i)
        r.radix_.push_back(r.group_.component_order(i));
    r.finish_setup();
    return r;
}

FiniteLevelRing FiniteLevelRing::truncated_poly(PrimePowerRing coeff, unsigned vars,
                                                unsigned degree_cap) {
    if (degree_cap < 1) throw validation_error("truncated_poly: degree cap must be >= 1");
    FiniteLevelRing r(Kind::TruncatedPoly, coeff);
    r.vars_ = vars;
    r.cap_ = degree_cap;
    r.radix_.assign(vars, degree_cap);
    r.finish_setup();
    return r;
}

void FiniteLevelRing::finish_setup() {
    unsigned __int128 d = 1;
    for (std::uint64_t rad : radix_) {
        d *= rad;
        if (d > ring_dimension_cap())
            throw validation_error("ring basis dimension exceeds resource cap");
    }
    dim_ = static_cast<std::size_t>(d);
}

std::vector<unsigned> FiniteLevelRing::exponents_of(std::size_t index) const {
    std::vector<unsigned> e(radix_.size());
    for (std::size_t i = 0; i < radix_.size(); ++i) {
        e[i] = static_cast<unsigned>(index % radix_[i]);
        index /= radix_[i];
    }
    return e;
}

std::size_t FiniteLevelRing::index_of(const std::vector<unsigned>& exps) const {
    if (exps.size() != radix_.size()) throw validation_error("index_of: wrong arity");
    std::size_t idx = 0;
    for (std::size_t i = radix_.size(); i-- > 0;) {
        if (exps[i] >= radix_[i]) throw validation_error("index_of: exponent out of range");
        idx = idx * radix_[i] + exps[i];
    }
    return idx;
}

std::size_t FiniteLevelRing::basis_mul(std::size_t i, std::size_t j) const {
    std::size_t out = 0, mult = 1;
    for (std::size_t t = 0; t < radix_.size(); ++t) {
        std::uint64_t rad = radix_[t];
        std::uint64_t ei = i % rad, ej = j % rad;
        i /= rad;
        j /= rad;
        std::uint64_t e = ei + ej;
        if (kind_ == Kind::GroupRing)
            e %= rad;
        else if (e >= rad)
            return dim_; // truncated away
        out += static_cast<std::size_t>(e) * mult;
        mult *= static_cast<std::size_t>(rad);
    }
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::one() const {
    Element e(dim_, 0);
    e[0] = 1 % coeff_.modulus();
    return e;
}

FiniteLevelRing::Element FiniteLevelRing::monomial(std::size_t index, std::uint64_t c) const {
    if (index >= dim_) throw validation_error("monomial: index out of range");
    Element e(dim_, 0);
    e[index] = coeff_.reduce(c);
    return e;
}

FiniteLevelRing::Element FiniteLevelRing::generator(std::size_t i) const {
    if (i >= radix_.size()) throw validation_error("generator: index out of range");
    std::vector<unsigned> exps(radix_.size(), 0);
    exps[i] = 1;
    return monomial(index_of(exps));
}

FiniteLevelRing::Element FiniteLevelRing::add(const Element& a, const Element& b) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = coeff_.add(a[i], b[i]);
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::sub(const Element& a, const Element& b) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = coeff_.sub(a[i], b[i]);
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::neg(const Element& a) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = coeff_.neg(a[i]);
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::scalar_mul(std::uint64_t c, const Element& a) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = coeff_.mul(c, a[i]);
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::mul(const Element& a, const Element& b) const {
    if (a.size() != dim_ || b.size() != dim_)
        throw validation_error("ring mul: element size mismatch");
    Element out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            std::size_t k = basis_mul(i, j);
            if (k == dim_) continue;
            out[k] = coeff_.add(out[k], coeff_.mul(a[i], b[j]));
        }
    }
    return out;
}

FiniteLevelRing::Element FiniteLevelRing::pow(const Element& a, unsigned e) const {
    Element r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

bool FiniteLevelRing::is_zero(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

bool FiniteLevelRing::is_unit(const Element& a) const {
    // Local ring in the cases we use: unit iff the image under the residue
    // map (augmentation / constant term) is a unit... for a group ring with
    // group prime != coefficient prime the ring is not local, so solve
    // properly: a is a unit iff multiplication by a is surjective.
    PrimePowerMatrix mult(coeff_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Element img = mul(a, monomial(i));
        mult.set_row(i, img);
    }
    return span_size_exponent(howell_form(mult)) ==
           coeff_.precision() * static_cast<unsigned>(dim_);
}

bool FiniteLevelRing::operator==(const FiniteLevelRing& o) const {
    if (kind_ != o.kind_ || coeff_ != o.coeff_) return false;
    if (kind_ == Kind::GroupRing) return group_ == o.group_;
    return vars_ == o.vars_ && cap_ == o.cap_;
}

FiniteLevelRing::Element ring_multiply(const FiniteLevelRing::Element& a,
                                       const FiniteLevelRing::Element& b,
                                       const FiniteLevelRing& ring) {
    return ring.mul(a, b);
}

bool RingIdeal::contains(const FiniteLevelRing::Element& x) const {
    return in_span(span, x);
}

bool RingIdeal::same_span(const RingIdeal& other) const {
    return ring == other.ring && span == other.span;
}

RingIdeal ideal_span(const FiniteLevelRing& ring,
                     std::vector<FiniteLevelRing::Element> generators) {
    const PrimePowerRing& R = ring.coeff();
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& g : generators) {
        if (g.size() != ring.dim()) throw validation_error("ideal_span: bad generator size");
        for (std::size_t j = 0; j < ring.dim(); ++j) {
            FiniteLevelRing::Element r = ring.mul(g, ring.monomial(j));
            if (!ring.is_zero(r)) rows.push_back(std::move(r));
        }
    }
    PrimePowerMatrix m(R, rows.size(), ring.dim());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    RingIdeal ideal{ring, std::move(generators), howell_form(m)};
    // ideal property: the span must absorb multiplication by each generator
    // of the monoid of basis elements
    for (std::size_t i = 0; i < ideal.span.rows(); ++i) {
        FiniteLevelRing::Element h = ideal.span.row(i);
        for (std::size_t g = 0; g < ring.positions(); ++g) {
            if (!ideal.contains(ring.mul(h, ring.generator(g))))
                throw validation_error("ideal_span: span not multiplicatively closed");
        }
    }
    return ideal;
}

RingIdeal ideal_product(const RingIdeal& a, const RingIdeal& b) {
    if (a.ring != b.ring) throw validation_error("ideal_product: ring mismatch");
    std::vector<FiniteLevelRing::Element> gens;
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) gens.push_back(a.ring.mul(x, y));
    return ideal_span(a.ring, std::move(gens));
}

RingIdeal ideal_sum(const RingIdeal& a, const RingIdeal& b) {
    if (a.ring != b.ring) throw validation_error("ideal_sum: ring mismatch");
    std::vector<FiniteLevelRing::Element> gens = a.generators;
    gens.insert(gens.end(), b.generators.begin(), b.generators.end());
    return ideal_span(a.ring, std::move(gens));
}

RingIdeal ideal_intersection(const RingIdeal& a, const RingIdeal& b) {
    if (a.ring != b.ring) throw validation_error("ideal_intersection: ring mismatch");
    SubmoduleComparison cmp = submodule_compare(a.span, b.span);
    std::vector<FiniteLevelRing::Element> gens;
    for (std::size_t i = 0; i < cmp.intersection.rows(); ++i)
        gens.push_back(cmp.intersection.row(i));
    return ideal_span(a.ring, std::move(gens));
}

RingIdeal augmentation_ideal_power(const FiniteLevelRing& ring, unsigned k) {
    if (ring.kind() != FiniteLevelRing::Kind::GroupRing)
        throw validation_error("augmentation_ideal_power: group ring required");
    if (k == 0) throw validation_error("augmentation_ideal_power: k must be positive");
    std::size_t d = ring.group().rank();
    std::vector<FiniteLevelRing::Element> base;
    for (std::size_t i = 0; i < d; ++i)
        base.push_back(ring.sub(ring.generator(i), ring.one()));
    if (base.empty()) return ideal_span(ring, {});
    // k-fold products of the generators; nondecreasing index tuples suffice
    // since the ring is commutative
    std::vector<FiniteLevelRing::Element> gens;
    std::vector<std::size_t> pick(k, 0);
    for (bool more = true; more;) {
        FiniteLevelRing::Element prod = ring.one();
        for (std::size_t t = 0; t < k; ++t) prod = ring.mul(prod, base[pick[t]]);
        gens.push_back(std::move(prod));
        more = false;
        for (std::size_t t = k; t-- > 0;) {
            if (pick[t] + 1 < d) {
                ++pick[t];
                for (std::size_t u = t + 1; u < k; ++u) pick[u] = pick[t];
                more = true;
                break;
            }
        }
    }
    return ideal_span(ring, std::move(gens));
}

// ---------------------------------------------------------------------------
// gamma |-> 1 + T
// ---------------------------------------------------------------------------

namespace {
// Pascal triangle mod p^N up to row n inclusive.
std::vector<std::vector<std::uint64_t>> binomials(const PrimePowerRing& R, std::size_t n) {
    std::vector<std::vector<std::uint64_t>> C(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        C[i].assign(i + 1, 0);
        C[i][0] = 1 % R.modulus();
        C[i][i] = 1 % R.modulus();
        for (std::size_t j = 1; j < i; ++j) C[i][j] = R.add(C[i - 1][j - 1], C[i - 1][j]);
    }
    return C;
}

void require_cyclic_p_group_ring(const FiniteLevelRing& ring) {
    if (ring.kind() != FiniteLevelRing::Kind::GroupRing || ring.group().rank() != 1)
        throw validation_error("polynomial model: single cyclic factor required");
    if (ring.group().p != ring.coeff().p())
        throw validation_error("polynomial model: coefficient prime must equal group prime");
}
} // namespace

std::vector<std::uint64_t> group_ring_to_polynomial(const FiniteLevelRing::Element& x,
                                                    const FiniteLevelRing& ring) {
    require_cyclic_p_group_ring(ring);
    const PrimePowerRing& R = ring.coeff();
    std::size_t m = ring.dim();
    auto C = binomials(R, m - 1);
    // gamma^i = (1+T)^i = sum_j C(i,j) T^j
    std::vector<std::uint64_t> out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j <= i; ++j)
            out[j] = R.add(out[j], R.mul(x[i], C[i][j]));
    }
    return out;
}

FiniteLevelRing::Element polynomial_to_group_ring(const std::vector<std::uint64_t>& poly,
                                                  const FiniteLevelRing& ring) {
    require_cyclic_p_group_ring(ring);
    const PrimePowerRing& R = ring.coeff();
    std::size_t m = ring.dim();
    if (poly.size() != m) throw validation_error("polynomial_to_group_ring: wrong length");
    auto C = binomials(R, m - 1);
    // T^j = (gamma - 1)^j = sum_t (-1)^{j-t} C(j,t) gamma^t
    FiniteLevelRing::Element out = ring.zero();
    for (std::size_t j = 0; j < m; ++j) {
        if (poly[j] == 0) continue;
        for (std::size_t t = 0; t <= j; ++t) {
            std::uint64_t term = R.mul(poly[j], C[j][t]);
            if ((j - t) % 2 == 1) term = R.neg(term);
            out[t] = R.add(out[t], term);
        }
    }
    return out;
}

std::vector<std::uint64_t> cyclic_poly_mul(const std::vector<std::uint64_t>& a,
                                           const std::vector<std::uint64_t>& b,
                                           const PrimePowerRing& R, std::uint64_t p_k) {
    std::size_t m = static_cast<std::size_t>(p_k);
    if (a.size() != m || b.size() != m) throw validation_error("cyclic_poly_mul: wrong length");
    std::vector<std::uint64_t> prod(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j)
            prod[i + j] = R.add(prod[i + j], R.mul(a[i], b[j]));
    }
    // reduce modulo f(T) = (1+T)^{p^k} - 1 = T^m + sum_{j<m} C(m,j) T^j  (j >= 1),
    // with constant term 0; f is monic of degree m.
    auto C = binomials(R, m);
    std::vector<std::uint64_t> f(m, 0); // lower coefficients of f
    for (std::size_t j = 1; j < m; ++j) f[j] = C[m][j];
    for (std::size_t deg = 2 * m - 2; deg >= m; --deg) {
        std::uint64_t c = prod[deg];
        if (c != 0) {
            prod[deg] = 0;
            for (std::size_t j = 1; j < m; ++j)
                prod[deg - m + j] = R.sub(prod[deg - m + j], R.mul(c, f[j]));
        }
        if (deg == m) break;
    }
    prod.resize(m);
    return prod;
}

} // namespace iwa
