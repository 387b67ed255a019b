#include "iwa/carlitz.hpp"

#include <algorithm>
#include <numeric>

#include "iwa/errors.hpp"

namespace iwa {

namespace {

// F_p[Y] helpers used only to build the F_q tables.
std::vector<unsigned> fp_poly_mulmod(const std::vector<unsigned>& a,
                                     const std::vector<unsigned>& b,
                                     const std::vector<unsigned>& mod, std::uint64_t p) {
    std::vector<unsigned> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<unsigned>((prod[i + j] + 1ull * a[i] * b[j]) % p);
    // reduce by the monic modulus
    std::size_t f = mod.size() - 1;
    for (std::size_t d = prod.size(); d-- > f;) {
        unsigned c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t sub = (1ull * c * mod[j]) % p;
            prod[d - f + j] = static_cast<unsigned>((prod[d - f + j] + p - sub) % p);
        }
    }
    prod.resize(f);
    return prod;
}

bool fp_poly_irreducible(const std::vector<unsigned>& a, std::uint64_t p) {
    // trial division by monic polynomials of degree <= deg/2
    std::size_t deg = a.size() - 1;
    if (deg == 0) return false;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<unsigned> g(d + 1);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<unsigned>(t % p);
                t /= p;
            }
            g[d] = 1;
            // long division remainder of a by g
            std::vector<unsigned> r = a;
            while (r.size() >= g.size()) {
                unsigned lead = r.back();
                if (lead != 0) {
                    std::size_t shift = r.size() - g.size();
                    for (std::size_t j = 0; j < g.size(); ++j) {
                        std::uint64_t sub = (1ull * lead * g[j]) % p;
                        r[shift + j] = static_cast<unsigned>((r[shift + j] + p - sub) % p);
                    }
                }
                while (!r.empty() && r.back() == 0) r.pop_back();
                if (r.size() < g.size()) break;
            }
            if (r.empty()) return false;
        }
    }
    return true;
}

} // namespace

FqContext::FqContext(std::uint64_t p, unsigned f) : p_(p), f_(f) {
    if (!is_prime_u64(p)) throw validation_error("FqContext: p must be prime");
    if (f < 1) throw validation_error("FqContext: extension degree must be >= 1");
    q_ = 1;
    for (unsigned i = 0; i < f; ++i) q_ *= p;
    if (q_ > 64) throw validation_error("FqContext: q must be <= 64");
    // lexicographically least monic irreducible of degree f: smallest value
    // of the non-leading coefficient vector read as base-p digits
    if (f == 1) {
        modulus_ = {0, 1}; // Y
    } else {
        for (std::uint64_t idx = 0;; ++idx) {
            if (idx >= q_) throw validation_error("FqContext: no irreducible found");
            std::vector<unsigned> cand(f + 1);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < f; ++i) {
                cand[i] = static_cast<unsigned>(t % p);
                t /= p;
            }
            cand[f] = 1;
            if (fp_poly_irreducible(cand, p)) {
                modulus_ = cand;
                break;
            }
        }
    }
    // multiplication table
    mul_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
        std::vector<unsigned> pa(f);
        std::uint64_t t = a;
        for (unsigned i = 0; i < f; ++i) {
            pa[i] = static_cast<unsigned>(t % p);
            t /= p;
        }
        for (std::uint64_t b = 0; b < q_; ++b) {
            std::vector<unsigned> pb(f);
            t = b;
            for (unsigned i = 0; i < f; ++i) {
                pb[i] = static_cast<unsigned>(t % p);
                t /= p;
            }
            std::vector<unsigned> pc = fp_poly_mulmod(pa, pb, modulus_, p);
            std::uint64_t c = 0;
            for (unsigned i = f; i-- > 0;) c = c * p + pc[i];
            mul_[a * q_ + b] = c;
        }
    }
    inv_.assign(q_, 0);
    for (std::uint64_t a = 1; a < q_; ++a)
        for (std::uint64_t b = 1; b < q_; ++b)
            if (mul(a, b) == 1) {
                inv_[a] = b;
                break;
            }
}

std::uint64_t FqContext::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < f_; ++i) {
        out += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return out;
}

std::uint64_t FqContext::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t FqContext::neg(std::uint64_t a) const {
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < f_; ++i) {
        out += ((p_ - a % p_) % p_) * mult;
        a /= p_;
        mult *= p_;
    }
    return out;
}

std::uint64_t FqContext::inv(std::uint64_t a) const {
    if (a == 0) throw validation_error("FqContext: inverse of zero");
    return inv_[a];
}

std::uint64_t FqContext::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint64_t FqContext::pth_root(std::uint64_t a) const { return pow(a, q_ / p_); }

// ---------------------------------------------------------------------------
// polynomials over F_q
// ---------------------------------------------------------------------------

PolyFq poly_trim(PolyFq a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int poly_deg(const PolyFq& a) { return static_cast<int>(a.size()) - 1; }
bool poly_is_zero(const PolyFq& a) { return a.empty(); }

bool poly_is_monic(const FqContext&, const PolyFq& a) {
    return !a.empty() && a.back() == 1;
}

PolyFq poly_from_coeffs(std::initializer_list<std::uint16_t> cs) {
    return poly_trim(PolyFq(cs));
}

PolyFq poly_add(const FqContext& F, const PolyFq& a, const PolyFq& b) {
    PolyFq out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        out[i] = static_cast<std::uint16_t>(F.add(x, y));
    }
    return poly_trim(std::move(out));
}

PolyFq poly_sub(const FqContext& F, const PolyFq& a, const PolyFq& b) {
    PolyFq out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        out[i] = static_cast<std::uint16_t>(F.sub(x, y));
    }
    return poly_trim(std::move(out));
}

PolyFq poly_scalar(const FqContext& F, std::uint64_t c, const PolyFq& a) {
    if (c == 0) return {};
    PolyFq out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<std::uint16_t>(F.mul(c, a[i]));
    return poly_trim(std::move(out));
}

PolyFq poly_mul(const FqContext& F, const PolyFq& a, const PolyFq& b) {
    if (a.empty() || b.empty()) return {};
    PolyFq out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint16_t>(F.add(out[i + j], F.mul(a[i], b[j])));
    }
    return poly_trim(std::move(out));
}

std::pair<PolyFq, PolyFq> poly_divmod(const FqContext& F, const PolyFq& a, const PolyFq& b) {
    if (b.empty()) throw validation_error("poly_divmod: division by zero");
    PolyFq r = a, quo;
    if (a.size() >= b.size()) quo.assign(a.size() - b.size() + 1, 0);
    std::uint64_t lead_inv = F.inv(b.back());
    while (r.size() >= b.size()) {
        std::uint64_t c = F.mul(r.back(), lead_inv);
        std::size_t shift = r.size() - b.size();
        if (c != 0) {
            quo[shift] = static_cast<std::uint16_t>(c);
            for (std::size_t j = 0; j < b.size(); ++j)
                r[shift + j] = static_cast<std::uint16_t>(F.sub(r[shift + j], F.mul(c, b[j])));
        }
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.size() < b.size()) break;
    }
    return {poly_trim(std::move(quo)), poly_trim(std::move(r))};
}

PolyFq poly_mod(const FqContext& F, const PolyFq& a, const PolyFq& b) {
    return poly_divmod(F, a, b).second;
}

PolyFq poly_make_monic(const FqContext& F, const PolyFq& a) {
    if (a.empty()) return a;
    return poly_scalar(F, F.inv(a.back()), a);
}

PolyFq poly_gcd(const FqContext& F, PolyFq a, PolyFq b) {
    while (!b.empty()) {
        PolyFq r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(F, a);
}

PolyFq poly_pow(const FqContext& F, const PolyFq& a, std::uint64_t e) {
    PolyFq r = poly_from_coeffs({1}), b = a;
    while (e) {
        if (e & 1) r = poly_mul(F, r, b);
        e >>= 1;
        if (e) b = poly_mul(F, b, b);
    }
    return r;
}

bool poly_equal(const PolyFq& a, const PolyFq& b) { return a == b; }

PolyFq poly_q_power_spread(const FqContext& F, const PolyFq& a, unsigned i) {
    if (i == 0 || a.empty()) return a;
    std::uint64_t step = 1;
    for (unsigned t = 0; t < i; ++t) step *= F.q();
    PolyFq out((a.size() - 1) * step + 1, 0);
    for (std::size_t t = 0; t < a.size(); ++t) out[t * step] = a[t];
    return out;
}

bool poly_irreducible(const FqContext& F, const PolyFq& a, std::uint64_t budget) {
    int deg = poly_deg(a);
    if (deg <= 0) return false;
    if (deg == 1) return true;
    std::uint64_t tried = 0;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= F.q();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (++tried > budget)
                throw validation_error("poly_irreducible: trial-division budget exceeded");
            PolyFq g(d + 1, 0);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint16_t>(t % F.q());
                t /= F.q();
            }
            g[d] = 1;
            if (poly_mod(F, a, g).empty()) return false;
        }
    }
    return true;
}

PolyFactorization poly_factor(const FqContext& F, const PolyFq& a, std::uint64_t budget) {
    if (a.empty()) throw validation_error("poly_factor: zero polynomial");
    PolyFactorization out;
    out.leading = a.back();
    PolyFq rem = poly_make_monic(F, a);
    std::uint64_t tried = 0;
    for (int d = 1; 2 * d <= poly_deg(rem); ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= F.q();
        for (std::uint64_t idx = 0; idx < count && 2 * d <= poly_deg(rem); ++idx) {
            if (++tried > budget)
                throw validation_error("poly_factor: trial-division budget exceeded");
            PolyFq g(d + 1, 0);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint16_t>(t % F.q());
                t /= F.q();
            }
            g[d] = 1;
            unsigned mult = 0;
            for (;;) {
                auto [quo, r] = poly_divmod(F, rem, g);
                if (!r.empty()) break;
                rem = quo;
                ++mult;
            }
            if (mult > 0) out.factors.emplace_back(std::move(g), mult);
        }
    }
    if (poly_deg(rem) > 0) out.factors.emplace_back(rem, 1);
    return out;
}

std::optional<PolyFq> poly_pth_root(const FqContext& F, const PolyFq& a) {
    if (a.empty()) return PolyFq{};
    std::size_t p = static_cast<std::size_t>(F.p());
    for (std::size_t t = 0; t < a.size(); ++t)
        if (a[t] != 0 && t % p != 0) return std::nullopt;
    PolyFq root((a.size() - 1) / p + 1, 0);
    for (std::size_t t = 0; t < a.size(); t += p)
        root[t / p] = static_cast<std::uint16_t>(F.pth_root(a[t]));
    return poly_trim(std::move(root));
}

// ---------------------------------------------------------------------------
// Carlitz module
// ---------------------------------------------------------------------------

namespace {

CarlitzPolynomial carlitz_add(const FqContext& F, const CarlitzPolynomial& a,
                              const CarlitzPolynomial& b) {
    CarlitzPolynomial out;
    out.operand = poly_add(F, a.operand, b.operand);
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        PolyFq x = i < a.coeffs.size() ? a.coeffs[i] : PolyFq{};
        PolyFq y = i < b.coeffs.size() ? b.coeffs[i] : PolyFq{};
        out.coeffs[i] = poly_add(F, x, y);
    }
    while (!out.coeffs.empty() && out.coeffs.back().empty()) out.coeffs.pop_back();
    return out;
}

CarlitzPolynomial carlitz_scalar(const FqContext& F, std::uint64_t c,
                                 const CarlitzPolynomial& a) {
    CarlitzPolynomial out;
    out.operand = poly_scalar(F, c, a.operand);
    for (const auto& ci : a.coeffs) out.coeffs.push_back(poly_scalar(F, c, ci));
    while (!out.coeffs.empty() && out.coeffs.back().empty()) out.coeffs.pop_back();
    return out;
}

} // namespace

CarlitzPolynomial carlitz_compose(const FqContext& F, const CarlitzPolynomial& f,
                                  const CarlitzPolynomial& g) {
    CarlitzPolynomial out;
    out.operand = poly_mul(F, f.operand, g.operand);
    if (f.coeffs.empty() || g.coeffs.empty()) return out;
    out.coeffs.assign(f.coeffs.size() + g.coeffs.size() - 1, PolyFq{});
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i].empty()) continue;
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
            if (g.coeffs[j].empty()) continue;
            PolyFq spread = poly_q_power_spread(F, g.coeffs[j], static_cast<unsigned>(i));
            out.coeffs[i + j] = poly_add(F, out.coeffs[i + j], poly_mul(F, f.coeffs[i], spread));
        }
    }
    while (!out.coeffs.empty() && out.coeffs.back().empty()) out.coeffs.pop_back();
    return out;
}

CarlitzPolynomial carlitz_polynomial(const FqContext& F, const PolyFq& a) {
    if (poly_is_zero(a)) throw validation_error("carlitz_polynomial: operand must be nonzero");
    // Phi_T: c_0 = T, c_1 = 1
    CarlitzPolynomial phiT;
    phiT.operand = poly_from_coeffs({0, 1});
    phiT.coeffs = {poly_from_coeffs({0, 1}), poly_from_coeffs({1})};
    // powers of T by composition, then F_q-linear combination
    CarlitzPolynomial power; // Phi_{T^0} = identity
    power.operand = poly_from_coeffs({1});
    power.coeffs = {poly_from_coeffs({1})};
    CarlitzPolynomial out;
    out.operand = {};
    out.coeffs = {};
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] != 0) out = carlitz_add(F, out, carlitz_scalar(F, a[j], power));
        if (j + 1 < a.size()) power = carlitz_compose(F, phiT, power);
    }
    out.operand = a;
    return out;
}

bool carlitz_equal(const CarlitzPolynomial& a, const CarlitzPolynomial& b) {
    return a.operand == b.operand && a.coeffs == b.coeffs;
}

// ---------------------------------------------------------------------------
// torsion layers and unit groups
// ---------------------------------------------------------------------------

TorsionLayer torsion_layer(const FqContext& F, const PolyFq& prime, unsigned n) {
    if (n < 1) throw validation_error("torsion_layer: level must be >= 1");
    if (!poly_is_monic(F, prime)) throw validation_error("torsion_layer: prime must be monic");
    if (!poly_irreducible(F, prime)) throw validation_error("torsion_layer: prime is reducible");
    unsigned degp = static_cast<unsigned>(poly_deg(prime));
    long double size = 1;
    for (unsigned i = 0; i < n * degp; ++i) size *= static_cast<long double>(F.q());
    if (size > 1e6) throw validation_error("torsion_layer: q^{n deg p} exceeds 10^6");
    TorsionLayer out;
    auto qpow = [&](unsigned e) {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < e; ++i) r *= F.q();
        return r;
    };
    out.torsion_count = qpow(n * degp);
    out.zp_part_order = qpow((n - 1) * degp);
    out.prime_to_p_order = qpow(degp) - 1;
    out.galois_order = out.zp_part_order * out.prime_to_p_order;
    return out;
}

AbelianGroupStructure unit_group_structure(const FqContext& F, const PolyFq& prime, unsigned n) {
    TorsionLayer layer = torsion_layer(F, prime, n); // validates the prime
    unsigned degp = static_cast<unsigned>(poly_deg(prime));
    unsigned m = n * degp;
    long double sizef = 1;
    for (unsigned i = 0; i < m; ++i) sizef *= static_cast<long double>(F.q());
    if (sizef > 1e5) throw validation_error("unit_group_structure: |A/p^n| exceeds 10^5");
    std::uint64_t S = 1;
    for (unsigned i = 0; i < m; ++i) S *= F.q();

    PolyFq modulus = poly_pow(F, prime, n);
    auto decode = [&](std::uint64_t idx) {
        PolyFq poly(m, 0);
        for (unsigned i = 0; i < m; ++i) {
            poly[i] = static_cast<std::uint16_t>(idx % F.q());
            idx /= F.q();
        }
        return poly_trim(std::move(poly));
    };
    auto encode = [&](const PolyFq& poly) {
        std::uint64_t idx = 0;
        for (std::size_t i = m; i-- > 0;)
            idx = idx * F.q() + (i < poly.size() ? poly[i] : 0);
        return idx;
    };
    auto mulmod = [&](const PolyFq& a, const PolyFq& b) {
        return poly_mod(F, poly_mul(F, a, b), modulus);
    };

    std::vector<std::uint64_t> order_of(S, 0); // 0 = not a unit / not visited
    std::vector<std::uint64_t> orders;
    orders.reserve(static_cast<std::size_t>(layer.galois_order));
    std::vector<std::uint64_t> path;
    for (std::uint64_t idx = 1; idx < S; ++idx) {
        if (order_of[idx] != 0) continue;
        PolyFq x = decode(idx);
        if (poly_mod(F, x, prime).empty()) continue; // not a unit
        // walk the cyclic subgroup generated by x
        path.clear();
        PolyFq acc = x;
        std::uint64_t cur = idx;
        while (cur != 1) {
            path.push_back(cur);
            acc = mulmod(acc, x);
            cur = encode(acc);
        }
        std::uint64_t o = path.size() + 1; // order of x
        for (std::size_t t = 0; t < path.size(); ++t) {
            std::uint64_t elt = path[t];
            if (order_of[elt] == 0) order_of[elt] = o / std::gcd<std::uint64_t>(t + 1, o);
        }
    }
    orders.push_back(1); // the identity
    for (std::uint64_t idx = 2; idx < S; ++idx)
        if (order_of[idx] != 0) orders.push_back(order_of[idx]);
    if (orders.size() != layer.galois_order)
        throw validation_error("unit_group_structure: census size mismatch");
    return AbelianGroupStructure::from_order_census(orders);
}

} // namespace iwa
