#include "iwa/pp_linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace iwa {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimePowerRing::PrimePowerRing(std::uint64_t p, unsigned N) : p_(p), N_(N) {
    if (p > 10000 || !is_prime_u64(p))
        throw validation_error("PrimePowerRing: p must be prime and <= 10^4");
    if (N < 1 || N > 16)
        throw validation_error("PrimePowerRing: precision N must be in [1,16]");
    q_ = 1;
    for (unsigned i = 0; i < N; ++i) {
        if (q_ > (std::uint64_t(1) << 62) / p)
            throw validation_error("PrimePowerRing: modulus p^N exceeds 2^62");
        q_ *= p;
    }
}

std::uint64_t PrimePowerRing::reduce_signed(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(q_);
    if (r < 0) r += static_cast<std::int64_t>(q_);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimePowerRing::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % q_, b = a % q_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

unsigned PrimePowerRing::val(std::uint64_t x) const {
    if (x == 0) return N_;
    unsigned v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

std::uint64_t PrimePowerRing::p_pow(unsigned k) const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p_;
    return r;
}

std::uint64_t PrimePowerRing::unit_inverse(std::uint64_t u) const {
    if (!is_unit(u)) throw validation_error("unit_inverse: not a unit");
    // Extended Euclid on (u, q).
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(q_), newr = static_cast<std::int64_t>(u % q_);
    while (newr != 0) {
        std::int64_t quot = r / newr;
        std::int64_t tmp = t - quot * newt;
        t = newt;
        newt = tmp;
        tmp = r - quot * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(q_);
    return static_cast<std::uint64_t>(t);
}

PrimePowerMatrix::PrimePowerMatrix(PrimePowerRing ring, std::size_t rows, std::size_t cols,
                                   std::vector<std::uint64_t> entries)
    : ring_(ring), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols)
        throw validation_error("PrimePowerMatrix: entry count does not match shape");
    for (auto& x : a_) x = ring_.reduce(x);
}

PrimePowerMatrix PrimePowerMatrix::identity(PrimePowerRing ring, std::size_t n) {
    PrimePowerMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % ring.modulus();
    return m;
}

std::vector<std::uint64_t> PrimePowerMatrix::row(std::size_t i) const {
    return std::vector<std::uint64_t>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void PrimePowerMatrix::set_row(std::size_t i, const std::vector<std::uint64_t>& r) {
    if (r.size() != cols_) throw validation_error("set_row: wrong length");
    for (std::size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] = ring_.reduce(r[j]);
}

PrimePowerMatrix PrimePowerMatrix::mul(const PrimePowerMatrix& other) const {
    if (ring_ != other.ring_ || cols_ != other.rows_)
        throw validation_error("matrix product: shape or ring mismatch");
    PrimePowerMatrix out(ring_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out(i, j) = ring_.add(out(i, j), ring_.mul(x, other(k, j)));
        }
    return out;
}

PrimePowerMatrix PrimePowerMatrix::vstack(const PrimePowerMatrix& below) const {
    if (ring_ != below.ring_ || cols_ != below.cols_)
        throw validation_error("vstack: shape or ring mismatch");
    PrimePowerMatrix out(ring_, rows_ + below.rows_, cols_);
    std::copy(a_.begin(), a_.end(), out.a_.begin());
    std::copy(below.a_.begin(), below.a_.end(), out.a_.begin() + a_.size());
    return out;
}

PrimePowerMatrix PrimePowerMatrix::scaled(std::uint64_t c) const {
    PrimePowerMatrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = ring_.mul(a_[i], c);
    return out;
}

PrimePowerMatrix PrimePowerMatrix::negated() const {
    PrimePowerMatrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = ring_.neg(a_[i]);
    return out;
}

bool PrimePowerMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::uint64_t x) { return x == 0; });
}

bool PrimePowerMatrix::operator==(const PrimePowerMatrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

AbelianGroupStructure AbelianGroupStructure::from_prime_exponents(std::uint64_t p,
                                                                  std::vector<unsigned> exponents) {
    std::sort(exponents.begin(), exponents.end());
    AbelianGroupStructure g;
    for (unsigned e : exponents) {
        if (e == 0) continue;
        std::uint64_t f = 1;
        for (unsigned i = 0; i < e; ++i) f *= p;
        g.invariant_factors.push_back(f);
    }
    return g;
}

AbelianGroupStructure AbelianGroupStructure::from_order_census(
    const std::vector<std::uint64_t>& orders) {
    // For each prime r dividing the group exponent, the counts
    // n_j = #{x : x^{r^j} = 1} determine the Sylow r-subgroup: with
    // Sylow_r = sum of Z/r^{b_i}, one has log_r n_j - log_r n_{j-1}
    // = #{i : b_i >= j}, so the b-multiset is the conjugate partition.
    if (orders.empty()) throw validation_error("from_order_census: empty census");
    std::map<std::uint64_t, std::vector<unsigned>> sylow_parts;
    std::uint64_t exponent = 1;
    for (std::uint64_t o : orders) exponent = std::lcm(exponent, o);
    std::uint64_t rem = exponent;
    for (std::uint64_t r = 2; r <= rem; ++r) {
        if (rem % r != 0) continue;
        while (rem % r == 0) rem /= r;
        std::vector<unsigned> delta; // delta[j-1] = #{i : b_i >= j}
        std::uint64_t prev = 1, rp = r;
        for (unsigned j = 1; j <= 64; ++j) {
            std::uint64_t cnt = 0;
            for (std::uint64_t o : orders)
                if (rp % o == 0) ++cnt;
            if (cnt == prev) break;
            unsigned s_j = 0, s_prev = 0;
            for (std::uint64_t t = cnt; t > 1; t /= r) ++s_j;
            for (std::uint64_t t = prev; t > 1; t /= r) ++s_prev;
            delta.push_back(s_j - s_prev);
            prev = cnt;
            rp *= r;
        }
        // delta[j] = #{i : b_i >= j+1}; reconstruct the multiset
        std::vector<unsigned> exps;
        for (unsigned i = 0;; ++i) {
            unsigned b = 0;
            for (unsigned j = 0; j < delta.size(); ++j)
                if (delta[j] > i) b = j + 1;
            if (b == 0) break;
            exps.push_back(b);
        }
        std::sort(exps.begin(), exps.end());
        sylow_parts[r] = exps;
    }
    // Right-align the per-prime partitions into a divisibility chain.
    std::size_t parts = 0;
    for (auto& [r, exps] : sylow_parts) parts = std::max(parts, exps.size());
    AbelianGroupStructure g;
    for (std::size_t t = 0; t < parts; ++t) {
        std::uint64_t d = 1;
        for (auto& [r, exps] : sylow_parts) {
            std::size_t off = parts - exps.size();
            if (t >= off) {
                unsigned e = exps[t - off];
                for (unsigned i = 0; i < e; ++i) d *= r;
            }
        }
        if (d > 1) g.invariant_factors.push_back(d);
    }
    return g;
}

unsigned __int128 AbelianGroupStructure::order() const {
    unsigned __int128 o = 1;
    for (std::uint64_t d : invariant_factors) o *= d;
    return o;
}

std::vector<unsigned> AbelianGroupStructure::p_exponents(std::uint64_t p) const {
    std::vector<unsigned> out;
    for (std::uint64_t d : invariant_factors) {
        unsigned e = 0;
        while (d % p == 0) {
            d /= p;
            ++e;
        }
        if (e > 0) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

AbelianGroupStructure AbelianGroupStructure::sylow(std::uint64_t p) const {
    return from_prime_exponents(p, p_exponents(p));
}

// ---------------------------------------------------------------------------
// Howell form
// ---------------------------------------------------------------------------

namespace {

// One working row: main entries plus optional transform tail.
struct WorkRow {
    std::vector<std::uint64_t> v;   // length cols
    std::vector<std::uint64_t> aug; // length original rows (may be empty)
};

std::size_t leading_col(const std::vector<std::uint64_t>& v) {
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) return j;
    return v.size();
}

void row_scale(const PrimePowerRing& R, WorkRow& r, std::uint64_t c) {
    for (auto& x : r.v) x = R.mul(x, c);
    for (auto& x : r.aug) x = R.mul(x, c);
}

// r -= c * s
void row_submul(const PrimePowerRing& R, WorkRow& r, const WorkRow& s, std::uint64_t c) {
    for (std::size_t j = 0; j < r.v.size(); ++j)
        r.v[j] = R.sub(r.v[j], R.mul(c, s.v[j]));
    for (std::size_t j = 0; j < r.aug.size(); ++j)
        r.aug[j] = R.sub(r.aug[j], R.mul(c, s.aug[j]));
}

struct HowellWorker {
    const PrimePowerRing R;
    std::size_t cols;
    std::vector<std::optional<WorkRow>> slot; // by pivot column
    std::vector<WorkRow> queue;

    explicit HowellWorker(const PrimePowerRing& ring, std::size_t c)
        : R(ring), cols(c), slot(c) {}

    void push(WorkRow r) { queue.push_back(std::move(r)); }

    void process_all() {
        while (!queue.empty()) {
            WorkRow r = std::move(queue.back());
            queue.pop_back();
            absorb(std::move(r));
        }
    }

    void absorb(WorkRow row) {
        for (;;) {
            std::size_t j = leading_col(row.v);
            if (j == cols) return;
            unsigned v = R.val(row.v[j]);
            if (!slot[j]) {
                install(j, v, std::move(row));
                return;
            }
            unsigned vj = R.val((*slot[j]).v[j]);
            if (v < vj) {
                WorkRow old = std::move(*slot[j]);
                slot[j].reset();
                install(j, v, std::move(row));
                row = std::move(old);
                continue;
            }
            // pivot is p^vj exactly; quotient is an exact integer division
            std::uint64_t q0 = row.v[j] / R.p_pow(vj);
            row_submul(R, row, *slot[j], q0);
        }
    }

    void install(std::size_t j, unsigned v, WorkRow row) {
        std::uint64_t unit = row.v[j] / R.p_pow(v);
        row_scale(R, row, R.unit_inverse(unit));
        // shadow: p^{N-v} * row has zero pivot and keeps the span closed
        if (v > 0) {
            WorkRow shadow = row;
            std::uint64_t c = R.p_pow(R.precision() - v);
            for (auto& x : shadow.v) x = R.mul(x, c);
            for (auto& x : shadow.aug) x = R.mul(x, c);
            queue.push_back(std::move(shadow));
        }
        slot[j] = std::move(row);
    }

    // Reduce entries above each pivot modulo that pivot.
    void normalize_above() {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!slot[j]) continue;
            unsigned vj = R.val((*slot[j]).v[j]);
            std::uint64_t piv = R.p_pow(vj);
            for (std::size_t k = 0; k < j; ++k) {
                if (!slot[k]) continue;
                std::uint64_t e = (*slot[k]).v[j];
                std::uint64_t q0 = e / piv;
                if (q0 != 0) row_submul(R, *slot[k], *slot[j], q0);
            }
        }
    }

    // Verify the Howell (span closure) property; re-absorb anything missing.
    bool closure_pass() {
        bool clean = true;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!slot[j]) continue;
            unsigned vj = R.val((*slot[j]).v[j]);
            if (vj == 0) continue;
            WorkRow shadow = *slot[j];
            std::uint64_t c = R.p_pow(R.precision() - vj);
            for (auto& x : shadow.v) x = R.mul(x, c);
            for (auto& x : shadow.aug) x = R.mul(x, c);
            // reduce against current slots
            WorkRow probe = shadow;
            for (std::size_t t = leading_col(probe.v); t < cols; t = leading_col(probe.v)) {
                if (!slot[t]) break;
                unsigned vt = R.val((*slot[t]).v[t]);
                if (R.val(probe.v[t]) < vt) break;
                row_submul(R, probe, *slot[t], probe.v[t] / R.p_pow(vt));
            }
            if (leading_col(probe.v) != cols) {
                clean = false;
                queue.push_back(std::move(shadow));
                process_all();
            }
        }
        return clean;
    }
};

} // namespace

static HowellTransform howell_impl(const PrimePowerMatrix& m, bool with_transform) {
    const PrimePowerRing& R = m.ring();
    HowellWorker w(R, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        WorkRow r;
        r.v = m.row(i);
        if (with_transform) {
            r.aug.assign(m.rows(), 0);
            r.aug[i] = 1 % R.modulus();
        }
        w.push(std::move(r));
    }
    w.process_all();
    for (int guard = 0; guard < 64 && !w.closure_pass(); ++guard) {}
    w.normalize_above();

    std::size_t nrows = 0;
    for (auto& s : w.slot)
        if (s) ++nrows;
    PrimePowerMatrix H(R, nrows, m.cols());
    PrimePowerMatrix T(R, with_transform ? nrows : 0, m.rows());
    std::size_t i = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!w.slot[j]) continue;
        H.set_row(i, (*w.slot[j]).v);
        if (with_transform) T.set_row(i, (*w.slot[j]).aug);
        ++i;
    }
    return {H, T};
}

PrimePowerMatrix howell_form(const PrimePowerMatrix& m) {
    return howell_impl(m, false).form;
}

HowellTransform howell_form_with_transform(const PrimePowerMatrix& m) {
    return howell_impl(m, true);
}

bool in_span(const PrimePowerMatrix& H, const std::vector<std::uint64_t>& v) {
    const PrimePowerRing& R = H.ring();
    if (v.size() != H.cols()) throw validation_error("in_span: length mismatch");
    std::vector<std::uint64_t> w = v;
    for (auto& x : w) x = R.reduce(x);
    std::size_t i = 0;
    for (std::size_t j = 0; j < H.cols(); ++j) {
        // find pivot row at column j, if any
        while (i < H.rows() && leading_col(H.row(i)) < j) ++i;
        if (w[j] == 0) continue;
        if (i >= H.rows() || leading_col(H.row(i)) != j) return false;
        unsigned vj = R.val(H(i, j));
        if (R.val(w[j]) < vj) return false;
        std::uint64_t q0 = w[j] / R.p_pow(vj);
        for (std::size_t t = j; t < H.cols(); ++t)
            w[t] = R.sub(w[t], R.mul(q0, H(i, t)));
    }
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

std::optional<std::vector<std::uint64_t>> solve_left(const PrimePowerMatrix& m,
                                                     const std::vector<std::uint64_t>& target) {
    const PrimePowerRing& R = m.ring();
    HowellTransform ht = howell_form_with_transform(m);
    const PrimePowerMatrix& H = ht.form;
    std::vector<std::uint64_t> w = target;
    for (auto& x : w) x = R.reduce(x);
    std::vector<std::uint64_t> coeff(H.rows(), 0);
    std::size_t i = 0;
    for (std::size_t j = 0; j < H.cols(); ++j) {
        while (i < H.rows() && leading_col(H.row(i)) < j) ++i;
        if (w[j] == 0) continue;
        if (i >= H.rows() || leading_col(H.row(i)) != j) return std::nullopt;
        unsigned vj = R.val(H(i, j));
        if (R.val(w[j]) < vj) return std::nullopt;
        std::uint64_t q0 = w[j] / R.p_pow(vj);
        coeff[i] = R.add(coeff[i], q0);
        for (std::size_t t = j; t < H.cols(); ++t)
            w[t] = R.sub(w[t], R.mul(q0, H(i, t)));
    }
    if (!std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; }))
        return std::nullopt;
    std::vector<std::uint64_t> x(m.rows(), 0);
    for (std::size_t r = 0; r < H.rows(); ++r) {
        if (coeff[r] == 0) continue;
        for (std::size_t c = 0; c < m.rows(); ++c)
            x[c] = R.add(x[c], R.mul(coeff[r], ht.transform(r, c)));
    }
    return x;
}

unsigned span_size_exponent(const PrimePowerMatrix& H) {
    const PrimePowerRing& R = H.ring();
    unsigned e = 0;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::size_t j = leading_col(H.row(i));
        if (j < H.cols()) e += R.precision() - R.val(H(i, j));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

SmithDecomposition smith_normal_form(const PrimePowerMatrix& m) {
    const PrimePowerRing& R = m.ring();
    PrimePowerMatrix D = m;
    PrimePowerMatrix U = PrimePowerMatrix::identity(R, m.rows());
    PrimePowerMatrix V = PrimePowerMatrix::identity(R, m.cols());
    std::size_t n = std::min(m.rows(), m.cols());

    auto swap_rows = [&](PrimePowerMatrix& A, std::size_t a, std::size_t b) {
        if (a == b) return;
        auto ra = A.row(a), rb = A.row(b);
        A.set_row(a, rb);
        A.set_row(b, ra);
    };
    auto swap_cols = [&](PrimePowerMatrix& A, std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    };

    for (std::size_t t = 0; t < n; ++t) {
        // entry of minimal valuation in the trailing submatrix
        unsigned best = R.precision() + 1;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < D.rows(); ++i)
            for (std::size_t j = t; j < D.cols(); ++j) {
                if (D(i, j) == 0) continue;
                unsigned v = R.val(D(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best > R.precision()) break; // all zero
        swap_rows(D, t, bi);
        swap_rows(U, t, bi);
        swap_cols(D, t, bj);
        swap_cols(V, t, bj);
        unsigned v = best;
        std::uint64_t unit = D(t, t) / R.p_pow(v);
        std::uint64_t inv = R.unit_inverse(unit);
        for (std::size_t j = 0; j < D.cols(); ++j) D(t, j) = R.mul(D(t, j), inv);
        for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = R.mul(U(t, j), inv);
        std::uint64_t piv = R.p_pow(v);
        for (std::size_t i = t + 1; i < D.rows(); ++i) {
            if (D(i, t) == 0) continue;
            std::uint64_t q0 = D(i, t) / piv;
            for (std::size_t j = 0; j < D.cols(); ++j)
                D(i, j) = R.sub(D(i, j), R.mul(q0, D(t, j)));
            for (std::size_t j = 0; j < U.cols(); ++j)
                U(i, j) = R.sub(U(i, j), R.mul(q0, U(t, j)));
        }
        for (std::size_t j = t + 1; j < D.cols(); ++j) {
            if (D(t, j) == 0) continue;
            std::uint64_t q0 = D(t, j) / piv;
            for (std::size_t i = 0; i < D.rows(); ++i)
                D(i, j) = R.sub(D(i, j), R.mul(q0, D(i, t)));
            for (std::size_t i = 0; i < V.rows(); ++i)
                V(i, j) = R.sub(V(i, j), R.mul(q0, V(i, t)));
        }
    }
    return {U, D, V};
}

PrimePowerMatrix kernel_basis(const PrimePowerMatrix& m) {
    const PrimePowerRing& R = m.ring();
    if (m.rows() == 0) return PrimePowerMatrix(R, 0, 0);
    SmithDecomposition s = smith_normal_form(m);
    std::vector<std::vector<std::uint64_t>> gens;
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        unsigned a = (i < n) ? R.val(s.D(i, i)) : R.precision();
        if (a == 0) continue; // unit pivot: no kernel contribution
        std::uint64_t c = R.p_pow(R.precision() - a); // a = N gives c = 1
        std::vector<std::uint64_t> g(m.rows());
        for (std::size_t j = 0; j < m.rows(); ++j) g[j] = R.mul(c, s.U(i, j));
        gens.push_back(std::move(g));
    }
    PrimePowerMatrix K(R, gens.size(), m.rows());
    for (std::size_t i = 0; i < gens.size(); ++i) K.set_row(i, gens[i]);
    return howell_form(K);
}

PrimePowerMatrix preimage_span(const PrimePowerMatrix& m, const PrimePowerMatrix& sub) {
    if (m.ring() != sub.ring() || m.cols() != sub.cols())
        throw validation_error("preimage_span: shape or ring mismatch");
    PrimePowerMatrix stacked = m.vstack(sub.negated());
    PrimePowerMatrix K = kernel_basis(stacked);
    PrimePowerMatrix out(m.ring(), K.rows(), m.rows());
    for (std::size_t i = 0; i < K.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) = K(i, j);
    return howell_form(out);
}

SubmoduleComparison submodule_compare(const PrimePowerMatrix& a, const PrimePowerMatrix& b) {
    if (a.ring() != b.ring() || a.cols() != b.cols())
        throw validation_error("submodule_compare: dimension mismatch");
    PrimePowerMatrix Ha = howell_form(a);
    PrimePowerMatrix Hb = howell_form(b);
    bool b_in_a = true, a_in_b = true;
    for (std::size_t i = 0; i < Hb.rows() && b_in_a; ++i)
        if (!in_span(Ha, Hb.row(i))) b_in_a = false;
    for (std::size_t i = 0; i < Ha.rows() && a_in_b; ++i)
        if (!in_span(Hb, Ha.row(i))) a_in_b = false;

    SpanRelation rel = a_in_b && b_in_a ? SpanRelation::Equal
                     : b_in_a           ? SpanRelation::AContainsB
                     : a_in_b           ? SpanRelation::BContainsA
                                        : SpanRelation::Incomparable;

    // x in both spans iff x = u*a = v*b; solve u*a - v*b = 0.
    PrimePowerMatrix inter(a.ring(), 0, a.cols());
    if (rel == SpanRelation::Equal || rel == SpanRelation::AContainsB)
        inter = Hb;
    else if (rel == SpanRelation::BContainsA)
        inter = Ha;
    else {
        PrimePowerMatrix stacked = Ha.vstack(Hb.negated());
        PrimePowerMatrix K = kernel_basis(stacked);
        PrimePowerMatrix rows(a.ring(), K.rows(), a.cols());
        for (std::size_t i = 0; i < K.rows(); ++i) {
            std::vector<std::uint64_t> x(a.cols(), 0);
            for (std::size_t r = 0; r < Ha.rows(); ++r) {
                if (K(i, r) == 0) continue;
                for (std::size_t c = 0; c < a.cols(); ++c)
                    x[c] = a.ring().add(x[c], a.ring().mul(K(i, r), Ha(r, c)));
            }
            rows.set_row(i, x);
        }
        inter = howell_form(rows);
    }
    return {rel, inter};
}

AbelianGroupStructure cokernel_structure(const PrimePowerMatrix& m) {
    const PrimePowerRing& R = m.ring();
    SmithDecomposition s = smith_normal_form(m);
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<unsigned> exps;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        unsigned a = (j < n) ? R.val(s.D(j, j)) : R.precision();
        if (a > 0) exps.push_back(a);
    }
    return AbelianGroupStructure::from_prime_exponents(R.p(), exps);
}

AbelianGroupStructure subquotient_structure(const PrimePowerMatrix& k,
                                            const PrimePowerMatrix& i) {
    if (k.ring() != i.ring() || k.cols() != i.cols())
        throw validation_error("subquotient_structure: shape mismatch");
    PrimePowerMatrix Hk = howell_form(k);
    PrimePowerMatrix Hi = howell_form(i);
    for (std::size_t r = 0; r < Hi.rows(); ++r)
        if (!in_span(Hk, Hi.row(r)))
            throw validation_error("subquotient_structure: denominator not contained");
    // relations {x : x * Hk in span(Hi)} ; quotient = coker of the relations
    PrimePowerMatrix rel = preimage_span(Hk, Hi);
    return cokernel_structure(rel);
}

} // namespace iwa
