#include "x0n/linalg.hpp"

#include "solver.hpp"
#include "x0n/errors.hpp"

#include <algorithm>

namespace x0n {

namespace {

struct BareissResult {
    std::vector<size_t> pivots;
    std::vector<size_t> free_cols;
};

// Fraction-free forward elimination in place.
BareissResult bareiss(ZMatrix& a, size_t cols) {
    BareissResult res;
    size_t rows = a.size(), r = 0;
    Z prev = 1;
    for (size_t c = 0; c < cols; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv >= rows) {
            res.free_cols.push_back(c);
            continue;
        }
        std::swap(a[piv], a[r]);
        const Z& p = a[r][c];
        for (size_t i = r + 1; i < rows; ++i) {
            Z f = a[i][c];
            for (size_t j = c + 1; j < cols; ++j) {
                Z t = p * a[i][j];
                mpz_submul(t.get_mpz_t(), f.get_mpz_t(), a[r][j].get_mpz_t());
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = p;
        res.pivots.push_back(c);
        if (++r == rows) {
            for (size_t cc = c + 1; cc < cols; ++cc) res.free_cols.push_back(cc);
            break;
        }
    }
    return res;
}

std::vector<std::vector<Q>> kernel_from_echelon(const ZMatrix& a, const BareissResult& b, size_t cols) {
    std::vector<std::vector<Q>> basis;
    for (size_t f : b.free_cols) {
        std::vector<Q> v(cols, Q(0));
        v[f] = 1;
        for (size_t i = b.pivots.size(); i-- > 0;) {
            size_t pc = b.pivots[i];
            Q s = 0;
            for (size_t j = pc + 1; j < cols; ++j)
                if (v[j] != 0 && a[i][j] != 0) s += a[i][j] * v[j];
            v[pc] = -s / Q(a[i][pc]);
            v[pc].canonicalize();
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

ZMatrix to_integer_rows(const QMatrix& a) {
    ZMatrix z;
    z.reserve(a.size());
    for (const auto& row : a) {
        Z d = 1;
        for (const Q& x : row) d = lcm(d, Z(x.get_den()));
        std::vector<Z> zr;
        zr.reserve(row.size());
        for (const Q& x : row) zr.push_back(x.get_num() * (d / x.get_den()));
        z.push_back(std::move(zr));
    }
    return z;
}

size_t column_count(const QMatrix& a) { return a.empty() ? 0 : a[0].size(); }

} // namespace

std::vector<std::vector<Q>> nullspace(const ZMatrix& a0) {
    size_t cols = a0.empty() ? 0 : a0[0].size();
    for (const auto& r : a0)
        if (r.size() != cols) fail(ErrorKind::InvalidArgument, "ragged matrix");
    ZMatrix a = a0;
    auto b = bareiss(a, cols);
    return kernel_from_echelon(a, b, cols);
}

std::vector<std::vector<Q>> nullspace(const QMatrix& a) {
    size_t cols = column_count(a);
    for (const auto& r : a)
        if (r.size() != cols) fail(ErrorKind::InvalidArgument, "ragged matrix");
    return nullspace(to_integer_rows(a));
}

size_t rank(const QMatrix& a0) {
    ZMatrix a = to_integer_rows(a0);
    return bareiss(a, column_count(a0)).pivots.size();
}

std::optional<std::vector<Q>> kernel_vector_with(const QMatrix& a0, size_t col) {
    size_t cols = column_count(a0);
    if (col >= cols) fail(ErrorKind::InvalidArgument, "column out of range");
    ZMatrix a = to_integer_rows(a0);
    auto b = bareiss(a, cols);
    if (std::find(b.free_cols.begin(), b.free_cols.end(), col) == b.free_cols.end()) return std::nullopt;
    BareissResult only{b.pivots, {col}};
    return kernel_from_echelon(a, only, cols).front();
}

bool rational_reconstruct_mod(const Z& a0, const Z& m, Q& out) {
    Z bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Z r0 = m, r1 = a0 % m;
    if (r1 < 0) r1 += m;
    Z s0 = 0, s1 = 1, q, t;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    if (gcd(r1, abs(s1)) != 1) return false;
    Q r(r1, s1);
    r.canonicalize();
    out = r;
    return true;
}

namespace {

// Entrywise reconstruction sharing a running common denominator.
bool reconstruct_vector(const std::vector<Z>& x, const Z& m, std::vector<Q>& out) {
    Z bound;
    mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Z L = 1, half = m / 2, t;
    out.assign(x.size(), Q(0));
    for (size_t i = 0; i < x.size(); ++i) {
        t = x[i] * L % m;
        if (t > half) t -= m;
        if (abs(t) <= bound && L <= bound) {
            out[i] = Q(t, L);
            out[i].canonicalize();
            continue;
        }
        Q r;
        if (!rational_reconstruct_mod(x[i], m, r)) return false;
        out[i] = r;
        L = lcm(L, Z(r.get_den()));
        if (L > bound) return false;
    }
    return true;
}

} // namespace

size_t modular_nullity(const ModularSystem& sys, size_t prime_index) {
    const auto& ps = modp::primes(prime_index + 64);
    for (size_t i = prime_index; i < ps.size(); ++i) {
        modp::Field F(ps[i]);
        modp::Mat m;
        if (!sys.build(F, m)) continue;
        auto e = modp::echelon(m, F);
        return sys.cols - e.rank;
    }
    fail(ErrorKind::InvalidArgument, "no usable prime");
}

KernelResult modular_kernel(const ModularSystem& sys, size_t max_primes) {
    KernelResult res;
    const auto& ps = modp::primes(max_primes);
    size_t best_rank = 0;
    std::vector<size_t> best_pivots;
    std::vector<Z> crt;
    Z modulus = 1;
    std::vector<Q> last;
    bool have_last = false;
    size_t high_nullity_seen = 0;
    for (size_t i = 0; i < ps.size(); ++i) {
        modp::Field F(ps[i]);
        modp::Mat m;
        if (!sys.build(F, m)) continue;
        ++res.primes_used;
        auto e = modp::echelon(m, F);
        size_t nullity = sys.cols - e.rank;
        if (nullity == 0) {
            res.nullity = 0;
            return res;
        }
        if (nullity > 1) {
            // a second opinion before declaring the kernel large
            if (++high_nullity_seen >= 2 && best_rank == 0) {
                res.nullity = nullity;
                return res;
            }
            continue;
        }
        if (e.rank < best_rank) continue;
        if (e.rank == best_rank && e.pivots != best_pivots) {
            if (std::lexicographical_compare(best_pivots.begin(), best_pivots.end(), e.pivots.begin(), e.pivots.end()))
                continue;
        }
        if (e.rank > best_rank || e.pivots != best_pivots) {
            best_rank = e.rank;
            best_pivots = e.pivots;
            crt.clear();
            modulus = 1;
            have_last = false;
        }
        res.nullity = 1;
        modp::Vec v = modp::kernel_vector(m, e, e.free_cols.front(), F);
        if (crt.empty()) {
            crt.resize(v.size());
            for (size_t k = 0; k < v.size(); ++k) crt[k] = Z(static_cast<unsigned long>(v[k]));
            modulus = Z(static_cast<unsigned long>(F.p));
        } else {
            // x <- x + M * ((v - x) * M^{-1} mod p)
            modp::u64 minv = F.inv(F.reduce(modulus));
            for (size_t k = 0; k < v.size(); ++k) {
                modp::u64 xr = F.reduce(crt[k]);
                modp::u64 h = F.mul(F.sub(v[k], xr), minv);
                if (h) mpz_addmul_ui(crt[k].get_mpz_t(), modulus.get_mpz_t(), h);
            }
            modulus *= static_cast<unsigned long>(F.p);
        }
        std::vector<Q> cand;
        if (reconstruct_vector(crt, modulus, cand)) {
            if (have_last && cand == last) {
                res.vector = std::move(cand);
                res.reconstructed = true;
                return res;
            }
            last = std::move(cand);
            have_last = true;
        } else {
            have_last = false;
        }
    }
    return res;
}

} // namespace x0n
