#include "modp.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace x0n::modp {

namespace {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % m);
        a = static_cast<u64>(static_cast<u128>(a) * a % m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<u64>(static_cast<u128>(x) * x % n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

const std::vector<u64>& primes(size_t count) {
    static std::mutex mu;
    static std::vector<u64> list;
    std::lock_guard<std::mutex> lock(mu);
    u64 c = list.empty() ? (1ULL << 62) - 1 : list.back() - 2;
    while (list.size() < count) {
        if (is_prime_u64(c)) list.push_back(c);
        c -= 2;
    }
    return list;
}

Field::Field(u64 prime) : p(prime) {
    u64 r64 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r128 = mul(r64, r64);
}

u64 Field::pow(u64 a, u64 e) const { return powmod(a, e, p); }

u64 Field::inv(u64 a) const {
    if (a == 0) fail(ErrorKind::InvalidArgument, "inverse of 0 mod p");
    return pow(a, p - 2);
}

u64 Field::reduce(const Z& z) const {
    u64 r = mpz_fdiv_ui(z.get_mpz_t(), p);
    return r;
}

bool Field::reduce(const Q& q, u64& out) const {
    u64 d = reduce(Z(q.get_den()));
    if (d == 0) return false;
    out = mul(reduce(Z(q.get_num())), inv(d));
    return true;
}

bool reduce_window(const QSeries& f, long lo, long hi, const Field& F, Vec& out) {
    if (hi > f.trunc())
        fail(ErrorKind::PrecisionExceeded, "mod-p window up to q^" + std::to_string(hi) + " but series known to O(q^" +
                                               std::to_string(f.trunc()) + ")");
    out.assign(static_cast<size_t>(std::max(0L, hi - lo)), 0);
    if (f.is_zero()) return true;
    u64 d = F.reduce(f.denominator());
    if (d == 0) return false;
    u64 di = F.inv(d);
    const auto& num = f.numerators();
    long v = f.valuation();
    for (long n = std::max(lo, v); n < hi; ++n) {
        const Z& c = num[static_cast<size_t>(n - v)];
        if (c != 0) out[static_cast<size_t>(n - lo)] = F.mul(F.reduce(c), di);
    }
    return true;
}

Vec mul_trunc(const Vec& a, const Vec& b, size_t n, const Field& F) {
    Vec c(n, 0);
    size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
    for (size_t k = 0; k < n; ++k) {
        size_t i0 = k + 1 > lb ? k + 1 - lb : 0;
        size_t i1 = std::min(k + 1, la);
        u128 acc = 0;
        u64 over = 0;
        for (size_t i = i0; i < i1; ++i) {
            u128 t = static_cast<u128>(a[i]) * b[k - i];
            acc += t;
            over += acc < t;
        }
        u64 r = static_cast<u64>(acc % F.p);
        if (over) r = F.add(r, F.mul(over % F.p, F.r128));
        c[k] = r;
    }
    return c;
}

namespace {

void eliminate_rows(Mat& m, const Field& F, size_t prow, size_t col, size_t r0, size_t r1) {
    const u64* pr = m.row(prow);
    for (size_t r = r0; r < r1; ++r) {
        u64* row = m.row(r);
        u64 f = row[col];
        if (f == 0) continue;
        u64 w = F.neg(f), wp = F.shoup(w);
        row[col] = 0;
        for (size_t j = col + 1; j < m.cols; ++j) {
            if (pr[j] == 0) continue;
            row[j] = F.add(row[j], F.mul_shoup(pr[j], w, wp));
        }
    }
}

} // namespace

Echelon echelon(Mat& m, const Field& F) {
    Echelon e;
    size_t r = 0;
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t piv = r;
        while (piv < m.rows && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows) {
            e.free_cols.push_back(c);
            continue;
        }
        if (piv != r) std::swap_ranges(m.row(piv), m.row(piv) + m.cols, m.row(r));
        // scale pivot row to a leading 1
        u64* pr = m.row(r);
        u64 iv = F.inv(pr[c]), ivp = F.shoup(iv);
        for (size_t j = c; j < m.cols; ++j)
            if (pr[j]) pr[j] = F.mul_shoup(pr[j], iv, ivp);
        size_t below = m.rows - (r + 1);
        size_t work = below * (m.cols - c);
        unsigned nt = work > (1u << 18) ? std::min<unsigned>(hw, static_cast<unsigned>(below / 16 + 1)) : 1;
        if (nt <= 1) {
            eliminate_rows(m, F, r, c, r + 1, m.rows);
        } else {
            std::vector<std::thread> ts;
            size_t chunk = (below + nt - 1) / nt;
            for (unsigned t = 0; t < nt; ++t) {
                size_t a = r + 1 + t * chunk, b = std::min(m.rows, a + chunk);
                if (a >= b) break;
                ts.emplace_back(eliminate_rows, std::ref(m), std::cref(F), r, c, a, b);
            }
            for (auto& t : ts) t.join();
        }
        e.pivots.push_back(c);
        ++r;
    }
    for (size_t c = (e.pivots.empty() ? 0 : e.pivots.back() + 1); c < m.cols; ++c)
        if (std::find(e.free_cols.begin(), e.free_cols.end(), c) == e.free_cols.end()) e.free_cols.push_back(c);
    std::sort(e.free_cols.begin(), e.free_cols.end());
    e.rank = r;
    return e;
}

Vec kernel_vector(const Mat& ech, const Echelon& e, size_t free_col, const Field& F) {
    Vec v(ech.cols, 0);
    v[free_col] = 1;
    for (size_t i = e.rank; i-- > 0;) {
        size_t pc = e.pivots[i];
        const u64* row = ech.row(i);
        u128 acc = 0;
        u64 over = 0;
        for (size_t j = pc + 1; j < ech.cols; ++j) {
            if (v[j] == 0 || row[j] == 0) continue;
            u128 t = static_cast<u128>(row[j]) * v[j];
            acc += t;
            over += acc < t;
        }
        u64 s = static_cast<u64>(acc % F.p);
        if (over) s = F.add(s, F.mul(over % F.p, F.r128));
        v[pc] = F.neg(s);  // pivot entries are 1
    }
    return v;
}

} // namespace x0n::modp
