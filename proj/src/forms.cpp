#include "x0n/forms.hpp"

#include "x0n/errors.hpp"

#include <mutex>

namespace x0n {

Q bernoulli(long k) {
    if (k < 0) fail(ErrorKind::InvalidArgument, "bernoulli index must be >= 0");
    // B_m from sum_{j=0}^{m} C(m+1, j) B_j = 0
    static std::mutex mu;
    static std::vector<Q> cache{Q(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(cache.size()) <= k) {
        long m = static_cast<long>(cache.size());
        Q s = 0;
        Z binom = 1;  // C(m+1, j)
        for (long j = 0; j < m; ++j) {
            s += binom * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        Q b = -s / Q(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[k];
}

Z sigma(long k, long n) {
    if (n < 1 || k < 0) fail(ErrorKind::InvalidArgument, "sigma needs n >= 1, k >= 0");
    Z s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += pow(Z(d), static_cast<unsigned long>(k));
        long e = n / d;
        if (e != d) s += pow(Z(e), static_cast<unsigned long>(k));
    }
    return s;
}

std::vector<Z> sigma_table(long k, long limit) {
    std::vector<Z> t(static_cast<size_t>(std::max(0L, limit)), Z(0));
    for (long d = 1; d < limit; ++d) {
        Z dk = pow(Z(d), static_cast<unsigned long>(k));
        for (long m = d; m < limit; m += d) t[m] += dk;
    }
    return t;
}

QSeries eisenstein(long k, long M) {
    if (k < 2 || k % 2) fail(ErrorKind::InvalidArgument, "eisenstein weight must be even and >= 2");
    if (M < 1) return QSeries::zero(std::max(M, 0L));
    Q c = -Q(2 * k) / bernoulli(k);
    c.canonicalize();
    auto sig = sigma_table(k - 1, M);
    std::vector<Z> num(static_cast<size_t>(M));
    Z den = c.get_den();
    num[0] = den;
    for (long n = 1; n < M; ++n) num[n] = sig[n] * c.get_num();
    return QSeries::from_integers(0, std::move(num), den, M);
}

QSeries e2N(long N, long M) {
    if (N < 2) fail(ErrorKind::InvalidArgument, "e2N needs N >= 2");
    if (M < 1) return QSeries::zero(std::max(M, 0L));
    auto sig = sigma_table(1, M);
    std::vector<Z> num(static_cast<size_t>(M));
    num[0] = N - 1;
    for (long n = 1; n < M; ++n) num[n] = 24 * sig[n];
    for (long n = 1; N * n < M; ++n) num[N * n] -= 24 * N * sig[n];
    return QSeries::from_integers(0, std::move(num), Z(24), M);
}

QSeries delta(long M) {
    QSeries e4 = eisenstein(4, M), e6 = eisenstein(6, M);
    return (e4.pow(3) - e6 * e6).scale(Q(1, 1728));
}

InvariantQuadruple invariant_quadruple(long N, long M) {
    if (N < 2) fail(ErrorKind::InvalidArgument, "level must be >= 2");
    if (M < 1) fail(ErrorKind::InvalidArgument, "order must be >= 1");
    QSeries e4 = eisenstein(4, M), e6 = eisenstein(6, M);
    QSeries e4N = eisenstein(4, (M + N - 1) / N).substitute_qN(N).truncate(M);
    QSeries e6N = eisenstein(6, (M + N - 1) / N).substitute_qN(N).truncate(M);
    QSeries inv = e2N(N, M).invert();
    QSeries inv2 = inv * inv;
    QSeries inv3 = inv2 * inv;
    InvariantQuadruple r;
    r.level = N;
    r.a4 = (e4 * inv2).scale(Q(-1, 48));
    r.a6 = (e6 * inv3).scale(Q(1, 864));
    r.a4p = (e4N * inv2).scale(Q(-1, 48));
    r.a6p = (e6N * inv3).scale(Q(1, 864));
    return r;
}

} // namespace x0n
