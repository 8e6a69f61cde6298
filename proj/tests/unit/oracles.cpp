#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

Poly mul(const Poly& a, const Poly& b, size_t n) {
    Poly c(n, Q(0));
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Poly inverse(const Poly& a, size_t n) {
    if (a.empty() || a[0] == 0) throw std::invalid_argument("oracle::inverse of a non-unit");
    Poly b(n, Q(0));
    b[0] = 1 / a[0];
    for (size_t k = 1; k < n; ++k) {
        Q s = 0;
        for (size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * b[k - i];
        b[k] = -s / a[0];
    }
    return b;
}

Poly power(const Poly& a, unsigned k, size_t n) {
    Poly r(n, Q(0));
    r[0] = 1;
    for (unsigned i = 0; i < k; ++i) r = mul(r, a, n);
    return r;
}

Z divisor_sum(long k, long n) {
    Z s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Z t;
            mpz_ui_pow_ui(t.get_mpz_t(), d, k);
            s += t;
        }
    return s;
}

Q bernoulli(long k) {
    std::vector<Q> a(k + 1);
    for (long m = 0; m <= k; ++m) {
        a[m] = Q(1, m + 1);
        for (long j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    }
    // Akiyama-Tanigawa gives B_1 = +1/2; only even k are used here
    return a[0];
}

Poly eisenstein(long k, size_t n) {
    Q c = -2 * k / bernoulli(k);
    Poly e(n, Q(0));
    e[0] = 1;
    for (size_t i = 1; i < n; ++i) e[i] = c * divisor_sum(k - 1, static_cast<long>(i));
    return e;
}

Poly delta_product(size_t n) {
    Poly p(n, Q(0));
    p[0] = 1;
    for (size_t m = 1; m < n; ++m)
        for (int r = 0; r < 24; ++r)
            for (size_t i = n - 1; i >= m; --i) p[i] -= p[i - m];
    Poly d(n, Q(0));
    for (size_t i = 0; i + 1 < n; ++i) d[i + 1] = p[i];
    return d;
}

Poly stretch(const Poly& a, long N, size_t n) {
    Poly r(n, Q(0));
    for (size_t i = 0; i < a.size() && i * N < n; ++i) r[i * N] = a[i];
    return r;
}

Poly e2N(long N, size_t n) {
    Poly e(n, Q(0));
    e[0] = Q(N - 1, 24);
    e[0].canonicalize();
    for (size_t i = 1; i < n; ++i) {
        e[i] += divisor_sum(1, static_cast<long>(i));
        if (i * N < n) e[i * N] -= N * divisor_sum(1, static_cast<long>(i));
    }
    return e;
}

size_t rank(std::vector<std::vector<Q>> a) {
    size_t r = 0;
    if (a.empty()) return 0;
    size_t cols = a[0].size();
    for (size_t c = 0; c < cols && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

Q j_from_ainvs(const std::vector<Z>& a) {
    Z b2 = a[0] * a[0] + 4 * a[1];
    Z b4 = 2 * a[3] + a[0] * a[2];
    Z b6 = a[2] * a[2] + 4 * a[4];
    Z b8 = a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] + a[1] * a[2] * a[2] - a[3] * a[3];
    Z c4 = b2 * b2 - 24 * b4;
    Z disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    Q j(c4 * c4 * c4, disc);
    j.canonicalize();
    return j;
}

Q random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> n(-num_bound, num_bound), d(1, den_bound);
    Q r(n(rng), d(rng));
    r.canonicalize();
    return r;
}

Poly random_poly(std::mt19937_64& rng, size_t n, long bound) {
    Poly p(n);
    for (auto& c : p) c = random_rational(rng, bound, 7);
    return p;
}

} // namespace oracle
