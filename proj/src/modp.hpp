// Arithmetic modulo word-sized primes p < 2^62. Used as a fast filter and as the
// per-prime step of the multimodular solvers; never the final word on a result.
#ifndef X0N_MODP_HPP
#define X0N_MODP_HPP

#include "x0n/series.hpp"

#include <cstdint>
#include <vector>

namespace x0n::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Vec = std::vector<u64>;

bool is_prime_u64(u64 n);
// Deterministic list: the largest primes below 2^62, in decreasing order.
const std::vector<u64>& primes(size_t count);

struct Field {
    u64 p;
    u64 r128;  // 2^128 mod p

    explicit Field(u64 prime);

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;  // a != 0
    u64 shoup(u64 w) const { return static_cast<u64>((static_cast<u128>(w) << 64) / p); }
    u64 mul_shoup(u64 a, u64 w, u64 wp) const {
        u64 q = static_cast<u64>((static_cast<u128>(a) * wp) >> 64);
        u64 r = a * w - q * p;
        return r >= p ? r - p : r;
    }
    u64 reduce(const Z& z) const;
    // false when the denominator vanishes mod p
    bool reduce(const Q& q, u64& out) const;
};

// Coefficients of f for exponents [lo, hi); false if f's denominator is 0 mod p.
bool reduce_window(const QSeries& f, long lo, long hi, const Field& F, Vec& out);

// First n coefficients of a*b.
Vec mul_trunc(const Vec& a, const Vec& b, size_t n, const Field& F);

// Dense row-major matrix.
struct Mat {
    size_t rows = 0, cols = 0;
    Vec a;
    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    u64* row(size_t i) { return a.data() + i * cols; }
    const u64* row(size_t i) const { return a.data() + i * cols; }
    u64& at(size_t i, size_t j) { return a[i * cols + j]; }
};

struct Echelon {
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of echelon row i
    std::vector<size_t> free_cols;
};

// In-place forward elimination; pivot = first row with a nonzero entry in the
// current column. Rows of the result above rank are in echelon form.
Echelon echelon(Mat& m, const Field& F);

// Kernel vector with v[free_col] = 1 and zero on the other free columns.
Vec kernel_vector(const Mat& ech, const Echelon& e, size_t free_col, const Field& F);

} // namespace x0n::modp

#endif // X0N_MODP_HPP
