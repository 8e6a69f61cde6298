// Integer polynomial products by Kronecker substitution: both operands are
// packed into one big integer with limb-aligned slots and multiplied by GMP.
#include "x0n/series.hpp"

#include <algorithm>
#include <cstring>

namespace x0n::detail {

namespace {

constexpr size_t kSchoolbookCutoff = 24;

std::vector<Z> schoolbook(const std::vector<Z>& a, size_t la, const std::vector<Z>& b, size_t lb, size_t n) {
    std::vector<Z> c(n);
    for (size_t i = 0; i < la && i < n; ++i) {
        if (a[i] == 0) continue;
        size_t jmax = std::min(lb, n - i);
        for (size_t j = 0; j < jmax; ++j)
            mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return c;
}

// sum a_i 2^(i*slot*64) with signed a_i
void pack(const std::vector<Z>& a, size_t len, size_t slot, mpz_t out) {
    size_t total = len * slot;
    mpz_t pos, negv;
    mpz_init(pos);
    mpz_init(negv);
    mp_limb_t* p = mpz_limbs_write(pos, total);
    mp_limb_t* q = mpz_limbs_write(negv, total);
    std::memset(p, 0, total * sizeof(mp_limb_t));
    std::memset(q, 0, total * sizeof(mp_limb_t));
    bool any_neg = false;
    for (size_t i = 0; i < len; ++i) {
        const mpz_srcptr z = a[i].get_mpz_t();
        size_t sz = mpz_size(z);
        if (sz == 0) continue;
        const mp_limb_t* src = mpz_limbs_read(z);
        mp_limb_t* dst = (mpz_sgn(z) > 0 ? p : q) + i * slot;
        if (mpz_sgn(z) < 0) any_neg = true;
        std::memcpy(dst, src, sz * sizeof(mp_limb_t));
    }
    mpz_limbs_finish(pos, static_cast<mp_size_t>(total));
    mpz_limbs_finish(negv, static_cast<mp_size_t>(total));
    if (any_neg)
        mpz_sub(out, pos, negv);
    else
        mpz_swap(out, pos);
    mpz_clear(pos);
    mpz_clear(negv);
}

void unpack(mpz_srcptr w, size_t slot, size_t n, std::vector<Z>& out) {
    out.assign(n, Z(0));
    int sgn = mpz_sgn(w);
    if (sgn == 0) return;
    size_t sz = mpz_size(w);
    const mp_limb_t* limbs = mpz_limbs_read(w);
    size_t bits = slot * 64;
    Z full, half, t;
    mpz_setbit(full.get_mpz_t(), bits);
    mpz_setbit(half.get_mpz_t(), bits - 1);
    int carry = 0;
    for (size_t i = 0; i < n; ++i) {
        size_t lo = i * slot;
        if (lo >= sz && carry == 0) break;
        size_t cnt = lo >= sz ? 0 : std::min(slot, sz - lo);
        mpz_t view;
        mpz_roinit_n(view, limbs + lo, static_cast<mp_size_t>(cnt));
        mpz_add_ui(t.get_mpz_t(), view, static_cast<unsigned long>(carry));
        carry = 0;
        if (t == full) {
            t = 0;
            carry = 1;
        }
        if (t >= half) {
            t -= full;
            carry += 1;
        }
        out[i] = sgn < 0 ? Z(-t) : t;
    }
}

size_t max_bits(const std::vector<Z>& a, size_t len) {
    size_t m = 0;
    for (size_t i = 0; i < len; ++i) m = std::max<size_t>(m, mpz_sizeinbase(a[i].get_mpz_t(), 2));
    return m;
}

} // namespace

std::vector<Z> mul_trunc(const std::vector<Z>& a, const std::vector<Z>& b, size_t n) {
    size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
    while (la > 0 && a[la - 1] == 0) --la;
    while (lb > 0 && b[lb - 1] == 0) --lb;
    if (la == 0 || lb == 0) return std::vector<Z>(n);
    if (std::min(la, lb) < kSchoolbookCutoff) return schoolbook(a, la, b, lb, n);

    bool square = (&a == &b) || (la == lb && std::equal(a.begin(), a.begin() + la, b.begin()));
    size_t ba = max_bits(a, la), bb = square ? ba : max_bits(b, lb);
    size_t need = ba + bb + 64 - __builtin_clzll(static_cast<unsigned long long>(std::min(la, lb))) + 2;
    size_t slot = (need + 63) / 64;

    mpz_t x, y, w;
    mpz_init(x);
    mpz_init(y);
    mpz_init(w);
    pack(a, la, slot, x);
    if (square) {
        mpz_mul(w, x, x);
    } else {
        pack(b, lb, slot, y);
        mpz_mul(w, x, y);
    }
    std::vector<Z> out;
    unpack(w, slot, n, out);
    mpz_clear(x);
    mpz_clear(y);
    mpz_clear(w);
    return out;
}

} // namespace x0n::detail
