#include "x0n/heegner.hpp"

#include "x0n/errors.hpp"
#include "x0n/forms.hpp"

#include <climits>
#include <cmath>

namespace x0n {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const Q& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::parse(const std::string& decimal, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (decimal.empty() || mpfr_set_str(r.v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        fail(ErrorKind::ParseError, "not a decimal number: '" + decimal + "'");
    return r;
}

Q BigFloat::exact() const {
    if (mpfr_zero_p(v_)) return Q(0);
    if (!mpfr_number_p(v_)) fail(ErrorKind::InvalidArgument, "non-finite value");
    Z m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Q r(m);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

long BigFloat::log2_abs() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return static_cast<long>(mpfr_get_exp(v_)) - 1;
}

std::string BigFloat::hex() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.13Ra", v_) < 0) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string BigFloat::decimal(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

mpfr_prec_t pmin(const BigComplex& a, const BigComplex& b) { return std::min(a.prec(), b.prec()); }

} // namespace

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    BigComplex r(pmin(a, b));
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    BigComplex r(pmin(a, b));
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    mpfr_prec_t p = pmin(a, b);
    BigComplex r(p);
    BigFloat t(p + 8);
    mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
    return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    mpfr_prec_t p = pmin(a, b);
    BigFloat n(p + 16), t(p + 16);
    mpfr_sqr(n.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    if (mpfr_zero_p(n.get())) fail(ErrorKind::InvalidArgument, "complex division by zero");
    BigComplex conj(BigFloat(b.re), BigFloat(b.im));
    mpfr_neg(conj.im.get(), conj.im.get(), MPFR_RNDN);
    BigComplex r = a * conj;
    mpfr_div(r.re.get(), r.re.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), n.get(), MPFR_RNDN);
    return r;
}

BigComplex BigComplex::scale(const Q& c) const {
    BigComplex r(prec());
    mpfr_mul_q(r.re.get(), re.get(), c.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(r.im.get(), im.get(), c.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigComplex QuadraticTau::realize(mpfr_prec_t prec) const {
    if (im_sq <= 0) fail(ErrorKind::InvalidArgument, "tau must lie in the upper half plane");
    BigComplex t(prec);
    mpfr_set_q(t.re.get(), re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(t.im.get(), im_sq.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(t.im.get(), t.im.get(), MPFR_RNDN);
    return t;
}

QuadraticTau heegner_tau(long N) {
    if (N != 19 && N != 43 && N != 67 && N != 163)
        fail(ErrorKind::UnsupportedLevel, "no Heegner point configured for level " + std::to_string(N));
    // (-N + sqrt(-N)) / (2N) = -1/2 + i sqrt(1/(4N))
    std::string n = std::to_string(N);
    return QuadraticTau{make_q(-1, 2), make_q(1, 4 * N), "(-" + n + " + sqrt(-" + n + "))/" + std::to_string(2 * N)};
}

long tail_terms(double im_tau, mpfr_prec_t prec, long guard) {
    if (!(im_tau > 0)) fail(ErrorKind::InvalidArgument, "tau must lie in the upper half plane");
    // coefficients of all five forms are bounded by 1000 n^5
    const double l2r = -2 * M_PI * im_tau / std::log(2.0);
    const double target = -static_cast<double>(prec + guard);
    const double r = std::exp2(l2r);
    if (!(r < 1)) fail(ErrorKind::PrecisionUnreachable, "|q| is too close to 1");
    for (long T = 1; T <= (1L << 40); T = T < 64 ? T + 1 : T + T / 64) {
        double grow = r * std::pow(1.0 + 1.0 / static_cast<double>(T), 5);
        if (grow >= 1) continue;
        double bound = std::log2(1000.0) + 5 * std::log2(static_cast<double>(T)) + static_cast<double>(T) * l2r -
                       std::log2(1 - grow);
        if (bound < target) return T;
    }
    fail(ErrorKind::PrecisionUnreachable, "|q| is too close to 1");
}

namespace {

void add_scaled(BigComplex& acc, const BigComplex& x, const Z& c, BigFloat& tmp) {
    mpfr_mul_z(tmp.get(), x.re.get(), c.get_mpz_t(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul_z(tmp.get(), x.im.get(), c.get_mpz_t(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), tmp.get(), MPFR_RNDN);
}

// All five forms in one pass over q^n, n < T, at working precision wp.
std::array<BigComplex, 5> eval_all(long N, const BigComplex& tau, mpfr_prec_t wp, long T) {
    // q = exp(-2 pi Im tau) (cos 2 pi Re tau + i sin 2 pi Re tau)
    BigFloat twopi(wp), mod(wp);
    mpfr_const_pi(twopi.get(), MPFR_RNDN);
    mpfr_mul_2ui(twopi.get(), twopi.get(), 1, MPFR_RNDN);
    BigFloat im(wp), re(wp);
    mpfr_set(im.get(), tau.im.get(), MPFR_RNDN);
    mpfr_set(re.get(), tau.re.get(), MPFR_RNDN);
    mpfr_mul(mod.get(), twopi.get(), im.get(), MPFR_RNDN);
    mpfr_neg(mod.get(), mod.get(), MPFR_RNDN);
    mpfr_exp(mod.get(), mod.get(), MPFR_RNDN);
    BigFloat arg(wp);
    mpfr_mul(arg.get(), twopi.get(), re.get(), MPFR_RNDN);
    BigComplex q(wp);
    mpfr_sin_cos(q.im.get(), q.re.get(), arg.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), q.re.get(), mod.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), mod.get(), MPFR_RNDN);

    auto s1 = sigma_table(1, T), s3 = sigma_table(3, T), s5 = sigma_table(5, T);
    std::array<BigComplex, 6> acc{BigComplex(wp), BigComplex(wp), BigComplex(wp),
                                  BigComplex(wp), BigComplex(wp), BigComplex(wp)};  // s1 s3 s5 s1N s3N s5N
    BigComplex qn = q;
    BigFloat tmp(wp);
    for (long n = 1; n < T; ++n) {
        if (n > 1) qn = qn * q;
        add_scaled(acc[0], qn, s1[n], tmp);
        add_scaled(acc[1], qn, s3[n], tmp);
        add_scaled(acc[2], qn, s5[n], tmp);
        if (n % N == 0) {
            long m = n / N;
            add_scaled(acc[3], qn, s1[m], tmp);
            add_scaled(acc[4], qn, s3[m], tmp);
            add_scaled(acc[5], qn, s5[m], tmp);
        }
    }
    auto affine = [&](const Q& c0, const BigComplex& s, const Q& c) {
        BigComplex r = s.scale(c);
        mpfr_add_q(r.re.get(), r.re.get(), c0.get_mpq_t(), MPFR_RNDN);
        return r;
    };
    BigComplex e2n = affine(make_q(N - 1, 24), acc[0], Q(1)) - acc[3].scale(Q(N));
    return {affine(Q(1), acc[1], Q(240)), affine(Q(1), acc[2], Q(-504)), e2n, affine(Q(1), acc[4], Q(240)),
            affine(Q(1), acc[5], Q(-504))};
}

mpfr_prec_t working_prec(mpfr_prec_t prec, long T) {
    return prec + 64 + 16 + static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<double>(T) + 1)));
}

long choose_terms(const BigComplex& tau, mpfr_prec_t prec, long max_terms) {
    double im = mpfr_get_d(tau.im.get(), MPFR_RNDN);
    long T = tail_terms(im, prec);
    if (T > max_terms)
        fail(ErrorKind::PrecisionUnreachable, "needs " + std::to_string(T) + " terms, cap is " + std::to_string(max_terms));
    return T;
}

} // namespace

FormEvaluation eval_form(Form f, long N, const BigComplex& tau, mpfr_prec_t prec, std::optional<long> terms,
                         long max_terms) {
    if (N < 1) fail(ErrorKind::InvalidArgument, "level must be positive");
    if (mpfr_sgn(tau.im.get()) <= 0) fail(ErrorKind::InvalidArgument, "tau must lie in the upper half plane");
    long T = terms ? *terms : choose_terms(tau, prec, max_terms);
    if (T < 1) fail(ErrorKind::InvalidArgument, "term count must be positive");
    auto all = eval_all(N, tau, working_prec(prec, T), T);
    BigComplex v(prec);
    const BigComplex& src = all[static_cast<size_t>(f)];
    mpfr_set(v.re.get(), src.re.get(), MPFR_RNDN);
    mpfr_set(v.im.get(), src.im.get(), MPFR_RNDN);
    return FormEvaluation{std::move(v), T};
}

Q rational_reconstruct(const BigFloat& x, const Z& max_den) {
    if (max_den < 1) fail(ErrorKind::InvalidArgument, "max_den must be positive");
    const mpfr_prec_t prec = x.prec();
    const Q v = x.exact();
    Q gate(1), scaled_gate(1);
    mpq_div_2exp(gate.get_mpq_t(), gate.get_mpq_t(), static_cast<mp_bitcnt_t>(prec / 2));
    mpq_div_2exp(scaled_gate.get_mpq_t(), scaled_gate.get_mpq_t(), static_cast<mp_bitcnt_t>(prec / 4));
    // first convergent h/k of v with |v - h/k| < 2^(-prec/2) and k^2 |v - h/k| < 2^(-prec/4);
    // an irrational's convergents only reach k^2 |v - h/k| ~ 1/a_{n+1}
    Z num = v.get_num(), den = v.get_den();
    Z h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // h_{-2}, h_{-1}, k_{-2}, k_{-1}
    bool have = false;
    while (den != 0) {
        Z a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Z h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        Q c(h2, k2);
        c.canonicalize();
        Q err = abs(v - c);
        if (err < gate && err * Q(k2 * k2) < scaled_gate) return c;
        have = true;
        Z r = num - a * den;
        num = den;
        den = r;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    if (!have) fail(ErrorKind::ReconstructionFailed, "no convergent within the denominator bound");
    fail(ErrorKind::ReconstructionFailed, "no convergent with denominator <= 2^" + std::to_string(mpz_sizeinbase(max_den.get_mpz_t(), 2)) +
                                              " is within the 2^-" + std::to_string(prec / 2) + " gate");
}

Q rational_reconstruct(const BigFloat& x) {
    Z bound = 1;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(x.prec() / 4));
    return rational_reconstruct(x, bound);
}

namespace {

CMResult cm_from_tau(long N, const BigComplex& tau, const std::string& text, mpfr_prec_t prec, Normalization norm) {
    if (prec < 64) fail(ErrorKind::InvalidArgument, "precision below 64 bits");
    long T = choose_terms(tau, prec, 4000000);
    mpfr_prec_t wp = working_prec(prec, T);
    BigComplex t(wp);
    mpfr_set(t.re.get(), tau.re.get(), MPFR_RNDN);
    mpfr_set(t.im.get(), tau.im.get(), MPFR_RNDN);
    auto f = eval_all(N, t, wp, T);
    BigComplex e = f[2];
    if (norm == Normalization::Classical) e = e.scale(Q(-24));
    BigComplex e2 = e * e, e3 = e2 * e;
    std::array<BigComplex, 4> vals{(f[0] / e2).scale(make_q(-1, 48)), (f[1] / e3).scale(make_q(1, 864)),
                                   (f[3] / e2).scale(make_q(-1, 48)), (f[4] / e3).scale(make_q(1, 864))};
    CMResult res;
    res.level = N;
    res.tau = text;
    res.normalization = norm;
    res.terms_used = T;
    res.prec = prec;
    res.residual = BigFloat(prec);
    res.imag_residual = BigFloat(prec);
    BigFloat gate(prec);
    mpfr_set_ui_2exp(gate.get(), 1, -static_cast<mpfr_exp_t>(prec / 2), MPFR_RNDN);
    static const char* names[] = {"a4", "a6", "a4'", "a6'"};
    for (int i = 0; i < 4; ++i) {
        BigFloat im(prec);
        mpfr_abs(im.get(), vals[i].im.get(), MPFR_RNDN);
        if (mpfr_cmp(im.get(), gate.get()) >= 0)
            fail(ErrorKind::ImaginaryResidueTooLarge,
                 std::string("imaginary part of ") + names[i] + " is " + im.decimal(6) + " at tau = " + text);
        if (mpfr_cmp(im.get(), res.imag_residual.get()) > 0) res.imag_residual = im;
        BigFloat x(prec);
        mpfr_set(x.get(), vals[i].re.get(), MPFR_RNDN);
        res.quad[i] = rational_reconstruct(x);
        BigFloat d(res.quad[i], wp);
        mpfr_sub(d.get(), d.get(), vals[i].re.get(), MPFR_RNDN);
        mpfr_abs(d.get(), d.get(), MPFR_RNDN);
        if (mpfr_cmp(d.get(), res.residual.get()) > 0) {
            res.residual = BigFloat(prec);
            mpfr_set(res.residual.get(), d.get(), MPFR_RNDU);
        }
    }
    return res;
}

} // namespace

CMResult cm_invariants(long N, mpfr_prec_t prec, Normalization norm, const std::optional<QuadraticTau>& tau) {
    QuadraticTau t = tau ? *tau : heegner_tau(N);
    return cm_from_tau(N, t.realize(prec + 128), t.text, prec, norm);
}

CMResult cm_invariants_at(long N, const std::string& re, const std::string& im, mpfr_prec_t prec, Normalization norm) {
    BigComplex t(BigFloat::parse(re, prec + 128), BigFloat::parse(im, prec + 128));
    return cm_from_tau(N, t, re + " + " + im + "*i", prec, norm);
}

} // namespace x0n
