#include "x0n/errors.hpp"
#include "x0n/fixtures.hpp"
#include "x0n/heegner.hpp"
#include "x0n/moduli.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace x0n;

namespace {

void expect_error(ErrorKind k, const std::function<void()>& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << kind_name(k);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), k) << e.what();
    }
}

BigFloat abs_of(const BigComplex& z) {
    BigFloat r(z.prec());
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Z cube(long x) { return Z(x) * x * x; }

} // namespace

TEST(Heegner, ReconstructsRandomRationals) {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<unsigned long> den(1, 1000000000000000000UL);
    std::uniform_int_distribution<long> num(-4000000000000000000L, 4000000000000000000L);
    int failures = 0;
    for (int it = 0; it < 1000; ++it) {
        Q x(Z(num(rng)), Z(den(rng)));
        x.canonicalize();
        try {
            if (rational_reconstruct(BigFloat(x, 256)) != x) ++failures;
        } catch (const Error&) {
            ++failures;
        }
    }
    EXPECT_EQ(failures, 0);
}

TEST(Heegner, RejectsPi) {
    BigFloat pi(256);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    expect_error(ErrorKind::ReconstructionFailed, [&] { rational_reconstruct(pi); });
    BigFloat pi4k(4000);
    mpfr_const_pi(pi4k.get(), MPFR_RNDN);
    expect_error(ErrorKind::ReconstructionFailed, [&] { rational_reconstruct(pi4k); });
}

TEST(Heegner, BigFloatFormatting) {
    BigFloat x(make_q(3, 4), 128);
    EXPECT_EQ(x.exact(), make_q(3, 4));
    EXPECT_EQ(x.hex(), "0xc.0000000000000p-4");
    EXPECT_EQ(x.log2_abs(), -1);
    EXPECT_EQ(BigFloat::parse("-2.5", 64).exact(), make_q(-5, 2));
    expect_error(ErrorKind::ParseError, [] { BigFloat::parse("1.2.3", 64); });
}

// E6 vanishes at i and E4 at exp(2 pi i/3).
TEST(Heegner, EisensteinZerosAtEllipticPoints) {
    const mpfr_prec_t prec = 600;
    BigComplex i(Q(0), Q(1), prec);
    EXPECT_LT(abs_of(eval_form(Form::E6, 1, i, prec).value).log2_abs(), -590);
    BigComplex rho = QuadraticTau{make_q(-1, 2), make_q(3, 4), "rho"}.realize(prec);
    EXPECT_LT(abs_of(eval_form(Form::E4, 1, rho, prec).value).log2_abs(), -590);
    EXPECT_GE(abs_of(eval_form(Form::E4, 1, i, prec).value).log2_abs(), 0);
}

TEST(Heegner, TailBoundHolds) {
    const mpfr_prec_t prec = 800;
    BigComplex tau = heegner_tau(19).realize(prec + 64);
    for (Form f : {Form::E4, Form::E6, Form::E2N, Form::E4N, Form::E6N}) {
        FormEvaluation a = eval_form(f, 19, tau, prec);
        FormEvaluation b = eval_form(f, 19, tau, prec, a.terms + 200);
        BigComplex d = a.value - b.value;
        EXPECT_LT(abs_of(d).log2_abs(), -static_cast<long>(prec) + abs_of(a.value).log2_abs() + 8);
        // stopping at a third of the terms is visibly off
        FormEvaluation c = eval_form(f, 19, tau, prec, a.terms / 3);
        EXPECT_GT(abs_of(c.value - b.value).log2_abs(), -static_cast<long>(prec) / 2);
    }
    expect_error(ErrorKind::PrecisionUnreachable, [&] { eval_form(Form::E4, 19, tau, prec, std::nullopt, 50); });
    EXPECT_GT(tail_terms(0.01, 4000), tail_terms(0.1, 4000));
}

TEST(Heegner, CmLevelsMatchTableThree) {
    const Z j19 = -cube(96), j43 = -cube(960), j67 = -cube(5280);
    const std::map<long, Z> jcm = {{19, j19}, {43, j43}, {67, j67}};
    for (const auto& r : fixtures::table3()) {
        if (!jcm.count(r.level)) continue;
        CMResult res = cm_invariants(r.level, 1000);
        EXPECT_EQ(res.quad, *r.values) << r.level;
        EXPECT_EQ(j_invariant(EllCurve::make(res.quad[0], res.quad[1])), Q(jcm.at(r.level)));
        EXPECT_EQ(j_invariant(EllCurve::make(res.quad[2], res.quad[3])), Q(jcm.at(r.level)));
        EXPECT_LT(res.imag_residual.log2_abs(), -500);
    }
}

TEST(Heegner, DecimalTauEntryPoint) {
    BigFloat im(2000);
    mpfr_set_q(im.get(), make_q(1, 76).get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(im.get(), im.get(), MPFR_RNDN);
    CMResult res = cm_invariants_at(19, "-0.5", im.decimal(500), 1000);
    CMResult ref = cm_invariants(19, 1000);
    EXPECT_EQ(res.quad, ref.quad);
    expect_error(ErrorKind::ParseError, [] { cm_invariants_at(19, "x", "0.1", 200); });
}

TEST(Heegner, NonCmPointIsRejected) {
    // a generic point: the invariants are not rational, or not real
    try {
        cm_invariants(19, 512, Normalization::Closed, QuadraticTau{make_q(1, 7), make_q(1, 50), "generic"});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::ImaginaryResidueTooLarge || e.kind() == ErrorKind::ReconstructionFailed);
    }
    expect_error(ErrorKind::UnsupportedLevel, [] { heegner_tau(11); });
}

TEST(Heegner, Level163ClassicalNormalisation) {
    CMResult res = cm_invariants(163, 4000, Normalization::Classical);
    EXPECT_EQ(res.quad, fixtures::level163_invariants());
    EXPECT_LT(res.imag_residual.log2_abs(), -1994);
    IsogenyPair p = pair_from_invariants(163, res.quad);
    EXPECT_EQ(j_invariant(p.domain), Q(-cube(640320)));
    // the two normalisations differ by e -> -24 e
    CMResult closed = cm_invariants(163, 4000, Normalization::Closed);
    EXPECT_EQ(closed.quad[0], res.quad[0] * 576);
    EXPECT_EQ(closed.quad[1], res.quad[1] * -13824);
}
