#include "x0n/catalog.hpp"
#include "x0n/forms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace x0n;

namespace {

QSeries from_poly(const oracle::Poly& p) { return QSeries::make(0, p, static_cast<long>(p.size())); }

} // namespace

TEST(Forms, BernoulliNumbers) {
    EXPECT_EQ(bernoulli(2), make_q(1, 6));
    EXPECT_EQ(bernoulli(4), make_q(-1, 30));
    EXPECT_EQ(bernoulli(12), make_q(-691, 2730));
    for (long k = 2; k <= 30; k += 2) EXPECT_EQ(bernoulli(k), oracle::bernoulli(k)) << k;
}

TEST(Forms, DivisorSums) {
    auto t = sigma_table(3, 200);
    for (long n = 1; n < 200; ++n) {
        EXPECT_EQ(t[n], oracle::divisor_sum(3, n));
        EXPECT_EQ(sigma(5, n), oracle::divisor_sum(5, n));
    }
}

TEST(Forms, EisensteinAgainstOracle) {
    for (long k : {4, 6, 8, 10, 12}) {
        QSeries e = eisenstein(k, 80);
        oracle::Poly want = oracle::eisenstein(k, 80);
        for (long n = 0; n < 80; ++n) ASSERT_EQ(e.coefficient(n), want[n]) << "k=" << k << " n=" << n;
    }
    EXPECT_EQ(eisenstein(4, 3).coefficient(2), 2160);
    EXPECT_EQ(eisenstein(6, 3).coefficient(1), -504);
}

TEST(Forms, E2NAgainstOracle) {
    for (long N : {2, 11, 37}) {
        QSeries e = e2N(N, 120);
        oracle::Poly want = oracle::e2N(N, 120);
        for (long n = 0; n < 120; ++n) ASSERT_EQ(e.coefficient(n), want[n]);
    }
}

TEST(Forms, DeltaIsTheProduct) {
    QSeries d = delta(200);
    oracle::Poly want = oracle::delta_product(200);
    for (long n = 0; n < 200; ++n) ASSERT_EQ(d.coefficient(n), want[n]);
    EXPECT_EQ(d.coefficient(2), -24);
    EXPECT_EQ(d.coefficient(11), 534612);
}

TEST(Forms, RamanujanIdentity) {
    QSeries e4 = eisenstein(4, 200), e6 = eisenstein(6, 200);
    QSeries lhs = e4.pow(3) - e6 * e6;
    QSeries rhs = from_poly(oracle::delta_product(200)).scale(Q(1728));
    EXPECT_EQ(lhs.trunc(), 200);
    EXPECT_TRUE(lhs == rhs);
}

TEST(Forms, LevelElevenInvariantsLeadingTerms) {
    InvariantQuadruple q = invariant_quadruple(11, 6);
    const Q a4[] = {make_q(-3, 25), make_q(-3528, 125), make_q(-75816, 625), make_q(1097856, 3125), make_q(593496, 3125),
                    make_q(-106231824, 78125)};
    for (long n = 0; n < 6; ++n) EXPECT_EQ(q.a4.coefficient(n), a4[n]) << n;
}

// j(tau) from both (a4, a6) and (a4', a6'), against E4^3/Delta and E4(N tau)^3/Delta(N tau).
TEST(Forms, JIdentitiesAtSporadicLevels) {
    const long M = 100;
    QSeries e4 = eisenstein(4, M + 2), d = delta(M + 2);
    QSeries j = e4.pow(3) / d;
    for (long N : sporadic_levels()) {
        if (N > 67) continue;
        InvariantQuadruple q = invariant_quadruple(N, M);
        QSeries h = q.a4.pow(3).scale(Q(4)) + (q.a6 * q.a6).scale(Q(27));
        QSeries jd = q.a4.pow(3).scale(Q(6912)) / h;
        EXPECT_TRUE(jd.agrees_with(j)) << N;
        EXPECT_GE(jd.trunc(), 50) << N;
        QSeries hp = q.a4p.pow(3).scale(Q(4)) + (q.a6p * q.a6p).scale(Q(27));
        QSeries jc = q.a4p.pow(3).scale(Q(6912)) / hp;
        EXPECT_TRUE(jc.agrees_with(j.substitute_qN(N))) << N;
    }
}

TEST(Forms, InvariantsOfTheGenusZeroLevelTwo) {
    InvariantQuadruple q = invariant_quadruple(2, 30);
    oracle::Poly e = oracle::e2N(2, 30), e4 = oracle::eisenstein(4, 30);
    oracle::Poly want = oracle::mul(e4, oracle::inverse(oracle::mul(e, e, 30), 30), 30);
    for (long n = 0; n < 30; ++n) EXPECT_EQ(q.a4.coefficient(n), -want[n] / 48);
}
