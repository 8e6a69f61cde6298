#include "x0n/catalog.hpp"
#include "x0n/errors.hpp"
#include "x0n/fixtures.hpp"
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

Z random_squarefree(std::mt19937_64& rng) {
    static const long primes[] = {2, 3, 5, 7, 11, 13, 163};
    Z d = rng() % 2 ? -1 : 1;
    for (long p : primes)
        if (rng() % 3 == 0) d *= p;
    return d;
}

const CurveModel& model11() {
    static const CurveModel m = build_model(11);
    return m;
}

const CurveModel& yang() {
    static const CurveModel m = build_yang_model();
    return m;
}

} // namespace

TEST(Moduli, JInvariantAndSingularity) {
    EXPECT_EQ(j_invariant(EllCurve::make(Q(1), Q(0))), 1728);
    EXPECT_EQ(j_invariant(EllCurve::make(Q(0), Q(1))), 0);
    expect_error(ErrorKind::SingularCurve, [] { EllCurve::make(Q(-3), Q(2)); });
    expect_error(ErrorKind::SingularCurve, [] { EllCurve::make(Q(0), Q(0)); });
}

TEST(Moduli, TwistFactorRecoversRandomTwists) {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        Q A = oracle::random_rational(rng, 50, 9), B = oracle::random_rational(rng, 50, 9);
        if (it % 10 == 1) A = 0;
        if (it % 10 == 2) B = 0;
        if (A == 0 && B == 0) B = 1;
        if (4 * A * A * A + 27 * B * B == 0) continue;
        EllCurve E = EllCurve::make(A, B);
        Z D = random_squarefree(rng);
        Q u = oracle::random_rational(rng, 5, 5);
        if (u == 0) u = 2;
        EllCurve T = quadratic_twist(E, D);
        EllCurve Tu = EllCurve::make(u * u * u * u * T.A, u * u * u * u * u * u * T.B);
        Z got = twist_factor(E, Tu);
        if (B == 0)
            EXPECT_EQ(got, abs(D));
        else
            EXPECT_EQ(got, D) << to_string(A) << " " << to_string(B);
        EXPECT_EQ(j_invariant(Tu), j_invariant(E));
    }
}

TEST(Moduli, TwistFactorErrors) {
    EllCurve E = EllCurve::make(Q(-1), Q(1));
    expect_error(ErrorKind::NotTwists, [&] { twist_factor(E, EllCurve::make(Q(-2), Q(1))); });
    expect_error(ErrorKind::NotQuadraticTwist, [] { twist_factor(EllCurve::make(Q(1), Q(0)), EllCurve::make(Q(2), Q(0))); });
    expect_error(ErrorKind::NotQuadraticTwist, [] { twist_factor(EllCurve::make(Q(0), Q(1)), EllCurve::make(Q(0), Q(2))); });
    expect_error(ErrorKind::InvalidArgument, [&] { quadratic_twist(E, 0); });
}

TEST(Moduli, LevelArithmetic) {
    EXPECT_EQ(psi(11), 12);
    EXPECT_EQ(psi(27), 36);
    EXPECT_EQ(psi(14), 24);
    EXPECT_EQ(psi(163), 164);
    EXPECT_EQ(route_for_level(163), Route::Heegner);
    EXPECT_EQ(route_for_level(67), Route::Algebraic);
    expect_error(ErrorKind::InvalidArgument, [] { build_model(1); });
}

TEST(Moduli, GenusZeroLevelRunsThroughThePipeline) {
    CurveModel m = build_model(2);
    EXPECT_TRUE(eval_bipoly_series(m.relation, m.quad.a4, m.quad.a6).is_zero());
    EXPECT_TRUE(m.map_a4p.eval(m.quad.a4, m.quad.a6).agrees_with(m.quad.a4p));
    EXPECT_TRUE(m.map_a6p.eval(m.quad.a4, m.quad.a6).agrees_with(m.quad.a6p));
}

TEST(Moduli, LevelElevenModelIsSelfConsistent) {
    const CurveModel& m = model11();
    EXPECT_TRUE(m.relation == fixtures::level11_relation() || m.relation == -fixtures::level11_relation());
    EXPECT_TRUE(m.map_a4p.eval(m.quad.a4, m.quad.a6).agrees_with(m.quad.a4p));
    EXPECT_TRUE(m.map_a6p.eval(m.quad.a4, m.quad.a6).agrees_with(m.quad.a6p));
}

TEST(Moduli, LevelElevenRowsOfTableThree) {
    for (const auto& r : fixtures::table3()) {
        if (r.level != 11) continue;
        const auto& v = *r.values;
        IsogenyPair p = evaluate_pair(model11(), v[0], v[1]);
        EXPECT_EQ(p.codomain.A, v[2]);
        EXPECT_EQ(p.codomain.B, v[3]);
    }
    expect_error(ErrorKind::PointNotOnCurve, [] { evaluate_pair(model11(), Q(1), Q(1)); });
}

TEST(Moduli, YangMapsAreThePrintedPolynomials) {
    const ExternalMaps& ex = *yang().external;
    const auto& ym = fixtures::yang_map();
    BiPoly Y = BiPoly::y();
    RationalExpr a4 = RationalExpr::make(ym.A_Y * Y + ym.A_X, ym.Q.pow(2)).canonical();
    RationalExpr a6 = RationalExpr::make(ym.B_Y * Y + ym.B_X, ym.Q.pow(3)).canonical();
    EXPECT_EQ(ex.a4.canonical(), a4);
    EXPECT_EQ(ex.a6.canonical(), a6);
    EXPECT_EQ(ex.curve, fixtures::yang_curve());
}

TEST(Moduli, TableOneAndFrickeDuality) {
    const auto& rows = fixtures::table1();
    std::vector<IsogenyPair> pairs;
    for (const auto& r : rows) {
        IsogenyPair p = evaluate_pair_external(yang(), (*r.point)[0], (*r.point)[1]);
        EXPECT_EQ(p.domain.A, (*r.values)[0]);
        EXPECT_EQ(p.domain.B, (*r.values)[1]);
        EXPECT_EQ(p.codomain.A, (*r.values)[2]);
        EXPECT_EQ(p.codomain.B, (*r.values)[3]);
        Identification id = identify(p, Catalog::embedded());
        EXPECT_EQ(id.label, r.label);
        EXPECT_EQ(id.label_p, r.label_p);
        pairs.push_back(p);
    }
    EXPECT_EQ(j_invariant(pairs[0].codomain), j_invariant(pairs[1].domain));
    EXPECT_EQ(j_invariant(pairs[1].codomain), j_invariant(pairs[0].domain));
    // the third point is fixed by the involution up to twist
    EXPECT_EQ(j_invariant(pairs[2].codomain), j_invariant(pairs[2].domain));
}

TEST(Moduli, ExternalChartErrors) {
    expect_error(ErrorKind::PointAtInfinity, [] { evaluate_pair_external(yang(), std::array<Q, 3>{Q(1), Q(-1), Q(0)}); });
    expect_error(ErrorKind::PointNotOnCurve, [] { evaluate_pair_external(yang(), Q(0), Q(0)); });
    auto same = evaluate_pair_external(yang(), std::array<Q, 3>{Q(10), Q(10), Q(2)});
    EXPECT_EQ(same.domain, evaluate_pair_external(yang(), Q(5), Q(5)).domain);
    expect_error(ErrorKind::InvalidArgument, [] { evaluate_pair_external(model11(), Q(5), Q(5)); });
}

TEST(Moduli, ExternalMapsRejectAWrongCurve) {
    const CurveModel& y = yang();
    QSeries X = bootstrap_generator(fixtures::yang_x_partial(), y.quad);
    QSeries Y = bootstrap_generator(fixtures::yang_y_partial(), y.quad);
    BiPoly wrong = fixtures::yang_curve() + BiPoly::constant(Q(1));
    expect_error(ErrorKind::InconsistentPartial, [&] { build_external_maps(y.quad, X, Y, wrong, {}); });
    // identity generators give identity maps
    ExternalMaps id = build_external_maps(y.quad, y.quad.a4, y.quad.a6, std::nullopt, {});
    EXPECT_EQ(id.a4.canonical(), RationalExpr::identity_x());
    EXPECT_EQ(id.a6.canonical(), RationalExpr::make(BiPoly::y(), BiPoly::constant(Q(1))).canonical());
}

TEST(Moduli, IdentifyPrefersTheSmallestClassIndex) {
    Catalog c = Catalog::embedded();
    // 121.a1 and 121.a2 are not twists of each other; a twist of a1 lands on a1
    RefCurve a1 = *c.find("121.a1");
    IsogenyPair p;
    p.domain = quadratic_twist(EllCurve::make(a1.A, a1.B), Z(-7));
    p.codomain = EllCurve::make(a1.A, a1.B);
    Identification id = identify(p, c);
    EXPECT_EQ(id.label, "121.a1");
    EXPECT_EQ(id.D, -7);
    EXPECT_EQ(id.D_p, 1);
    p.codomain = EllCurve::make(Q(1), Q(1));
    expect_error(ErrorKind::UnknownCurve, [&] { identify(p, c); });
}
