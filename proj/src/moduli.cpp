#include "x0n/moduli.hpp"

#include "x0n/errors.hpp"
#include "x0n/fixtures.hpp"

#include <algorithm>
#include <climits>

namespace x0n {

EllCurve EllCurve::make(const Q& A, const Q& B) {
    EllCurve E{A, B};
    if (E.discriminant_factor() == 0)
        fail(ErrorKind::SingularCurve, "y^2 = x^3 + (" + to_string(A) + ")x + (" + to_string(B) + ") is singular");
    return E;
}

Q j_invariant(const EllCurve& E) {
    Q d = E.discriminant_factor();
    if (d == 0) fail(ErrorKind::SingularCurve, "j of a singular curve");
    return 6912 * E.A * E.A * E.A / d;
}

EllCurve quadratic_twist(const EllCurve& E, const Z& D) {
    if (D == 0) fail(ErrorKind::InvalidArgument, "twist by 0");
    Q d(D);
    return EllCurve::make(d * d * E.A, d * d * d * E.B);
}

namespace {

bool rational_root(const Q& x, unsigned k, Q& out) {
    if (x < 0 && k % 2 == 0) return false;
    Z n = x.get_num(), d = x.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return false;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return false;
    out = Q(rn, rd);
    return true;
}

} // namespace

Z twist_factor(const EllCurve& E1, const EllCurve& E2) {
    if (j_invariant(E1) != j_invariant(E2))
        fail(ErrorKind::NotTwists, "curves have different j-invariants");
    const Q &A1 = E1.A, &B1 = E1.B, &A2 = E2.A, &B2 = E2.B;
    if (A1 != 0 && B1 != 0) {
        // A2 = D^2 u^4 A1, B2 = D^3 u^6 B1, so (B2 A1)/(B1 A2) = D u^2
        Q r = (B2 * A1) / (B1 * A2);
        Z D = squarefree_part(r);
        Q u2 = r / Q(D);
        if (!is_rational_square(u2) || A2 != Q(D * D) * u2 * u2 * A1)
            fail(ErrorKind::NotQuadraticTwist, "no quadratic twist relates the curves");
        return D;
    }
    if (B1 == 0) {
        // j = 1728: A2/A1 = D^2 u^4; D and -D give isomorphic twists, report the positive one
        Q r;
        if (!rational_root(A2 / A1, 2, r)) fail(ErrorKind::NotQuadraticTwist, "quartic twist, not quadratic");
        return abs(squarefree_part(r));
    }
    // j = 0: B2/B1 = D^3 u^6
    Q r = B2 / B1;
    Z D = squarefree_part(r);
    Q s, c;
    if (!rational_root(r / Q(D), 2, s)) fail(ErrorKind::NotQuadraticTwist, "sextic twist, not quadratic");
    s /= Q(D);  // s = +-u^3
    if (!rational_root(s, 3, c)) fail(ErrorKind::NotQuadraticTwist, "sextic twist, not quadratic");
    return D;
}

long psi(long N) {
    if (N < 1) fail(ErrorKind::InvalidArgument, "psi of a non-positive level");
    long r = N, n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r = r / p * (p + 1);
    }
    if (n > 1) r = r / n * (n + 1);
    return r;
}

int default_dmax(long N) { return static_cast<int>(psi(N) / 2 + 2); }

long default_order(int dmax) { return 4L * (dmax + 1) * (dmax + 1) + 64; }

Route route_for_level(long N) { return N == 163 ? Route::Heegner : Route::Algebraic; }

namespace {

void note(const SolveConfig& cfg, const std::string& s) {
    if (cfg.log) cfg.log(s);
}

constexpr int kUnboundedDegree = INT_MAX / 4;

long grown(long M) { return M + M / 2 + 64; }

} // namespace

CurveModel build_model(long N, const ModelOptions& opt) {
    if (N < 2) fail(ErrorKind::InvalidArgument, "level must be at least 2");
    const int dmax = opt.dmax > 0 ? opt.dmax : default_dmax(N);
    long M = opt.order > 0 ? opt.order : default_order(dmax);
    std::optional<BiPoly> relation;
    std::optional<RationalExpr> m4, m6;
    for (;;) {
        try {
            note(opt.solve, "level " + std::to_string(N) + ": expanding to O(q^" + std::to_string(M) + ")");
            InvariantQuadruple quad = invariant_quadruple(N, M);
            if (!relation) relation = find_plane_relation(quad.a4, quad.a6, dmax, opt.solve);
            if (!m4)
                m4 = express_in_generators(quad.a4p, quad.a4, quad.a6, *relation, kUnboundedDegree, kUnboundedDegree, opt.solve);
            if (!m6)
                m6 = express_in_generators(quad.a6p, quad.a4, quad.a6, *relation, kUnboundedDegree, kUnboundedDegree, opt.solve);
            // the relation holds on the whole window, not only on the solver's rows
            QSeries r = eval_bipoly_series(*relation, quad.a4, quad.a6);
            if (!r.is_zero())
                fail(ErrorKind::NoRelationFound, "relation fails at q^" + std::to_string(r.valuation()));
            CurveModel model;
            model.level = N;
            model.order = M;
            model.quad = std::move(quad);
            model.relation = *relation;
            model.map_a4p = *m4;
            model.map_a6p = *m6;
            return model;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExceeded || !opt.extend_order) throw;
            note(opt.solve, std::string("order too small (") + e.what() + "), growing");
            M = grown(M);
        }
    }
}

ExternalMaps build_external_maps(const InvariantQuadruple& quad, const QSeries& X, const QSeries& Y,
                                 const std::optional<BiPoly>& curve, const SolveConfig& cfg, int dmax) {
    ExternalMaps ex;
    if (curve) {
        QSeries r = eval_bipoly_series(*curve, X, Y);
        if (!r.is_zero())
            fail(ErrorKind::InconsistentPartial, "generators do not satisfy the given curve equation (first failure at q^" +
                                                     std::to_string(r.valuation()) + ")");
        ex.curve = *curve;
    } else {
        ex.curve = find_plane_relation(X, Y, dmax, cfg);
    }
    auto expr = [&](const QSeries& t) {
        return express_in_generators(t, X, Y, ex.curve, kUnboundedDegree, kUnboundedDegree, cfg);
    };
    ex.a4 = expr(quad.a4);
    ex.a6 = expr(quad.a6);
    ex.a4p = expr(quad.a4p);
    ex.a6p = expr(quad.a6p);
    return ex;
}

CurveModel build_yang_model(const ModelOptions& opt) {
    CurveModel model = build_model(11, opt);
    BootstrapBounds b;
    QSeries X = bootstrap_generator(fixtures::yang_x_partial(), model.quad, b, opt.solve);
    QSeries Y = bootstrap_generator(fixtures::yang_y_partial(), model.quad, b, opt.solve);
    model.external = build_external_maps(model.quad, X, Y, fixtures::yang_curve(), opt.solve);
    return model;
}

namespace {

IsogenyPair make_pair(long N, const std::array<Q, 2>& pt, const Q& a4, const Q& a6, const Q& a4p, const Q& a6p) {
    IsogenyPair p;
    p.level = N;
    p.point = pt;
    p.domain = EllCurve::make(a4, a6);
    p.codomain = EllCurve::make(a4p, a6p);
    return p;
}

std::string point_text(const Q& x, const Q& y) { return "(" + to_string(x) + ", " + to_string(y) + ")"; }

} // namespace

IsogenyPair evaluate_pair(const CurveModel& model, const Q& x, const Q& y) {
    if (model.relation.eval(x, y) != 0)
        fail(ErrorKind::PointNotOnCurve, point_text(x, y) + " is not on the level " + std::to_string(model.level) + " model");
    Q a4p = model.map_a4p.eval(x, y), a6p = model.map_a6p.eval(x, y);
    return make_pair(model.level, {x, y}, x, y, a4p, a6p);
}

IsogenyPair evaluate_pair_external(const CurveModel& model, const Q& X, const Q& Y) {
    if (!model.external) fail(ErrorKind::InvalidArgument, "model has no external generators");
    const ExternalMaps& ex = *model.external;
    if (ex.curve.eval(X, Y) != 0) fail(ErrorKind::PointNotOnCurve, point_text(X, Y) + " is not on the external model");
    Q a4 = ex.a4.eval(X, Y), a6 = ex.a6.eval(X, Y);
    return make_pair(model.level, {X, Y}, a4, a6, ex.a4p.eval(X, Y), ex.a6p.eval(X, Y));
}

IsogenyPair evaluate_pair_external(const CurveModel& model, const std::array<Q, 3>& XYZ) {
    if (XYZ[2] == 0)
        fail(ErrorKind::PointAtInfinity, "[" + to_string(XYZ[0]) + ":" + to_string(XYZ[1]) + ":0] is not in the affine chart");
    return evaluate_pair_external(model, XYZ[0] / XYZ[2], XYZ[1] / XYZ[2]);
}

IsogenyPair pair_from_invariants(long N, const std::array<Q, 4>& q) { return make_pair(N, {q[0], q[1]}, q[0], q[1], q[2], q[3]); }

namespace {

// isogeny-class index of a label: "121.c2" -> 2
long curve_index(const std::string& label) {
    size_t k = label.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(label[k - 1]))) --k;
    return std::stol(label.substr(k));
}

// Among catalog curves with E's j, the one with the smallest class index, then the smallest label.
std::pair<std::string, Z> match(const EllCurve& E, const Catalog& catalog, const char* which) {
    Q j = j_invariant(E);
    const RefCurve* best = nullptr;
    for (const auto& c : catalog.curves()) {
        if (c.j != j) continue;
        if (!best || std::make_pair(curve_index(c.label), c.label) < std::make_pair(curve_index(best->label), best->label))
            best = &c;
    }
    if (!best) fail(ErrorKind::UnknownCurve, std::string("no catalog curve has the ") + which + " j-invariant " + to_string(j));
    return {best->label, twist_factor(EllCurve::make(best->A, best->B), E)};
}

} // namespace

Identification identify(const IsogenyPair& pair, const Catalog& catalog) {
    auto [l, d] = match(pair.domain, catalog, "domain");
    auto [lp, dp] = match(pair.codomain, catalog, "codomain");
    return Identification{l, d, lp, dp};
}

} // namespace x0n
