#ifndef X0N_MODULI_HPP
#define X0N_MODULI_HPP

#include "x0n/bipoly.hpp"
#include "x0n/catalog.hpp"
#include "x0n/forms.hpp"
#include "x0n/relations.hpp"

#include <array>
#include <optional>
#include <string>

namespace x0n {

// y^2 = x^3 + A x + B
struct EllCurve {
    Q A, B;
    static EllCurve make(const Q& A, const Q& B);  // SingularCurve
    Q discriminant_factor() const { return 4 * A * A * A + 27 * B * B; }
    friend bool operator==(const EllCurve& a, const EllCurve& b) { return a.A == b.A && a.B == b.B; }
};

Q j_invariant(const EllCurve& E);
EllCurve quadratic_twist(const EllCurve& E, const Z& D);
// Squarefree D with E2 isomorphic over Q to the twist of E1 by D. NotTwists, NotQuadraticTwist.
Z twist_factor(const EllCurve& E1, const EllCurve& E2);

struct Identification {
    std::string label;
    Z D;
    std::string label_p;
    Z D_p;
};

struct IsogenyPair {
    long level = 0;
    std::array<Q, 2> point;
    EllCurve domain, codomain;
    std::optional<Identification> identification;
};

// a4, a6, a4', a6' as functions of user-supplied generators X, Y.
struct ExternalMaps {
    BiPoly curve;  // relation of (X, Y)
    RationalExpr a4, a6, a4p, a6p;
};

struct CurveModel {
    long level = 0;
    long order = 0;
    InvariantQuadruple quad;
    BiPoly relation;  // in (x, y) = (a4, a6)
    RationalExpr map_a4p, map_a6p;
    std::optional<ExternalMaps> external;
};

struct ModelOptions {
    long order = 0;  // 0: 4 (dmax + 1)^2 + 64
    int dmax = 0;    // 0: psi(N)/2 + 2
    bool extend_order = true;  // grow the order when a solve runs out of coefficients
    SolveConfig solve;
};

long psi(long N);
int default_dmax(long N);
long default_order(int dmax);

enum class Route { Algebraic, Heegner };
// 163 goes through the Heegner point; everything else through build_model.
Route route_for_level(long N);

// Relation of (a4, a6) and the primed invariants as functions of (a4, a6), all verified on the window.
CurveModel build_model(long N, const ModelOptions& opt = {});

// Expresses a4, a6, a4', a6' in generators X, Y. When `curve` is given it is checked
// against the series rather than searched for.
ExternalMaps build_external_maps(const InvariantQuadruple& quad, const QSeries& X, const QSeries& Y,
                                 const std::optional<BiPoly>& curve, const SolveConfig& cfg, int dmax = 12);

// Yang generators of X0(11) bootstrapped from their printed coefficients, plus the maps.
CurveModel build_yang_model(const ModelOptions& opt = {});

IsogenyPair evaluate_pair(const CurveModel& model, const Q& x, const Q& y);
IsogenyPair evaluate_pair_external(const CurveModel& model, const Q& X, const Q& Y);
// Projective point [X:Y:Z] of the external model; Z = 0 raises PointAtInfinity.
IsogenyPair evaluate_pair_external(const CurveModel& model, const std::array<Q, 3>& XYZ);

// Pair from known invariants (the Heegner route), checked for nonsingularity.
IsogenyPair pair_from_invariants(long N, const std::array<Q, 4>& quad);

// Matches both curves against catalog entries with the same j. UnknownCurve.
Identification identify(const IsogenyPair& pair, const Catalog& catalog);

} // namespace x0n

#endif // X0N_MODULI_HPP
