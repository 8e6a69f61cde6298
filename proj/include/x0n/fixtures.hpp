#ifndef X0N_FIXTURES_HPP
#define X0N_FIXTURES_HPP

// Published data used by the table command and the tests.

#include "x0n/bipoly.hpp"
#include "x0n/rational.hpp"
#include "x0n/series.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace x0n::fixtures {

struct TableRow {
    long level;
    std::string point_text;                  // as printed, e.g. "(5, -6)" or "[1:-1:0]"
    std::optional<std::array<Q, 2>> point;   // affine model point, if printed as one
    std::optional<std::array<Q, 4>> values;  // (a4, a6; a4', a6'), absent when printed elsewhere
    std::string label, label_p;
    std::vector<Z> D;    // accepted twist factors of the domain; more than one means the source disagrees with itself
    std::vector<Z> D_p;
};

const std::vector<TableRow>& table1();
const std::vector<TableRow>& table3();

// The invariants of the level 163 row.
const std::array<Q, 4>& level163_invariants();

// The plane relation of a4, a6 at level 11, as printed.
const BiPoly& level11_relation();

// Yang's model of X0(11): generators X, Y through their printed coefficients,
// the curve equation, and the map to (a4, a6).
QSeries yang_x_partial();
QSeries yang_y_partial();
const BiPoly& yang_curve();  // in (x, y) = (X, Y)
struct YangMap {
    BiPoly Q, A_Y, A_X, B_Y, B_X;  // univariate in x
};
const YangMap& yang_map();
const std::vector<std::array<Q, 2>>& yang_points();

// The cusp-form basis x0..x4 of S2(Gamma0(67)) to O(q^10), the three quadrics and the point.
const std::vector<QSeries>& x67_basis();
struct Quadric {
    std::vector<std::pair<std::array<int, 2>, long>> terms;  // c * x_a * x_b
};
const std::vector<Quadric>& x67_quadrics();
const std::array<long, 5>& x67_point();

} // namespace x0n::fixtures

#endif // X0N_FIXTURES_HPP
