#ifndef X0N_RELATIONS_HPP
#define X0N_RELATIONS_HPP

#include "x0n/bipoly.hpp"
#include "x0n/forms.hpp"
#include "x0n/linalg.hpp"

#include <functional>
#include <string>

namespace x0n {

struct SolveConfig {
    long margin = 10;
    // Largest number of unknowns any single linear system may have.
    size_t budget = 1500;
    // Systems with at most this many unknowns are solved by exact elimination;
    // larger ones by the multimodular solver, always followed by exact verification.
    size_t exact_cutoff = 64;
    std::function<void(const std::string&)> log;

    // budget from X0N_MATRIX_BUDGET when set
    static SolveConfig from_env();
};

// Minimal-total-degree P with P(f, g) = 0, for d = 1..dmax. Canonical form.
BiPoly find_plane_relation(const QSeries& f, const QSeries& g, int dmax, const SolveConfig& cfg = {});

// P(X,Y)/D(X) with deg_y P < deg_y(relation); deg_num, deg_den cap the total degrees.
RationalExpr express_in_generators(const QSeries& target, const QSeries& X, const QSeries& Y, const BiPoly& relation,
                                   int deg_num, int deg_den, const SolveConfig& cfg = {});

struct BootstrapBounds {
    int max_pole = 12;    // m: largest power of the discriminant in the denominator
    int max_extra = 6;    // w: extra weight allowed in the numerator
    long order = 0;       // target order of the output; 0 means the quadruple's order
};

// Extend a partially known function on X0(N) to the quadruple's full order by
// writing it as G(a4, a6, a4', a6') / h^m with h = 4 a4^3 + 27 a6^2.
QSeries bootstrap_generator(const QSeries& partial, const InvariantQuadruple& quad, const BootstrapBounds& bounds = {},
                            const SolveConfig& cfg = {});

} // namespace x0n

#endif // X0N_RELATIONS_HPP
