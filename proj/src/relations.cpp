#include "x0n/relations.hpp"

#include "columns.hpp"
#include "solver.hpp"
#include "x0n/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace x0n {

SolveConfig SolveConfig::from_env() {
    SolveConfig c;
    if (const char* b = std::getenv("X0N_MATRIX_BUDGET")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(b, &end, 10);
        if (end && *end == '\0' && v > 0) c.budget = v;
    }
    return c;
}

namespace {

void note(const SolveConfig& cfg, const std::string& s) {
    if (cfg.log) cfg.log(s);
}

std::vector<ColumnSpec> relation_columns(int d) {
    std::vector<ColumnSpec> cols;
    for (int t = d; t >= 0; --t)
        for (int i = t; i >= 0; --i) cols.push_back({i, t - i, 0});
    return cols;
}

// Kernel vector of the system; exact elimination for small systems, multimodular otherwise.
KernelResult solve_kernel(const ColumnSystem& sys, long rows, const SolveConfig& cfg) {
    KernelResult res;
    if (sys.size() <= cfg.exact_cutoff) {
        auto basis = nullspace(sys.exact_matrix(rows));
        res.nullity = basis.size();
        if (basis.size() == 1) {
            res.vector = basis[0];
            res.reconstructed = true;
        }
        return res;
    }
    ModularSystem ms;
    ms.cols = sys.size();
    ms.build = [&](const modp::Field& F, modp::Mat& m) { return sys.modular_matrix(F, rows, m); };
    return modular_kernel(ms);
}

size_t nullity_mod_p(const ColumnSystem& sys, long rows) {
    ModularSystem ms;
    ms.cols = sys.size();
    ms.build = [&](const modp::Field& F, modp::Mat& m) { return sys.modular_matrix(F, rows, m); };
    return modular_nullity(ms);
}

// True if sum v_c * column_c vanishes exactly on [vmin, vmin + rows).
bool vanishes_on(const QSeries& s, long vmin, long rows) {
    if (s.trunc() < vmin + rows)
        fail(ErrorKind::PrecisionExceeded, "verification needs O(q^" + std::to_string(vmin + rows) + "), have O(q^" +
                                               std::to_string(s.trunc()) + ")");
    return s.valuation() >= vmin + rows;
}

} // namespace

BiPoly find_plane_relation(const QSeries& f, const QSeries& g, int dmax, const SolveConfig& cfg) {
    if (f.is_zero() || g.is_zero()) fail(ErrorKind::InvalidArgument, "relation search needs nonzero series");
    for (int d = 1; d <= dmax; ++d) {
        ColumnSystem sys(f, g, nullptr, relation_columns(d));
        size_t U = sys.size();
        if (U > cfg.budget)
            fail(ErrorKind::BudgetExceeded, "relation degree " + std::to_string(d) + " needs " + std::to_string(U) +
                                                " unknowns, budget " + std::to_string(cfg.budget));
        long R = static_cast<long>(U) + cfg.margin;
        sys.require_rows(2 * R);
        size_t n1 = nullity_mod_p(sys, R);
        note(cfg, "relation d=" + std::to_string(d) + " unknowns=" + std::to_string(U) + " nullity=" + std::to_string(n1));
        if (n1 == 0) continue;
        size_t n2 = nullity_mod_p(sys, 2 * R);
        if (n2 == 0) continue;
        if (n2 > 1)
            fail(ErrorKind::AmbiguousRelation, "relation space at degree " + std::to_string(d) + " has dimension " +
                                                   std::to_string(n2) + " on the verification window");
        long solve_rows = n1 == 1 ? R : 2 * R;
        KernelResult k = solve_kernel(sys, solve_rows, cfg);
        if (!k.reconstructed) k = solve_kernel(sys, 2 * R, cfg);
        if (!k.reconstructed)
            fail(ErrorKind::NoRelationFound, "could not reconstruct the degree " + std::to_string(d) + " relation");
        BiPoly p;
        for (size_t c = 0; c < U; ++c) p.set(sys.spec(c).i, sys.spec(c).j, k.vector[c]);
        p = p.canonical();
        QSeries chk = eval_bipoly_series(p, sys.X_window(2 * R), sys.Y_window(2 * R));
        if (!vanishes_on(chk, sys.vmin(), 2 * R))
            fail(ErrorKind::NoRelationFound, "degree " + std::to_string(d) + " candidate failed exact verification");
        return p;
    }
    fail(ErrorKind::NoRelationFound, "no relation of total degree <= " + std::to_string(dmax));
}

namespace {

std::vector<ColumnSpec> expression_columns(int dn, int dd, int dy) {
    std::vector<ColumnSpec> cols;
    // denominator columns first so the pivot rule favours low denominators
    for (int i = dd; i >= 0; --i) cols.push_back({i, 0, 1});
    for (int t = dn; t >= 0; --t)
        for (int j = std::min(t, dy - 1); j >= 0; --j) cols.push_back({t - j, j, 0});
    return cols;
}

struct Split {
    BiPoly num, den;
};

template <typename V>
Split split_vector(const ColumnSystem& sys, const V& v) {
    Split s;
    for (size_t c = 0; c < sys.size(); ++c) {
        const auto& sp = sys.spec(c);
        if (v[c] == 0) continue;
        if (sp.t)
            s.den.set(sp.i, 0, -Q(v[c]));  // columns hold T*X^i, so P = -D*T
        else
            s.num.set(sp.i, sp.j, Q(v[c]));
    }
    return s;
}

} // namespace

RationalExpr express_in_generators(const QSeries& target, const QSeries& X, const QSeries& Y, const BiPoly& relation,
                                   int deg_num, int deg_den, const SolveConfig& cfg) {
    int dy = relation.deg_y();
    if (dy < 1) fail(ErrorKind::InvalidArgument, "relation must involve y");
    if (target.is_zero()) return RationalExpr::make(BiPoly(), BiPoly::constant(Q(1)));
    auto make_sys = [&](int dn, int dd) { return ColumnSystem(X, Y, &target, expression_columns(dn, dd, dy)); };
    auto rows_for = [&](const ColumnSystem& s) { return static_cast<long>(s.size()) + cfg.margin; };
    auto check_budget = [&](const ColumnSystem& s, int dn, int dd) {
        if (s.size() > cfg.budget)
            fail(ErrorKind::BudgetExceeded, "map ansatz (deg_num " + std::to_string(dn) + ", deg_den " + std::to_string(dd) +
                                                ") needs " + std::to_string(s.size()) + " unknowns, budget " +
                                                std::to_string(cfg.budget));
    };
    auto diag = [&](int k) { return std::make_pair(std::min(k + 1, deg_num), std::min(k, deg_den)); };
    auto nullity_at = [&](int k) {
        auto [dn, dd] = diag(k);
        ColumnSystem s = make_sys(dn, dd);
        check_budget(s, dn, dd);
        long R = rows_for(s);
        s.require_rows(R);
        size_t n = nullity_mod_p(s, R);
        note(cfg, "map search deg_num=" + std::to_string(dn) + " deg_den=" + std::to_string(dd) +
                      " unknowns=" + std::to_string(s.size()) + " nullity=" + std::to_string(n));
        return n;
    };

    // grow along the diagonal deg_num = deg_den + 1 until a solution appears
    int lo = -1, k = 0;
    size_t n = 0;
    for (;;) {
        n = nullity_at(k);
        if (n > 0) break;
        auto [dn, dd] = diag(k);
        if (dn >= deg_num && dd >= deg_den)
            fail(ErrorKind::NoExpressionFound, "no expression with deg_num <= " + std::to_string(deg_num) +
                                                   " and deg_den <= " + std::to_string(deg_den));
        lo = k;
        k += std::max(1, k / 4);
    }
    // kernel dimension along the diagonal grows by one per step past the corner
    int kmin = std::max(lo + 1, k - static_cast<int>(n) + 1);
    if (kmin < k) {
        if (nullity_at(kmin) != 1) {
            int a = lo + 1, b = k;  // smallest k in [a, b] with a solution
            while (a < b) {
                int mid = (a + b) / 2;
                if (nullity_at(mid) > 0)
                    b = mid;
                else
                    a = mid + 1;
            }
            kmin = a;
        }
    }
    // read the corner off the support of the diagonal solution
    auto [dn0, dd0] = diag(kmin);
    ColumnSystem s0 = make_sys(dn0, dd0);
    long R0 = rows_for(s0);
    s0.require_rows(R0);
    int g = dn0, delta = dd0;
    {
        modp::Field F(modp::primes(1)[0]);
        modp::Mat m;
        if (s0.modular_matrix(F, R0, m)) {
            auto e = modp::echelon(m, F);
            if (s0.size() - e.rank == 1) {
                auto v = modp::kernel_vector(m, e, e.free_cols.front(), F);
                g = -1;
                delta = -1;
                for (size_t c = 0; c < s0.size(); ++c) {
                    if (!v[c]) continue;
                    const auto& sp = s0.spec(c);
                    if (sp.t)
                        delta = std::max(delta, sp.i);
                    else
                        g = std::max(g, sp.i + sp.j);
                }
                g = std::max(g, 0);
                delta = std::max(delta, 0);
            }
        }
    }
    ColumnSystem sys = make_sys(g, delta);
    long R = rows_for(sys);
    sys.require_rows(2 * R);
    size_t n1 = nullity_mod_p(sys, R);
    if (n1 == 0) {
        // support read mod p was misleading; fall back to the diagonal point
        sys = make_sys(dn0, dd0);
        R = rows_for(sys);
        sys.require_rows(2 * R);
        n1 = nullity_mod_p(sys, R);
        g = dn0;
        delta = dd0;
    }
    size_t n2 = nullity_mod_p(sys, 2 * R);
    note(cfg, "map corner deg_num=" + std::to_string(g) + " deg_den=" + std::to_string(delta) +
                  " unknowns=" + std::to_string(sys.size()) + " nullity=" + std::to_string(n1) + "/" + std::to_string(n2));
    if (n2 == 0) fail(ErrorKind::NoExpressionFound, "solution did not survive the verification window");
    if (n2 > 1)
        fail(ErrorKind::AmbiguousExpression, "solution space of dimension " + std::to_string(n2) + " at deg_num " +
                                                 std::to_string(g) + ", deg_den " + std::to_string(delta));
    KernelResult kr = solve_kernel(sys, n1 == 1 ? R : 2 * R, cfg);
    if (!kr.reconstructed) kr = solve_kernel(sys, 2 * R, cfg);
    if (!kr.reconstructed) fail(ErrorKind::NoExpressionFound, "rational reconstruction of the map failed");
    Split sp = split_vector(sys, kr.vector);
    if (sp.den.is_zero()) fail(ErrorKind::NoExpressionFound, "solution has a zero denominator");
    RationalExpr ex = RationalExpr::make(sp.num, sp.den);
    QSeries Xw = sys.X_window(2 * R), Yw = sys.Y_window(2 * R), Tw = sys.T_window(2 * R);
    QSeries chk = eval_bipoly_series(ex.num, Xw, Yw) - Tw * eval_bipoly_series(ex.den, Xw, Yw);
    if (!vanishes_on(chk, sys.vmin(), 2 * R))
        fail(ErrorKind::NoExpressionFound, "candidate map failed exact verification: residual " + chk.to_display(3) +
                                               " num " + ex.num.to_string() + " den " + ex.den.to_string());
    return ex;
}

} // namespace x0n
