#include "x0n/errors.hpp"
#include "x0n/relations.hpp"

#include <array>

namespace x0n {

namespace {

using Exps = std::array<int, 4>;  // powers of a4, a6, a4', a6'
std::vector<Exps> monomials_up_to(int W) {
    std::vector<Exps> out;
    for (int b = 0; 3 * b <= W; ++b)
        for (int d = 0; 3 * (b + d) <= W; ++d)
            for (int a = 0; 3 * (b + d) + 2 * a <= W; ++a)
                for (int c = 0; 3 * (b + d) + 2 * (a + c) <= W; ++c) out.push_back({a, b, c, d});
    return out;
}

long psi(long N) {
    long r = N, n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r = r / p * (p + 1);
    }
    if (n > 1) r = r / n * (n + 1);
    return r;
}

bool is_prime_level(long N) {
    if (N < 2) return false;
    for (long p = 2; p * p <= N; ++p)
        if (N % p == 0) return false;
    return true;
}

// Monomials in four series, all truncated to one order, with cached powers.
class MonomialEval {
public:
    MonomialEval(std::array<QSeries, 4> base, long order) : order_(order) {
        for (int k = 0; k < 4; ++k) base_[k] = base[k].truncate(order);
    }
    QSeries eval(const Exps& e) {
        QSeries r = QSeries::constant(Q(1), order_);
        for (int k = 0; k < 4; ++k)
            if (e[k]) r = r * power(k, e[k]);
        return r;
    }

private:
    const QSeries& power(int k, int n) {
        auto& v = pows_[k];
        if (v.empty()) v.push_back(base_[k]);
        while (static_cast<int>(v.size()) < n) v.push_back(v.back() * base_[k]);
        return v[n - 1];
    }
    long order_;
    std::array<QSeries, 4> base_;
    std::array<std::vector<QSeries>, 4> pows_;
};

} // namespace

QSeries bootstrap_generator(const QSeries& partial, const InvariantQuadruple& quad, const BootstrapBounds& bounds,
                            const SolveConfig& cfg) {
    if (partial.is_zero()) fail(ErrorKind::InconsistentPartial, "partial series is zero on its window");
    const long N = quad.level;
    const long v = partial.valuation(), t = partial.trunc();
    const int k = static_cast<int>(std::max(0L, -v));
    const long M = quad.a4.trunc();
    const QSeries h = quad.a4.pow(3).scale(Q(4)) + quad.a6.pow(2).scale(Q(27));
    // the same four functions expanded at the cusp 0 through the Fricke involution
    const Z N2 = Z(N) * N, N3 = N2 * N;
    std::array<QSeries, 4> fricke{quad.a4p.scale(Q(N2)), quad.a6p.scale(Q(-N3)), quad.a4.scale(Q(1) / Q(N2)),
                                  quad.a6.scale(Q(-1) / Q(N3))};
    std::array<QSeries, 4> at_inf{quad.a4, quad.a6, quad.a4p, quad.a6p};
    const long extra_rows = 24;

    for (int s = 0; s <= bounds.max_pole + bounds.max_extra; ++s) {
        for (int w = 0; w <= std::min(s, bounds.max_extra); ++w) {
            int m = s - w;
            if (m < k || m > bounds.max_pole) continue;
            long cusp_rows = N * m;
            long match_hi = t + m;  // partial * h^m is known below this exponent
            if (match_hi <= 0) continue;
            long order = std::max(cusp_rows, match_hi) + extra_rows;
            if (order > M)
                fail(ErrorKind::PrecisionExceeded, "bootstrap needs the quadruple to O(q^" + std::to_string(order) + ")");
            auto mons = monomials_up_to(6 * m + w);
            if (mons.size() > cfg.budget)
                fail(ErrorKind::BudgetExceeded, "bootstrap ansatz needs " + std::to_string(mons.size()) + " unknowns");
            if (cfg.log)
                cfg.log("bootstrap m=" + std::to_string(m) + " w=" + std::to_string(w) +
                        " unknowns=" + std::to_string(mons.size()));
            MonomialEval A(at_inf, order), B(fricke, std::max(cusp_rows, 1L));
            std::vector<QSeries> acol, bcol;
            for (auto& e : mons) {
                acol.push_back(A.eval(e));
                if (cusp_rows > 0) bcol.push_back(B.eval(e));
            }
            QSeries hm = h.truncate(order).pow(m);
            QSeries ph = partial * hm;
            size_t U = mons.size();
            QMatrix rows;
            for (long r = 0; r < cusp_rows; ++r) {
                std::vector<Q> row(U + 1);
                for (size_t c = 0; c < U; ++c) row[c] = bcol[c].coefficient(r);
                rows.push_back(std::move(row));
            }
            for (long r = 0; r < match_hi; ++r) {
                std::vector<Q> row(U + 1);
                for (size_t c = 0; c < U; ++c) row[c] = acol[c].coefficient(r);
                row[U] = -ph.coefficient(r);
                rows.push_back(std::move(row));
            }
            // solvable iff the lambda column (last) is not a pivot
            auto solution = kernel_vector_with(rows, U);
            if (!solution) continue;
            const std::vector<Q>* sol = &*solution;

            bool unique = is_prime_level(N) && t * 6 > static_cast<long>(w) * psi(N);
            if (!unique) {
                QMatrix hom, ext;
                for (auto& r : rows) hom.emplace_back(r.begin(), r.end() - 1);
                ext = hom;
                for (long r = match_hi; r < order; ++r) {
                    std::vector<Q> row(U);
                    for (size_t c = 0; c < U; ++c) row[c] = acol[c].coefficient(r);
                    ext.push_back(std::move(row));
                }
                if (rank(hom) != rank(ext))
                    fail(ErrorKind::AmbiguousExpression,
                         "partial series does not determine the function (m=" + std::to_string(m) + ", w=" + std::to_string(w) + ")");
            }
            // G over the full window, only for monomials that occur
            MonomialEval full(at_inf, M);
            QSeries G = QSeries::zero(M);
            for (size_t c = 0; c < U; ++c)
                if ((*sol)[c] != 0) G = G + full.eval(mons[c]).scale((*sol)[c]);
            QSeries f = G * h.pow(m).invert();
            if (bounds.order > 0) f = f.truncate(bounds.order);
            if (!f.truncate(t).agrees_with(partial))
                fail(ErrorKind::InconsistentPartial, "reconstructed series disagrees with the partial data");
            return f;
        }
    }
    fail(ErrorKind::InconsistentPartial, "no function G/h^m with m <= " + std::to_string(bounds.max_pole) +
                                             " and extra weight <= " + std::to_string(bounds.max_extra) +
                                             " matches the partial series");
}

} // namespace x0n
