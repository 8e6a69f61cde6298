#include "columns.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace x0n {

void parallel_for(size_t n, const std::function<void(size_t)>& f) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned nt = static_cast<unsigned>(std::min<size_t>(hw, n));
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < nt; ++t)
        ts.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) f(i);
        });
    for (auto& t : ts) t.join();
}

ColumnSystem::ColumnSystem(const QSeries& X, const QSeries& Y, const QSeries* T, std::vector<ColumnSpec> specs)
    : X_(&X), Y_(&Y), T_(T), specs_(std::move(specs)) {
    if (X.is_zero() || Y.is_zero() || (T && T->is_zero()))
        fail(ErrorKind::InvalidArgument, "column system needs nonzero series");
    vmin_ = 0;
    for (size_t c = 0; c < specs_.size(); ++c) vmin_ = c ? std::min(vmin_, column_valuation(c)) : column_valuation(c);
}

long ColumnSystem::column_valuation(size_t c) const {
    const auto& s = specs_[c];
    long v = s.i * X_->valuation() + s.j * Y_->valuation();
    if (s.t) v += T_->valuation();
    return v;
}

void ColumnSystem::require_rows(long rows) const {
    for (const QSeries* s : {X_, Y_, T_}) {
        if (!s) continue;
        if (s->trunc() - s->valuation() < rows)
            fail(ErrorKind::PrecisionExceeded, "system with " + std::to_string(rows) + " rows needs series known to " +
                                                   std::to_string(rows) + " terms past the valuation, have " +
                                                   std::to_string(s->trunc() - s->valuation()) + "; raise --order");
    }
}

bool ColumnSystem::modular_matrix(const modp::Field& F, long rows, modp::Mat& m) const {
    require_rows(rows);
    size_t L = static_cast<size_t>(rows);
    modp::Vec x, y, t;
    if (!modp::reduce_window(*X_, X_->valuation(), X_->valuation() + rows, F, x)) return false;
    if (!modp::reduce_window(*Y_, Y_->valuation(), Y_->valuation() + rows, F, y)) return false;
    if (T_ && !modp::reduce_window(*T_, T_->valuation(), T_->valuation() + rows, F, t)) return false;
    int mi = 0, mj = 0;
    for (auto& s : specs_) {
        mi = std::max(mi, s.i);
        mj = std::max(mj, s.j);
    }
    std::vector<modp::Vec> xp(static_cast<size_t>(mi + 1)), yp(static_cast<size_t>(mj + 1));
    xp[0].assign(L, 0);
    xp[0][0] = 1;
    yp[0] = xp[0];
    for (int i = 1; i <= mi; ++i) xp[i] = modp::mul_trunc(xp[i - 1], x, L, F);
    for (int j = 1; j <= mj; ++j) yp[j] = modp::mul_trunc(yp[j - 1], y, L, F);

    m = modp::Mat(L, specs_.size());
    parallel_for(specs_.size(), [&](size_t c) {
        const auto& s = specs_[c];
        modp::Vec col;
        if (s.j == 0)
            col = xp[s.i];
        else if (s.i == 0)
            col = yp[s.j];
        else
            col = modp::mul_trunc(xp[s.i], yp[s.j], L, F);
        if (s.t) col = modp::mul_trunc(col, t, L, F);
        long off = column_valuation(c) - vmin_;
        for (size_t r = static_cast<size_t>(off); r < L; ++r) m.at(r, c) = col[r - static_cast<size_t>(off)];
    });
    return true;
}

QMatrix ColumnSystem::exact_matrix(long rows) const {
    require_rows(rows);
    QSeries x = X_window(rows), y = Y_window(rows), t = T_window(rows);
    auto xpow = [&](int i) { return x.pow(i); };
    QMatrix a(static_cast<size_t>(rows), std::vector<Q>(specs_.size()));
    for (size_t c = 0; c < specs_.size(); ++c) {
        const auto& s = specs_[c];
        QSeries col;
        if (s.i == 0 && s.j == 0)
            col = QSeries::constant(Q(1), rows);
        else if (s.j == 0)
            col = xpow(s.i);
        else if (s.i == 0)
            col = y.pow(s.j);
        else
            col = xpow(s.i) * y.pow(s.j);
        if (s.t) col = col * t;
        for (long r = 0; r < rows; ++r) a[r][c] = col.coefficient(vmin_ + r);
    }
    return a;
}

} // namespace x0n
