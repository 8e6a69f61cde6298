// Linear systems whose columns are products X^i Y^j T^t of q-series and whose rows
// are q-expansion coefficients on a window starting at the lowest column valuation.
#ifndef X0N_COLUMNS_HPP
#define X0N_COLUMNS_HPP

#include "modp.hpp"
#include "x0n/linalg.hpp"
#include "x0n/series.hpp"

#include <functional>
#include <vector>

namespace x0n {

struct ColumnSpec {
    int i = 0, j = 0, t = 0;
};

class ColumnSystem {
public:
    ColumnSystem(const QSeries& X, const QSeries& Y, const QSeries* T, std::vector<ColumnSpec> specs);

    size_t size() const { return specs_.size(); }
    const ColumnSpec& spec(size_t c) const { return specs_[c]; }
    long vmin() const { return vmin_; }
    long column_valuation(size_t c) const;

    // PrecisionExceeded unless every input is known far enough for `rows` rows.
    void require_rows(long rows) const;

    bool modular_matrix(const modp::Field& F, long rows, modp::Mat& m) const;
    QMatrix exact_matrix(long rows) const;

    QSeries X_window(long rows) const { return X_->truncate(X_->valuation() + rows); }
    QSeries Y_window(long rows) const { return Y_->truncate(Y_->valuation() + rows); }
    QSeries T_window(long rows) const { return T_ ? T_->truncate(T_->valuation() + rows) : QSeries(); }

private:
    const QSeries* X_;
    const QSeries* Y_;
    const QSeries* T_;
    std::vector<ColumnSpec> specs_;
    long vmin_ = 0;
};

// Runs f(0..n-1) on a few threads; f must only write to its own slot.
void parallel_for(size_t n, const std::function<void(size_t)>& f);

} // namespace x0n

#endif // X0N_COLUMNS_HPP
