#ifndef X0N_SERIES_HPP
#define X0N_SERIES_HPP

#include "x0n/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace x0n {

// Truncated Laurent series sum_{n<trunc} c_n q^n with exact rational coefficients.
// Stored as integer numerators over one positive common denominator; the window
// [valuation, trunc) is stored densely. A series that is zero on its window has
// valuation == trunc.
class QSeries {
public:
    QSeries() = default;

    static QSeries make(long valuation, const std::vector<Q>& coeffs, long trunc);
    static QSeries from_integers(long valuation, std::vector<Z> num, Z den, long trunc);
    static QSeries zero(long trunc);
    static QSeries constant(const Q& c, long trunc);
    static QSeries monomial(const Q& c, long exponent, long trunc);

    long valuation() const { return val_; }
    long trunc() const { return trunc_; }
    bool is_zero() const { return val_ >= trunc_; }

    // Exact coefficient of q^n; 0 below the valuation. PrecisionExceeded if n >= trunc.
    Q coefficient(long n) const;
    std::vector<Q> coefficients() const;  // exponents valuation..trunc-1
    const std::vector<Z>& numerators() const { return num_; }
    const Z& denominator() const { return den_; }

    QSeries truncate(long m) const;

    QSeries operator-() const;
    QSeries scale(const Q& c) const;
    QSeries shift(long k) const;  // multiply by q^k
    QSeries invert() const;
    QSeries pow(long k) const;
    QSeries substitute_qN(long n) const;

    friend QSeries operator+(const QSeries& f, const QSeries& g);
    friend QSeries operator-(const QSeries& f, const QSeries& g);
    friend QSeries operator*(const QSeries& f, const QSeries& g);
    friend QSeries operator/(const QSeries& f, const QSeries& g);

    // Same window and same coefficients.
    friend bool operator==(const QSeries& f, const QSeries& g);

    // True when f - g vanishes on the common window.
    bool agrees_with(const QSeries& g) const;

    std::string to_text() const;  // q-series file format
    static QSeries from_text(const std::string& text);
    std::string to_display(long max_terms = 8) const;

private:
    void normalize();

    long val_ = 0;
    long trunc_ = 0;
    std::vector<Z> num_;  // size trunc_ - val_ (empty when zero)
    Z den_ = 1;
};

QSeries add(const QSeries& f, const QSeries& g);
QSeries neg(const QSeries& f);
QSeries scale(const QSeries& f, const Q& c);
QSeries mul(const QSeries& f, const QSeries& g);
QSeries invert(const QSeries& f);
QSeries div(const QSeries& f, const QSeries& g);
QSeries pow_int(const QSeries& f, long k);
QSeries substitute_qN(const QSeries& f, long n);
Q coefficient(const QSeries& f, long n);
QSeries truncate(const QSeries& f, long m);

std::ostream& operator<<(std::ostream& os, const QSeries& f);

namespace detail {
// First n coefficients of a*b for dense integer polynomials.
std::vector<Z> mul_trunc(const std::vector<Z>& a, const std::vector<Z>& b, size_t n);
}

} // namespace x0n

#endif // X0N_SERIES_HPP
