#ifndef X0N_BIPOLY_HPP
#define X0N_BIPOLY_HPP

#include "x0n/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace x0n {

using Monomial = std::pair<int, int>;  // (i, j) for x^i y^j

// Graded-lexicographic order with x > y: total degree first, then x-degree.
bool grlex_less(const Monomial& a, const Monomial& b);

class BiPoly {
public:
    BiPoly() = default;
    static BiPoly constant(const Q& c);
    static BiPoly x();
    static BiPoly y();
    static BiPoly monomial(const Q& c, int i, int j);
    // Univariate polynomial in x from coefficients c_0, c_1, ...
    static BiPoly in_x(const std::vector<Q>& coeffs);

    void set(int i, int j, const Q& c);
    Q coeff(int i, int j) const;
    const std::map<Monomial, Q>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const;  // -1 for zero
    int deg_x() const;
    int deg_y() const;
    Monomial leading_monomial() const;  // grlex; zero polynomial is an error
    Q leading_coefficient() const;

    // Integer coefficients, content 1, positive grlex-leading coefficient.
    BiPoly canonical() const;
    bool is_canonical() const;
    // Factor c with *this == c * canonical().
    Q canonical_factor() const;

    BiPoly scale(const Q& c) const;
    BiPoly operator-() const { return scale(Q(-1)); }
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    BiPoly pow(int k) const;

    // Coefficient of y^j as a univariate polynomial in x (kept in the x slot).
    BiPoly y_coefficient(int j) const;

    Q eval(const Q& x, const Q& y) const;
    QSeries eval(const QSeries& X, const QSeries& Y) const;

    // e.g. "29241*x^6 - 23955822*x^5 + ... + 285311670611", grlex descending.
    std::string to_string(const char* xn = "x", const char* yn = "y") const;

private:
    std::map<Monomial, Q> terms_;
};

// Univariate q-th root in x: returns r with r^k == p (p in x only), if one exists.
std::optional<BiPoly> perfect_power_root(const BiPoly& p, int k);

struct RationalExpr {
    BiPoly num;
    BiPoly den;

    static RationalExpr make(const BiPoly& num, const BiPoly& den);
    static RationalExpr identity_x();

    // Integer coefficients in both, no common content, denominator leading coefficient > 0.
    RationalExpr canonical() const;
    Q eval(const Q& x, const Q& y) const;  // DenominatorVanishes
    QSeries eval(const QSeries& X, const QSeries& Y) const;
    friend bool operator==(const RationalExpr& a, const RationalExpr& b) { return a.num == b.num && a.den == b.den; }
};

Q eval_bipoly_point(const BiPoly& p, const Q& x, const Q& y);
// Baby-step giant-step in x, Horner in y.
QSeries eval_bipoly_series(const BiPoly& p, const QSeries& X, const QSeries& Y);

// Polynomial expression in two named variables with + - * ^ and parentheses;
// "lhs = rhs" parses as lhs - rhs. Names match case-insensitively. Throws ParseError.
BiPoly parse_bipoly(const std::string& text, const std::string& xn = "x", const std::string& yn = "y");

} // namespace x0n

#endif // X0N_BIPOLY_HPP
