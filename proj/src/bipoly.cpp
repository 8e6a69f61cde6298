#include "x0n/bipoly.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace x0n {

bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first < b.first;
}

BiPoly BiPoly::constant(const Q& c) { return monomial(c, 0, 0); }
BiPoly BiPoly::x() { return monomial(Q(1), 1, 0); }
BiPoly BiPoly::y() { return monomial(Q(1), 0, 1); }

BiPoly BiPoly::monomial(const Q& c, int i, int j) {
    BiPoly p;
    p.set(i, j, c);
    return p;
}

BiPoly BiPoly::in_x(const std::vector<Q>& coeffs) {
    BiPoly p;
    for (size_t i = 0; i < coeffs.size(); ++i) p.set(static_cast<int>(i), 0, coeffs[i]);
    return p;
}

void BiPoly::set(int i, int j, const Q& c) {
    if (i < 0 || j < 0) fail(ErrorKind::InvalidArgument, "negative exponent in BiPoly");
    if (c == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = c;
}

Q BiPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Q(0) : it->second;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
    return d;
}

int BiPoly::deg_x() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.first);
    return d;
}

int BiPoly::deg_y() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.second);
    return d;
}

Monomial BiPoly::leading_monomial() const {
    if (terms_.empty()) fail(ErrorKind::InvalidArgument, "leading monomial of zero polynomial");
    Monomial best = terms_.begin()->first;
    for (auto& [m, c] : terms_)
        if (grlex_less(best, m)) best = m;
    return best;
}

Q BiPoly::leading_coefficient() const { return terms_.at(leading_monomial()); }

Q BiPoly::canonical_factor() const {
    if (terms_.empty()) return Q(1);
    Z den = 1, g = 0;
    for (auto& [m, c] : terms_) den = lcm(den, Z(c.get_den()));
    for (auto& [m, c] : terms_) g = gcd(g, Z(c.get_num() * (den / c.get_den())));
    Q f(g, den);
    f.canonicalize();
    if (leading_coefficient() < 0) f = -f;
    return f;
}

BiPoly BiPoly::canonical() const {
    if (terms_.empty()) return *this;
    return scale(1 / canonical_factor());
}

bool BiPoly::is_canonical() const { return canonical_factor() == 1; }

BiPoly BiPoly::scale(const Q& c) const {
    BiPoly r;
    if (c == 0) return r;
    for (auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (auto& [m, c] : b.terms_) r.set(m.first, m.second, r.coeff(m.first, m.second) + c);
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    std::map<Monomial, Q> acc;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) acc[{ma.first + mb.first, ma.second + mb.second}] += ca * cb;
    BiPoly r;
    for (auto& [m, c] : acc) r.set(m.first, m.second, c);
    return r;
}

BiPoly BiPoly::pow(int k) const {
    if (k < 0) fail(ErrorKind::InvalidArgument, "negative power of BiPoly");
    BiPoly r = constant(Q(1)), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

BiPoly BiPoly::y_coefficient(int j) const {
    BiPoly r;
    for (auto& [m, c] : terms_)
        if (m.second == j) r.set(m.first, 0, c);
    return r;
}

Q BiPoly::eval(const Q& x, const Q& y) const {
    int dy = deg_y();
    Q acc = 0;
    for (int j = dy; j >= 0; --j) {
        int dx = -1;
        for (auto& [m, c] : terms_)
            if (m.second == j) dx = std::max(dx, m.first);
        Q pj = 0;
        for (int i = dx; i >= 0; --i) pj = pj * x + coeff(i, j);
        acc = acc * y + pj;
    }
    return acc;
}

namespace {

// sum c_k * S_k with one common denominator; all S_k share nothing but the window rules of add.
QSeries lincomb(const std::vector<std::pair<Q, const QSeries*>>& parts, long trunc_hint) {
    if (parts.empty()) return QSeries::zero(trunc_hint);
    long trunc = parts[0].second->trunc(), val = trunc;
    Z D = 1;
    for (auto& [c, s] : parts) {
        trunc = std::min(trunc, s->trunc());
        D = lcm(D, s->denominator() * c.get_den());
    }
    for (auto& [c, s] : parts) val = std::min(val, s->valuation());
    val = std::min(val, trunc);
    std::vector<Z> num(static_cast<size_t>(trunc - val));
    Z f;
    for (auto& [c, s] : parts) {
        if (s->is_zero() || c == 0) continue;
        f = c.get_num() * (D / (s->denominator() * c.get_den()));
        const auto& sn = s->numerators();
        for (size_t i = 0; i < sn.size(); ++i) {
            long e = s->valuation() + static_cast<long>(i);
            if (e >= trunc) break;
            if (sn[i] != 0) mpz_addmul(num[static_cast<size_t>(e - val)].get_mpz_t(), sn[i].get_mpz_t(), f.get_mpz_t());
        }
    }
    return QSeries::from_integers(val, std::move(num), D, trunc);
}

} // namespace

QSeries eval_bipoly_series(const BiPoly& p, const QSeries& X, const QSeries& Y) {
    long tr = std::min(X.trunc(), Y.trunc());
    if (p.is_zero()) return QSeries::zero(std::max(0L, tr));
    int dx = std::max(0, p.deg_x()), dy = p.deg_y();
    int k = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dx + 1)))));
    // baby steps X^0..X^k; X^0 carries X's relative precision
    std::vector<QSeries> xp;
    xp.push_back(QSeries::constant(Q(1), X.trunc() - X.valuation()));
    for (int i = 1; i <= k; ++i) xp.push_back(i == 1 ? X : xp.back() * X);
    const QSeries& G = xp[k];
    QSeries acc;
    bool have = false;
    for (int j = dy; j >= 0; --j) {
        BiPoly pj = p.y_coefficient(j);
        QSeries pjX;
        bool pj_have = false;
        int blocks = pj.is_zero() ? 0 : pj.deg_x() / k + 1;
        for (int b = blocks - 1; b >= 0; --b) {
            std::vector<std::pair<Q, const QSeries*>> parts;
            for (int i = 0; i < k; ++i) {
                Q c = pj.coeff(b * k + i, 0);
                if (c != 0) parts.emplace_back(c, &xp[i]);
            }
            QSeries blk = lincomb(parts, xp[0].trunc());
            if (pj_have) {
                pjX = pjX * G + blk;
            } else {
                pjX = blk;
                pj_have = true;
            }
        }
        if (!pj_have) pjX = QSeries::zero(xp[0].trunc());
        if (have) {
            acc = acc * Y + pjX;
        } else {
            acc = pjX;
            have = true;
        }
    }
    return acc;
}

QSeries BiPoly::eval(const QSeries& X, const QSeries& Y) const { return eval_bipoly_series(*this, X, Y); }

Q eval_bipoly_point(const BiPoly& p, const Q& x, const Q& y) { return p.eval(x, y); }

std::string BiPoly::to_string(const char* xn, const char* yn) const {
    if (terms_.empty()) return "0";
    std::vector<Monomial> ms;
    for (auto& [m, c] : terms_) ms.push_back(m);
    std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return grlex_less(b, a); });
    std::ostringstream os;
    bool first = true;
    for (auto& m : ms) {
        Q c = terms_.at(m);
        bool neg = c < 0;
        Q a = abs(c);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool is_const = m.first == 0 && m.second == 0;
        bool star = false;
        if (a != 1 || is_const) {
            os << x0n::to_string(a);
            star = true;
        }
        auto var = [&](const char* name, int e) {
            if (e == 0) return;
            os << (star ? "*" : "") << name;
            if (e > 1) os << "^" << e;
            star = true;
        };
        var(xn, m.first);
        var(yn, m.second);
    }
    return os.str();
}

std::optional<BiPoly> perfect_power_root(const BiPoly& p, int k) {
    if (k < 1 || p.is_zero() || p.deg_y() > 0) return std::nullopt;
    int n = p.deg_x();
    if (n % k) return std::nullopt;
    int m = n / k;
    // reversed polynomial P(t) = t^n p(1/t), root R = P^(1/k) via P R' = (1/k) P' R
    std::vector<Q> P(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) P[i] = p.coeff(n - i, 0);
    Q lead = P[0];
    if (lead < 0 && k % 2 == 0) return std::nullopt;
    Z rn, rd;
    Z an = abs(Z(lead.get_num())), ad = lead.get_den();
    if (!mpz_root(rn.get_mpz_t(), an.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), ad.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
    std::vector<Q> R(static_cast<size_t>(m + 1));
    R[0] = Q(lead < 0 ? Z(-rn) : rn, rd);
    R[0].canonicalize();
    for (int j = 1; j <= m; ++j) {
        Q s = 0;
        for (int i = 1; i <= j && i <= n; ++i) s += P[i] * R[j - i] * (Q(i, k) - Q(j - i));
        R[j] = s / (Q(j) * P[0]);
        R[j].canonicalize();
    }
    BiPoly r;
    for (int j = 0; j <= m; ++j) r.set(m - j, 0, R[j]);
    if (!(r.pow(k) == p)) return std::nullopt;
    return r;
}

RationalExpr RationalExpr::make(const BiPoly& num, const BiPoly& den) {
    if (den.is_zero()) fail(ErrorKind::InvalidArgument, "zero denominator polynomial");
    return RationalExpr{num, den}.canonical();
}

RationalExpr RationalExpr::identity_x() { return make(BiPoly::x(), BiPoly::constant(Q(1))); }

RationalExpr RationalExpr::canonical() const {
    Q f = den.canonical_factor();
    BiPoly n = num.scale(1 / f), d = den.scale(1 / f);
    // d is now primitive with positive lead; clear the numerator's denominators too
    Z L = 1;
    for (auto& [m, c] : n.terms()) L = lcm(L, Z(c.get_den()));
    if (L != 1) {
        n = n.scale(Q(L));
        d = d.scale(Q(L));
    }
    Z g = 0;
    for (const BiPoly* p : {&n, &d})
        for (auto& [m, c] : p->terms()) g = gcd(g, Z(c.get_num()));
    if (g > 1) {
        n = n.scale(Q(1, 1) / Q(g));
        d = d.scale(Q(1, 1) / Q(g));
    }
    return RationalExpr{n, d};
}

Q RationalExpr::eval(const Q& x, const Q& y) const {
    Q d = den.eval(x, y);
    if (d == 0)
        fail(ErrorKind::DenominatorVanishes, "denominator vanishes at (" + to_string(x) + ", " + to_string(y) + ")");
    return num.eval(x, y) / d;
}

QSeries RationalExpr::eval(const QSeries& X, const QSeries& Y) const {
    return eval_bipoly_series(num, X, Y) / eval_bipoly_series(den, X, Y);
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, std::string xn, std::string yn) : s_(s), xn_(lower(xn)), yn_(lower(yn)) {}

    BiPoly parse() {
        BiPoly lhs = sum();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '=') {
            ++pos_;
            lhs = lhs - sum();
        }
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return lhs;
    }

private:
    static std::string lower(std::string v) {
        for (auto& ch : v) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        return v;
    }
    [[noreturn]] void error(const std::string& m) const {
        fail(ErrorKind::ParseError, "polynomial '" + s_ + "' at offset " + std::to_string(pos_) + ": " + m);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    BiPoly sum() {
        BiPoly r;
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (eat('+')) {
            } else if (eat('-')) {
                neg = true;
            } else if (!first) {
                break;
            }
            BiPoly t = product();
            r = neg ? r - t : r + t;
            first = false;
        }
        return r;
    }
    BiPoly product() {
        BiPoly r = power();
        for (;;) {
            skip();
            if (eat('*')) {
                r = r * power();
                continue;
            }
            // implicit multiplication: "10x", "x y", "2(x+1)"
            if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
                r = r * power();
                continue;
            }
            return r;
        }
    }
    BiPoly power() {
        BiPoly b = atom();
        if (eat('^')) {
            skip();
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) error("exponent expected");
            b = b.pow(std::stoi(s_.substr(st, pos_ - st)));
        }
        return b;
    }
    BiPoly atom() {
        skip();
        if (pos_ >= s_.size()) error("operand expected");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            BiPoly r = sum();
            if (!eat(')')) error("')' expected");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Q v(Z(s_.substr(st, pos_ - st)));
            // a slash directly between digits is part of the number
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                size_t d0 = ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                Z den(s_.substr(d0, pos_ - d0));
                if (den == 0) error("zero denominator");
                v /= Q(den);
            }
            return BiPoly::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = lower(s_.substr(st, pos_ - st));
            if (name == xn_) return BiPoly::x();
            if (name == yn_) return BiPoly::y();
            pos_ = st;
            error("unknown variable '" + name + "'");
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::string xn_, yn_;
    size_t pos_ = 0;
};

} // namespace

BiPoly parse_bipoly(const std::string& text, const std::string& xn, const std::string& yn) {
    return PolyParser(text, xn, yn).parse();
}

} // namespace x0n
