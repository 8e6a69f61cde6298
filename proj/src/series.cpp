#include "x0n/series.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace x0n {

namespace {

Z content_gcd(const std::vector<Z>& v, const Z& start) {
    Z g = start;
    for (const Z& c : v) {
        if (g == 1) break;
        if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

// 1/u mod q^n for an integer polynomial u with u[0] != 0; returns (G, d) with 1/u = G/d.
std::pair<std::vector<Z>, Z> inverse_newton(const std::vector<Z>& u, size_t n) {
    std::vector<Z> g{Z(1)};
    Z d = u[0];
    if (d < 0) {
        g[0] = -1;
        d = -d;
    }
    size_t prec = 1;
    while (prec < n) {
        size_t next = std::min(2 * prec, n);
        // e = 2 - u*g (scaled by d), g <- g*e / d^2 ... kept as G/d
        std::vector<Z> ug = detail::mul_trunc(u, g, next);
        for (auto& c : ug) c = -c;
        ug[0] += 2 * d;
        std::vector<Z> gn = detail::mul_trunc(g, ug, next);
        Z dn = d * d;
        Z c = content_gcd(gn, dn);
        if (c != 1)
            for (auto& x : gn) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
        g = std::move(gn);
        d = dn / c;
        prec = next;
    }
    g.resize(n);
    return {std::move(g), std::move(d)};
}

} // namespace

void QSeries::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    size_t lead = 0;
    while (lead < num_.size() && num_[lead] == 0) ++lead;
    if (lead == num_.size()) {
        num_.clear();
        val_ = trunc_;
        den_ = 1;
        return;
    }
    if (lead) {
        num_.erase(num_.begin(), num_.begin() + static_cast<long>(lead));
        val_ += static_cast<long>(lead);
    }
    if (den_ != 1) {
        Z g = content_gcd(num_, den_);
        if (g != 1) {
            for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }
}

QSeries QSeries::make(long valuation, const std::vector<Q>& coeffs, long trunc) {
    QSeries s;
    s.trunc_ = trunc;
    s.val_ = std::min(valuation, trunc);
    long len = std::max(0L, trunc - s.val_);
    Z den = 1;
    for (long i = 0; i < len && i < static_cast<long>(coeffs.size()); ++i) den = lcm(den, Z(coeffs[i].get_den()));
    s.num_.assign(static_cast<size_t>(len), Z(0));
    for (long i = 0; i < len && i < static_cast<long>(coeffs.size()); ++i)
        s.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    s.den_ = den;
    s.normalize();
    return s;
}

QSeries QSeries::from_integers(long valuation, std::vector<Z> num, Z den, long trunc) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
    QSeries s;
    s.trunc_ = trunc;
    s.val_ = std::min(valuation, trunc);
    num.resize(static_cast<size_t>(std::max(0L, trunc - s.val_)));
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.normalize();
    return s;
}

QSeries QSeries::zero(long trunc) { return make(trunc, {}, trunc); }

QSeries QSeries::constant(const Q& c, long trunc) { return make(0, {c}, trunc); }

QSeries QSeries::monomial(const Q& c, long exponent, long trunc) { return make(exponent, {c}, trunc); }

Q QSeries::coefficient(long n) const {
    if (n >= trunc_)
        fail(ErrorKind::PrecisionExceeded,
             "coefficient of q^" + std::to_string(n) + " requested, series known to O(q^" + std::to_string(trunc_) + ")");
    if (n < val_) return Q(0);
    Q r(num_[static_cast<size_t>(n - val_)], den_);
    r.canonicalize();
    return r;
}

std::vector<Q> QSeries::coefficients() const {
    std::vector<Q> out;
    out.reserve(num_.size());
    for (long n = val_; n < trunc_; ++n) out.push_back(coefficient(n));
    return out;
}

QSeries QSeries::truncate(long m) const {
    if (m >= trunc_) return *this;
    QSeries s;
    s.trunc_ = m;
    s.val_ = std::min(val_, m);
    s.num_.assign(num_.begin(), num_.begin() + std::max(0L, m - val_));
    s.den_ = den_;
    s.normalize();
    return s;
}

QSeries QSeries::operator-() const {
    QSeries s = *this;
    for (auto& c : s.num_) c = -c;
    return s;
}

QSeries QSeries::scale(const Q& c) const {
    if (c == 0) return zero(trunc_);
    QSeries s = *this;
    if (c.get_num() != 1)
        for (auto& x : s.num_) x *= c.get_num();
    s.den_ *= c.get_den();
    s.normalize();
    return s;
}

QSeries QSeries::shift(long k) const {
    QSeries s = *this;
    s.val_ += k;
    s.trunc_ += k;
    return s;
}

QSeries operator+(const QSeries& f, const QSeries& g) {
    QSeries s;
    s.trunc_ = std::min(f.trunc_, g.trunc_);
    s.val_ = std::min({f.val_, g.val_, s.trunc_});
    size_t len = static_cast<size_t>(s.trunc_ - s.val_);
    s.den_ = lcm(f.den_, g.den_);
    s.num_.assign(len, Z(0));
    for (const QSeries* h : {&f, &g}) {
        Z m = s.den_ / h->den_;
        for (size_t i = 0; i < h->num_.size(); ++i) {
            long e = h->val_ + static_cast<long>(i);
            if (e >= s.trunc_) break;
            mpz_addmul(s.num_[static_cast<size_t>(e - s.val_)].get_mpz_t(), h->num_[i].get_mpz_t(), m.get_mpz_t());
        }
    }
    s.normalize();
    return s;
}

QSeries operator-(const QSeries& f, const QSeries& g) { return f + (-g); }

QSeries operator*(const QSeries& f, const QSeries& g) {
    QSeries s;
    s.trunc_ = std::min(f.trunc_ + g.val_, g.trunc_ + f.val_);
    if (f.is_zero() || g.is_zero()) return QSeries::zero(s.trunc_);
    s.val_ = std::min(f.val_ + g.val_, s.trunc_);
    size_t n = static_cast<size_t>(s.trunc_ - s.val_);
    s.num_ = detail::mul_trunc(f.num_, g.num_, n);
    s.den_ = f.den_ * g.den_;
    s.normalize();
    return s;
}

QSeries QSeries::invert() const {
    if (is_zero())
        fail(ErrorKind::ZeroLeadingCoefficient, "series is zero to O(q^" + std::to_string(trunc_) + ")");
    size_t n = static_cast<size_t>(trunc_ - val_);
    auto [g, d] = inverse_newton(num_, n);
    QSeries s;
    s.val_ = -val_;
    s.trunc_ = trunc_ - 2 * val_;
    s.num_.resize(n);
    for (size_t i = 0; i < n; ++i) s.num_[i] = g[i] * den_;
    s.den_ = d;
    s.normalize();
    return s;
}

QSeries operator/(const QSeries& f, const QSeries& g) { return f * g.invert(); }

QSeries QSeries::pow(long k) const {
    if (k < 0) return invert().pow(-k);
    if (k == 0) {
        if (is_zero()) fail(ErrorKind::ZeroLeadingCoefficient, "0^0 on a zero window");
        return constant(Q(1), trunc_ - val_);
    }
    QSeries result, base = *this;
    bool have = false;
    while (k) {
        if (k & 1) {
            result = have ? result * base : base;
            have = true;
        }
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

QSeries QSeries::substitute_qN(long n) const {
    if (n < 1) fail(ErrorKind::InvalidArgument, "substitute_qN needs N >= 1");
    if (n == 1) return *this;
    QSeries s;
    s.trunc_ = trunc_ * n;
    if (is_zero()) {
        s.val_ = s.trunc_;
        return s;
    }
    s.val_ = val_ * n;
    s.num_.assign(static_cast<size_t>(s.trunc_ - s.val_), Z(0));
    for (size_t i = 0; i < num_.size(); ++i) s.num_[i * static_cast<size_t>(n)] = num_[i];
    s.den_ = den_;
    return s;
}

bool operator==(const QSeries& f, const QSeries& g) {
    return f.val_ == g.val_ && f.trunc_ == g.trunc_ && f.den_ == g.den_ && f.num_ == g.num_;
}

bool QSeries::agrees_with(const QSeries& g) const { return (*this - g).is_zero(); }

std::string QSeries::to_text() const {
    std::ostringstream os;
    os << "qseries v=" << val_ << " M=" << trunc_ << "\n";
    for (long n = val_; n < trunc_; ++n) {
        Q c = coefficient(n);
        if (c != 0) os << n << " " << to_string(c) << "\n";
    }
    return os.str();
}

QSeries QSeries::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    long v = 0, m = 0, last = 0;
    bool any = false;
    std::vector<std::pair<long, Q>> terms;
    int lineno = 0;
    auto bad = [&](const std::string& why) {
        fail(ErrorKind::ParseError, "q-series line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!header) {
            std::string tag, vs, ms, extra;
            ls >> tag >> vs >> ms;
            if (tag != "qseries" || vs.rfind("v=", 0) != 0 || ms.rfind("M=", 0) != 0 || (ls >> extra))
                bad("expected 'qseries v=<valuation> M=<trunc>'");
            v = parse_integer(vs.substr(2)).get_si();
            m = parse_integer(ms.substr(2)).get_si();
            header = true;
            continue;
        }
        std::string es, cs, extra;
        if (!(ls >> es >> cs) || (ls >> extra)) bad("expected '<exponent> <coefficient>'");
        long e = parse_integer(es).get_si();
        if (any && e <= last) bad("exponents must be strictly increasing");
        if (e < v || e >= m) bad("exponent " + std::to_string(e) + " outside [v, M)");
        any = true;
        last = e;
        terms.emplace_back(e, parse_rational(cs));
    }
    if (!header) fail(ErrorKind::ParseError, "missing qseries header");
    std::vector<Q> coeffs(static_cast<size_t>(std::max(0L, m - v)));
    for (auto& [e, c] : terms) coeffs[static_cast<size_t>(e - v)] = c;
    return make(v, coeffs, m);
}

std::string QSeries::to_display(long max_terms) const {
    std::ostringstream os;
    long shown = 0;
    for (long n = val_; n < trunc_ && shown < max_terms; ++n) {
        Q c = coefficient(n);
        if (c == 0) continue;
        bool neg = c < 0;
        Q a = abs(c);
        if (shown == 0)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        bool unit = (a == 1 && n != 0);
        if (!unit) os << to_string(a);
        if (n != 0) {
            if (!unit) os << " ";
            os << "q";
            if (n != 1) os << "^" << n;
        }
        ++shown;
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << trunc_ << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSeries& f) { return os << f.to_display(); }

QSeries add(const QSeries& f, const QSeries& g) { return f + g; }
QSeries neg(const QSeries& f) { return -f; }
QSeries scale(const QSeries& f, const Q& c) { return f.scale(c); }
QSeries mul(const QSeries& f, const QSeries& g) { return f * g; }
QSeries invert(const QSeries& f) { return f.invert(); }
QSeries div(const QSeries& f, const QSeries& g) { return f / g; }
QSeries pow_int(const QSeries& f, long k) { return f.pow(k); }
QSeries substitute_qN(const QSeries& f, long n) { return f.substitute_qN(n); }
Q coefficient(const QSeries& f, long n) { return f.coefficient(n); }
QSeries truncate(const QSeries& f, long m) { return f.truncate(m); }

} // namespace x0n
