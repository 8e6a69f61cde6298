#include "x0n/rational.hpp"

#include "x0n/errors.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace x0n {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::NoRelationFound: return "NoRelationFound";
    case ErrorKind::AmbiguousRelation: return "AmbiguousRelation";
    case ErrorKind::NoExpressionFound: return "NoExpressionFound";
    case ErrorKind::AmbiguousExpression: return "AmbiguousExpression";
    case ErrorKind::InconsistentPartial: return "InconsistentPartial";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::PointAtInfinity: return "PointAtInfinity";
    case ErrorKind::NotTwists: return "NotTwists";
    case ErrorKind::NotQuadraticTwist: return "NotQuadraticTwist";
    case ErrorKind::UnknownCurve: return "UnknownCurve";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::ImaginaryResidueTooLarge: return "ImaginaryResidueTooLarge";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::NetworkUnavailable: return "NetworkUnavailable";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::UnknownLevel: return "UnknownLevel";
    }
    return "Error";
}

std::string to_string(const Z& x) { return x.get_str(10); }

std::string to_string(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

std::string to_pq_string(const Q& x) {
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Z parse_integer(std::string_view s) {
    std::string t(s);
    if (t.empty()) fail(ErrorKind::ParseError, "empty integer");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) fail(ErrorKind::ParseError, "bad integer '" + t + "'");
    for (size_t k = i; k < t.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(t[k])))
            fail(ErrorKind::ParseError, "bad integer '" + t + "'");
    if (t[0] == '+') t.erase(0, 1);
    return Z(t, 10);
}

Q parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Q(parse_integer(s));
    Z n = parse_integer(s.substr(0, slash));
    std::string_view ds = s.substr(slash + 1);
    if (!ds.empty() && (ds[0] == '-' || ds[0] == '+'))
        fail(ErrorKind::ParseError, "signed denominator in '" + std::string(s) + "'");
    Z d = parse_integer(ds);
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    Q r(n, d);
    r.canonicalize();
    return r;
}

Z lcm(const Z& a, const Z& b) {
    Z r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Z gcd(const Z& a, const Z& b) {
    Z r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Z pow(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Q pow(const Q& b, long e) {
    if (e < 0) {
        if (b == 0) fail(ErrorKind::InvalidArgument, "0 to a negative power");
        Q inv = 1 / b;
        return pow(inv, -e);
    }
    Q r(pow(Z(b.get_num()), static_cast<unsigned long>(e)), pow(Z(b.get_den()), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
}

unsigned long bit_length(const Z& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

namespace {

bool is_probable_prime(const Z& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

Z pollard_brent(const Z& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return Z(2);
    std::mt19937_64 rng(seed);
    for (;;) {
        Z c = Z(static_cast<unsigned long>(rng() % 1000000 + 1));
        Z y = Z(static_cast<unsigned long>(rng() % 1000000 + 2));
        Z g = 1, q = 1, x, ys;
        unsigned long r = 1, m = 128;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const Z& n, std::map<Z, unsigned>& out, unsigned long& seed) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Z root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        std::map<Z, unsigned> sub;
        factor_into(root, sub, seed);
        for (auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    Z d = pollard_brent(n, seed++);
    factor_into(d, out, seed);
    factor_into(Z(n / d), out, seed);
}

} // namespace

std::map<Z, unsigned> factor(const Z& n0) {
    std::map<Z, unsigned> out;
    Z n = abs(n0);
    if (n == 0) fail(ErrorKind::InvalidArgument, "factor(0)");
    for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
        if (n == 1) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Z(p)] += 1;
            n /= p;
        }
    }
    unsigned long seed = 1;
    factor_into(n, out, seed);
    return out;
}

Z squarefree_part(const Q& x) {
    if (x == 0) fail(ErrorKind::InvalidArgument, "squarefree part of 0");
    Z out = 1;
    for (const Z* part : {&x.get_num(), &x.get_den()})
        for (auto& [p, e] : factor(*part))
            if (e % 2) out *= p;
    // p^e in num and den both contribute parity independently; merge duplicates
    Z s = 1;
    for (auto& [p, e] : factor(out))
        if (e % 2) s *= p;
    return x < 0 ? Z(-s) : s;
}

bool is_rational_square(const Q& x) {
    if (x < 0) return false;
    if (x == 0) return true;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

} // namespace x0n
