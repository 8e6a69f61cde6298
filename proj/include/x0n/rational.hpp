#ifndef X0N_RATIONAL_HPP
#define X0N_RATIONAL_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace x0n {

using Z = mpz_class;
using Q = mpq_class;

// "p/q", or "p" when q == 1.
std::string to_string(const Q& x);
// Always "p/q"; used for JSON.
std::string to_pq_string(const Q& x);
std::string to_string(const Z& x);

// Accepts "p", "-p", "p/q" in base 10. Throws ParseError.
Q parse_rational(std::string_view s);
Z parse_integer(std::string_view s);

inline Q make_q(long p, long q = 1) {
    Q r(p, q);
    r.canonicalize();
    return r;
}
inline Q make_q(const Z& p, const Z& q) {
    Q r(p, q);
    r.canonicalize();
    return r;
}

Z lcm(const Z& a, const Z& b);
Z gcd(const Z& a, const Z& b);
Z pow(const Z& b, unsigned long e);
Q pow(const Q& b, long e);

// Prime factorisation by trial division, Pollard rho (Brent) and Miller-Rabin.
std::map<Z, unsigned> factor(const Z& n);

// Squarefree integer D with x = D * s^2 for some rational s; x != 0.
Z squarefree_part(const Q& x);
bool is_rational_square(const Q& x);

unsigned long bit_length(const Z& x);

} // namespace x0n

#endif // X0N_RATIONAL_HPP
