#ifndef X0N_FORMS_HPP
#define X0N_FORMS_HPP

#include "x0n/series.hpp"

#include <vector>

namespace x0n {

Q bernoulli(long k);
Z sigma(long k, long n);
// sigma_k(n) for n = 0..limit-1 (entry 0 is 0).
std::vector<Z> sigma_table(long k, long limit);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, to O(q^M).
QSeries eisenstein(long k, long M);
// (N-1)/24 + sum sigma_1(n) (q^n - N q^{Nn}), to O(q^M).
QSeries e2N(long N, long M);
QSeries delta(long M);

struct InvariantQuadruple {
    long level = 0;
    QSeries a4, a6, a4p, a6p;
};

// a4 = -E4/(48 e^2), a6 = E6/(864 e^3) with e = E2N; primed versions use E4(N tau), E6(N tau).
InvariantQuadruple invariant_quadruple(long N, long M);

} // namespace x0n

#endif // X0N_FORMS_HPP
