#ifndef X0N_HEEGNER_HPP
#define X0N_HEEGNER_HPP

#include "x0n/rational.hpp"

#include <mpfr.h>

#include <array>
#include <optional>
#include <string>

namespace x0n {

// Owning wrapper of an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec);
    BigFloat(const Q& x, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat parse(const std::string& decimal, mpfr_prec_t prec);  // ParseError

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    Q exact() const;                 // the binary value as a rational
    long log2_abs() const;           // floor(log2|x|); LONG_MIN for 0
    std::string hex() const;         // 13 hex digits, e.g. "0x1.8000000000000p-2001"
    std::string decimal(int digits) const;

private:
    mpfr_t v_;
};

// Complex number as a pair of MPFR reals. Binary operations round to the smaller
// operand precision.
class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(const Q& r, const Q& i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    mpfr_prec_t prec() const { return std::min(re.prec(), im.prec()); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    BigComplex scale(const Q& c) const;

    BigFloat re, im;
};

// tau = re + i sqrt(im_sq), with im_sq > 0.
struct QuadraticTau {
    Q re;
    Q im_sq;
    std::string text;
    BigComplex realize(mpfr_prec_t prec) const;
};

// (-N + sqrt(-N)) / (2N) for N in {19, 43, 67, 163}. UnsupportedLevel otherwise.
QuadraticTau heegner_tau(long N);

enum class Form { E4, E6, E2N, E4N, E6N };  // E4N(tau) = E4(N tau)

struct FormEvaluation {
    BigComplex value;
    long terms;
};

// Partial sum of the q-expansion at q = exp(2 pi i tau). The number of terms comes
// from the tail bound unless `terms` is given. PrecisionUnreachable past max_terms.
FormEvaluation eval_form(Form f, long N, const BigComplex& tau, mpfr_prec_t prec, std::optional<long> terms = {},
                         long max_terms = 4000000);

// Terms needed so the tail at |q| = exp(-2 pi im_tau) is below 2^-(prec + guard).
long tail_terms(double im_tau, mpfr_prec_t prec, long guard = 64);

// First continued-fraction convergent p/q of x with q <= max_den, |x - p/q| < 2^(-prec/2)
// and q^2 |x - p/q| < 2^(-prec/4) (prec of x). ReconstructionFailed otherwise.
Q rational_reconstruct(const BigFloat& x, const Z& max_den);
// max_den = 2^(prec/4)
Q rational_reconstruct(const BigFloat& x);

enum class Normalization {
    Closed,     // e = (N-1)/24 + sum sigma_1(n)(q^n - N q^{Nn}), as in the q-expansions
    Classical,  // e = E2(tau) - N E2(N tau) = -24 e
};

struct CMResult {
    long level = 0;
    std::string tau;
    Normalization normalization = Normalization::Closed;
    std::array<Q, 4> quad;  // a4, a6, a4', a6'
    BigFloat residual{64};       // max |value - reconstruction|
    BigFloat imag_residual{64};  // max |imaginary part|
    long terms_used = 0;
    mpfr_prec_t prec = 0;
};

CMResult cm_invariants(long N, mpfr_prec_t prec = 4000, Normalization norm = Normalization::Closed,
                       const std::optional<QuadraticTau>& tau = {});
// Same, for a tau given as decimal strings.
CMResult cm_invariants_at(long N, const std::string& re, const std::string& im, mpfr_prec_t prec,
                          Normalization norm = Normalization::Closed);

} // namespace x0n

#endif // X0N_HEEGNER_HPP
