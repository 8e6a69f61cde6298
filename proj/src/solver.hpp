// Multimodular kernel computation: one echelon form per word-sized prime, CRT,
// then rational reconstruction. Callers must verify the returned vector exactly.
#ifndef X0N_SOLVER_HPP
#define X0N_SOLVER_HPP

#include "modp.hpp"
#include "x0n/rational.hpp"

#include <functional>

namespace x0n {

struct ModularSystem {
    size_t cols = 0;
    // Fill the matrix for this prime; false if the prime divides a denominator.
    std::function<bool(const modp::Field&, modp::Mat&)> build;
};

struct KernelResult {
    size_t nullity = 0;     // kernel dimension, as seen by the best prime
    std::vector<Q> vector;  // set when nullity == 1 and reconstruction succeeded
    bool reconstructed = false;
    size_t primes_used = 0;
};

KernelResult modular_kernel(const ModularSystem& sys, size_t max_primes = 4000);

// Kernel dimension modulo one prime (an upper bound on the rational one).
size_t modular_nullity(const ModularSystem& sys, size_t prime_index = 0);

} // namespace x0n

#endif // X0N_SOLVER_HPP
