#ifndef X0N_LINALG_HPP
#define X0N_LINALG_HPP

#include "x0n/rational.hpp"

#include <optional>
#include <vector>

namespace x0n {

using QMatrix = std::vector<std::vector<Q>>;
using ZMatrix = std::vector<std::vector<Z>>;

// Exact nullspace basis by fraction-free elimination. Pivot rule: first row with a
// nonzero entry in the current column. Each basis vector is 1 on its free column
// and 0 on the other free columns.
std::vector<std::vector<Q>> nullspace(const QMatrix& a);
std::vector<std::vector<Q>> nullspace(const ZMatrix& a);

size_t rank(const QMatrix& a);

// The basis vector of the nullspace attached to free column `col`; empty when
// `col` is a pivot column.
std::optional<std::vector<Q>> kernel_vector_with(const QMatrix& a, size_t col);

// n/d with |n|, d <= sqrt(m/2) and n = a d mod m, if one exists.
bool rational_reconstruct_mod(const Z& a, const Z& m, Q& out);

} // namespace x0n

#endif // X0N_LINALG_HPP
