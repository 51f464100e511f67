#ifndef LIFTSCHED_LINALG_HPP
#define LIFTSCHED_LINALG_HPP

#include "liftsched/rational.hpp"

#include <optional>
#include <vector>

namespace liftsched {

using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>; // row-major, rectangular

// Solves A x = b exactly; returns one solution or nullopt when inconsistent.
std::optional<RatVec> solve_linear(RatMatrix A, RatVec b);

// Basis of the nullspace of A (may be empty).
std::vector<RatVec> kernel_basis(RatMatrix A);

struct PsdReport {
    bool psd = false;
    // index of the pivot that failed, -1 if the matrix passed
    int failed_pivot = -1;
};

// Exact positive-semidefiniteness of a symmetric rational matrix via
// fraction-free symmetric elimination: a negative pivot or a zero pivot with
// a nonzero residual row refutes PSD, otherwise the matrix is PSD.
PsdReport psd_check(RatMatrix M);

} // namespace liftsched

#endif
