#pragma once

#include <span>

namespace mhdlab {

/// Thomas algorithm for sub[k] x[k-1] + diag[k] x[k] + super[k] x[k+1] = rhs[k].
/// sub[0] and super[n-1] are ignored. The solution overwrites rhs and diag is
/// used as scratch. Returns the first row that is not diagonally dominant
/// (|diag| < |sub| + |super|), or -1 after a successful solve.
int solve_tridiagonal(std::span<const double> sub, std::span<double> diag, std::span<const double> super,
                      std::span<double> rhs);

}  // namespace mhdlab
