#include "mhdlab/tridiagonal.hpp"

#include <cmath>
#include <cstddef>

namespace mhdlab {

int solve_tridiagonal(std::span<const double> sub, std::span<double> diag, std::span<const double> super,
                      std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return -1;
  for (std::size_t k = 0; k < n; ++k) {
    const double off = (k > 0 ? std::abs(sub[k]) : 0.0) + (k + 1 < n ? std::abs(super[k]) : 0.0);
    if (!(std::abs(diag[k]) >= off) || diag[k] == 0.0) return static_cast<int>(k);
  }
  // forward elimination, diag[k] becomes the pivot
  for (std::size_t k = 1; k < n; ++k) {
    const double w = sub[k] / diag[k - 1];
    diag[k] -= w * super[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - super[k] * rhs[k + 1]) / diag[k];
  return -1;
}

}  // namespace mhdlab
