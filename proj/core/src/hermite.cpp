#include "landau/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace landau {

std::vector<double> hermite_functions(int nmax, double xi) {
  if (nmax < 0) throw std::invalid_argument("hermite_functions: nmax must be >= 0");
  std::vector<double> h(static_cast<size_t>(nmax) + 1);
  h[0] = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
  if (nmax >= 1) h[1] = std::sqrt(2.0) * xi * h[0];
  for (int n = 1; n < nmax; ++n) {
    h[static_cast<size_t>(n) + 1] = std::sqrt(2.0 / (n + 1)) * xi * h[static_cast<size_t>(n)] -
                                    std::sqrt(static_cast<double>(n) / (n + 1)) * h[static_cast<size_t>(n) - 1];
  }
  return h;
}

double hermite_function(int n, double xi) { return hermite_functions(n, xi).back(); }

Eigen::MatrixXd displaced_overlap(double d, int N) {
  if (N < 0) throw std::invalid_argument("displaced_overlap: N must be >= 0");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  if (d == 0.0) {
    M.setIdentity();
    return M;
  }
  // Coherent-state matrix elements of the displacement with beta = -d/sqrt 2:
  // for lo = min(n', n), k = |n' - n|,
  //   M = sqrt(lo!/(lo+k)!) s^k e^{-x/2} L_lo^{(k)}(x),  x = d^2/2,
  // with s = d/sqrt2 above the diagonal and -d/sqrt2 below it. The prefactor
  // is formed in log space so large displacements do not overflow.
  const double x = 0.5 * d * d;
  const double s = d / std::sqrt(2.0);
  const double log_s = std::log(std::abs(s));
  for (int k = 0; k <= N; ++k) {
    double l_prev = 0.0;
    double l_cur = 1.0;  // L_0^{(k)}
    for (int lo = 0; lo + k <= N; ++lo) {
      if (lo == 1) {
        l_prev = 1.0;
        l_cur = 1.0 + k - x;
      } else if (lo > 1) {
        const double next = ((2.0 * (lo - 1) + 1.0 + k - x) * l_cur - (lo - 1 + k) * l_prev) / lo;
        l_prev = l_cur;
        l_cur = next;
      }
      const double log_pref =
          0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) + k * log_s - 0.5 * x;
      const double mag = std::exp(log_pref) * l_cur;
      const double upper = (s < 0 && (k % 2)) ? -mag : mag;
      M(lo, lo + k) = upper;
      M(lo + k, lo) = (k % 2) ? -upper : upper;
    }
  }
  return M;
}

}  // namespace landau
