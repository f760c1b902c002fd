#include "landau/cmatrix.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace landau {

namespace {

void require_positive_order(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1 (got " + std::to_string(m) + ")");
}

// Flip so that the first component is positive; fall back to the largest
// magnitude component if the first one is numerically zero.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  v.normalize();
  Eigen::Index pivot = 0;
  if (std::abs(v[0]) < 1e-300) v.cwiseAbs().maxCoeff(&pivot);
  if (v[pivot] < 0) v = -v;
}

void validate_spectrum(const Eigen::VectorXd& values, double scale) {
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0))
      throw LemmaViolation("non-positive eigenvalue " + std::to_string(values[k]));
    if (k > 0 && values[k] - values[k - 1] <= 1e-12 * scale)
      throw LemmaViolation("repeated eigenvalue near " + std::to_string(values[k]));
  }
}

}  // namespace

IntMatrix build_c_matrix(int m) {
  require_positive_order(m);
  IntMatrix C = IntMatrix::Zero(m, m);
  if (m == 1) {
    C(0, 0) = 2;
    return C;
  }
  // 1-based formulas shifted to 0-based storage.
  C(0, 0) = 2LL * m;
  for (int j = 2; j <= m; ++j) {
    C(j - 1, j - 1) = 4LL * (m - j + 1);
    C(j - 1, j - 2) = -2LL * (m - j + 2);
  }
  for (int j = 1; j <= m - 1; ++j) C(j - 1, j) = -2LL * (m - j);
  return C;
}

EDFactors build_e_d(int m) {
  require_positive_order(m);
  IntMatrix E = IntMatrix::Zero(m, m);
  IntMatrix D = IntMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    E(j, j) = j == 0 ? 1 : 2;
    if (j + 1 < m) E(j, j + 1) = E(j + 1, j) = -1;
    D(j, j) = 2LL * (m - j);
  }
  return {E, D};
}

long long integer_determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  long long sign = 1;
  long long prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && M(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      M.row(k).swap(M.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
      }
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMatrix second_difference_matrix(int n) {
  require_positive_order(n);
  IntMatrix F = IntMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    F(j, j) = 2;
    if (j + 1 < n) F(j, j + 1) = F(j + 1, j) = -1;
  }
  return F;
}

EigenPairs eigen_decompose(const IntMatrix& E, const IntMatrix& D) {
  const Eigen::Index m = E.rows();
  Eigen::VectorXd sqrt_d(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (D(j, j) <= 0) throw std::invalid_argument("D must have a positive diagonal");
    sqrt_d[j] = std::sqrt(static_cast<double>(D(j, j)));
  }
  const Eigen::MatrixXd S = sqrt_d.asDiagonal() * E.cast<double>() * sqrt_d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) throw LemmaViolation("symmetric eigensolver failed");

  EigenPairs out;
  out.values = solver.eigenvalues();
  validate_spectrum(out.values, out.values.cwiseAbs().maxCoeff());
  out.vectors = sqrt_d.cwiseInverse().asDiagonal() * solver.eigenvectors();
  for (Eigen::Index k = 0; k < m; ++k) {
    normalize_sign(out.vectors.col(k));
    if (std::abs(out.vectors(0, k)) <= 1e-9)
      throw LemmaViolation("eigenvector with vanishing first component");
  }
  return out;
}

EigenPairs eigen_decompose(const Eigen::MatrixXd& C) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(C);
  if (solver.info() != Eigen::Success) throw LemmaViolation("general eigensolver failed");
  const double norm = C.norm();
  const Eigen::Index m = C.rows();
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(solver.eigenvalues()[k].imag()) >= 1e-10 * std::max(norm, 1.0))
      throw LemmaViolation("complex eigenvalue");
  }
  std::vector<Eigen::Index> order(static_cast<size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) order[static_cast<size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return solver.eigenvalues()[x].real() < solver.eigenvalues()[y].real();
  });
  EigenPairs out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto src = order[static_cast<size_t>(k)];
    out.values[k] = solver.eigenvalues()[src].real();
    out.vectors.col(k) = solver.eigenvectors().col(src).real();
    normalize_sign(out.vectors.col(k));
  }
  validate_spectrum(out.values, std::max(norm, 1.0));
  return out;
}

CMatrixBundle make_bundle(int m, double b0, int eig_index) {
  require_positive_order(m);
  if (!(b0 > 0) || !std::isfinite(b0))
    throw std::invalid_argument("b0 must be positive and finite");
  if (eig_index >= m)
    throw std::invalid_argument("eig_index " + std::to_string(eig_index) + " out of range for m=" +
                                std::to_string(m));
  CMatrixBundle b;
  b.m = m;
  b.C = build_c_matrix(m);
  auto [E, D] = build_e_d(m);
  b.E = std::move(E);
  b.D = std::move(D);
  b.eig = eigen_decompose(b.E, b.D);
  b.chosen_index = eig_index < 0 ? m - 1 : eig_index;
  b.b0 = b0;
  b.omega = std::sqrt(b0 * b.lambda());
  b.period = 2.0 * std::numbers::pi / b.omega;
  return b;
}

NonresonanceReport check_nonresonance(const Eigen::VectorXd& eigenvalues, int chosen_index,
                                      double rtol) {
  NonresonanceReport rep;
  rep.min_relative_gap = std::numeric_limits<double>::infinity();
  const double lam = eigenvalues[chosen_index];
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    const double lj = eigenvalues[j];
    if (!(lj > lam)) continue;
    for (long long n = 2; static_cast<double>(n * n) * lam <= lj * (1.0 + 1e-6) + lam; ++n) {
      const double gap = std::abs(static_cast<double>(n * n) * lam - lj) / lj;
      if (gap < rep.min_relative_gap) {
        rep.min_relative_gap = gap;
        rep.worst_n = static_cast<int>(n);
        rep.worst_j = static_cast<int>(j);
      }
      if (gap <= rtol) rep.ok = false;
      if (gap < 1e-6) rep.near_resonance = true;
    }
  }
  return rep;
}

}  // namespace landau
