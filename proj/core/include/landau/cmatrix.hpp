#pragma once

#include <Eigen/Dense>

#include <vector>

namespace landau {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k is the unit eigenvector for values[k], first entry > 0
};

/// Coupling matrix of the reduced periodic system together with its
/// factorization C = E * D, its spectrum and the eigenpair that fixes the
/// base frequency.
struct CMatrixBundle {
  int m = 0;
  IntMatrix C;
  IntMatrix E;
  IntMatrix D;
  EigenPairs eig;
  int chosen_index = 0;
  double b0 = 1.0;
  double omega = 0.0;
  double period = 0.0;

  double lambda() const { return eig.values[chosen_index]; }
  Eigen::VectorXd a() const { return eig.vectors.col(chosen_index); }
  Eigen::MatrixXd c_real() const { return C.cast<double>(); }
};

IntMatrix build_c_matrix(int m);

struct EDFactors {
  IntMatrix E;
  IntMatrix D;
};
EDFactors build_e_d(int m);

/// Exact integer determinant by fraction-free (Bareiss) elimination.
long long integer_determinant(const IntMatrix& A);

/// Tridiagonal 2/-1 matrix of size n used in the positive-definiteness argument.
IntMatrix second_difference_matrix(int n);

/// Eigenpairs of C = E * D via the symmetric matrix D^{1/2} E D^{1/2}.
/// Throws LemmaViolation if the computed spectrum is not simple and positive.
EigenPairs eigen_decompose(const IntMatrix& E, const IntMatrix& D);

/// Eigenpairs of a generic real matrix (used to cross-check the symmetric
/// route; throws LemmaViolation on complex or repeated eigenvalues).
EigenPairs eigen_decompose(const Eigen::MatrixXd& C);

/// eig_index < 0 selects the largest eigenvalue.
CMatrixBundle make_bundle(int m, double b0 = 1.0, int eig_index = -1);

struct NonresonanceReport {
  bool ok = true;
  bool near_resonance = false;  // some |n^2 lambda - lambda_j| < 1e-6 lambda_j
  double min_relative_gap = 0.0;  // +inf when the condition is vacuous
  int worst_n = 0;
  int worst_j = -1;
};

NonresonanceReport check_nonresonance(const Eigen::VectorXd& eigenvalues, int chosen_index,
                                      double rtol = 1e-9);
inline NonresonanceReport check_nonresonance(const CMatrixBundle& b, double rtol = 1e-9) {
  return check_nonresonance(b.eig.values, b.chosen_index, rtol);
}

}  // namespace landau
