#pragma once

#include "landau/cmatrix.hpp"
#include "landau/periodic_fn.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace landau {

/// Mode-by-mode inverse of  -G'' - B0 C G  on functions without cos(omega t)
/// modes. One LU factorization per mode n != 1 is cached at construction.
class OffResonantSolver {
 public:
  explicit OffResonantSolver(const CMatrixBundle& bundle, int max_order = 256,
                             double cond_limit = 1e12);

  /// Returns G with -G_j'' - B0 sum_mu C_{j mu} G_mu = B0 F_j. Throws
  /// invalid_argument if some F_j carries a cos(omega t) mode and
  /// ResonanceError if a mode matrix is near singular.
  std::vector<PeriodicFn> solve(std::span<const PeriodicFn> F) const;

  int max_order() const { return static_cast<int>(lu_.size()) - 1; }

 private:
  int m_;
  double omega_;
  double b0_;
  Eigen::MatrixXd c_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  std::vector<double> rcond_;
  double cond_limit_;
};

std::vector<PeriodicFn> linear_offresonant_solve(std::span<const PeriodicFn> F,
                                                 const CMatrixBundle& bundle);

struct BorderedSolution {
  double tau = 0.0;
  Eigen::VectorXd b;
};

/// Unique (tau, b) with (omega^2 I - B0 C) b - tau omega^2 a = B0 f and (b, a) = 0.
BorderedSolution bordered_solve(const Eigen::VectorXd& f, const CMatrixBundle& bundle);

/// tau = sum_mu t_mu f_mu obtained by pairing with the left eigenvector D a.
Eigen::VectorXd tau_coefficients(const CMatrixBundle& bundle);

/// Closed-form coefficients in the normalization -a_mu / (2 (m-mu+1) lambda (Da, a)).
/// Reported for comparison only; they disagree with bordered_solve.
Eigen::VectorXd footnote_tau_coefficients(const CMatrixBundle& bundle);

struct LeadingTerms {
  std::vector<PeriodicFn> W;        // off-resonant response to the quadratic source
  std::vector<PeriodicFn> W_tilde;  // cubic coupling fed into the bordered solve
  Eigen::VectorXd f0;               // w_* coefficient of P_Y W_tilde_j
  double tau0 = 0.0;
  Eigen::VectorXd b0;
};

LeadingTerms leading_terms(const CMatrixBundle& bundle, const SeriesOptions& opts = {});

struct Remainders {
  Eigen::VectorXd F0;          // cos(omega t) coefficients of the Y-projected remainder
  std::vector<PeriodicFn> F1;  // Y'-projected remainder
};

/// Higher-order parts of the projected equations, obtained as exact
/// coefficient extractions of an epsilon-polynomial expansion plus the
/// exponential tail; no division by powers of epsilon is performed.
Remainders remainders(double eps, double tau, const Eigen::VectorXd& b,
                      std::span<const PeriodicFn> w, const CMatrixBundle& bundle,
                      const SeriesOptions& opts = {});

struct FamilyOptions {
  double tol = 1e-13;
  int max_iter = 200;
  SeriesOptions series;
};

struct FamilySolution {
  double epsilon = 0.0;
  double tau = 0.0;
  Eigen::VectorXd b;
  std::vector<PeriodicFn> w;
  std::vector<PeriodicFn> v;
  double B_eff = 0.0;
  int iterations = 0;
  double final_delta = 0.0;
  std::vector<double> increments;  // summed increment per iteration
};

/// v_j = eps a_j w_* + eps^2 w_j + eps^3 b_j w_*
std::vector<PeriodicFn> assemble_v(double eps, const Eigen::VectorXd& b,
                                   std::span<const PeriodicFn> w, const CMatrixBundle& bundle);

/// Fixed-point iteration for (tau, b, w) started at the leading terms.
/// Throws NoContraction when three consecutive increment ratios are >= 1 and
/// NonConvergence when max_iter is exhausted.
FamilySolution iterate_family(double eps, const CMatrixBundle& bundle,
                              const FamilyOptions& opts = {});

/// max_j || -v_j'' - B_eff sum_mu C_{j mu} (e^{v_mu} - 1) ||_C
double residual_check(const FamilySolution& sol, const CMatrixBundle& bundle,
                      const SeriesOptions& opts = {});

/// Largest increment ratio observed from `from_iteration` on (1-based).
double max_contraction_ratio(const FamilySolution& sol, int from_iteration = 3);

/// Bisection for the largest eps at which the iteration converges with every
/// increment ratio from the third iteration on at most `ratio_limit`.
double estimate_radius(const CMatrixBundle& bundle, double start = 0.2, double ratio_limit = 0.5,
                       int bisection_steps = 12, const FamilyOptions& opts = {});

}  // namespace landau
