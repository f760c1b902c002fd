#include "landau/fiber.hpp"

#include "landau/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace landau {

namespace {

using cplx = std::complex<double>;

void require_args(const PeriodicFn& V, double B, int N) {
  if (!(B > 0) || !std::isfinite(B)) throw std::invalid_argument("B must be positive");
  if (N < 0) throw std::invalid_argument("levels must be >= 0");
  if (!(V.omega() > 0)) throw std::invalid_argument("potential frequency must be positive");
}

// Complex Fourier mode V_q of an even cosine series.
double mode(const PeriodicFn& V, int q) {
  q = std::abs(q);
  return q == 0 ? V.coeff(0) : 0.5 * V.coeff(q);
}

}  // namespace

Eigen::MatrixXcd fiber_matrix(double k, const PeriodicFn& V, double B, int N, int P) {
  (void)k;
  require_args(V, B, N);
  if (P < 0) throw std::invalid_argument("channels must be >= 0");
  const int block = N + 1;
  const int width = 2 * P + 1;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(block * width, block * width);
  for (int q = -std::min(2 * P, V.order()); q <= std::min(2 * P, V.order()); ++q) {
    const double vq = mode(V, q);
    if (vq == 0.0) continue;
    const Eigen::MatrixXd M = displaced_overlap(q * V.omega() / std::sqrt(B), N);
    for (int p = -P; p <= P; ++p) {
      const int target = p + q;
      if (std::abs(target) > P) continue;
      H.block((target + P) * block, (p + P) * block, block, block) += vq * M.cast<cplx>();
    }
  }
  for (int i = 0; i < block * width; ++i) H(i, i) += B * (2 * (i % block) + 1);
  return H;
}

Eigen::MatrixXcd bloch_matrix(double kappa, const PeriodicFn& V, double B, int N, int Q) {
  require_args(V, B, N);
  if (Q < 0) throw std::invalid_argument("modes must be >= 0");
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int q = -std::min(Q, V.order()); q <= std::min(Q, V.order()); ++q) {
    const double vq = mode(V, q);
    if (vq == 0.0) continue;
    const Eigen::MatrixXd M = displaced_overlap(q * V.omega() / std::sqrt(B), N);
    H += (vq * std::polar(1.0, -q * kappa)) * M.cast<cplx>();
  }
  for (int n = 0; n <= N; ++n) H(n, n) += B * (2 * n + 1);
  return H;
}

int count_near(const Eigen::VectorXd& eigenvalues, double target, double window) {
  return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                        [&](double e) { return std::abs(e - target) <= window; }));
}

BandScan flat_band_scan(const PeriodicFn& V, double B, int m, const BandOptions& opts) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (opts.k_samples < 1) throw std::invalid_argument("k_samples must be >= 1");
  if (opts.levels < m) throw std::invalid_argument("levels must be >= m");
  BandScan scan;
  scan.B = B;
  scan.m = m;
  scan.target = (2 * m + 1) * B;
  scan.options = opts;

  const int size = opts.levels + 1;
  Eigen::MatrixXd spectra(opts.k_samples, size);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < opts.k_samples; ++s) {
    const double kappa = 2.0 * std::numbers::pi * s / opts.k_samples;
    solver.compute(bloch_matrix(kappa, V, B, opts.levels, opts.modes), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    spectra.row(s) = ev.transpose();
    Eigen::Index idx = 0;
    (ev.array() - scan.target).abs().minCoeff(&idx);
    const double near = ev(idx);
    scan.points.push_back({kappa, near, near - scan.target});
    scan.max_deviation = std::max(scan.max_deviation, std::abs(near - scan.target));
    lo = std::min(lo, near);
    hi = std::max(hi, near);
  }
  scan.flatness = hi - lo;
  scan.guard_ok = scan.max_deviation <= opts.guard * B;

  // Flat bands elsewhere in the spectrum may only sit at (2n+1)B + V0. The
  // upper half of the truncated spectrum is skipped: it feels the cutoff.
  const double v0 = V.mean();
  for (int i = 0; i < size / 2; ++i) {
    const double width = spectra.col(i).maxCoeff() - spectra.col(i).minCoeff();
    if (width > opts.flat_tol * B) continue;
    FlatBand band;
    band.index = i;
    band.center = spectra.col(i).mean();
    band.width = width;
    const double level = std::round(((band.center - v0) / B - 1.0) / 2.0);
    band.at_landau_level =
        level >= 0 && std::abs(band.center - ((2 * level + 1) * B + v0)) <= opts.flat_tol * B;
    if (!band.at_landau_level) ++scan.stray_flat_bands;
    scan.flat_bands.push_back(band);
  }
  scan.pass = scan.guard_ok && scan.max_deviation <= opts.tol * B && scan.flatness <= opts.tol * B;
  return scan;
}

}  // namespace landau
