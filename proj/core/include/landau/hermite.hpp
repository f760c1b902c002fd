#pragma once

#include <Eigen/Dense>

#include <vector>

namespace landau {

/// Normalized Hermite functions h_0..h_nmax at xi (unit L2 norm on the line).
std::vector<double> hermite_functions(int nmax, double xi);
double hermite_function(int n, double xi);

/// Overlaps M(n', n) = integral of h_{n'}(xi - d) h_n(xi) over the line for
/// n', n = 0..N. This is the matrix of the displacement exp(d d/dxi) in the
/// Hermite basis; M(-d) = M(d)^T and M(0) = I.
Eigen::MatrixXd displaced_overlap(double d, int N);

}  // namespace landau
