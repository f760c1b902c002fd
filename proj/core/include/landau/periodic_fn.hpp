#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace landau {

/// Truncation controls shared by all series arithmetic.
struct SeriesOptions {
  int max_order = 256;          // hard cap on N after products
  double trim_rel = 1e-15;      // trailing coefficients below trim_rel * max|c| are dropped
  double exp_atol = 1e-15;      // stopping threshold for the exponential tail
  int exp_max_terms = 400;
};

/// Even real T-periodic function f(t) = c0 + sum_{n>=1} c_n cos(n omega t).
///
/// Only cosine modes are representable, so evenness is a property of the
/// type. The coefficient vector always holds at least c0.
class PeriodicFn {
 public:
  PeriodicFn() : PeriodicFn(1.0) {}
  explicit PeriodicFn(double omega, std::vector<double> coeffs = {0.0});

  static PeriodicFn constant(double omega, double value) { return PeriodicFn(omega, {value}); }
  /// amplitude * cos(n omega t)
  static PeriodicFn cosine(double omega, int n, double amplitude = 1.0);

  double omega() const { return omega_; }
  double period() const;
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int n) const {
    return n >= 0 && n < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<size_t>(n)] : 0.0;
  }
  void set_coeff(int n, double value);

  double mean() const { return coeffs_[0]; }
  double operator()(double t) const;

  PeriodicFn& operator+=(const PeriodicFn& other);
  PeriodicFn& operator-=(const PeriodicFn& other);
  PeriodicFn& operator*=(double s);

  /// Drop trailing coefficients with |c| <= rel * max|c|.
  void trim(double rel);

  bool same_frequency(const PeriodicFn& other) const;

 private:
  double omega_;
  std::vector<double> coeffs_;
};

PeriodicFn operator+(PeriodicFn f, const PeriodicFn& g);
PeriodicFn operator-(PeriodicFn f, const PeriodicFn& g);
PeriodicFn operator-(PeriodicFn f);
PeriodicFn operator*(PeriodicFn f, double s);
PeriodicFn operator*(double s, PeriodicFn f);

/// 2 cos(omega t)
PeriodicFn w_star(double omega);

/// Keeps only the cos(omega t) mode.
PeriodicFn project_Y(const PeriodicFn& f);
/// Zeroes the cos(omega t) mode.
PeriodicFn project_Yprime(const PeriodicFn& f);

/// Exact cosine-series product (no aliasing) truncated at opts.max_order.
PeriodicFn multiply(const PeriodicFn& f, const PeriodicFn& g, const SeriesOptions& opts = {});
PeriodicFn operator*(const PeriodicFn& f, const PeriodicFn& g);

/// e^f - sum_{i<=k} f^i / i!, summed term by term so that small f loses no
/// precision to cancellation.
PeriodicFn exp_remainder(const PeriodicFn& f, int k, const SeriesOptions& opts = {});

PeriodicFn second_derivative(const PeriodicFn& f);

/// L2 norm over one period [0, T].
double norm_L2(const PeriodicFn& f);
/// Sup norm estimated from dense samples (a lower bound).
double norm_C(const PeriodicFn& f);
/// sum |c_n|, an upper bound for the sup norm.
double norm_l1(const PeriodicFn& f);

/// (t, f(t)) on `count` uniform points over one period.
std::vector<std::pair<double, double>> sample(const PeriodicFn& f, int count);
void write_samples_csv(std::ostream& os, const PeriodicFn& f, int count,
                       const char* value_name = "f");

}  // namespace landau
