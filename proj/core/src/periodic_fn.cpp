#include "landau/periodic_fn.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace landau {

PeriodicFn::PeriodicFn(double omega, std::vector<double> coeffs)
    : omega_(omega), coeffs_(std::move(coeffs)) {
  if (!(omega > 0) || !std::isfinite(omega))
    throw std::invalid_argument("PeriodicFn: omega must be positive and finite");
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

PeriodicFn PeriodicFn::cosine(double omega, int n, double amplitude) {
  if (n < 0) throw std::invalid_argument("PeriodicFn::cosine: negative mode");
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  c[static_cast<size_t>(n)] = amplitude;
  return PeriodicFn(omega, std::move(c));
}

double PeriodicFn::period() const { return 2.0 * std::numbers::pi / omega_; }

void PeriodicFn::set_coeff(int n, double value) {
  if (n < 0) throw std::invalid_argument("PeriodicFn::set_coeff: negative mode");
  if (n >= static_cast<int>(coeffs_.size())) {
    if (value == 0.0) return;
    coeffs_.resize(static_cast<size_t>(n) + 1, 0.0);
  }
  coeffs_[static_cast<size_t>(n)] = value;
}

double PeriodicFn::operator()(double t) const {
  // Clenshaw recurrence for sum c_n cos(n x).
  const double x = omega_ * t;
  const double two_cos = 2.0 * std::cos(x);
  double b1 = 0.0;
  double b2 = 0.0;
  for (size_t n = coeffs_.size(); n-- > 1;) {
    const double b0 = coeffs_[n] + two_cos * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + b1 * std::cos(x) - b2;
}

bool PeriodicFn::same_frequency(const PeriodicFn& other) const {
  return std::abs(omega_ - other.omega_) <= 1e-12 * std::max(omega_, other.omega_);
}

PeriodicFn& PeriodicFn::operator+=(const PeriodicFn& other) {
  if (!same_frequency(other)) throw std::invalid_argument("PeriodicFn: mismatched omega");
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (size_t n = 0; n < other.coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
  return *this;
}

PeriodicFn& PeriodicFn::operator-=(const PeriodicFn& other) {
  if (!same_frequency(other)) throw std::invalid_argument("PeriodicFn: mismatched omega");
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (size_t n = 0; n < other.coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
  return *this;
}

PeriodicFn& PeriodicFn::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

void PeriodicFn::trim(double rel) {
  double cmax = 0.0;
  for (double c : coeffs_) cmax = std::max(cmax, std::abs(c));
  const double cut = rel * cmax;
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

PeriodicFn operator+(PeriodicFn f, const PeriodicFn& g) { return f += g; }
PeriodicFn operator-(PeriodicFn f, const PeriodicFn& g) { return f -= g; }
PeriodicFn operator-(PeriodicFn f) { return f *= -1.0; }
PeriodicFn operator*(PeriodicFn f, double s) { return f *= s; }
PeriodicFn operator*(double s, PeriodicFn f) { return f *= s; }

PeriodicFn w_star(double omega) { return PeriodicFn::cosine(omega, 1, 2.0); }

PeriodicFn project_Y(const PeriodicFn& f) {
  return PeriodicFn(f.omega(), {0.0, f.coeff(1)});
}

PeriodicFn project_Yprime(const PeriodicFn& f) {
  PeriodicFn out = f;
  if (out.order() >= 1) out.set_coeff(1, 0.0);
  return out;
}

PeriodicFn multiply(const PeriodicFn& f, const PeriodicFn& g, const SeriesOptions& opts) {
  if (!f.same_frequency(g)) throw std::invalid_argument("multiply: mismatched omega");
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  const int nf = f.order();
  const int ng = g.order();
  const int nout = std::min(nf + ng, opts.max_order);
  std::vector<double> h(static_cast<size_t>(nout) + 1, 0.0);
  // cos(i x) cos(j x) = (cos((i+j)x) + cos(|i-j| x)) / 2, valid for i or j = 0 too.
  for (int i = 0; i <= nf; ++i) {
    const double ai = a[static_cast<size_t>(i)];
    if (ai == 0.0) continue;
    for (int j = 0; j <= ng; ++j) {
      const double p = 0.5 * ai * b[static_cast<size_t>(j)];
      if (i + j <= nout) h[static_cast<size_t>(i + j)] += p;
      const int d = i > j ? i - j : j - i;
      if (d <= nout) h[static_cast<size_t>(d)] += p;
    }
  }
  PeriodicFn out(f.omega(), std::move(h));
  out.trim(opts.trim_rel);
  return out;
}

PeriodicFn operator*(const PeriodicFn& f, const PeriodicFn& g) { return multiply(f, g); }

PeriodicFn exp_remainder(const PeriodicFn& f, int k, const SeriesOptions& opts) {
  if (k < 0) throw std::invalid_argument("exp_remainder: order must be >= 0");
  PeriodicFn term = PeriodicFn::constant(f.omega(), 1.0);
  PeriodicFn sum = PeriodicFn::constant(f.omega(), 0.0);
  if (norm_l1(f) == 0.0) return sum;
  for (int i = 1; i <= opts.exp_max_terms; ++i) {
    term = multiply(term, f, opts) * (1.0 / i);
    const double tnorm = norm_l1(term);
    if (!std::isfinite(tnorm)) throw SeriesDivergence("exp_remainder: non-finite term");
    if (i > k) {
      sum += term;
      if (tnorm < opts.exp_atol * std::max(1.0, norm_l1(sum))) {
        sum.trim(opts.trim_rel);
        return sum;
      }
    }
  }
  throw SeriesDivergence("exp_remainder: tail did not converge within " +
                         std::to_string(opts.exp_max_terms) + " terms");
}

PeriodicFn second_derivative(const PeriodicFn& f) {
  PeriodicFn out = f;
  const double w2 = f.omega() * f.omega();
  out.set_coeff(0, 0.0);
  for (int n = 1; n <= f.order(); ++n) out.set_coeff(n, -static_cast<double>(n) * n * w2 * f.coeff(n));
  return out;
}

double norm_L2(const PeriodicFn& f) {
  double s = f.coeff(0) * f.coeff(0);
  for (int n = 1; n <= f.order(); ++n) s += 0.5 * f.coeff(n) * f.coeff(n);
  return std::sqrt(f.period() * s);
}

double norm_C(const PeriodicFn& f) {
  // Even function: [0, T/2] covers the range.
  const int count = std::max(64, 8 * f.order());
  const double dt = 0.5 * f.period() / count;
  double best = 0.0;
  for (int k = 0; k <= count; ++k) best = std::max(best, std::abs(f(k * dt)));
  return best;
}

double norm_l1(const PeriodicFn& f) {
  double s = 0.0;
  for (double c : f.coeffs()) s += std::abs(c);
  return s;
}

std::vector<std::pair<double, double>> sample(const PeriodicFn& f, int count) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(count));
  const double dt = f.period() / count;
  for (int k = 0; k < count; ++k) out.emplace_back(k * dt, f(k * dt));
  return out;
}

void write_samples_csv(std::ostream& os, const PeriodicFn& f, int count, const char* value_name) {
  os << "t," << value_name << '\n' << std::setprecision(17);
  for (const auto& [t, v] : sample(f, count)) os << t << ',' << v << '\n';
}

}  // namespace landau
