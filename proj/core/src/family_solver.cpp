#include "landau/family_solver.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace landau {

namespace {

// Polynomial in eps whose coefficients are periodic functions; index = degree.
using EpsPoly = std::vector<PeriodicFn>;

void add_at(EpsPoly& p, size_t degree, const PeriodicFn& f) {
  while (p.size() <= degree) p.emplace_back(f.omega());
  p[degree] += f;
}

EpsPoly poly_mul(const EpsPoly& x, const EpsPoly& y, const SeriesOptions& opts) {
  EpsPoly out;
  for (size_t i = 0; i < x.size(); ++i) {
    if (norm_l1(x[i]) == 0.0) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (norm_l1(y[j]) == 0.0) continue;
      add_at(out, i + j, multiply(x[i], y[j], opts));
    }
  }
  return out;
}

PeriodicFn poly_tail(const EpsPoly& p, size_t from, double eps) {
  PeriodicFn out(p.front().omega());
  double scale = 1.0;
  for (size_t k = from; k < p.size(); ++k) {
    out += p[k] * scale;
    scale *= eps;
  }
  return out;
}

// sum_{i>=4} eps^{i-4} p^i / i!, i.e. (e^{eps p} - cubic Taylor) / eps^4.
PeriodicFn scaled_exp_tail(const PeriodicFn& p, double eps, const SeriesOptions& opts) {
  PeriodicFn p2 = multiply(p, p, opts);
  PeriodicFn term = multiply(p2, p2, opts) * (1.0 / 24.0);
  PeriodicFn sum = term;
  if (eps == 0.0) return sum;
  for (int i = 5; i < opts.exp_max_terms; ++i) {
    term = multiply(term, p, opts) * (eps / i);
    sum += term;
    if (norm_l1(term) < opts.exp_atol * std::max(1.0, norm_l1(sum))) return sum;
  }
  throw SeriesDivergence("scaled exponential tail did not converge");
}

void require_sizes(std::span<const PeriodicFn> w, const Eigen::VectorXd& b, int m) {
  if (static_cast<int>(w.size()) != m || b.size() != m)
    throw std::invalid_argument("family: expected " + std::to_string(m) + " components");
}

double increment(double dtau, const Eigen::VectorXd& db, std::span<const PeriodicFn> w_new,
                 std::span<const PeriodicFn> w_old) {
  double d = std::abs(dtau) + db.cwiseAbs().sum();
  for (size_t j = 0; j < w_new.size(); ++j) d += norm_C(w_new[j] - w_old[j]);
  return d;
}

}  // namespace

OffResonantSolver::OffResonantSolver(const CMatrixBundle& bundle, int max_order, double cond_limit)
    : m_(bundle.m),
      omega_(bundle.omega),
      b0_(bundle.b0),
      c_(bundle.c_real()),
      cond_limit_(cond_limit) {
  lu_.reserve(static_cast<size_t>(max_order) + 1);
  rcond_.reserve(static_cast<size_t>(max_order) + 1);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m_, m_);
  for (int n = 0; n <= max_order; ++n) {
    if (n == 1) {
      lu_.emplace_back();
      rcond_.push_back(0.0);
      continue;
    }
    const Eigen::MatrixXd A = static_cast<double>(n) * n * omega_ * omega_ * id - b0_ * c_;
    lu_.emplace_back(A);
    rcond_.push_back(lu_.back().rcond());
  }
}

std::vector<PeriodicFn> OffResonantSolver::solve(std::span<const PeriodicFn> F) const {
  if (static_cast<int>(F.size()) != m_)
    throw std::invalid_argument("offresonant solve: expected " + std::to_string(m_) + " functions");
  int order = 0;
  for (const auto& f : F) {
    if (!f.same_frequency(PeriodicFn(omega_)))
      throw std::invalid_argument("offresonant solve: mismatched omega");
    if (f.coeff(1) != 0.0)
      throw std::invalid_argument("offresonant solve: source has a cos(omega t) mode");
    order = std::max(order, f.order());
  }
  if (order > max_order())
    throw std::invalid_argument("offresonant solve: source order exceeds cached modes");

  std::vector<PeriodicFn> G(static_cast<size_t>(m_), PeriodicFn(omega_));
  Eigen::VectorXd rhs(m_);
  for (int n = 0; n <= order; ++n) {
    if (n == 1) continue;
    for (int j = 0; j < m_; ++j) rhs[j] = b0_ * F[static_cast<size_t>(j)].coeff(n);
    if (rhs.isZero(0.0)) continue;
    if (rcond_[static_cast<size_t>(n)] * cond_limit_ < 1.0)
      throw ResonanceError("offresonant solve: mode " + std::to_string(n) + " is resonant", n);
    const Eigen::VectorXd g = lu_[static_cast<size_t>(n)].solve(rhs);
    for (int j = 0; j < m_; ++j) G[static_cast<size_t>(j)].set_coeff(n, g[j]);
  }
  return G;
}

std::vector<PeriodicFn> linear_offresonant_solve(std::span<const PeriodicFn> F,
                                                 const CMatrixBundle& bundle) {
  int order = 0;
  for (const auto& f : F) order = std::max(order, f.order());
  return OffResonantSolver(bundle, std::max(order, 2)).solve(F);
}

BorderedSolution bordered_solve(const Eigen::VectorXd& f, const CMatrixBundle& bundle) {
  const int m = bundle.m;
  if (f.size() != m) throw std::invalid_argument("bordered_solve: f has wrong size");
  const double w2 = bundle.omega * bundle.omega;
  const Eigen::VectorXd a = bundle.a();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + 1, m + 1);
  K.topLeftCorner(m, m) = w2 * Eigen::MatrixXd::Identity(m, m) - bundle.b0 * bundle.c_real();
  K.topRightCorner(m, 1) = -w2 * a;
  K.bottomLeftCorner(1, m) = a.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs.head(m) = bundle.b0 * f;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible()) throw LemmaViolation("bordered system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);
  return {x[m], x.head(m)};
}

Eigen::VectorXd tau_coefficients(const CMatrixBundle& bundle) {
  const Eigen::VectorXd a = bundle.a();
  const Eigen::VectorXd d = bundle.D.diagonal().cast<double>();
  const Eigen::VectorXd da = d.cwiseProduct(a);
  return -da / (bundle.lambda() * da.dot(a));
}

Eigen::VectorXd footnote_tau_coefficients(const CMatrixBundle& bundle) {
  const Eigen::VectorXd a = bundle.a();
  const Eigen::VectorXd d = bundle.D.diagonal().cast<double>();
  const double da_a = d.cwiseProduct(a).dot(a);
  Eigen::VectorXd out(bundle.m);
  for (int mu = 0; mu < bundle.m; ++mu) {
    const double weight = bundle.m - mu;  // m - mu + 1 with 1-based mu
    out[mu] = -a[mu] / (2.0 * weight * bundle.lambda() * da_a);
  }
  return out;
}

LeadingTerms leading_terms(const CMatrixBundle& bundle, const SeriesOptions& opts) {
  const int m = bundle.m;
  const double omega = bundle.omega;
  const Eigen::MatrixXd C = bundle.c_real();
  const Eigen::VectorXd a = bundle.a();
  const PeriodicFn ws = w_star(omega);
  const PeriodicFn ws2 = multiply(ws, ws, opts);
  const PeriodicFn ws3 = multiply(ws2, ws, opts);

  const Eigen::VectorXd ca2 = C * a.cwiseAbs2();
  const Eigen::VectorXd ca3 = C * a.array().cube().matrix();

  std::vector<PeriodicFn> source;
  for (int j = 0; j < m; ++j) source.push_back(ws2 * (0.5 * ca2[j]));

  LeadingTerms lt;
  lt.W = OffResonantSolver(bundle, opts.max_order).solve(source);
  lt.f0.resize(m);
  for (int j = 0; j < m; ++j) {
    PeriodicFn coupling(omega);
    for (int mu = 0; mu < m; ++mu) {
      if (C(j, mu) == 0.0) continue;
      coupling += lt.W[static_cast<size_t>(mu)] * (C(j, mu) * a[mu]);
    }
    PeriodicFn wt = multiply(ws, coupling, opts) + ws3 * (ca3[j] / 6.0);
    lt.f0[j] = 0.5 * wt.coeff(1);
    lt.W_tilde.push_back(std::move(wt));
  }
  const auto border = bordered_solve(lt.f0, bundle);
  lt.tau0 = border.tau;
  lt.b0 = border.b;
  return lt;
}

std::vector<PeriodicFn> assemble_v(double eps, const Eigen::VectorXd& b,
                                   std::span<const PeriodicFn> w, const CMatrixBundle& bundle) {
  require_sizes(w, b, bundle.m);
  const Eigen::VectorXd a = bundle.a();
  const PeriodicFn ws = w_star(bundle.omega);
  std::vector<PeriodicFn> v;
  v.reserve(w.size());
  for (int j = 0; j < bundle.m; ++j) {
    v.push_back(ws * (eps * a[j] + eps * eps * eps * b[j]) + w[static_cast<size_t>(j)] * (eps * eps));
  }
  return v;
}

Remainders remainders(double eps, double tau, const Eigen::VectorXd& b,
                      std::span<const PeriodicFn> w, const CMatrixBundle& bundle,
                      const SeriesOptions& opts) {
  const int m = bundle.m;
  require_sizes(w, b, m);
  const double omega = bundle.omega;
  const Eigen::MatrixXd C = bundle.c_real();
  const Eigen::VectorXd a = bundle.a();
  const PeriodicFn ws = w_star(omega);
  for (const auto& f : w) {
    if (f.coeff(1) != 0.0) throw std::invalid_argument("remainders: w has a cos(omega t) mode");
  }

  // e^{v_mu} - 1 as a polynomial in eps (degrees 1..9) plus the scaled tail at degree 4.
  std::vector<EpsPoly> N(static_cast<size_t>(m));
  for (int mu = 0; mu < m; ++mu) {
    const PeriodicFn& w_mu = w[static_cast<size_t>(mu)];
    EpsPoly p{PeriodicFn(omega), ws * a[mu], w_mu, ws * b[mu]};
    EpsPoly p2 = poly_mul(p, p, opts);
    EpsPoly p3 = poly_mul(p2, p, opts);
    EpsPoly n = p;
    for (size_t k = 0; k < p2.size(); ++k) add_at(n, k, p2[k] * 0.5);
    for (size_t k = 0; k < p3.size(); ++k) add_at(n, k, p3[k] * (1.0 / 6.0));
    const PeriodicFn p_at_eps = ws * (a[mu] + eps * eps * b[mu]) + w_mu * eps;
    add_at(n, 4, scaled_exp_tail(p_at_eps, eps, opts));
    N[static_cast<size_t>(mu)] = std::move(n);
  }

  Remainders out;
  out.F0.resize(m);
  for (int j = 0; j < m; ++j) {
    EpsPoly S;
    for (int mu = 0; mu < m; ++mu) {
      if (C(j, mu) == 0.0) continue;
      const auto& n = N[static_cast<size_t>(mu)];
      for (size_t k = 0; k < n.size(); ++k) add_at(S, k, n[k] * C(j, mu));
    }
    // (1 + eps^2 tau) S
    EpsPoly G = S;
    for (size_t k = 0; k < S.size(); ++k) add_at(G, k + 2, S[k] * tau);
    PeriodicFn f1 = project_Yprime(poly_tail(G, 3, eps));
    f1.trim(opts.trim_rel);
    out.F1.push_back(std::move(f1));
    out.F0[j] = poly_tail(G, 4, eps).coeff(1);
  }
  return out;
}

FamilySolution iterate_family(double eps, const CMatrixBundle& bundle, const FamilyOptions& opts) {
  if (!std::isfinite(eps)) throw std::invalid_argument("eps must be finite");
  if (!(opts.tol > 0)) throw std::invalid_argument("tol must be positive");
  const int m = bundle.m;
  const Eigen::MatrixXd C = bundle.c_real();
  const Eigen::VectorXd a = bundle.a();
  const PeriodicFn ws = w_star(bundle.omega);
  const OffResonantSolver solver(bundle, opts.series.max_order);
  const LeadingTerms lt = leading_terms(bundle, opts.series);

  FamilySolution sol;
  sol.epsilon = eps;
  sol.tau = lt.tau0;
  sol.b = lt.b0;
  sol.w = lt.W;

  int growth_streak = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Remainders R = remainders(eps, sol.tau, sol.b, sol.w, bundle, opts.series);
    const std::vector<PeriodicFn> F2 = solver.solve(R.F1);

    Eigen::VectorXd f = lt.f0;
    for (int j = 0; j < m; ++j) {
      PeriodicFn coupling(bundle.omega);
      for (int mu = 0; mu < m; ++mu) {
        if (C(j, mu) == 0.0) continue;
        coupling += F2[static_cast<size_t>(mu)] * (C(j, mu) * a[mu]);
      }
      const double f3 = 0.5 * (multiply(ws, coupling, opts.series).coeff(1) + R.F0[j]);
      f[j] += eps * f3;
    }
    const BorderedSolution next = bordered_solve(f, bundle);

    std::vector<PeriodicFn> w_next;
    w_next.reserve(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) w_next.push_back(lt.W[static_cast<size_t>(j)] + F2[static_cast<size_t>(j)] * eps);

    const double delta = increment(next.tau - sol.tau, next.b - sol.b, w_next, sol.w);
    if (!std::isfinite(delta)) throw NoContraction("family iteration produced non-finite values");
    if (!sol.increments.empty() && delta >= sol.increments.back()) {
      if (++growth_streak >= 3)
        throw NoContraction("family iteration is not contracting at eps=" + std::to_string(eps));
    } else {
      growth_streak = 0;
    }
    sol.increments.push_back(delta);
    sol.tau = next.tau;
    sol.b = next.b;
    sol.w = std::move(w_next);
    sol.iterations = it;
    sol.final_delta = delta;
    if (delta < opts.tol) {
      sol.v = assemble_v(eps, sol.b, sol.w, bundle);
      sol.B_eff = bundle.b0 * (1.0 + eps * eps * sol.tau);
      if (!(sol.B_eff > 0)) throw NonConvergence("1 + eps^2 tau is not positive");
      return sol;
    }
  }
  throw NonConvergence("family iteration did not reach tol within " +
                       std::to_string(opts.max_iter) + " iterations");
}

double residual_check(const FamilySolution& sol, const CMatrixBundle& bundle,
                      const SeriesOptions& opts) {
  const int m = bundle.m;
  if (static_cast<int>(sol.v.size()) != m) throw std::invalid_argument("residual_check: bad v");
  const Eigen::MatrixXd C = bundle.c_real();
  std::vector<PeriodicFn> nl;
  nl.reserve(static_cast<size_t>(m));
  for (const auto& v : sol.v) nl.push_back(exp_remainder(v, 0, opts));
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    PeriodicFn r = -second_derivative(sol.v[static_cast<size_t>(j)]);
    for (int mu = 0; mu < m; ++mu) {
      if (C(j, mu) == 0.0) continue;
      r -= nl[static_cast<size_t>(mu)] * (sol.B_eff * C(j, mu));
    }
    worst = std::max(worst, norm_C(r));
  }
  return worst;
}

double max_contraction_ratio(const FamilySolution& sol, int from_iteration) {
  double worst = 0.0;
  // increments[k] belongs to iteration k+1; ratio at iteration j is inc[j-1]/inc[j-2].
  for (size_t k = static_cast<size_t>(std::max(from_iteration - 1, 1)); k < sol.increments.size(); ++k) {
    const double prev = sol.increments[k - 1];
    if (prev == 0.0) continue;
    worst = std::max(worst, sol.increments[k] / prev);
  }
  return worst;
}

double estimate_radius(const CMatrixBundle& bundle, double start, double ratio_limit,
                       int bisection_steps, const FamilyOptions& opts) {
  auto contracts = [&](double eps) {
    try {
      const auto sol = iterate_family(eps, bundle, opts);
      return max_contraction_ratio(sol, 3) <= ratio_limit;
    } catch (const Error&) {
      return false;
    }
  };
  double good = 0.0;
  double bad = start;
  if (contracts(start)) {
    good = start;
    bad = 2.0 * start;
    while (contracts(bad)) {
      good = bad;
      bad *= 2.0;
      if (bad > 64.0) return good;
    }
  }
  for (int s = 0; s < bisection_steps; ++s) {
    const double mid = 0.5 * (good + bad);
    (contracts(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace landau
