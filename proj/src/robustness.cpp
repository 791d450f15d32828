#include "mkc/robustness.hpp"

#include <cmath>
#include <string>

#include "mkc/baselines.hpp"
#include "mkc/distribution.hpp"
#include "mkc/rng.hpp"
#include "mkc/solver.hpp"

namespace mkc {
namespace {

// log(exp(-eps^2/(2 sigma^2)) - q) written as log((1-q) + expm1(-x)) so the
// near-cancellation at large sigma stays accurate.
double log_p_minus_q(double epsilon, double sigma, double q) {
  const double x = epsilon * epsilon / (2.0 * sigma * sigma);
  return std::log((1.0 - q) + std::expm1(-x));
}

double xi_from_log(double lpq, const BoundSpec& spec) {
  return spec.d / spec.zeta *
         (spec.sigma * std::sqrt(-2.0 * lpq) + spec.epsilon);
}

// Dense scan plus golden-section polish of the scalar MKC loss; used to
// separate solver failures from genuine bound violations.
double grid_minimize_loss(const Dataset& data, double lo, double hi,
                          const std::vector<ChannelParams>& channels) {
  auto loss = [&](double theta) {
    return mkcl_loss(data, Vector::Constant(1, theta), channels);
  };
  const long cells = 4000;
  double best = lo;
  double best_loss = loss(lo);
  for (long j = 1; j <= cells; ++j) {
    const double theta = lo + (hi - lo) * static_cast<double>(j) /
                                  static_cast<double>(cells);
    const double value = loss(theta);
    if (value < best_loss) {
      best_loss = value;
      best = theta;
    }
  }
  const double cell = (hi - lo) / static_cast<double>(cells);
  double a = best - cell;
  double b = best + cell;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = loss(x1);
  double f2 = loss(x2);
  while (b - a > 1e-12 * (1.0 + std::fabs(best))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = loss(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = loss(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double BoundSpec::admissible_sigma_min() const {
  const double ratio = static_cast<double>(m_inliers) /
                       static_cast<double>(n_total - m_inliers);
  return epsilon / std::sqrt(2.0 * std::log(ratio));
}

void BoundSpec::validate() const {
  if (n_total <= m_inliers) {
    throw AdmissibilityError("bound spec violates N > M");
  }
  if (2 * m_inliers <= n_total) {
    throw AdmissibilityError("bound spec violates M > N/2");
  }
  if (epsilon < 0.0) {
    throw AdmissibilityError("bound spec violates eps >= 0");
  }
  if (!(zeta > 0.0)) {
    throw AdmissibilityError("bound spec violates zeta > 0");
  }
  if (!(d > 0.0)) {
    throw AdmissibilityError("bound spec violates d > 0");
  }
  if (!(sigma > admissible_sigma_min())) {
    throw AdmissibilityError(
        "bound spec violates sigma > eps/sqrt(2 log(M/(N-M))) "
        "(admissible minimum " +
        std::to_string(admissible_sigma_min()) + ")");
  }
}

double phi(double p, double q) {
  if (!(q > 0.0) || !(q < p) || !(p < 1.0)) {
    throw InputError("phi: requires 0 < q < p < 1");
  }
  return p * std::log(p) / ((p - q) * std::log(p - q));
}

double error_bound(const BoundSpec& spec) {
  spec.validate();
  const double lpq = log_p_minus_q(spec.epsilon, spec.sigma, spec.q());
  return xi_from_log(lpq, spec);
}

std::vector<std::pair<double, double>> bound_curve(
    const BoundSpec& base, const std::vector<double>& sigma_grid) {
  if (!(base.epsilon > 0.0)) {
    throw InputError("bound_curve: requires epsilon > 0");
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(sigma_grid.size());
  for (const double sigma : sigma_grid) {
    BoundSpec spec = base;
    spec.sigma = sigma;
    curve.emplace_back(sigma, error_bound(spec));
  }
  return curve;
}

double optimal_sigma(const BoundSpec& base) {
  if (!(base.epsilon > 0.0)) {
    throw InputError("optimal_sigma: requires epsilon > 0");
  }
  BoundSpec spec = base;
  spec.sigma = std::max(base.admissible_sigma_min() * 2.0, 1.0);
  spec.validate();

  const double q = spec.q();
  // phi(p(sigma)) falls monotonically from +inf at the admissible edge to 0;
  // bisect phi - 1 on sigma.
  auto phi_minus_one = [&](double sigma) {
    const double x = spec.epsilon * spec.epsilon / (2.0 * sigma * sigma);
    const double p = std::exp(-x);
    const double lpq = log_p_minus_q(spec.epsilon, sigma, q);
    return p * (-x) / ((p - q) * lpq) - 1.0;
  };

  double lo = base.admissible_sigma_min() * (1.0 + 1e-12);
  double hi = 1e8;
  if (!(phi_minus_one(lo) > 0.0) || !(phi_minus_one(hi) < 0.0)) {
    throw InputError("optimal_sigma: no root in the admissible interval");
  }
  while (hi - lo > 1e-10 * lo) {
    const double mid = 0.5 * (lo + hi);
    if (phi_minus_one(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BoundValidation validate_bound_empirically(const BoundSpec& spec, long trials,
                                           std::uint64_t seed,
                                           double outlier_magnitude,
                                           long outlier_count) {
  spec.validate();
  const double xi = error_bound(spec);
  const long n = spec.n_total;
  const long n_out = outlier_count >= 0 ? outlier_count : n - spec.m_inliers;
  if (n_out < 0 || n_out > n) {
    throw InputError("validate_bound_empirically: bad outlier count");
  }
  const double theta_true = 1.0;
  const SolverConfig config;

  BoundValidation out;
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(seed + static_cast<std::uint64_t>(trial));
    std::vector<Matrix> xs;
    std::vector<Vector> ys;
    xs.reserve(static_cast<std::size_t>(n));
    ys.reserve(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) {
      const double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
      const double x = sign * spec.zeta * (1.0 + rng.uniform01());
      double v;
      if (k < n - n_out) {
        v = spec.d * spec.epsilon * rng.uniform(-1.0, 1.0);
      } else {
        const double out_sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
        v = out_sign * outlier_magnitude * rng.uniform(0.5, 1.0);
      }
      xs.push_back(Matrix::Constant(1, 1, x));
      ys.push_back(Vector::Constant(1, x * theta_true + v));
    }
    const Dataset data(std::move(xs), std::move(ys));

    const Vector theta_lad = fit_lad(data, config).theta;
    const auto errors = residuals(data, theta_lad);
    const double max_abs = channel_residuals(errors, 0).cwiseAbs().maxCoeff();
    const std::vector<ChannelParams> channels{
        ChannelParams(spec.sigma, spec.d, default_half_width(max_abs, spec.d))};
    const PrecisionSpec prec(Vector::Constant(1, spec.d));

    double theta = fit_mkc(data, prec, channels, config, theta_lad).theta[0];
    double err = std::fabs(theta - theta_true);
    if (err > xi) {
      ++out.solver_violations;
      const double reach = std::max(2.0 * xi + 1.0, err + 1.0);
      theta = grid_minimize_loss(data, theta_true - reach, theta_true + reach,
                                 channels);
      err = std::fabs(theta - theta_true);
      if (err > xi) {
        ++out.violations;
      }
    }
    out.max_ratio = std::max(out.max_ratio, err / xi);
  }
  return out;
}

}  // namespace mkc
