#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mkc/types.hpp"

namespace mkc {

// Inputs of the scalar-regression error bound: N total samples of which
// M > N/2 have normalized noise bounded by epsilon, regressors bounded away
// from zero by zeta, nominal standard deviation d, kernel bandwidth sigma.
struct BoundSpec {
  long n_total = 0;       // N
  long m_inliers = 0;     // M = |I(eps)|
  double epsilon = 0.0;
  double zeta = 1.0;
  double d = 1.0;
  double sigma = 1.0;

  double q() const {
    return static_cast<double>(n_total - m_inliers) /
           static_cast<double>(m_inliers);
  }
  // Smallest admissible bandwidth eps / sqrt(2 log(M/(N-M))).
  double admissible_sigma_min() const;
  // Throws AdmissibilityError naming the violated inequality.
  void validate() const;
};

// phi(p) = p log(p) / ((p - q) log(p - q)) on q < p < 1; its unit level set
// marks the bandwidth with the lowest upper error bound.
double phi(double p, double q);

// Upper bound xi on |theta - theta_true| for the admissible spec:
// (d/zeta) (sqrt(-2 sigma^2 log(exp(-eps^2/(2 sigma^2)) - (N-M)/M)) + eps).
double error_bound(const BoundSpec& spec);

// error_bound evaluated along a bandwidth grid (epsilon must be positive).
std::vector<std::pair<double, double>> bound_curve(
    const BoundSpec& base, const std::vector<double>& sigma_grid);

// Bandwidth solving phi(p(sigma)) = 1 by bisection; requires epsilon > 0.
double optimal_sigma(const BoundSpec& base);

struct BoundValidation {
  long solver_violations = 0;  // fixed-point fit landed outside the bound
  long violations = 0;         // still outside after the brute-force refit
  double max_ratio = 0.0;      // max |theta - theta_true| / xi over trials
};

// Monte-Carlo check of the bound: seeded trials with |x_k| > zeta, inliers
// |v_k/d| <= eps, and gross outliers of the given magnitude. Fits with the
// fixed-point solver initialized from the LAD estimate; apparent violations
// are re-checked against a dense scalar grid minimum of the loss so solver
// failures are not misread as bound counterexamples. outlier_count defaults
// to N - M.
BoundValidation validate_bound_empirically(const BoundSpec& spec, long trials,
                                           std::uint64_t seed,
                                           double outlier_magnitude = 1e3,
                                           long outlier_count = -1);

}  // namespace mkc
