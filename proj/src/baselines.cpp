#include "mkc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mkc {
namespace {

// Accumulates sum_k X_k' diag(w_k) X_k and sum_k X_k' diag(w_k) y_k.
// weights == nullptr means identity weights.
void accumulate_normal(const Dataset& data, const Vector* prec_diag,
                       const std::vector<Vector>* weights, Matrix& lhs,
                       Vector& rhs) {
  const long n = data.param_dim();
  lhs = Matrix::Zero(n, n);
  rhs = Vector::Zero(n);
  for (long k = 0; k < data.sample_count(); ++k) {
    Vector w = Vector::Ones(data.output_dim());
    if (prec_diag != nullptr) {
      w.array() *= prec_diag->array();
    }
    if (weights != nullptr) {
      w.array() *= (*weights)[static_cast<std::size_t>(k)].array();
    }
    const Matrix xw = data.x(k).transpose() * w.asDiagonal();
    lhs.noalias() += xw * data.x(k);
    rhs.noalias() += xw * data.y(k);
  }
}

double quadratic_loss(const Dataset& data, const Vector& theta,
                      const Vector* prec_diag) {
  double acc = 0.0;
  for (long k = 0; k < data.sample_count(); ++k) {
    Vector e = data.y(k) - data.x(k) * theta;
    if (prec_diag != nullptr) {
      acc += e.dot(prec_diag->cwiseProduct(e));
    } else {
      acc += e.squaredNorm();
    }
  }
  return acc / (2.0 * static_cast<double>(data.sample_count()));
}

double absolute_loss(const Dataset& data, const Vector& theta) {
  double acc = 0.0;
  for (long k = 0; k < data.sample_count(); ++k) {
    acc += (data.y(k) - data.x(k) * theta).cwiseAbs().sum();
  }
  return acc;
}

}  // namespace

RegressionResult fit_ls(const Dataset& data, const SolverConfig& config) {
  config.validate();
  Matrix lhs;
  Vector rhs;
  accumulate_normal(data, nullptr, nullptr, lhs, rhs);
  RegressionResult out;
  out.theta = detail::solve_spd(lhs, rhs, config.ridge_guard);
  out.iterations = 1;
  out.converged = true;
  out.loss_trace = {quadratic_loss(data, out.theta, nullptr)};
  return out;
}

RegressionResult fit_wls(const Dataset& data, const PrecisionSpec& prec,
                         const SolverConfig& config) {
  config.validate();
  if (prec.channels() != data.output_dim()) {
    throw InputError("fit_wls: precision channel count mismatch");
  }
  const Vector p = prec.precision_diag();
  Matrix lhs;
  Vector rhs;
  accumulate_normal(data, &p, nullptr, lhs, rhs);
  RegressionResult out;
  out.theta = detail::solve_spd(lhs, rhs, config.ridge_guard);
  out.iterations = 1;
  out.converged = true;
  out.loss_trace = {quadratic_loss(data, out.theta, &p)};
  return out;
}

RegressionResult fit_ridge(const Dataset& data, const PrecisionSpec& prec,
                           double lambda, const SolverConfig& config) {
  config.validate();
  if (lambda < 0.0) {
    throw InputError("fit_ridge: lambda must be nonnegative");
  }
  if (prec.channels() != data.output_dim()) {
    throw InputError("fit_ridge: precision channel count mismatch");
  }
  const Vector p = prec.precision_diag();
  Matrix lhs;
  Vector rhs;
  accumulate_normal(data, &p, nullptr, lhs, rhs);
  lhs.diagonal().array() += lambda;
  RegressionResult out;
  out.theta = detail::solve_spd(lhs, rhs, config.ridge_guard);
  out.iterations = 1;
  out.converged = true;
  out.loss_trace = {quadratic_loss(data, out.theta, &p) +
                    lambda * out.theta.squaredNorm()};
  return out;
}

RegressionResult fit_lad(const Dataset& data, const SolverConfig& config) {
  config.validate();
  if (data.sample_count() * data.output_dim() <= data.param_dim()) {
    throw InputError("fit_lad: needs N*m > n samples");
  }

  // Smoothing floor keeps the reweighting finite at interpolated points.
  std::vector<double> abs_y;
  abs_y.reserve(
      static_cast<std::size_t>(data.sample_count() * data.output_dim()));
  for (long k = 0; k < data.sample_count(); ++k) {
    for (long i = 0; i < data.output_dim(); ++i) {
      abs_y.push_back(std::fabs(data.y(k)[i]));
    }
  }
  std::nth_element(abs_y.begin(), abs_y.begin() + abs_y.size() / 2,
                   abs_y.end());
  const double delta = 1e-6 * (abs_y[abs_y.size() / 2] + 1.0);

  RegressionResult out;
  out.theta = fit_ls(data, config).theta;
  std::vector<Vector> weights(
      static_cast<std::size_t>(data.sample_count()));
  for (long t = 0; t < config.max_fixed_point_iters; ++t) {
    for (long k = 0; k < data.sample_count(); ++k) {
      const Vector e = data.y(k) - data.x(k) * out.theta;
      weights[static_cast<std::size_t>(k)] =
          e.cwiseAbs().cwiseMax(delta).cwiseInverse();
    }
    Matrix lhs;
    Vector rhs;
    accumulate_normal(data, nullptr, &weights, lhs, rhs);
    const Vector next = detail::solve_spd(lhs, rhs, config.ridge_guard);

    const double denom = out.theta.norm();
    const double update = (next - out.theta).norm();
    out.theta = next;
    ++out.iterations;
    out.loss_trace.push_back(absolute_loss(data, out.theta));
    if ((denom > 0.0 && update / denom <= config.psi) ||
        (denom == 0.0 && update <= config.psi)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace mkc
