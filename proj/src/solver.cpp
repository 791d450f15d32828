#include "mkc/solver.hpp"

#include <cmath>
#include <string>

#include "mkc/baselines.hpp"
#include "mkc/distribution.hpp"

namespace mkc {
namespace {

void check_channels(const Dataset& data,
                    const std::vector<ChannelParams>& channels,
                    const char* who) {
  if (static_cast<long>(channels.size()) != data.output_dim()) {
    throw InputError(std::string(who) +
                     ": one ChannelParams per output channel required");
  }
}

}  // namespace

double mkcl_loss(const Dataset& data, const Vector& theta,
                 const std::vector<ChannelParams>& channels) {
  check_channels(data, channels, "mkcl_loss");
  const double inv_n = 1.0 / static_cast<double>(data.sample_count());
  double loss = 0.0;
  for (long i = 0; i < data.output_dim(); ++i) {
    const ChannelParams& ch = channels[static_cast<std::size_t>(i)];
    const double s2 = ch.sigma() * ch.sigma();
    double acc = 0.0;
    for (long k = 0; k < data.sample_count(); ++k) {
      const double e = data.y(k)[i] - data.x(k).row(i).dot(theta);
      const double u = e / ch.d();
      // 1 - G(u) through expm1; plain subtraction cancels for large sigma.
      acc += -std::expm1(-u * u / (2.0 * s2));
    }
    loss += s2 * acc * inv_n;
  }
  return loss;
}

Vector kernel_weights(const Vector& e_tilde,
                      const std::vector<ChannelParams>& channels) {
  if (e_tilde.size() != static_cast<long>(channels.size())) {
    throw InputError("kernel_weights: channel count mismatch");
  }
  Vector w(e_tilde.size());
  for (long i = 0; i < e_tilde.size(); ++i) {
    const double sigma = channels[static_cast<std::size_t>(i)].sigma();
    const double g = std::exp(-e_tilde[i] * e_tilde[i] / (2.0 * sigma * sigma));
    w[i] = std::max(g, 1e-300);
  }
  return w;
}

Vector fixed_point_step(const Dataset& data, const Vector& theta,
                        const PrecisionSpec& prec,
                        const std::vector<ChannelParams>& channels,
                        const SolverConfig& config) {
  check_channels(data, channels, "fixed_point_step");
  if (prec.channels() != data.output_dim()) {
    throw InputError("fixed_point_step: precision channel count mismatch");
  }
  const long n = data.param_dim();
  const Vector p = prec.precision_diag();
  Matrix lhs = Matrix::Zero(n, n);
  Vector rhs = Vector::Zero(n);
  Vector e_tilde(data.output_dim());
  for (long k = 0; k < data.sample_count(); ++k) {
    const Vector e = data.y(k) - data.x(k) * theta;
    for (long i = 0; i < data.output_dim(); ++i) {
      e_tilde[i] = e[i] / channels[static_cast<std::size_t>(i)].d();
    }
    const Vector pw = p.cwiseProduct(kernel_weights(e_tilde, channels));
    const Matrix xw = data.x(k).transpose() * pw.asDiagonal();
    lhs.noalias() += xw * data.x(k);
    rhs.noalias() += xw * data.y(k);
  }
  return detail::solve_spd(lhs, rhs, config.ridge_guard);
}

RegressionResult fit_mkc(const Dataset& data, const PrecisionSpec& prec,
                         const std::vector<ChannelParams>& channels,
                         const SolverConfig& config,
                         std::optional<Vector> theta0) {
  config.validate();
  check_channels(data, channels, "fit_mkc");

  RegressionResult out;
  out.theta = theta0.has_value() ? std::move(*theta0)
                                 : fit_wls(data, prec, config).theta;
  if (out.theta.size() != data.param_dim()) {
    throw InputError("fit_mkc: theta0 length does not match the dataset");
  }

  for (long t = 0; t < config.max_fixed_point_iters; ++t) {
    const Vector next = fixed_point_step(data, out.theta, prec, channels, config);
    const double denom = out.theta.norm();
    const double update = (next - out.theta).norm();
    out.theta = next;
    ++out.iterations;
    out.loss_trace.push_back(mkcl_loss(data, out.theta, channels));
    if ((denom > 0.0 && update / denom <= config.psi) ||
        (denom == 0.0 && next.norm() <= config.psi)) {
      out.converged = true;
      break;
    }
  }
  out.loglik = log_likelihood(data, out.theta, channels).value;
  return out;
}

}  // namespace mkc
