#include "mkc/param_opt.hpp"

#include <cmath>
#include <functional>

#include "mkc/distribution.hpp"

namespace mkc {
namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr int kMaxBacktracks = 50;

// Central finite differences; the step rides on the adaptive quadrature
// inside the objective, which converges well past its nominal tolerance.
Vector fd_gradient(const std::function<double(const Vector&)>& f,
                   const Vector& z) {
  Vector g(z.size());
  Vector probe = z;
  for (long j = 0; j < z.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::fabs(z[j]));
    probe[j] = z[j] + h;
    const double hi = f(probe);
    probe[j] = z[j] - h;
    const double lo = f(probe);
    probe[j] = z[j];
    g[j] = (hi - lo) / (2.0 * h);
  }
  return g;
}

}  // namespace

double channel_objective(const Vector& channel_errors, double sigma, double d,
                         double a) {
  if (!(sigma > 0.0) || !(d > 0.0) || !(a > 0.0)) {
    throw InputError("channel_objective: sigma, d, a must be positive");
  }
  const double c = normalization_constant(sigma, d, a);
  const double s2 = sigma * sigma;
  double penalty = 0.0;
  for (long k = 0; k < channel_errors.size(); ++k) {
    const double u = channel_errors[k] / d;
    penalty += -std::expm1(-u * u / (2.0 * s2));
  }
  const double n = static_cast<double>(channel_errors.size());
  return n * (std::log(d) - std::log(c)) + s2 * penalty;
}

ChannelOptResult optimize_channel(const Vector& channel_errors,
                                  const ChannelParams& init,
                                  const SolverConfig& config, bool freeze_d) {
  config.validate();
  if (channel_errors.size() < 3) {
    throw InputError("optimize_channel: needs at least 3 residuals");
  }

  const double a =
      default_half_width(channel_errors.cwiseAbs().maxCoeff(), init.d());
  const long dim = freeze_d ? 1 : 2;
  const double fixed_d = init.d();

  auto objective = [&](const Vector& z) {
    const double sigma = std::exp(z[0]);
    const double d = freeze_d ? fixed_d : std::exp(z[1]);
    return channel_objective(channel_errors, sigma, d, a);
  };

  Vector z(dim);
  z[0] = std::log(init.sigma());
  if (!freeze_d) {
    z[1] = std::log(init.d());
  }
  double fz = objective(z);

  ChannelOptResult out{ChannelParams(init.sigma(), init.d(), a), false, 0, {fz}};
  Matrix hessian_inv = Matrix::Identity(dim, dim);

  for (long t = 0; t < config.bfgs_max_iters; ++t) {
    const Vector grad = fd_gradient(objective, z);
    if (grad.norm() <= config.grad_tol) {
      out.converged = true;
      break;
    }

    Vector direction = -(hessian_inv * grad);
    if (direction.dot(grad) >= 0.0) {
      hessian_inv.setIdentity();
      direction = -grad;
    }

    const double slope = grad.dot(direction);
    double alpha = 1.0;
    double f_next = fz;
    bool accepted = false;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      f_next = objective(z + alpha * direction);
      if (f_next <= fz + kArmijoSlope * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      break;  // best accepted point so far is returned, flagged unconverged
    }

    const Vector step = alpha * direction;
    const Vector z_next = z + step;
    ++out.iterations;
    out.objective_trace.push_back(f_next);

    const Vector grad_next = fd_gradient(objective, z_next);
    const Vector y = grad_next - grad;
    const double sy = step.dot(y);
    if (sy <= 1e-12) {
      hessian_inv.setIdentity();
    } else {
      const Vector hy = hessian_inv * y;
      hessian_inv += ((sy + y.dot(hy)) / (sy * sy)) * (step * step.transpose());
      hessian_inv -= (hy * step.transpose() + step * hy.transpose()) / sy;
    }

    z = z_next;
    fz = f_next;
    if (step.norm() <= config.step_tol) {
      out.converged = true;
      break;
    }
  }

  const double sigma_out = std::exp(z[0]);
  const double d_out = freeze_d ? fixed_d : std::exp(z[1]);
  out.params = ChannelParams(sigma_out, d_out, a);
  return out;
}

}  // namespace mkc
