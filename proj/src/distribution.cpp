#include "mkc/distribution.hpp"

#include <cmath>
#include <string>

#include "mkc/quadrature.hpp"

namespace mkc {
namespace {

// Unnormalized shape in weighted units: exp(-sigma^2 (1 - exp(-u^2 /
// (2 sigma^2)))), written through expm1 so the sigma -> infinity limit does
// not lose precision to cancellation.
double shape_log(double u, double sigma) {
  const double s2 = sigma * sigma;
  return s2 * std::expm1(-u * u / (2.0 * s2));
}

void check_positive(double sigma, double d, double a, const char* who) {
  if (!(sigma > 0.0) || !(d > 0.0) || !(a > 0.0)) {
    throw InputError(std::string(who) + ": sigma, d, a must be positive");
  }
}

}  // namespace

double default_half_width(double max_abs_residual, double d) {
  if (!(d > 0.0)) {
    throw InputError("default_half_width: d must be positive");
  }
  return std::max(1.2 * max_abs_residual, 10.0 * d);
}

double normalization_constant(double sigma, double d, double a) {
  check_positive(sigma, d, a, "normalization_constant");
  // Substituting u = e/d turns the integral into d * I(sigma, a/d), so c is
  // dimensionless and c(sigma, d, a) == c(sigma, 1, a/d). The integrand is
  // even; integrate [0, a/d] and double.
  const double u_max = a / d;
  const double integral =
      2.0 * integrate([sigma](double u) { return std::exp(shape_log(u, sigma)); },
                      0.0, u_max, 1e-10);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw NumericError("normalization_constant: truncated-density integral "
                       "underflowed or diverged");
  }
  return 1.0 / integral;
}

double pdf(double e, const ChannelParams& params) {
  if (std::fabs(e) > params.a()) {
    return 0.0;
  }
  return params.c() / params.d() * std::exp(shape_log(e / params.d(), params.sigma()));
}

double log_pdf(double e, const ChannelParams& params) {
  return std::log(params.c()) - std::log(params.d()) +
         shape_log(e / params.d(), params.sigma());
}

double mean_log_pdf(const Vector& channel_errors, const ChannelParams& params,
                    long* clamped) {
  double sum = 0.0;
  long out_of_domain = 0;
  for (long k = 0; k < channel_errors.size(); ++k) {
    double e = channel_errors[k];
    if (std::fabs(e) > params.a()) {
      e = params.a();
      ++out_of_domain;
    }
    sum += log_pdf(e, params);
  }
  if (clamped != nullptr) {
    *clamped += out_of_domain;
  }
  return sum / static_cast<double>(channel_errors.size());
}

double mean_log_gaussian(const Vector& channel_errors, double d) {
  if (!(d > 0.0)) {
    throw InputError("mean_log_gaussian: d must be positive");
  }
  const double log_norm = -0.5 * std::log(2.0 * M_PI) - std::log(d);
  double sum = 0.0;
  for (long k = 0; k < channel_errors.size(); ++k) {
    const double u = channel_errors[k] / d;
    sum += log_norm - 0.5 * u * u;
  }
  return sum / static_cast<double>(channel_errors.size());
}

LogLikelihood log_likelihood(const Dataset& data, const Vector& theta,
                             const std::vector<ChannelParams>& channels) {
  if (static_cast<long>(channels.size()) != data.output_dim()) {
    throw InputError("log_likelihood: one ChannelParams per output channel");
  }
  const auto errors = residuals(data, theta);
  LogLikelihood out;
  for (long i = 0; i < data.output_dim(); ++i) {
    out.value += mean_log_pdf(channel_residuals(errors, i),
                              channels[static_cast<std::size_t>(i)],
                              &out.clamped);
  }
  return out;
}

double gaussian_log_likelihood(const Dataset& data, const Vector& theta,
                               const PrecisionSpec& prec) {
  if (prec.channels() != data.output_dim()) {
    throw InputError("gaussian_log_likelihood: channel count mismatch");
  }
  const auto errors = residuals(data, theta);
  double sum = 0.0;
  for (long i = 0; i < data.output_dim(); ++i) {
    sum += mean_log_gaussian(channel_residuals(errors, i), prec.d(i));
  }
  return sum;
}

double mean_density(const Dataset& data, const Vector& theta,
                    const std::vector<ChannelParams>& channels) {
  if (static_cast<long>(channels.size()) != data.output_dim()) {
    throw InputError("mean_density: one ChannelParams per output channel");
  }
  const auto errors = residuals(data, theta);
  double sum = 0.0;
  for (const auto& e : errors) {
    for (long i = 0; i < e.size(); ++i) {
      sum += pdf(e[i], channels[static_cast<std::size_t>(i)]);
    }
  }
  return sum / static_cast<double>(data.sample_count());
}

}  // namespace mkc
