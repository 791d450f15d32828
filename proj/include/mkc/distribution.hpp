#pragma once

#include <vector>

#include "mkc/types.hpp"

namespace mkc {

// Truncation half-width rule applied whenever channel parameters are
// (re)estimated: 1.2 * max_k |e_k(i)|, floored at 10 * d so the domain never
// collapses on near-perfect fits.
double default_half_width(double max_abs_residual, double d);

// c such that the induced density (c/d) exp(-sigma^2 (1 - exp(-e^2 /
// (2 d^2 sigma^2)))) integrates to 1 over [-a, a]. Throws NumericError when
// the integral underflows or is non-finite.
double normalization_constant(double sigma, double d, double a);

// Induced heavy-tailed density, truncated to [-a, a].
double pdf(double e, const ChannelParams& params);

// log pdf for |e| <= a; callers handle out-of-domain policy.
double log_pdf(double e, const ChannelParams& params);

struct LogLikelihood {
  double value = 0.0;  // (1/N) sum_k sum_i log p(e_k(i))
  long clamped = 0;    // residuals outside [-a_i, a_i], scored at the boundary
};

// Mean over samples of log pdf; residuals beyond the truncation domain
// contribute the boundary value log pdf(a) and are counted via *clamped.
double mean_log_pdf(const Vector& channel_errors, const ChannelParams& params,
                    long* clamped = nullptr);

// Mean over samples of the Gaussian log density with standard deviation d.
double mean_log_gaussian(const Vector& channel_errors, double d);

LogLikelihood log_likelihood(const Dataset& data, const Vector& theta,
                             const std::vector<ChannelParams>& channels);

double gaussian_log_likelihood(const Dataset& data, const Vector& theta,
                               const PrecisionSpec& prec);

// Literal reading of the figure-caption score (mean of densities rather
// than mean of log densities); exposed for plot reproduction only.
double mean_density(const Dataset& data, const Vector& theta,
                    const std::vector<ChannelParams>& channels);

}  // namespace mkc
