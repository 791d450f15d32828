#pragma once

#include <vector>

#include "mkc/types.hpp"

namespace mkc {

struct EmIterate {
  Vector theta;
  std::vector<ChannelParams> channels;
  double loglik = 0.0;
};

struct EmResult {
  RegressionResult fit;                // final fixed-point fit
  std::vector<ChannelParams> channels;
  std::vector<EmIterate> trace;        // index 0 = initialization
  std::vector<double> loglik_trace;    // one entry per trace element
  long outer_iterations = 0;
  bool em_converged = false;           // early stop hit before the cap
};

// Channel initialization when nothing is known a priori: sigma0 everywhere,
// d from the per-channel residual RMS of the least-squares fit.
std::vector<ChannelParams> default_init_channels(const Dataset& data,
                                                 double sigma0 = 20.0,
                                                 const SolverConfig& config = {});

// Alternating estimation: theta from the fixed-point solver under the
// current channels, channels from per-channel quasi-Newton likelihood
// optimization at the current theta. Stops early once the joint
// log-likelihood improves by less than 1e-8. A failed channel optimization
// keeps that channel's previous parameters and continues.
EmResult fit_mkc_em(const Dataset& data,
                    const std::vector<ChannelParams>& init_channels,
                    const SolverConfig& config = {}, bool freeze_d = false);

}  // namespace mkc
