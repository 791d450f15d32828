#pragma once

#include <vector>

#include "mkc/types.hpp"

namespace mkc {

// Negative truncated log-likelihood of one channel's residuals:
// -sum_k [log(c/d) - sigma^2 (1 - exp(-e_k^2 / (2 d^2 sigma^2)))]
// with c the normalization constant for (sigma, d, a).
double channel_objective(const Vector& channel_errors, double sigma, double d,
                         double a);

struct ChannelOptResult {
  ChannelParams params;
  bool converged = false;
  long iterations = 0;
  std::vector<double> objective_trace;  // objective at accepted iterates
};

// Minimizes channel_objective over z = (log sigma, log d) with BFGS and a
// backtracking Armijo line search. The truncation half-width a is set from
// the residuals on entry and held fixed for the whole call. freeze_d pins d
// at its initial value and optimizes the bandwidth alone.
ChannelOptResult optimize_channel(const Vector& channel_errors,
                                  const ChannelParams& init,
                                  const SolverConfig& config = {},
                                  bool freeze_d = false);

}  // namespace mkc
