#pragma once

#include <optional>
#include <vector>

#include "mkc/types.hpp"

namespace mkc {

// Multi-kernel correntropy loss sum_i sigma_i^2 (1 - (1/N) sum_k
// G_{sigma_i}(e_k(i)/d_i)). Zero at a perfect fit, bounded by sum_i
// sigma_i^2.
double mkcl_loss(const Dataset& data, const Vector& theta,
                 const std::vector<ChannelParams>& channels);

// Diagonal of W_k: w_i = exp(-e_tilde(i)^2 / (2 sigma_i^2)), clamped to
// [1e-300, 1] so fully rejected blocks keep a solvable normal matrix.
Vector kernel_weights(const Vector& e_tilde,
                      const std::vector<ChannelParams>& channels);

// One substitution of the fixed-point map: solves
// [sum_k X_k' P W_k X_k] theta = [sum_k X_k' P W_k y_k] with W_k evaluated
// at the input theta.
Vector fixed_point_step(const Dataset& data, const Vector& theta,
                        const PrecisionSpec& prec,
                        const std::vector<ChannelParams>& channels,
                        const SolverConfig& config = {});

// Fixed-point iteration until the relative theta update drops below psi
// (absolute when the previous iterate is zero) or the iteration cap.
// theta0 defaults to the weighted least-squares fit.
RegressionResult fit_mkc(const Dataset& data, const PrecisionSpec& prec,
                         const std::vector<ChannelParams>& channels,
                         const SolverConfig& config = {},
                         std::optional<Vector> theta0 = {});

}  // namespace mkc
