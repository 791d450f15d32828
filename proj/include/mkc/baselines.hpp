#pragma once

#include "mkc/types.hpp"

namespace mkc {

// Ordinary least squares via the normal equations.
RegressionResult fit_ls(const Dataset& data, const SolverConfig& config = {});

// Weighted least squares with precision diag(1/d_i^2).
RegressionResult fit_wls(const Dataset& data, const PrecisionSpec& prec,
                         const SolverConfig& config = {});

// Weighted quadratic loss plus lambda * ||theta||^2; lambda = 0 reduces to
// fit_wls.
RegressionResult fit_ridge(const Dataset& data, const PrecisionSpec& prec,
                           double lambda, const SolverConfig& config = {});

// Least absolute deviation by iteratively reweighted least squares with
// weights 1/max(|e|, delta), initialized from the unweighted LS fit.
RegressionResult fit_lad(const Dataset& data, const SolverConfig& config = {});

}  // namespace mkc
