#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mkc/errors.hpp"

namespace mkc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Regression samples {(X_k, y_k)}, k = 1..N, with shared output dimension m
// and parameter dimension n. Blocks are stored per sample so per-channel
// weight matrices apply blockwise; stacked forms are materialized on demand.
// Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<Matrix> inputs, std::vector<Vector> outputs);

  long sample_count() const { return static_cast<long>(x_.size()); }
  long output_dim() const { return m_; }
  long param_dim() const { return n_; }

  const Matrix& x(long k) const { return x_[static_cast<std::size_t>(k)]; }
  const Vector& y(long k) const { return y_[static_cast<std::size_t>(k)]; }

  Matrix stacked_x() const;  // (N*m) x n
  Vector stacked_y() const;  // (N*m)

 private:
  std::vector<Matrix> x_;
  std::vector<Vector> y_;
  long m_ = 0;
  long n_ = 0;
};

// Per-channel nominal standard deviations d_i > 0; the precision matrix is
// P = diag(1/d_i^2).
class PrecisionSpec {
 public:
  explicit PrecisionSpec(Vector d);
  static PrecisionSpec uniform(long channels, double d = 1.0);

  long channels() const { return d_.size(); }
  double d(long i) const { return d_[i]; }
  const Vector& d_vec() const { return d_; }
  Vector precision_diag() const;  // 1/d_i^2

 private:
  Vector d_;
};

// Correntropy parameters for one channel: kernel bandwidth sigma, nominal
// standard deviation d, truncation half-width a of the induced density, and
// its normalization constant c. c is computed on construction, so it always
// matches (sigma, d, a); changing a parameter means constructing a new value.
class ChannelParams {
 public:
  ChannelParams(double sigma, double d, double a);

  double sigma() const { return sigma_; }
  double d() const { return d_; }
  double a() const { return a_; }
  double c() const { return c_; }

 private:
  double sigma_;
  double d_;
  double a_;
  double c_;
};

// Tolerances and iteration caps shared by the solvers.
struct SolverConfig {
  double psi = 1e-6;                 // fixed-point relative-update stop
  long max_fixed_point_iters = 100;
  long em_iters = 10;
  long bfgs_max_iters = 200;
  double grad_tol = 1e-6;            // BFGS gradient-norm stop (nu1)
  double step_tol = 1e-8;            // BFGS step-norm stop (nu2)
  double ridge_guard = 1e-12;        // scaled by trace(X'PX)/n before use

  void validate() const;
};

struct RegressionResult {
  Vector theta;
  long iterations = 0;
  bool converged = false;
  std::vector<double> loss_trace;  // one entry per iteration
  std::optional<double> loglik;    // filled when channel params are in play
};

// e_k = y_k - X_k theta for every sample, in order.
std::vector<Vector> residuals(const Dataset& data, const Vector& theta);

// Elementwise e_k(i) / d_i.
std::vector<Vector> weighted_residuals(const std::vector<Vector>& errors,
                                       const PrecisionSpec& prec);

// Gathers e_k(i) over k for one channel.
Vector channel_residuals(const std::vector<Vector>& errors, long channel);

namespace detail {

// Solves (lhs + ridge * trace(lhs)/n * I) x = rhs with lhs symmetric
// positive semidefinite. Throws SingularMatrixError (naming the condition
// number) when the system stays singular after the guard.
Vector solve_spd(const Matrix& lhs, const Vector& rhs, double ridge_guard);

}  // namespace detail

}  // namespace mkc
