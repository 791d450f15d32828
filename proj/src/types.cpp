#include "mkc/types.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mkc/distribution.hpp"

namespace mkc {

Dataset::Dataset(std::vector<Matrix> inputs, std::vector<Vector> outputs)
    : x_(std::move(inputs)), y_(std::move(outputs)) {
  if (x_.empty() || x_.size() != y_.size()) {
    throw InputError("Dataset: needs N >= 1 samples with matching X_k, y_k");
  }
  m_ = x_.front().rows();
  n_ = x_.front().cols();
  if (m_ < 1 || n_ < 1) {
    throw InputError("Dataset: m and n must be at least 1");
  }
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (x_[k].rows() != m_ || x_[k].cols() != n_ || y_[k].size() != m_) {
      throw InputError("Dataset: block " + std::to_string(k) +
                       " has inconsistent dimensions");
    }
    if (!x_[k].allFinite() || !y_[k].allFinite()) {
      throw InputError("Dataset: block " + std::to_string(k) +
                       " contains non-finite entries");
    }
  }
}

Matrix Dataset::stacked_x() const {
  Matrix out(sample_count() * m_, n_);
  for (long k = 0; k < sample_count(); ++k) {
    out.middleRows(k * m_, m_) = x(k);
  }
  return out;
}

Vector Dataset::stacked_y() const {
  Vector out(sample_count() * m_);
  for (long k = 0; k < sample_count(); ++k) {
    out.segment(k * m_, m_) = y(k);
  }
  return out;
}

PrecisionSpec::PrecisionSpec(Vector d) : d_(std::move(d)) {
  if (d_.size() < 1) {
    throw InputError("PrecisionSpec: needs at least one channel");
  }
  for (long i = 0; i < d_.size(); ++i) {
    if (!(d_[i] > 0.0) || !std::isfinite(d_[i])) {
      throw InputError("PrecisionSpec: d_" + std::to_string(i + 1) +
                       " must be positive and finite");
    }
  }
}

PrecisionSpec PrecisionSpec::uniform(long channels, double d) {
  return PrecisionSpec(Vector::Constant(channels, d));
}

Vector PrecisionSpec::precision_diag() const {
  return d_.array().square().inverse();
}

ChannelParams::ChannelParams(double sigma, double d, double a)
    : sigma_(sigma), d_(d), a_(a), c_(normalization_constant(sigma, d, a)) {}

void SolverConfig::validate() const {
  if (!(psi > 0.0) || !(grad_tol > 0.0) || !(step_tol > 0.0)) {
    throw InputError("SolverConfig: tolerances must be strictly positive");
  }
  if (max_fixed_point_iters < 1 || bfgs_max_iters < 1) {
    throw InputError("SolverConfig: iteration caps must be at least 1");
  }
  if (em_iters < 0) {
    throw InputError("SolverConfig: em_iters must be nonnegative");
  }
  if (ridge_guard < 0.0) {
    throw InputError("SolverConfig: ridge_guard must be nonnegative");
  }
}

std::vector<Vector> residuals(const Dataset& data, const Vector& theta) {
  if (theta.size() != data.param_dim()) {
    throw InputError("residuals: theta length does not match the dataset");
  }
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(data.sample_count()));
  for (long k = 0; k < data.sample_count(); ++k) {
    out.push_back(data.y(k) - data.x(k) * theta);
  }
  return out;
}

std::vector<Vector> weighted_residuals(const std::vector<Vector>& errors,
                                       const PrecisionSpec& prec) {
  std::vector<Vector> out;
  out.reserve(errors.size());
  for (const auto& e : errors) {
    if (e.size() != prec.channels()) {
      throw InputError("weighted_residuals: channel count mismatch");
    }
    out.push_back(e.array() / prec.d_vec().array());
  }
  return out;
}

Vector channel_residuals(const std::vector<Vector>& errors, long channel) {
  Vector out(static_cast<long>(errors.size()));
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (channel < 0 || channel >= errors[k].size()) {
      throw InputError("channel_residuals: channel index out of range");
    }
    out[static_cast<long>(k)] = errors[k][channel];
  }
  return out;
}

namespace detail {

Vector solve_spd(const Matrix& lhs, const Vector& rhs, double ridge_guard) {
  const long n = lhs.rows();
  Matrix guarded = lhs;
  if (ridge_guard > 0.0) {
    guarded.diagonal().array() +=
        ridge_guard * lhs.trace() / static_cast<double>(n);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(guarded);
  if (eig.info() != Eigen::Success) {
    throw SingularMatrixError("solve_spd: eigendecomposition failed",
                              std::numeric_limits<double>::infinity());
  }
  const double max_ev = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  const double cond = max_ev / std::max(min_ev, 0.0);
  if (!(min_ev > 0.0) || cond > 1e15 || !std::isfinite(cond)) {
    throw SingularMatrixError(
        "solve_spd: normal matrix is singular to working precision "
        "(condition number " +
            std::to_string(cond) + ")",
        cond);
  }
  return eig.eigenvectors() *
         (eig.eigenvectors().transpose() * rhs).cwiseQuotient(
             eig.eigenvalues());
}

}  // namespace detail

}  // namespace mkc
