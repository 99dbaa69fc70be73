#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ergmbayes {

/// Multivariate normal prior N(mean, cov) with cov symmetric positive definite.
class GaussianPrior {
 public:
  GaussianPrior(Eigen::VectorXd mean, Eigen::MatrixXd cov)
      : mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto d = mean_.size();
    if (cov_.rows() != d || cov_.cols() != d)
      throw std::invalid_argument("prior covariance must be d x d");
    if (!cov_.isApprox(cov_.transpose()))
      throw std::invalid_argument("prior covariance must be symmetric");
    llt_.compute(cov_);
    if (llt_.info() != Eigen::Success)
      throw std::invalid_argument("prior covariance must be positive definite");
    precision_ = llt_.solve(Eigen::MatrixXd::Identity(d, d));
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) log_det += 2.0 * std::log(llt_.matrixL()(i, i));
    log_norm_ = -0.5 * (d * std::log(2.0 * M_PI) + log_det);
  }

  /// Isotropic N(mean * 1, sd^2 * I).
  static GaussianPrior iso(int dim, double mean, double sd) {
    return GaussianPrior(Eigen::VectorXd::Constant(dim, mean),
                         Eigen::MatrixXd::Identity(dim, dim) * (sd * sd));
  }

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  double log_density(const Eigen::VectorXd& theta) const {
    check_dim(theta);
    const Eigen::VectorXd centered = theta - mean_;
    return log_norm_ - 0.5 * centered.dot(precision_ * centered);
  }

  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& theta) const {
    check_dim(theta);
    return -(precision_ * (theta - mean_));
  }

  /// Hessian of the log density: -cov^{-1}, constant in theta.
  Eigen::MatrixXd hessian_log_density() const { return -precision_; }

 private:
  void check_dim(const Eigen::VectorXd& theta) const {
    if (theta.size() != mean_.size())
      throw std::invalid_argument("prior dimension mismatch");
  }

  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd precision_;
  double log_norm_ = 0.0;
};

}  // namespace ergmbayes
