#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "afree/rational.hpp"

namespace afree {

// Anisotropic dilation structure attached to one equation's homogeneity
// weights beta: quasi-norm rho(xi) = sum_k |xi_k|^{1/beta_k}, the manifold
// P = {rho = 1}, and the radial projection onto it.
class AnisotropicFrame {
 public:
  explicit AnisotropicFrame(std::vector<Rational> beta);

  int dim() const { return static_cast<int>(beta_.size()); }
  const std::vector<Rational>& beta() const { return beta_; }
  const std::vector<double>& beta_double() const { return betad_; }
  double beta_sum() const { return beta_sum_; }

  double quasi_norm(const Eigen::VectorXd& xi) const;

  // lambda^beta o xi, componentwise
  Eigen::VectorXd dilate(double lambda, const Eigen::VectorXd& xi) const;

  // xi_k / rho(xi)^{beta_k}; throws ZeroFrequency at xi = 0
  Eigen::VectorXd project(const Eigen::VectorXd& xi) const;

  // Gaussian directions on the Euclidean sphere pushed through project;
  // deterministic for a fixed seed, every point satisfies |rho - 1| < 1e-12.
  std::vector<Eigen::VectorXd> sample_manifold(int count, std::uint64_t seed) const;

 private:
  std::vector<Rational> beta_;
  std::vector<double> betad_;
  double beta_sum_ = 0.0;
};

}  // namespace afree
