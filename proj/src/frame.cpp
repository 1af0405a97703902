#include "afree/frame.hpp"

#include <cmath>

#include "afree/errors.hpp"
#include "afree/rng.hpp"

namespace afree {

AnisotropicFrame::AnisotropicFrame(std::vector<Rational> beta) : beta_(std::move(beta)) {
  if (beta_.empty()) throw DimensionMismatch("frame needs at least one weight");
  betad_.reserve(beta_.size());
  for (const Rational& b : beta_) {
    if (b <= 0) throw Error("homogeneity weights must be positive");
    betad_.push_back(to_double(b));
    beta_sum_ += betad_.back();
  }
}

double AnisotropicFrame::quasi_norm(const Eigen::VectorXd& xi) const {
  if (xi.size() != dim()) throw DimensionMismatch("quasi_norm argument dimension");
  double s = 0.0;
  for (int k = 0; k < dim(); ++k) s += std::pow(std::abs(xi[k]), 1.0 / betad_[k]);
  return s;
}

Eigen::VectorXd AnisotropicFrame::dilate(double lambda, const Eigen::VectorXd& xi) const {
  if (xi.size() != dim()) throw DimensionMismatch("dilate argument dimension");
  Eigen::VectorXd out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = std::pow(lambda, betad_[k]) * xi[k];
  return out;
}

Eigen::VectorXd AnisotropicFrame::project(const Eigen::VectorXd& xi) const {
  const double rho = quasi_norm(xi);
  if (rho == 0.0) throw ZeroFrequency("cannot project the zero frequency");
  Eigen::VectorXd out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = xi[k] / std::pow(rho, betad_[k]);
  return out;
}

std::vector<Eigen::VectorXd> AnisotropicFrame::sample_manifold(int count,
                                                               std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    Eigen::VectorXd v(dim());
    for (int k = 0; k < dim(); ++k) v[k] = rng.normal();
    const double len = v.norm();
    if (len < 1e-12) continue;
    pts.push_back(project(v / len));
  }
  return pts;
}

}  // namespace afree
