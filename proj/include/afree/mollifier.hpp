#pragma once

#include "afree/bump.hpp"
#include "afree/frame.hpp"
#include "afree/grid.hpp"
#include "afree/measure.hpp"

namespace afree {

using RealField = std::vector<double>;

// Tensor mollifier rho(w) = prod_k rho1(w_k): unit mass, support [-1,1]^d.
class TensorMollifier {
 public:
  explicit TensorMollifier(int d) : d_(d), bump_(0) {
    if (d < 1) throw Error("mollifier dimension must be positive");
  }

  int dim() const { return d_; }

  double value(const Eigen::VectorXd& w) const {
    if (w.size() != d_) throw DimensionMismatch("mollifier evaluated at point of wrong dimension");
    double v = 1.0;
    for (int k = 0; k < d_ && v != 0.0; ++k) v *= bump_.value(w[k]);
    return v;
  }

  // Anisotropic scaling: eps^{-sum beta} rho(x_1 / eps^{beta_1}, ...).
  // Mass stays 1 for every eps.
  double scaled(const AnisotropicFrame& frame, double eps, const Eigen::VectorXd& x) const;

  RealField sample(const Grid& grid) const;

 private:
  int d_;
  Bump1D bump_;
};

// mu * rho_eps on the grid, one field per measure component. Atoms sum
// exactly; the density part uses midpoint quadrature over its cells.
std::vector<RealField> mollify(const DiscreteMeasure& mu, const AnisotropicFrame& frame,
                               double eps, const Grid& grid);

// h^d sum over the grid, the discrete integral.
double field_mass(const Grid& grid, const RealField& field);

}  // namespace afree
