#pragma once

#include <optional>

#include "afree/measure.hpp"
#include "afree/operator_system.hpp"

namespace afree {

struct Window {
  Eigen::VectorXd center;
  double halfwidth = 0.0;
};

struct ResidualReport {
  double max_residual = 0.0;  // max |<A mu, phi>| / ||phi||_{C^K} over the family
  int tests = 0;
  int worst_equation = -1;
  Eigen::VectorXd worst_center;
  double worst_scale = 0.0;
  bool pass = false;
};

// Weak-form residual of A mu = 0 against a family of tensor bump test
// functions: one window-sized bump, 4 per axis at half scale, about
// `resolution` per axis (rounded to even) at quarter scale. Atom pairings are exact sums; the density
// pairs by midpoint quadrature. Residuals are normalized by the C^K norm
// of the test function, K the operator's maximal derivative order.
// Throws MeasureOutsideWindow when an explicit window misses support.
ResidualReport check_afree(const OperatorSystem& op, const DiscreteMeasure& mu, int resolution,
                           double tol, std::optional<Window> window = std::nullopt);

}  // namespace afree
