#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "afree/symbol.hpp"

namespace afree {

// Orthonormal real basis of the kernel intersection; f is real because it
// models a Radon-Nikodym direction, so complex symbol rows are split into
// real and imaginary parts before the nullspace is taken.
struct ConeResult {
  int dimension = 0;
  Eigen::MatrixXd basis;  // m x dimension, orthonormal columns
  std::string method;
  std::vector<double> residuals;  // per basis vector, max |row . v| over stacked rows
};

// Nullspace of the rows (a^alpha_jk(x))_k over all j, alpha in I'_j. All
// alpha in I'_j share anisotropic degree 1, so a symbol vanishing on the
// manifold vanishes identically and the monomial coefficients decouple.
ConeResult intersection_cone_exact(const PrincipalPart& pp, const Eigen::VectorXd& x,
                                   double tol = 1e-12);

// Stacks evaluate_symbol rows at sampled manifold points per equation and
// returns the numerical nullspace (relative SVD threshold tol).
ConeResult intersection_cone_sampled(const PrincipalPart& pp,
                                     const std::vector<AnisotropicFrame>& frames,
                                     const Eigen::VectorXd& x, int samples, std::uint64_t seed,
                                     double tol = 1e-10);

// Angles (radians) between the column spans; empty when either basis is
// empty. Sizes may differ, the count is min(dim1, dim2).
std::vector<double> principal_angles(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2);

struct MembershipResult {
  bool member = false;
  double min_residual = 0.0;
  Eigen::VectorXd witness;  // minimizing frequency
};

// Union wave cone test: exists a sampled xi on the frame manifold with
// ||A(x, xi) f|| < tol, the full stacked system evaluated at one xi.
MembershipResult union_wave_cone_membership(const PrincipalPart& pp,
                                            const AnisotropicFrame& frame,
                                            const Eigen::VectorXd& x, const Eigen::VectorXd& f,
                                            int samples, double tol = 1e-10,
                                            std::uint64_t seed = 1);

struct PointwiseReport {
  bool pass = false;
  double max_residual = 0.0;
  Eigen::VectorXd worst_xi;
};

// Max over equations and manifold samples of ||A_j(x, xi) f||; f unit.
PointwiseReport check_theorem_pointwise(const PrincipalPart& pp,
                                        const std::vector<AnisotropicFrame>& frames,
                                        const Eigen::VectorXd& x, const Eigen::VectorXd& f,
                                        int samples, double tol = 1e-10, std::uint64_t seed = 1);

}  // namespace afree
