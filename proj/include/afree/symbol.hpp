#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <set>

#include "afree/frame.hpp"
#include "afree/operator_system.hpp"

namespace afree {

// Per equation: the full multi-index set I_j and the dominating subset I'_j
// (maximal under the componentwise order) with its coefficient vectors.
struct PrincipalPart {
  int d = 0;
  int m = 0;
  std::vector<std::set<MultiIndex>> full;
  std::vector<std::map<MultiIndex, std::vector<PolyCoefficient>>> dominating;

  int n() const { return static_cast<int>(dominating.size()); }
};

PrincipalPart principal_part(const OperatorSystem& op);

// beta^j per equation, each strictly positive with <alpha, beta> = 1 for all
// alpha in I'_j. Exact arithmetic; prefers the minimum-norm element of the
// solution set, falling back to an exact LP vertex of the positive region.
// Throws InfeasibleWeights / NoPositiveSolution.
using HomogeneityWeights = std::vector<std::vector<Rational>>;
HomogeneityWeights solve_weights(const PrincipalPart& pp);

std::vector<AnisotropicFrame> make_frames(const HomogeneityWeights& w);

// Entry (j,k) = sum_{alpha in I'_j} a^alpha_{jk}(x) (2 pi i xi)^alpha.
Eigen::MatrixXcd evaluate_symbol(const PrincipalPart& pp, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& xi);

struct HomogeneityReport {
  int trials = 0;
  double max_rel_error = 0.0;
};

// Random (x, xi, lambda) trials of A(x, lambda^beta o xi) = lambda A(x, xi),
// relative to the matrix magnitude. Throws HomogeneityViolated above 1e-12.
HomogeneityReport check_homogeneity(const PrincipalPart& pp, const HomogeneityWeights& w,
                                    int trials, std::uint64_t seed);

}  // namespace afree
