#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "afree/errors.hpp"

namespace afree {

struct Atom {
  Eigen::VectorXd x;  // location, length d
  Eigen::VectorXd w;  // weight vector, length m
};

// Uniform grid density h(x) dx: cell (i_1,...,i_d) is centered at
// origin + (i + 1/2) h and carries the value vector values[flat(i)*m ... ].
struct GridDensity {
  Eigen::VectorXd origin;
  double h = 0.0;
  std::vector<int> shape;
  std::vector<double> values;  // row-major cells, m components each

  long cells() const {
    long n = 1;
    for (int s : shape) n *= s;
    return n;
  }
};

// Vector-valued Radon measure as atoms plus an optional grid density. The
// representation *is* the Lebesgue decomposition: atoms are the singular
// part, the grid is the absolutely continuous part.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int d, int m, std::vector<Atom> atoms,
                  std::optional<GridDensity> density = std::nullopt);

  int d() const { return d_; }
  int m() const { return m_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<GridDensity>& density() const { return density_; }

  // Bounding box of the support (atoms and grid extent).
  void support_bounds(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;

 private:
  int d_;
  int m_;
  std::vector<Atom> atoms_;
  std::optional<GridDensity> density_;
};

// Total variation over the whole space, or restricted to a closed Euclidean
// ball. Atoms sum exactly; the density uses the midpoint rule per cell.
double total_variation(const DiscreteMeasure& mu);
double total_variation_ball(const DiscreteMeasure& mu, const Eigen::VectorXd& center,
                            double radius);

// (absolutely continuous part, singular part)
std::pair<DiscreteMeasure, DiscreteMeasure> lebesgue_decompose(const DiscreteMeasure& mu);

// Unit direction w/||w|| per atom of the singular part.
std::vector<Eigen::VectorXd> radon_nikodym(const DiscreteMeasure& singular);

struct SingularityCertificate {
  Eigen::VectorXd x;
  double p = 0.0;  // inner scale alpha(eps) = eps^p, p > 1
  double q = 0.0;  // outer scale beta(eps) = eps^q, 0 < q < 1
  std::string strategy;
  std::vector<double> epsilons;
  std::vector<double> ratios;
  std::vector<double> inner_mass;  // |mu_s|(E_eps), reused verbatim downstream
  bool pass = false;
  std::string reason;
};

inline constexpr double kCertificateRatioTol = 1e-6;

// Definition-style scale test at x: E_eps = B(x, eps^p) cap carrier,
// r(eps) = |mu_s|(B(x, eps^q) \ E_eps) / |mu_s|(E_eps). Pass iff the last
// three ratios are below tol and non-increasing. An empty inner set is
// reported as a failure, not thrown.
SingularityCertificate check_uniform_singularity(const DiscreteMeasure& mu,
                                                 const Eigen::VectorXd& x, double p, double q,
                                                 const std::vector<double>& epsilons,
                                                 double tol = kCertificateRatioTol);

}  // namespace afree
