#pragma once

#include "afree/cone.hpp"
#include "afree/measure.hpp"
#include "afree/multiplier.hpp"
#include "afree/residual.hpp"

namespace afree {

std::vector<double> dyadic_epsilons(double eps0, int count);

// One evaluation of the rescaled pairing for equation j at scale eps:
//   sum_alpha sign(alpha) sum_l < prod_k rho((z_k - y_k)/eps^{beta_k} + w_k),
//                                 a^alpha_{jl}(y) mu_l(y) > against d^alpha phi(w).
// Atoms sum exactly in y; density cells enter as midpoint-weighted points.
// The w-integral is grid quadrature; the mollifier factor confines it to a
// shifted unit cube, so sources beyond the window reach contribute nothing.
// Terms of I'_j form `principal`; dominated terms carry the vanishing
// prefactor eps^{1 - <alpha, beta>} and sum into `remainder`.
struct BlowupSample {
  double eps = 0.0;
  std::complex<double> principal;
  std::complex<double> remainder;
};

BlowupSample blowup_functional(const OperatorSystem& op, const PrincipalPart& pp, int equation,
                               const AnisotropicFrame& frame, const DiscreteMeasure& mu,
                               const Eigen::VectorXd& z, TestFunction& tf, double eps);

// Geometric-sequence limit from the last three entries; falls back to the
// final value when the differences have stopped contracting.
std::complex<double> richardson_extrapolate(const std::vector<std::complex<double>>& v);

// Least-squares slope of log(y) against log(x) over the pairs with y > 0;
// NaN when fewer than two survive.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Blow-up of one equation against one test function at z. Values are the
// principal pairings normalized by the certificate's inner masses, taken
// verbatim at the certificate's scales. The target is the structure
// theorem's limit sum_{alpha in I'_j} (-1)^{|alpha|} sum_l f_l
// a^alpha_{jl}(z) integral rho d^alpha phi.
struct BlowupEntry {
  int equation = 0;
  std::string psi;
  std::vector<double> epsilons;
  std::vector<std::complex<double>> values;
  std::vector<double> remainders;  // normalized magnitudes
  std::complex<double> extrapolated;
  std::complex<double> target;
  double gap = 0.0;
  double remainder_slope = 0.0;  // NaN when the remainder vanishes identically
};

BlowupEntry normalized_limit(const OperatorSystem& op, const PrincipalPart& pp, int equation,
                             const AnisotropicFrame& frame, const DiscreteMeasure& mu,
                             const Eigen::VectorXd& f, const Eigen::VectorXd& z,
                             TestFunction& tf, const SingularityCertificate& cert);

struct TheoremConfig {
  int grid_n = 128;
  double padding = 4.0;  // window halfwidth in mollifier support units
  double p = 2.0;
  double q = 0.5;
  double eps0 = 0.25;
  int eps_count = 8;
  int samples = 64;
  std::uint64_t seed = 1;
  int resolution = 16;
  double cone_tol = 1e-8;
  double residual_tol = 1e-8;
  double certificate_tol = kCertificateRatioTol;
  double gap_tol = 1e-6;
  QuasiNormForm form = QuasiNormForm::kInverseWeights;
};

struct PointReport {
  Eigen::VectorXd z;
  Eigen::VectorXd f;
  SingularityCertificate certificate;
  PointwiseReport pointwise;
  std::vector<BlowupEntry> blowup;
  double max_gap = 0.0;
  bool pass = false;
};

struct TheoremReport {
  ResidualReport afree;
  HomogeneityWeights weights;
  std::vector<PointReport> points;
  bool pass = false;
};

// Full pipeline at the given carrier points: weak A-freeness, homogeneity
// weights, a uniform-singularity certificate per point, the pointwise wave
// cone inclusion of the Radon-Nikodym direction, and the blow-up limits for
// the default symbol family. Throws NotAFree when the residual check fails
// and CertificateFailed when a point lacks a certificate; clause failures
// beyond that only clear `pass`.
TheoremReport verify_theorem(const OperatorSystem& op, const DiscreteMeasure& mu,
                             const std::vector<Eigen::VectorXd>& points,
                             const TheoremConfig& cfg);

}  // namespace afree
