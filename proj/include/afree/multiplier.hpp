#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>

#include "afree/fft.hpp"
#include "afree/mollifier.hpp"
#include "afree/symbol.hpp"

namespace afree {

// Named scalar function on the dilation manifold P = {rho = 1}.
struct DirectionSymbol {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> eval;
};

DirectionSymbol coordinate_symbol(int axis);
DirectionSymbol product_symbol(int a, int b);

// Coordinates xi_r followed by the products xi_r xi_s, r <= s. The products
// supply symbols that are even per axis, which keeps pairings against the
// even mollifier away from parity zeros.
std::vector<DirectionSymbol> default_symbol_family(int d);

// Denominator of the multiplier m(xi) = psi(pi(xi)) / rho(xi). The frame
// quasi-norm sum |xi_k|^{1/beta_k} makes m exactly (-1)-homogeneous for the
// anisotropic dilation; the literal form sum |xi_k|^{beta_k} is kept only
// for comparison and is homogeneous just in the isotropic case beta = 1.
enum class QuasiNormForm { kInverseWeights, kLiteralWeights };

// Fourier multiplier test function phi = conj(T_m rho) on a periodic grid:
// rho is the sampled tensor mollifier, m(xi) = psi(pi(xi)) / rho_quasi(xi)
// with m(0) = 0 and the Nyquist rows zeroed (they have no negative-frequency
// partner, and dropping them keeps odd-symmetry cancellations exact).
// Derivative fields of phi come from the same spectrum and are cached.
class TestFunction {
 public:
  TestFunction(const Grid& grid, const AnisotropicFrame& frame, DirectionSymbol psi,
               QuasiNormForm form = QuasiNormForm::kInverseWeights);

  const Grid& grid() const { return grid_; }
  const AnisotropicFrame& frame() const { return frame_; }
  const std::string& psi_name() const { return psi_name_; }
  const RealField& rho() const { return rho_; }
  const ComplexField& rho_hat() const { return rho_hat_; }
  const ComplexField& multiplier() const { return m_; }
  const ComplexField& phi() const { return phi_; }

  double multiplier_at(const Eigen::VectorXd& xi) const;

  // d^alpha phi on the grid, spectral differentiation, cached per alpha.
  const ComplexField& derivative(const MultiIndex& alpha);

  // integral rho(w) d^alpha phi(w) dw by grid quadrature, cached.
  std::complex<double> mollifier_pairing(const MultiIndex& alpha);

 private:
  Grid grid_;
  AnisotropicFrame frame_;
  DirectionSymbol psi_;
  QuasiNormForm form_;
  std::string psi_name_;
  RealField rho_;
  ComplexField rho_hat_;
  ComplexField m_;
  ComplexField phi_;
  ComplexField phi_hat_;
  std::map<MultiIndex, ComplexField> deriv_cache_;
  std::map<MultiIndex, std::complex<double>> pairing_cache_;
};

TestFunction multiplier_test_function(const Grid& grid, const AnisotropicFrame& frame,
                                      const DirectionSymbol& psi,
                                      QuasiNormForm form = QuasiNormForm::kInverseWeights);

struct PlancherelReport {
  std::complex<double> space_side;
  std::complex<double> freq_side;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

// Both routes of the pairing identity for equation j at base point z and
// direction f:
//   space: sum_{alpha in I'_j} (-1)^{|alpha|} sum_l f_l a^alpha_{jl}(z)
//          integral rho d^alpha phi,
//   freq:  sum_{alpha in I'_j} sum_l f_l a^alpha_{jl}(z)
//          sum_xi (2 pi i xi)^alpha m(xi) |rho^(xi)|^2 dxi^d.
// Conjugating T_m rho flips the sign of xi inside the transform, which
// cancels the (-1)^{|alpha|}; the frequency route therefore carries no
// alternating sign. Both sides are evaluated independently on the grid.
PlancherelReport plancherel_identity_check(const PrincipalPart& pp, int equation,
                                           const Eigen::VectorXd& z, const Eigen::VectorXd& f,
                                           TestFunction& tf);

}  // namespace afree
