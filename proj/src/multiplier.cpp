#include "afree/multiplier.hpp"

namespace afree {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// (2 pi i xi)^alpha as a complex scalar.
std::complex<double> frequency_monomial(const Eigen::VectorXd& xi, const MultiIndex& alpha) {
  std::complex<double> v{1.0, 0.0};
  for (int k = 0; k < alpha.dim(); ++k)
    for (int p = 0; p < alpha[k]; ++p) v *= std::complex<double>{0.0, kTwoPi * xi[k]};
  return v;
}

}  // namespace

DirectionSymbol coordinate_symbol(int axis) {
  return {"xi" + std::to_string(axis + 1),
          [axis](const Eigen::VectorXd& p) { return p[axis]; }};
}

DirectionSymbol product_symbol(int a, int b) {
  std::string name = a == b ? "xi" + std::to_string(a + 1) + "^2"
                            : "xi" + std::to_string(a + 1) + "*xi" + std::to_string(b + 1);
  return {std::move(name), [a, b](const Eigen::VectorXd& p) { return p[a] * p[b]; }};
}

std::vector<DirectionSymbol> default_symbol_family(int d) {
  std::vector<DirectionSymbol> fam;
  for (int r = 0; r < d; ++r) fam.push_back(coordinate_symbol(r));
  for (int r = 0; r < d; ++r)
    for (int s = r; s < d; ++s) fam.push_back(product_symbol(r, s));
  return fam;
}

TestFunction::TestFunction(const Grid& grid, const AnisotropicFrame& frame, DirectionSymbol psi,
                           QuasiNormForm form)
    : grid_(grid), frame_(frame), psi_(std::move(psi)), form_(form), psi_name_(psi_.name) {
  if (frame_.dim() != grid_.d) throw DimensionMismatch("frame dimension differs from grid");

  const TensorMollifier moll(grid_.d);
  rho_ = moll.sample(grid_);
  const long total = grid_.size();
  ComplexField rho_c(static_cast<size_t>(total));
  for (long i = 0; i < total; ++i) rho_c[static_cast<size_t>(i)] = rho_[static_cast<size_t>(i)];
  rho_hat_ = forward_transform(grid_, rho_c);

  m_.assign(static_cast<size_t>(total), {0.0, 0.0});
  std::vector<int> idx;
  ComplexField q(static_cast<size_t>(total));
  for (long flat = 0; flat < total; ++flat) {
    grid_.unflatten(flat, idx);
    double mv = 0.0;
    if (!grid_.has_nyquist(idx)) {
      const Eigen::VectorXd xi = grid_.frequency(idx);
      if (xi.lpNorm<Eigen::Infinity>() > 0.0) mv = multiplier_at(xi);
    }
    m_[static_cast<size_t>(flat)] = mv;
    q[static_cast<size_t>(flat)] = mv * rho_hat_[static_cast<size_t>(flat)];
  }

  ComplexField t = inverse_transform(grid_, q);
  phi_.resize(t.size());
  for (size_t i = 0; i < t.size(); ++i) phi_[i] = std::conj(t[i]);
  phi_hat_ = forward_transform(grid_, phi_);
}

double TestFunction::multiplier_at(const Eigen::VectorXd& xi) const {
  if (xi.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
  double denom = 0.0;
  if (form_ == QuasiNormForm::kInverseWeights) {
    denom = frame_.quasi_norm(xi);
  } else {
    for (int k = 0; k < frame_.dim(); ++k)
      denom += std::pow(std::abs(xi[k]), frame_.beta_double()[k]);
  }
  return psi_.eval(frame_.project(xi)) / denom;
}

const ComplexField& TestFunction::derivative(const MultiIndex& alpha) {
  if (alpha.dim() != grid_.d) throw DimensionMismatch("derivative index of wrong dimension");
  auto it = deriv_cache_.find(alpha);
  if (it != deriv_cache_.end()) return it->second;
  if (alpha.order() == 0) return deriv_cache_.emplace(alpha, phi_).first->second;

  const long total = grid_.size();
  ComplexField spec(static_cast<size_t>(total));
  std::vector<int> idx;
  for (long flat = 0; flat < total; ++flat) {
    grid_.unflatten(flat, idx);
    if (grid_.has_nyquist(idx)) {
      spec[static_cast<size_t>(flat)] = 0.0;
      continue;
    }
    spec[static_cast<size_t>(flat)] =
        frequency_monomial(grid_.frequency(idx), alpha) * phi_hat_[static_cast<size_t>(flat)];
  }
  return deriv_cache_.emplace(alpha, inverse_transform(grid_, spec)).first->second;
}

std::complex<double> TestFunction::mollifier_pairing(const MultiIndex& alpha) {
  auto it = pairing_cache_.find(alpha);
  if (it != pairing_cache_.end()) return it->second;
  const ComplexField& dphi = derivative(alpha);
  std::complex<double> s{0.0, 0.0};
  for (size_t i = 0; i < dphi.size(); ++i) s += rho_[i] * dphi[i];
  s *= std::pow(grid_.h(), grid_.d);
  pairing_cache_.emplace(alpha, s);
  return s;
}

TestFunction multiplier_test_function(const Grid& grid, const AnisotropicFrame& frame,
                                      const DirectionSymbol& psi, QuasiNormForm form) {
  return TestFunction(grid, frame, psi, form);
}

PlancherelReport plancherel_identity_check(const PrincipalPart& pp, int equation,
                                           const Eigen::VectorXd& z, const Eigen::VectorXd& f,
                                           TestFunction& tf) {
  if (equation < 0 || equation >= pp.n()) throw Error("equation index out of range");
  if (f.size() != pp.m) throw DimensionMismatch("direction length differs from m");

  const Grid& grid = tf.grid();
  if (grid.d != pp.d) throw DimensionMismatch("grid dimension differs from operator");
  const auto& terms = pp.dominating[static_cast<size_t>(equation)];

  std::vector<std::pair<MultiIndex, double>> paired;  // alpha, sum_l a^alpha_{jl}(z) f_l
  for (const auto& [alpha, coeff] : terms) {
    double cf = 0.0;
    for (int l = 0; l < pp.m; ++l) cf += coeff[static_cast<size_t>(l)].eval(z) * f[l];
    paired.emplace_back(alpha, cf);
  }

  PlancherelReport rep;
  for (const auto& [alpha, cf] : paired) {
    const double sign = alpha.order() % 2 == 0 ? 1.0 : -1.0;
    rep.space_side += sign * cf * tf.mollifier_pairing(alpha);
  }

  const long total = grid.size();
  const double cellxi = std::pow(grid.dxi(), grid.d);
  std::vector<int> idx;
  for (long flat = 0; flat < total; ++flat) {
    const std::complex<double> mv = tf.multiplier()[static_cast<size_t>(flat)];
    if (mv == 0.0) continue;
    grid.unflatten(flat, idx);
    const Eigen::VectorXd xi = grid.frequency(idx);
    const double weight = std::norm(tf.rho_hat()[static_cast<size_t>(flat)]);
    std::complex<double> symbol{0.0, 0.0};
    for (const auto& [alpha, cf] : paired) symbol += cf * frequency_monomial(xi, alpha);
    rep.freq_side += symbol * mv * weight * cellxi;
  }

  rep.abs_error = std::abs(rep.space_side - rep.freq_side);
  const double scale = std::max(std::abs(rep.space_side), std::abs(rep.freq_side));
  rep.rel_error = rep.abs_error / std::max(scale, 1e-300);
  return rep;
}

}  // namespace afree
