#include "afree/measure.hpp"

#include <cmath>
#include <limits>

namespace afree {
namespace {

// Iterates cell centers of a grid density; index is the flat row-major cell.
template <class F>
void for_each_cell(const GridDensity& g, int d, F&& f) {
  std::vector<int> idx(d, 0);
  Eigen::VectorXd c(d);
  const long n = g.cells();
  for (long cell = 0; cell < n; ++cell) {
    for (int k = 0; k < d; ++k) c[k] = g.origin[k] + (idx[k] + 0.5) * g.h;
    f(cell, c);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < g.shape[k]) break;
      idx[k] = 0;
    }
  }
}

double cell_norm(const GridDensity& g, long cell, int m) {
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += g.values[cell * m + k] * g.values[cell * m + k];
  return std::sqrt(s);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int d, int m, std::vector<Atom> atoms,
                                 std::optional<GridDensity> density)
    : d_(d), m_(m), atoms_(std::move(atoms)), density_(std::move(density)) {
  if (d_ < 1 || m_ < 1) throw Error("measure needs d >= 1 and m >= 1");
  for (const Atom& a : atoms_) {
    if (a.x.size() != d_ || a.w.size() != m_)
      throw DimensionMismatch("atom location/weight dimensions");
  }
  for (size_t i = 0; i < atoms_.size(); ++i)
    for (size_t j = i + 1; j < atoms_.size(); ++j)
      if ((atoms_[i].x - atoms_[j].x).norm() == 0.0)
        throw Error("atom locations must be distinct");
  if (density_) {
    if (density_->origin.size() != d_ || static_cast<int>(density_->shape.size()) != d_)
      throw DimensionMismatch("density grid dimensions");
    if (density_->h <= 0.0) throw Error("density grid spacing must be positive");
    for (int s : density_->shape)
      if (s < 1) throw Error("density grid extents must be positive");
    if (static_cast<long>(density_->values.size()) != density_->cells() * m_)
      throw DimensionMismatch("density value count");
  }
}

void DiscreteMeasure::support_bounds(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const {
  lo = Eigen::VectorXd::Constant(d_, std::numeric_limits<double>::infinity());
  hi = -lo;
  for (const Atom& a : atoms_) {
    lo = lo.cwiseMin(a.x);
    hi = hi.cwiseMax(a.x);
  }
  if (density_) {
    Eigen::VectorXd gh(d_);
    for (int k = 0; k < d_; ++k) gh[k] = density_->origin[k] + density_->shape[k] * density_->h;
    lo = lo.cwiseMin(density_->origin);
    hi = hi.cwiseMax(gh);
  }
  if (atoms_.empty() && !density_) {
    lo = Eigen::VectorXd::Zero(d_);
    hi = Eigen::VectorXd::Zero(d_);
  }
}

double total_variation(const DiscreteMeasure& mu) {
  double tv = 0.0;
  for (const Atom& a : mu.atoms()) tv += a.w.norm();
  if (mu.density()) {
    const GridDensity& g = *mu.density();
    const double cellvol = std::pow(g.h, mu.d());
    const long n = g.cells();
    for (long cell = 0; cell < n; ++cell) tv += cellvol * cell_norm(g, cell, mu.m());
  }
  return tv;
}

double total_variation_ball(const DiscreteMeasure& mu, const Eigen::VectorXd& center,
                            double radius) {
  if (center.size() != mu.d()) throw DimensionMismatch("ball center dimension");
  double tv = 0.0;
  for (const Atom& a : mu.atoms())
    if ((a.x - center).norm() <= radius) tv += a.w.norm();
  if (mu.density()) {
    const GridDensity& g = *mu.density();
    const double cellvol = std::pow(g.h, mu.d());
    for_each_cell(g, mu.d(), [&](long cell, const Eigen::VectorXd& c) {
      if ((c - center).norm() <= radius) tv += cellvol * cell_norm(g, cell, mu.m());
    });
  }
  return tv;
}

std::pair<DiscreteMeasure, DiscreteMeasure> lebesgue_decompose(const DiscreteMeasure& mu) {
  DiscreteMeasure ac(mu.d(), mu.m(), {}, mu.density());
  DiscreteMeasure sing(mu.d(), mu.m(), mu.atoms());
  return {std::move(ac), std::move(sing)};
}

std::vector<Eigen::VectorXd> radon_nikodym(const DiscreteMeasure& singular) {
  bool any = false;
  for (const Atom& a : singular.atoms()) any = any || a.w.norm() > 0.0;
  if (!any) throw ZeroSingularPart("measure has no singular mass");
  std::vector<Eigen::VectorXd> f;
  f.reserve(singular.atoms().size());
  for (const Atom& a : singular.atoms()) {
    const double n = a.w.norm();
    if (n == 0.0) throw ZeroSingularPart("atom with zero weight has no direction");
    f.push_back(a.w / n);
  }
  return f;
}

SingularityCertificate check_uniform_singularity(const DiscreteMeasure& mu,
                                                 const Eigen::VectorXd& x, double p, double q,
                                                 const std::vector<double>& epsilons,
                                                 double tol) {
  if (!(p > 1.0)) throw Error("inner exponent must satisfy p > 1");
  if (!(tol > 0.0)) throw Error("certificate tolerance must be positive");
  if (!(q > 0.0 && q < 1.0)) throw Error("outer exponent must satisfy 0 < q < 1");
  if (x.size() != mu.d()) throw DimensionMismatch("singularity point dimension");
  if (epsilons.size() < 3) throw Error("need at least three scales");
  if (!(epsilons.front() < 1.0)) throw Error("scales must start below 1");
  for (size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1]) || !(epsilons[i] > 0.0))
      throw Error("scales must decrease strictly to zero");

  const DiscreteMeasure sing = lebesgue_decompose(mu).second;
  SingularityCertificate cert;
  cert.x = x;
  cert.p = p;
  cert.q = q;
  cert.strategy = "ball-intersect-carrier";
  cert.epsilons = epsilons;
  bool empty_inner = false;
  for (const double eps : epsilons) {
    const double inner = total_variation_ball(sing, x, std::pow(eps, p));
    const double outer = total_variation_ball(sing, x, std::pow(eps, q));
    cert.inner_mass.push_back(inner);
    if (inner == 0.0) {
      empty_inner = true;
      cert.ratios.push_back(std::numeric_limits<double>::infinity());
    } else {
      cert.ratios.push_back((outer - inner) / inner);
    }
  }
  if (empty_inner) {
    cert.pass = false;
    cert.reason = "inner set carries no singular mass at some scale";
    return cert;
  }
  const size_t n = cert.ratios.size();
  bool ok = true;
  for (size_t i = n - 3; i < n; ++i) ok = ok && cert.ratios[i] < tol;
  for (size_t i = n - 2; i < n; ++i) ok = ok && cert.ratios[i] <= cert.ratios[i - 1];
  cert.pass = ok;
  cert.reason = ok ? "tail ratios below tolerance and non-increasing"
                   : "tail ratios above tolerance or increasing";
  return cert;
}

}  // namespace afree
