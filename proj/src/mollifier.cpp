#include "afree/mollifier.hpp"

namespace afree {

double TensorMollifier::scaled(const AnisotropicFrame& frame, double eps,
                               const Eigen::VectorXd& x) const {
  if (frame.dim() != d_) throw DimensionMismatch("frame dimension differs from mollifier");
  if (eps <= 0.0) throw Error("mollifier scale must be positive");
  double v = std::pow(eps, -frame.beta_sum());
  for (int k = 0; k < d_ && v != 0.0; ++k)
    v *= bump_.value(x[k] / std::pow(eps, frame.beta_double()[k]));
  return v;
}

RealField TensorMollifier::sample(const Grid& grid) const {
  if (grid.d != d_) throw DimensionMismatch("grid dimension differs from mollifier");
  const long total = grid.size();
  RealField out(static_cast<size_t>(total));
  std::vector<int> idx;
  for (long flat = 0; flat < total; ++flat) {
    grid.unflatten(flat, idx);
    out[static_cast<size_t>(flat)] = value(grid.point(idx));
  }
  return out;
}

std::vector<RealField> mollify(const DiscreteMeasure& mu, const AnisotropicFrame& frame,
                               double eps, const Grid& grid) {
  if (mu.d() != grid.d) throw DimensionMismatch("measure dimension differs from grid");
  if (frame.dim() != grid.d) throw DimensionMismatch("frame dimension differs from grid");
  const TensorMollifier moll(grid.d);
  const long total = grid.size();
  std::vector<RealField> out(static_cast<size_t>(mu.m()),
                             RealField(static_cast<size_t>(total), 0.0));
  std::vector<int> idx;
  for (long flat = 0; flat < total; ++flat) {
    grid.unflatten(flat, idx);
    const Eigen::VectorXd x = grid.point(idx);
    for (const Atom& a : mu.atoms()) {
      const double v = moll.scaled(frame, eps, x - a.x);
      if (v == 0.0) continue;
      for (int l = 0; l < mu.m(); ++l)
        out[static_cast<size_t>(l)][static_cast<size_t>(flat)] += v * a.w[l];
    }
    if (mu.density()) {
      const GridDensity& den = *mu.density();
      const double cellvol = std::pow(den.h, grid.d);
      std::vector<int> cell(static_cast<size_t>(grid.d), 0);
      for (long c = 0; c < den.cells(); ++c) {
        Eigen::VectorXd center(grid.d);
        for (int k = 0; k < grid.d; ++k) center[k] = den.origin[k] + (cell[k] + 0.5) * den.h;
        const double v = moll.scaled(frame, eps, x - center);
        if (v != 0.0)
          for (int l = 0; l < mu.m(); ++l)
            out[static_cast<size_t>(l)][static_cast<size_t>(flat)] +=
                v * cellvol * den.values[static_cast<size_t>(c * mu.m() + l)];
        for (int k = grid.d - 1; k >= 0; --k) {
          if (++cell[k] < den.shape[k]) break;
          cell[k] = 0;
        }
      }
    }
  }
  return out;
}

double field_mass(const Grid& grid, const RealField& field) {
  double s = 0.0;
  for (double v : field) s += v;
  return s * std::pow(grid.h(), grid.d);
}

}  // namespace afree
