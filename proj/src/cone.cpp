#include "afree/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afree/errors.hpp"
#include "afree/rng.hpp"

namespace afree {
namespace {

// Nullspace of a real matrix by full SVD; singular values at or below
// tol * sigma_max count as zero. A zero (or empty) matrix yields all of R^m.
ConeResult nullspace_of(const Eigen::MatrixXd& M, int m, double tol, std::string method) {
  ConeResult out;
  out.method = std::move(method);
  if (M.rows() == 0) {
    out.dimension = m;
    out.basis = Eigen::MatrixXd::Identity(m, m);
    out.residuals.assign(m, 0.0);
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax && smax > 0.0) ++rank;
  out.dimension = m - rank;
  out.basis = svd.matrixV().rightCols(out.dimension);
  out.residuals.reserve(out.dimension);
  for (int c = 0; c < out.dimension; ++c)
    out.residuals.push_back((M * out.basis.col(c)).cwiseAbs().maxCoeff());
  return out;
}

void append_complex_rows(Eigen::MatrixXd& M, int& row, const Eigen::RowVectorXcd& v) {
  M.row(row++) = v.real();
  M.row(row++) = v.imag();
}

}  // namespace

ConeResult intersection_cone_exact(const PrincipalPart& pp, const Eigen::VectorXd& x,
                                   double tol) {
  int rows = 0;
  for (int j = 0; j < pp.n(); ++j) rows += static_cast<int>(pp.dominating[j].size());
  Eigen::MatrixXd M(rows, pp.m);
  int r = 0;
  for (int j = 0; j < pp.n(); ++j) {
    for (const auto& [alpha, coeff] : pp.dominating[j]) {
      for (int k = 0; k < pp.m; ++k) M(r, k) = coeff[k].zero() ? 0.0 : coeff[k].eval(x);
      ++r;
    }
  }
  return nullspace_of(M, pp.m, tol, "exact");
}

ConeResult intersection_cone_sampled(const PrincipalPart& pp,
                                     const std::vector<AnisotropicFrame>& frames,
                                     const Eigen::VectorXd& x, int samples, std::uint64_t seed,
                                     double tol) {
  if (static_cast<int>(frames.size()) != pp.n())
    throw DimensionMismatch("one frame per equation required");
  Eigen::MatrixXd M(2 * samples * pp.n(), pp.m);
  int row = 0;
  for (int j = 0; j < pp.n(); ++j) {
    const auto pts = frames[j].sample_manifold(samples, seed + j);
    for (const auto& xi : pts) {
      const Eigen::MatrixXcd A = evaluate_symbol(pp, x, xi);
      append_complex_rows(M, row, A.row(j));
    }
  }
  return nullspace_of(M, pp.m, tol, "sampled");
}

std::vector<double> principal_angles(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2) {
  std::vector<double> angles;
  if (b1.cols() == 0 || b2.cols() == 0) return angles;
  const Eigen::MatrixXd C = b1.transpose() * b2;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
  const auto& sc = svd.singularValues();  // descending, so angles ascend
  angles.resize(sc.size());
  for (int i = 0; i < sc.size(); ++i) angles[i] = std::acos(std::clamp(sc(i), 0.0, 1.0));
  if (b1.cols() == b2.cols()) {
    // acos cannot resolve angles below sqrt(machine eps); recompute the
    // small ones from the orthogonal residual, whose singular values are
    // the sines in descending-angle order.
    Eigen::JacobiSVD<Eigen::MatrixXd> svs(b2 - b1 * C);
    const auto& ss = svs.singularValues();
    const int k = static_cast<int>(angles.size());
    for (int i = 0; i < k; ++i)
      if (angles[i] < 0.785398) angles[i] = std::asin(std::clamp(ss(k - 1 - i), 0.0, 1.0));
  }
  return angles;
}

MembershipResult union_wave_cone_membership(const PrincipalPart& pp,
                                            const AnisotropicFrame& frame,
                                            const Eigen::VectorXd& x, const Eigen::VectorXd& f,
                                            int samples, double tol, std::uint64_t seed) {
  if (f.norm() == 0.0) throw Error("membership test needs a nonzero direction");
  const Eigen::VectorXd fu = f / f.norm();
  const auto residual_at = [&](const Eigen::VectorXd& dir) {
    return (evaluate_symbol(pp, x, frame.project(dir)) * fu).norm();
  };

  // Coarse stage: best manifold sample, tracked by its Euclidean direction.
  Eigen::VectorXd best;
  double best_res = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd v(frame.dim());
    for (int k = 0; k < frame.dim(); ++k) v[k] = rng.normal();
    if (v.norm() < 1e-12) continue;
    v /= v.norm();
    const double res = residual_at(v);
    if (res < best_res) {
      best_res = res;
      best = v;
    }
  }

  // Compass refinement on the direction sphere: random samples almost never
  // land on the kernel variety, so membership at tight tolerances needs a
  // local descent toward the minimizing frequency.
  for (double h = 0.25; h > 1e-13; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int k = 0; k < frame.dim(); ++k) {
        for (const double sgn : {1.0, -1.0}) {
          Eigen::VectorXd v = best + sgn * h * Eigen::VectorXd::Unit(frame.dim(), k);
          if (v.norm() < 1e-12) continue;
          v /= v.norm();
          const double res = residual_at(v);
          if (res < best_res) {
            best_res = res;
            best = v;
            moved = true;
          }
        }
      }
    }
  }

  MembershipResult out;
  out.min_residual = best_res;
  out.witness = frame.project(best);
  out.member = best_res < tol;
  return out;
}

PointwiseReport check_theorem_pointwise(const PrincipalPart& pp,
                                        const std::vector<AnisotropicFrame>& frames,
                                        const Eigen::VectorXd& x, const Eigen::VectorXd& f,
                                        int samples, double tol, std::uint64_t seed) {
  if (std::abs(f.norm() - 1.0) > 1e-9)
    throw Error("pointwise kernel check needs a unit direction");
  if (static_cast<int>(frames.size()) != pp.n())
    throw DimensionMismatch("one frame per equation required");
  PointwiseReport rep;
  for (int j = 0; j < pp.n(); ++j) {
    for (const auto& xi : frames[j].sample_manifold(samples, seed + j)) {
      const double res = std::abs((evaluate_symbol(pp, x, xi) * f)(j));
      if (res > rep.max_residual) {
        rep.max_residual = res;
        rep.worst_xi = xi;
      }
    }
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

}  // namespace afree
