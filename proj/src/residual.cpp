#include "afree/residual.hpp"

#include <cmath>
#include <functional>

#include "afree/bump.hpp"

namespace afree {
namespace {

// All gamma with gamma <= alpha componentwise, with the binomial weight
// prod_k C(alpha_k, gamma_k).
void for_each_sub_index(const MultiIndex& alpha, int axis, std::vector<int>& cur, double binom,
                        const std::function<void(const MultiIndex&, double)>& f) {
  if (axis == alpha.dim()) {
    f(MultiIndex(cur), binom);
    return;
  }
  double c = 1.0;
  for (int g = 0; g <= alpha[axis]; ++g) {
    cur[axis] = g;
    for_each_sub_index(alpha, axis + 1, cur, binom * c, f);
    c = c * (alpha[axis] - g) / (g + 1);
  }
}

PolyCoefficient iterated_derivative(const PolyCoefficient& p, const MultiIndex& gamma) {
  PolyCoefficient r = p;
  for (int k = 0; k < gamma.dim(); ++k)
    for (int t = 0; t < gamma[k]; ++t) r = r.derivative(k);
  return r;
}

// max_{|alpha| <= K} prod_k s^{-alpha_k} sup|rho^(alpha_k)|
double ck_norm(const Bump1D& bump, int d, int K, double s) {
  std::vector<double> per_order(K + 1);
  for (int k = 0; k <= K; ++k) per_order[k] = bump.sup_derivative(k) / std::pow(s, k);
  double best = 0.0;
  // The per-axis factors are independent, so the max over |alpha| <= K
  // distributes the budget greedily; with identical axes it is enough to
  // scan compositions of the total order into at most d parts.
  std::vector<int> comp(d, 0);
  std::function<void(int, int)> scan = [&](int axis, int left) {
    if (axis == d) {
      double v = 1.0;
      for (int k = 0; k < d; ++k) v *= per_order[comp[k]];
      best = std::max(best, v);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      comp[axis] = k;
      scan(axis + 1, left - k);
    }
  };
  scan(0, K);
  return best;
}

struct PairingPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd w;  // atom weight, or cell value * cell volume
};

}  // namespace

ResidualReport check_afree(const OperatorSystem& op, const DiscreteMeasure& mu, int resolution,
                           double tol, std::optional<Window> window) {
  if (op.d() != mu.d() || op.m() != mu.m())
    throw DimensionMismatch("operator and measure dimensions differ");
  const int d = op.d();
  const int K = op.max_order();
  const Bump1D bump(K);

  Eigen::VectorXd lo, hi;
  mu.support_bounds(lo, hi);
  Window win;
  if (window) {
    win = *window;
    if (win.center.size() != d) throw DimensionMismatch("window center dimension");
    for (int k = 0; k < d; ++k)
      if (lo[k] < win.center[k] - win.halfwidth || hi[k] > win.center[k] + win.halfwidth)
        throw MeasureOutsideWindow("measure support exceeds the test window");
  } else {
    win.center = 0.5 * (lo + hi);
    win.halfwidth = std::max(0.625 * (hi - lo).maxCoeff(), 0.5);
  }

  // Atoms and density cells pair identically: location plus weight vector.
  std::vector<PairingPoint> pts;
  for (const Atom& a : mu.atoms()) pts.push_back({a.x, a.w});
  if (mu.density()) {
    const GridDensity& g = *mu.density();
    const double vol = std::pow(g.h, d);
    std::vector<int> idx(d, 0);
    const long n = g.cells();
    for (long cell = 0; cell < n; ++cell) {
      PairingPoint p;
      p.x.resize(d);
      for (int k = 0; k < d; ++k) p.x[k] = g.origin[k] + (idx[k] + 0.5) * g.h;
      p.w.resize(mu.m());
      for (int k = 0; k < mu.m(); ++k) p.w[k] = vol * g.values[cell * mu.m() + k];
      pts.push_back(std::move(p));
      for (int k = d - 1; k >= 0; --k) {
        if (++idx[k] < g.shape[k]) break;
        idx[k] = 0;
      }
    }
  }

  // Per equation: flattened Leibniz table. Entry = (component, alpha - gamma
  // derivative to apply to phi, per-point coefficient value with the sign
  // and binomial folded in).
  struct Entry {
    int component;
    MultiIndex dphi;
    std::vector<double> point_value;  // times w_k, summed against d^dphi phi
  };
  std::vector<std::vector<Entry>> tables(op.n());
  for (int j = 0; j < op.n(); ++j) {
    for (const auto& [alpha, coeff] : op.equation(j).terms) {
      const double sign = alpha.order() % 2 == 0 ? 1.0 : -1.0;
      for (int k = 0; k < op.m(); ++k) {
        if (coeff[k].zero()) continue;
        std::vector<int> cur(d, 0);
        for_each_sub_index(
            alpha, 0, cur, 1.0, [&](const MultiIndex& gamma, double binom) {
              const PolyCoefficient da = iterated_derivative(coeff[k], gamma);
              if (da.zero()) return;
              Entry e;
              e.component = k;
              std::vector<int> rest(d);
              for (int a = 0; a < d; ++a) rest[a] = alpha[a] - gamma[a];
              e.dphi = MultiIndex(std::move(rest));
              e.point_value.reserve(pts.size());
              for (const PairingPoint& p : pts)
                e.point_value.push_back(sign * binom * da.eval(p.x) * p.w[k]);
              tables[j].push_back(std::move(e));
            });
      }
    }
  }

  ResidualReport rep;
  // Even counts keep the translation lattice off the window center, where a
  // centroid atom would otherwise only ever see vanishing odd derivatives.
  int fine = std::max(resolution, 2);
  fine += fine % 2;
  while (std::pow(fine, d) > 1e5 && fine > 2) fine -= 2;
  const int level_counts[3] = {1, 4, fine};
  for (int level = 0; level < 3; ++level) {
    const double s = win.halfwidth / (1 << level);
    const int nc = level_counts[level];
    const double norm = ck_norm(bump, d, K, s);
    std::vector<int> ci(d, 0);
    while (true) {
      Eigen::VectorXd c(d);
      for (int k = 0; k < d; ++k) {
        c[k] = nc == 1 ? win.center[k]
                       : win.center[k] - (win.halfwidth - s) +
                             2.0 * (win.halfwidth - s) * ci[k] / (nc - 1);
      }
      for (int j = 0; j < op.n(); ++j) {
        double r = 0.0;
        for (const Entry& e : tables[j]) {
          for (size_t i = 0; i < pts.size(); ++i) {
            if (e.point_value[i] == 0.0) continue;
            double dphi = 1.0;
            for (int k = 0; k < d && dphi != 0.0; ++k)
              dphi *= bump.derivative(e.dphi[k], (pts[i].x[k] - c[k]) / s) /
                      std::pow(s, e.dphi[k]);
            r += e.point_value[i] * dphi;
          }
        }
        ++rep.tests;
        const double res = std::abs(r) / norm;
        if (res > rep.max_residual) {
          rep.max_residual = res;
          rep.worst_equation = j;
          rep.worst_center = c;
          rep.worst_scale = s;
        }
      }
      int k = d - 1;
      for (; k >= 0; --k) {
        if (++ci[k] < nc) break;
        ci[k] = 0;
      }
      if (k < 0) break;
    }
  }
  rep.pass = rep.max_residual < tol;
  return rep;
}

}  // namespace afree
