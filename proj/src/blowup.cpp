#include "afree/blowup.hpp"

#include <cmath>
#include <limits>

#include "afree/parallel.hpp"

namespace afree {

namespace {

struct Source {
  Eigen::VectorXd y;
  Eigen::VectorXd w;
};

// Atoms carry their weights; density cells enter as midpoint-weighted
// points, the same unification the weak-form residual uses.
std::vector<Source> gather_sources(const DiscreteMeasure& mu) {
  std::vector<Source> out;
  for (const Atom& a : mu.atoms()) out.push_back({a.x, a.w});
  if (mu.density()) {
    const GridDensity& den = *mu.density();
    const double cellvol = std::pow(den.h, mu.d());
    std::vector<int> cell(static_cast<size_t>(mu.d()), 0);
    for (long c = 0; c < den.cells(); ++c) {
      Eigen::VectorXd center(mu.d());
      for (int k = 0; k < mu.d(); ++k) center[k] = den.origin[k] + (cell[k] + 0.5) * den.h;
      Eigen::VectorXd wgt(mu.m());
      for (int l = 0; l < mu.m(); ++l)
        wgt[l] = cellvol * den.values[static_cast<size_t>(c * mu.m() + l)];
      if (wgt.lpNorm<Eigen::Infinity>() != 0.0) out.push_back({std::move(center), std::move(wgt)});
      for (int k = mu.d() - 1; k >= 0; --k) {
        if (++cell[k] < den.shape[k]) break;
        cell[k] = 0;
      }
    }
  }
  return out;
}

// integral over w of prod_k rho(w_k + s_k) * dphi(w), grid quadrature. The
// product vanishes outside a shifted unit cube, so only the clipped index
// box is visited.
std::complex<double> shifted_pairing(const Grid& grid, const Bump1D& bump,
                                     const Eigen::VectorXd& s, const ComplexField& dphi) {
  const int d = grid.d;
  const double h = grid.h();
  const double half = 0.5 * grid.length;
  std::vector<int> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
  std::vector<std::vector<double>> tab(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    lo[k] = std::max(0, static_cast<int>(std::ceil((-1.0 - s[k] + half) / h)));
    hi[k] = std::min(grid.n - 1, static_cast<int>(std::floor((1.0 - s[k] + half) / h)));
    if (lo[k] > hi[k]) return {0.0, 0.0};
    tab[k].resize(static_cast<size_t>(hi[k] - lo[k] + 1));
    for (int j = lo[k]; j <= hi[k]; ++j)
      tab[k][static_cast<size_t>(j - lo[k])] = bump.value(-half + j * h + s[k]);
  }

  std::vector<long> stride(static_cast<size_t>(d), 1);
  for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * grid.n;

  std::vector<int> idx(lo);
  std::complex<double> acc{0.0, 0.0};
  while (true) {
    double r = 1.0;
    long flat = 0;
    for (int k = 0; k < d; ++k) {
      r *= tab[k][static_cast<size_t>(idx[k] - lo[k])];
      flat += idx[k] * stride[k];
    }
    if (r != 0.0) acc += r * dphi[static_cast<size_t>(flat)];
    int k = d - 1;
    for (; k >= 0; --k) {
      if (++idx[k] <= hi[k]) break;
      idx[k] = lo[k];
    }
    if (k < 0) break;
  }
  return acc * std::pow(h, d);
}

}  // namespace

std::vector<double> dyadic_epsilons(double eps0, int count) {
  if (eps0 <= 0.0 || count < 1) throw Error("epsilon schedule needs eps0 > 0 and count >= 1");
  std::vector<double> out(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = eps0 * std::pow(2.0, -i);
  return out;
}

BlowupSample blowup_functional(const OperatorSystem& op, const PrincipalPart& pp, int equation,
                               const AnisotropicFrame& frame, const DiscreteMeasure& mu,
                               const Eigen::VectorXd& z, TestFunction& tf, double eps) {
  if (equation < 0 || equation >= op.n()) throw Error("equation index out of range");
  if (mu.d() != op.d() || mu.m() != op.m())
    throw DimensionMismatch("measure dimensions differ from operator");
  if (z.size() != op.d()) throw DimensionMismatch("blow-up point of wrong dimension");
  if (eps <= 0.0 || eps >= 1.0) throw Error("blow-up scale must lie in (0, 1)");

  const Grid& grid = tf.grid();
  const auto& terms = op.equation(equation).terms;
  const auto& principal = pp.dominating[static_cast<size_t>(equation)];
  const std::vector<Source> sources = gather_sources(mu);
  const Bump1D bump(0);

  struct Term {
    const MultiIndex* alpha;
    const std::vector<PolyCoefficient>* coeff;
    const ComplexField* dphi;
    double sign;
    bool is_principal;
    double factor;  // 1 on I'_j, eps^{1 - <alpha,beta>} below it
  };
  std::vector<Term> plan;
  for (const auto& [alpha, coeff] : terms) {
    Term t;
    t.alpha = &alpha;
    t.coeff = &coeff;
    t.dphi = &tf.derivative(alpha);
    t.sign = alpha.order() % 2 == 0 ? 1.0 : -1.0;
    t.is_principal = principal.count(alpha) > 0;
    if (t.is_principal) {
      t.factor = 1.0;
    } else {
      Rational dot = 0;
      for (int k = 0; k < op.d(); ++k) dot += Rational(alpha[k]) * frame.beta()[k];
      t.factor = std::pow(eps, 1.0 - to_double(dot));
    }
    plan.push_back(t);
  }

  // Per-source slots keep the reduction order fixed for any thread count.
  std::vector<std::complex<double>> slot(sources.size() * plan.size());
  parallel_for(static_cast<long>(sources.size()), [&](long i) {
    const Source& src = sources[static_cast<size_t>(i)];
    Eigen::VectorXd s(op.d());
    for (int k = 0; k < op.d(); ++k)
      s[k] = (z[k] - src.y[k]) / std::pow(eps, frame.beta_double()[k]);
    for (size_t t = 0; t < plan.size(); ++t) {
      double cf = 0.0;
      for (int l = 0; l < op.m(); ++l)
        cf += (*plan[t].coeff)[static_cast<size_t>(l)].eval(src.y) * src.w[l];
      if (cf == 0.0) {
        slot[static_cast<size_t>(i) * plan.size() + t] = 0.0;
        continue;
      }
      slot[static_cast<size_t>(i) * plan.size() + t] =
          cf * shifted_pairing(grid, bump, s, *plan[t].dphi);
    }
  });

  BlowupSample out;
  out.eps = eps;
  for (size_t t = 0; t < plan.size(); ++t) {
    std::complex<double> sum{0.0, 0.0};
    for (size_t i = 0; i < sources.size(); ++i) sum += slot[i * plan.size() + t];
    if (plan[t].is_principal)
      out.principal += plan[t].sign * sum;
    else
      out.remainder += plan[t].sign * plan[t].factor * sum;
  }
  return out;
}

std::complex<double> richardson_extrapolate(const std::vector<std::complex<double>>& v) {
  if (v.empty()) throw Error("cannot extrapolate an empty sequence");
  const size_t n = v.size();
  if (n < 3) return v.back();
  const std::complex<double> d1 = v[n - 2] - v[n - 3];
  const std::complex<double> d2 = v[n - 1] - v[n - 2];
  double scale = 0.0;
  for (size_t i = n - 3; i < n; ++i) scale = std::max(scale, std::abs(v[i]));
  if (std::abs(d2) <= 1e-13 * std::max(scale, 1.0)) return v.back();
  if (std::abs(d1) <= 1e-300) return v.back();
  const std::complex<double> theta = d2 / d1;
  if (std::abs(theta) > 0.95) return v.back();
  return v.back() + d2 * theta / (1.0 - theta);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("slope fit needs matching lengths");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

BlowupEntry normalized_limit(const OperatorSystem& op, const PrincipalPart& pp, int equation,
                             const AnisotropicFrame& frame, const DiscreteMeasure& mu,
                             const Eigen::VectorXd& f, const Eigen::VectorXd& z,
                             TestFunction& tf, const SingularityCertificate& cert) {
  if (!cert.pass)
    throw CertificateFailed("no uniform singularity certificate: " + cert.reason);
  if (f.size() != op.m()) throw DimensionMismatch("direction length differs from m");

  BlowupEntry entry;
  entry.equation = equation;
  entry.psi = tf.psi_name();
  entry.epsilons = cert.epsilons;
  for (size_t e = 0; e < cert.epsilons.size(); ++e) {
    const BlowupSample s =
        blowup_functional(op, pp, equation, frame, mu, z, tf, cert.epsilons[e]);
    const double mass = cert.inner_mass[e];
    entry.values.push_back(s.principal / mass);
    entry.remainders.push_back(std::abs(s.remainder) / mass);
  }
  entry.extrapolated = richardson_extrapolate(entry.values);

  for (const auto& [alpha, coeff] : pp.dominating[static_cast<size_t>(equation)]) {
    double cf = 0.0;
    for (int l = 0; l < op.m(); ++l) cf += coeff[static_cast<size_t>(l)].eval(z) * f[l];
    const double sign = alpha.order() % 2 == 0 ? 1.0 : -1.0;
    entry.target += sign * cf * tf.mollifier_pairing(alpha);
  }
  entry.gap = std::abs(entry.extrapolated - entry.target);
  entry.remainder_slope = loglog_slope(entry.epsilons, entry.remainders);
  return entry;
}

TheoremReport verify_theorem(const OperatorSystem& op, const DiscreteMeasure& mu,
                             const std::vector<Eigen::VectorXd>& points,
                             const TheoremConfig& cfg) {
  TheoremReport rep;
  rep.afree = check_afree(op, mu, cfg.resolution, cfg.residual_tol);
  if (!rep.afree.pass)
    throw NotAFree("operator does not annihilate the measure weakly", rep.afree.max_residual);

  const PrincipalPart pp = principal_part(op);
  rep.weights = solve_weights(pp);
  const std::vector<AnisotropicFrame> frames = make_frames(rep.weights);

  auto [ac, sing] = lebesgue_decompose(mu);
  if (sing.atoms().empty())
    throw CertificateFailed("measure has no singular part to blow up");
  const std::vector<Eigen::VectorXd> rn = radon_nikodym(sing);

  const Grid grid(op.d(), cfg.grid_n, 2.0 * cfg.padding);
  const std::vector<DirectionSymbol> family = default_symbol_family(op.d());
  // phi depends only on (frame, psi), never on the point, so one table
  // serves every z.
  std::vector<std::vector<TestFunction>> tfs;
  for (int j = 0; j < op.n(); ++j) {
    std::vector<TestFunction> row;
    for (const DirectionSymbol& psi : family)
      row.push_back(multiplier_test_function(grid, frames[static_cast<size_t>(j)], psi, cfg.form));
    tfs.push_back(std::move(row));
  }

  const std::vector<double> eps = dyadic_epsilons(cfg.eps0, cfg.eps_count);
  rep.pass = true;
  for (const Eigen::VectorXd& z : points) {
    PointReport pt;
    pt.z = z;
    pt.certificate = check_uniform_singularity(sing, z, cfg.p, cfg.q, eps, cfg.certificate_tol);
    if (!pt.certificate.pass)
      throw CertificateFailed("uniform singularity fails at " + [&] {
        std::string s = "(";
        for (int k = 0; k < z.size(); ++k) s += (k ? "," : "") + std::to_string(z[k]);
        return s + ")";
      }() + ": " + pt.certificate.reason);

    // Radon-Nikodym direction of the atom carrying the inner mass.
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < sing.atoms().size(); ++i) {
      const double dist = (sing.atoms()[i].x - z).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(i);
      }
    }
    const double inner_radius = std::pow(eps.back(), cfg.p);
    if (best < 0 || best_dist > inner_radius + 1e-12)
      throw CertificateFailed("no carrier atom inside the innermost blow-up ball");
    pt.f = rn[static_cast<size_t>(best)];

    pt.pointwise =
        check_theorem_pointwise(pp, frames, z, pt.f, cfg.samples, cfg.cone_tol, cfg.seed);

    for (int j = 0; j < op.n(); ++j)
      for (size_t s = 0; s < family.size(); ++s) {
        BlowupEntry entry =
            normalized_limit(op, pp, j, frames[static_cast<size_t>(j)], sing, pt.f, z,
                             tfs[static_cast<size_t>(j)][s], pt.certificate);
        pt.max_gap = std::max(pt.max_gap, entry.gap);
        pt.blowup.push_back(std::move(entry));
      }

    pt.pass = pt.pointwise.pass && pt.max_gap < cfg.gap_tol;
    rep.pass = rep.pass && pt.pass;
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

}  // namespace afree
