#include "afree/symbol.hpp"

#include <cmath>
#include <sstream>

#include "afree/rational_linalg.hpp"
#include "afree/rng.hpp"

namespace afree {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string index_set_string(const std::map<MultiIndex, std::vector<PolyCoefficient>>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, coeff] : terms) {
    os << (first ? "{" : ", ") << a.str();
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

PrincipalPart principal_part(const OperatorSystem& op) {
  PrincipalPart pp;
  pp.d = op.d();
  pp.m = op.m();
  for (int j = 0; j < op.n(); ++j) {
    const auto& terms = op.equation(j).terms;
    std::set<MultiIndex> full;
    for (const auto& [a, coeff] : terms) full.insert(a);
    std::map<MultiIndex, std::vector<PolyCoefficient>> dom;
    for (const auto& [a, coeff] : terms) {
      bool dominated = false;
      for (const MultiIndex& b : full) dominated = dominated || a.dominated_by(b);
      if (!dominated) dom.emplace(a, coeff);
    }
    pp.full.push_back(std::move(full));
    pp.dominating.push_back(std::move(dom));
  }
  return pp;
}

HomogeneityWeights solve_weights(const PrincipalPart& pp) {
  HomogeneityWeights out;
  for (int j = 0; j < pp.n(); ++j) {
    const auto& dom = pp.dominating[j];
    RationalMatrix A;
    for (const auto& [a, coeff] : dom) {
      RationalVector row(pp.d);
      for (int k = 0; k < pp.d; ++k) row[k] = a[k];
      A.push_back(std::move(row));
    }
    const RationalVector b(A.size(), 1);
    const auto sol = solve_affine(A, b);
    if (!sol)
      throw InfeasibleWeights("no homogeneity weights solve I' = " + index_set_string(dom), j);
    RationalVector beta = min_norm_point(sol->particular, sol->nullspace);
    bool positive = true;
    for (const Rational& v : beta) positive = positive && v > 0;
    if (!positive) {
      if (sol->nullspace.empty())
        throw NoPositiveSolution(
            "unique weights for I' = " + index_set_string(dom) + " are not strictly positive", j);
      const MarginSearch ms = max_min_margin(sol->particular, sol->nullspace);
      if (ms.margin <= 0)
        throw NoPositiveSolution(
            "no strictly positive weights for I' = " + index_set_string(dom), j);
      beta = ms.point;
    }
    out.push_back(std::move(beta));
  }
  return out;
}

std::vector<AnisotropicFrame> make_frames(const HomogeneityWeights& w) {
  std::vector<AnisotropicFrame> frames;
  frames.reserve(w.size());
  for (const auto& beta : w) frames.emplace_back(beta);
  return frames;
}

Eigen::MatrixXcd evaluate_symbol(const PrincipalPart& pp, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& xi) {
  if (x.size() != pp.d || xi.size() != pp.d)
    throw DimensionMismatch("evaluate_symbol point dimension");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(pp.n(), pp.m);
  for (int j = 0; j < pp.n(); ++j) {
    for (const auto& [alpha, coeff] : pp.dominating[j]) {
      std::complex<double> mono(1.0, 0.0);
      for (int k = 0; k < pp.d; ++k) {
        const std::complex<double> f(0.0, kTwoPi * xi[k]);
        for (int e = 0; e < alpha[k]; ++e) mono *= f;
      }
      for (int k = 0; k < pp.m; ++k) {
        if (coeff[k].zero()) continue;
        A(j, k) += coeff[k].eval(x) * mono;
      }
    }
  }
  return A;
}

HomogeneityReport check_homogeneity(const PrincipalPart& pp, const HomogeneityWeights& w,
                                    int trials, std::uint64_t seed) {
  if (static_cast<int>(w.size()) != pp.n())
    throw DimensionMismatch("weights count vs equations");
  const std::vector<AnisotropicFrame> frames = make_frames(w);
  Rng rng(seed);
  HomogeneityReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(pp.d), xi(pp.d);
    for (int k = 0; k < pp.d; ++k) {
      x[k] = rng.uniform(-1.0, 1.0);
      xi[k] = rng.uniform(-2.0, 2.0);
    }
    if (xi.norm() == 0.0) xi[0] = 1.0;
    const double lambda = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
    const Eigen::MatrixXcd base = evaluate_symbol(pp, x, xi);
    for (int j = 0; j < pp.n(); ++j) {
      // The dilation is per equation; rows of other equations are ignored.
      const Eigen::MatrixXcd dil = evaluate_symbol(pp, x, frames[j].dilate(lambda, xi));
      const double scale = std::max(lambda * base.row(j).cwiseAbs().maxCoeff(), 1e-300);
      const double err = (dil.row(j) - lambda * base.row(j)).cwiseAbs().maxCoeff() / scale;
      if (err > rep.max_rel_error) rep.max_rel_error = err;
      if (err > 1e-12) {
        std::ostringstream os;
        os << "homogeneity identity violated: equation " << j << ", lambda " << lambda
           << ", relative error " << err;
        throw HomogeneityViolated(os.str());
      }
    }
  }
  return rep;
}

}  // namespace afree
