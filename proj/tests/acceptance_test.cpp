// Release gate: one line per criterion, exit 0 only when every line passes.
// Tolerances and runtime budgets are pinned here on purpose; loosening them
// is a release decision, not a test fix.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "afree/blowup.hpp"
#include "afree/cone.hpp"
#include "afree/dsl.hpp"
#include "afree/run.hpp"
#include "test_support.hpp"

using namespace afree;
using namespace afree::testing;

namespace {

const std::string kCli = AFREE_CLI_PATH;
const std::string kFixtures = AFREE_FIXTURE_DIR;

struct Check {
  int id;
  std::string label;
  double budget_s;  // <= 0 means unbounded
  std::function<std::string()> body;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- 1: mixed-order worked example, exact rational weights ----------------

std::string criterion_worked_example() {
  const OperatorSystem op = parse_operator("D[1,0] u1 + D[0,1] u1 + D[0,2] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  std::set<MultiIndex> got;
  for (const auto& [alpha, coeff] : pp.dominating.at(0)) got.insert(alpha);
  const std::set<MultiIndex> want{MultiIndex({1, 0}), MultiIndex({0, 2})};
  require(got == want, "principal index set is not {(1,0),(0,2)}");
  const HomogeneityWeights w = solve_weights(pp);
  const std::vector<Rational> expected{Rational(1), Rational(1) / 2};
  require(w.at(0) == expected, "weights are not exactly (1, 1/2)");
  return "I' = {(1,0),(0,2)}, beta = (1, 1/2) in exact rationals";
}

// ---- 2: anisotropic 1-homogeneity across a random corpus ------------------

std::string criterion_homogeneity() {
  Rng rng(2026);
  const std::vector<OperatorSystem> corpus = solvable_corpus(rng, 20, 3, 3);
  double worst = 0.0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const PrincipalPart pp = principal_part(corpus[i]);
    const HomogeneityReport rep =
        check_homogeneity(pp, solve_weights(pp), 100, 7000 + i);
    worst = std::max(worst, rep.max_rel_error);
  }
  require(worst <= 1e-12, "relative homogeneity error " + fmt(worst) + " above 1e-12");
  return "20 operators x 100 dilations, max rel error " + fmt(worst);
}

// ---- 3: exact vs sampled intersection cones on the same corpus ------------

std::string criterion_cone_oracle() {
  Rng rng(2026);
  const std::vector<OperatorSystem> corpus = solvable_corpus(rng, 20, 3, 3);
  double worst_angle = 0.0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const PrincipalPart pp = principal_part(corpus[i]);
    const auto frames = make_frames(solve_weights(pp));
    const Eigen::VectorXd x = Eigen::VectorXd::Zero(pp.d);
    const ConeResult exact = intersection_cone_exact(pp, x);
    const ConeResult sampled =
        intersection_cone_sampled(pp, frames, x, 64, 9000 + i, 1e-10);
    require(exact.dimension == sampled.dimension,
            "cone dimensions disagree on corpus operator " + std::to_string(i));
    for (const double a : principal_angles(exact.basis, sampled.basis))
      worst_angle = std::max(worst_angle, a);
  }
  require(worst_angle < 1e-8, "principal angle " + fmt(worst_angle) + " above 1e-8");
  return "dimensions agree on all 20, max principal angle " + fmt(worst_angle);
}

// ---- 4: full positive scenario, plus/minus atom pair ----------------------

std::string criterion_positive_case() {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const DiscreteMeasure mu = dipole_measure();
  TheoremConfig cfg;
  cfg.grid_n = 64;
  cfg.eps0 = 0.0625;  // every scale at or below 2^-4
  cfg.eps_count = 7;
  cfg.residual_tol = 1e-12;
  const std::vector<Eigen::VectorXd> pts{Eigen::VectorXd::Zero(2)};
  const TheoremReport rep = verify_theorem(op, mu, pts, cfg);
  require(rep.afree.max_residual < 1e-12,
          "weak residual " + fmt(rep.afree.max_residual) + " above 1e-12");
  const PointReport& pt = rep.points.at(0);
  for (const double r : pt.certificate.ratios)
    require(r == 0.0, "singularity ratio " + fmt(r) + " is not identically zero");
  require(pt.pointwise.max_residual < 1e-10,
          "pointwise cone residual " + fmt(pt.pointwise.max_residual) + " above 1e-10");
  double spread = 0.0;
  for (const BlowupEntry& e : pt.blowup)
    for (const std::complex<double>& v : e.values)
      spread = std::max(spread, std::abs(v - e.values.front()));
  require(spread < 1e-13, "normalized values drift " + fmt(spread) + " across scales");
  require(pt.max_gap < 1e-8, "limit gap " + fmt(pt.max_gap) + " above 1e-8");
  require(rep.pass, "theorem report did not pass");
  return "residual " + fmt(rep.afree.max_residual) + ", ratios all zero, value drift " +
         fmt(spread) + ", gap " + fmt(pt.max_gap);
}

// ---- 5: contrapositives, trivial cone and a line carrier ------------------

std::string criterion_contrapositive() {
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  // axis-aligned and diagonal drift directions; the first is the harder
  // case because the symbol vanishes at two manifold points
  for (const char* src : {"dims 2; D[1,0] u1 = 0;", "D[1,0] u1 + D[0,1] u1 = 0;"}) {
    const PrincipalPart pp = principal_part(parse_operator(src));
    const auto frames = make_frames(solve_weights(pp));
    require(intersection_cone_exact(pp, x).dimension == 0,
            "transport intersection cone is not trivial (exact)");
    require(intersection_cone_sampled(pp, frames, x, 64, 11).dimension == 0,
            "transport intersection cone is not trivial (sampled)");
  }

  const DiscreteMeasure chain = line_chain_measure(10);
  // four dyadic scales keep the inner ball well above the atom spacing,
  // where the continuum mass estimate outer/inner = eps^{q-p} applies
  const std::vector<double> eps = dyadic_epsilons(0.25, 4);
  const SingularityCertificate cert =
      check_uniform_singularity(chain, x, 2.0, 0.5, eps);
  require(!cert.pass, "line carrier unexpectedly passed the singularity check");
  double worst_low = 1e300, worst_high = 0.0;
  for (size_t i = 0; i < eps.size(); ++i) {
    const double analytic = std::pow(eps[i], 0.5 - 2.0) - 1.0;
    worst_low = std::min(worst_low, cert.ratios[i] / analytic);
    worst_high = std::max(worst_high, cert.ratios[i] / analytic);
    if (i > 0)
      require(cert.ratios[i] > cert.ratios[i - 1], "mass ratios are not growing");
  }
  require(worst_low >= 0.5 && worst_high <= 2.0,
          "ratio/analytic range [" + fmt(worst_low) + ", " + fmt(worst_high) +
              "] leaves [1/2, 2]");
  return "cone dimension 0, certificate fails, ratio/analytic in [" + fmt(worst_low) +
         ", " + fmt(worst_high) + "]";
}

// ---- 6: space-side vs frequency-side pairing on a 64^2 grid ---------------

std::string criterion_plancherel() {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(1);
  const PlancherelReport rep = plancherel_identity_check(pp, 0, z, f, tf);
  require(std::abs(rep.space_side) > 0.0, "pairing degenerated to zero");
  require(rep.rel_error < 1e-8, "relative error " + fmt(rep.rel_error) + " above 1e-8");
  return "psi = xi1, both sides " + fmt(std::abs(rep.space_side)) + ", rel error " +
         fmt(rep.rel_error);
}

// ---- 7: dominated-term remainder decay ------------------------------------

std::string criterion_remainder_decay() {
  const OperatorSystem op =
      parse_operator("dims 2; D[1,0] u1 + D[0,1] u1 + D[0,0] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = Eigen::VectorXd::Ones(1);
  const DiscreteMeasure mu(2, 1, atoms);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const SingularityCertificate cert =
      check_uniform_singularity(mu, z, 2.0, 0.5, dyadic_epsilons(0.0625, 7));
  require(cert.pass, "single atom failed the singularity certificate");
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], product_symbol(0, 0));
  const BlowupEntry entry =
      normalized_limit(op, pp, 0, frames[0], mu, Eigen::VectorXd::Ones(1), z, tf, cert);
  for (const double r : entry.remainders)
    require(r > 0.0, "zero-order remainder vanished; slope is meaningless");
  require(entry.remainder_slope >= 0.9,
          "log-log slope " + fmt(entry.remainder_slope) + " below 0.9");
  return "eps = 2^-4..2^-10, remainder log-log slope " + fmt(entry.remainder_slope);
}

// ---- 8: byte-identical verify reports -------------------------------------

std::string run_cli_capture(const std::string& args, int* exit_code) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  require(pipe != nullptr, "popen failed");
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string criterion_determinism() {
  const std::string args = "verify --config " + kFixtures + "/verify_dipole.json";
  int code_a = -1, code_b = -1;
  nlohmann::json a = nlohmann::json::parse(run_cli_capture(args, &code_a));
  nlohmann::json b = nlohmann::json::parse(run_cli_capture(args, &code_b));
  require(code_a == 0 && code_b == 0, "verify did not exit 0");
  a.erase("timing_ms");
  b.erase("timing_ms");
  require(a.dump() == b.dump(), "reports differ beyond the timing field");
  return "two verify runs byte-identical after dropping timing_ms";
}

}  // namespace

int main() {
  const std::vector<Check> checks{
      {1, "mixed-order worked example", 1.0, criterion_worked_example},
      {2, "anisotropic homogeneity suite", 10.0, criterion_homogeneity},
      {3, "cone oracle equivalence", 30.0, criterion_cone_oracle},
      {4, "structure theorem positive case", 60.0, criterion_positive_case},
      {5, "contrapositive scenarios", 60.0, criterion_contrapositive},
      {6, "Plancherel cross-check", 10.0, criterion_plancherel},
      {7, "lower-order remainder decay", 60.0, criterion_remainder_decay},
      {8, "report determinism", 0.0, criterion_determinism},
  };

  int failed = 0;
  for (const Check& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string budget;
    if (c.budget_s > 0.0) {
      budget = " (" + fmt(secs) + " s of " + fmt(c.budget_s) + " s)";
      if (secs > c.budget_s) {
        ok = false;
        detail += "; runtime " + fmt(secs) + " s over budget";
      }
    } else {
      budget = " (" + fmt(secs) + " s)";
    }
    failed += !ok;
    std::printf("[%s] %d %s: %s%s\n", ok ? "PASS" : "FAIL", c.id, c.label.c_str(),
                detail.c_str(), budget.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed,
              checks.size());
  return failed == 0 ? 0 : 1;
}
