#include <cmath>
#include <complex>

#include "afree/blowup.hpp"
#include "afree/dsl.hpp"
#include "afree/fft.hpp"
#include "afree/mollifier.hpp"
#include "afree/multiplier.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace afree;
using namespace afree::testing;

namespace {

AnisotropicFrame unit_frame(int d) {
  return AnisotropicFrame(std::vector<Rational>(static_cast<size_t>(d), Rational(1)));
}

}  // namespace

TEST_CASE("forward transform matches the self-dual Gaussian") {
  // exp(-pi x^2) has continuous transform exp(-pi xi^2); window truncation
  // at |x| = 16 is below 1e-300.
  const Grid grid(1, 512, 32.0);
  ComplexField u(static_cast<size_t>(grid.size()));
  std::vector<int> idx;
  for (long i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, idx);
    const double x = grid.point(idx)[0];
    u[static_cast<size_t>(i)] = std::exp(-M_PI * x * x);
  }
  const ComplexField spec = forward_transform(grid, u);
  double worst = 0.0;
  for (long i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, idx);
    const double xi = grid.frequency(idx)[0];
    worst = std::max(worst,
                     std::abs(spec[static_cast<size_t>(i)] - std::exp(-M_PI * xi * xi)));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("inverse transform undoes the forward transform") {
  const Grid grid(2, 32, 4.0);
  Rng rng(7);
  ComplexField u(static_cast<size_t>(grid.size()));
  for (auto& v : u) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const ComplexField back = inverse_transform(grid, forward_transform(grid, u));
  double worst = 0.0;
  for (size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - back[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("discrete Parseval identity is exact") {
  const Grid grid(2, 32, 4.0);
  Rng rng(11);
  ComplexField u(static_cast<size_t>(grid.size()));
  for (auto& v : u) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const ComplexField spec = forward_transform(grid, u);
  double space = 0.0, freq = 0.0;
  for (const auto& v : u) space += std::norm(v);
  for (const auto& v : spec) freq += std::norm(v);
  space *= std::pow(grid.h(), 2);
  freq *= std::pow(grid.dxi(), 2);
  CHECK(space == doctest::Approx(freq).epsilon(1e-13));
}

TEST_CASE("tensor mollifier has unit mass under fine quadrature") {
  // Midpoint error tracks the profile's Fourier tail: ~3e-6 at 16 points
  // per unit but ~1e-13 at 128. The invariant is about the function, so the
  // check grid is chosen fine enough to see it.
  const TensorMollifier moll(1);
  const Grid fine(1, 512, 4.0);
  CHECK(std::abs(field_mass(fine, moll.sample(fine)) - 1.0) < 1e-10);

  const TensorMollifier moll2(2);
  const Grid fine2(2, 512, 4.0);
  CHECK(std::abs(field_mass(fine2, moll2.sample(fine2)) - 1.0) < 1e-10);
}

TEST_CASE("mollifier support containment") {
  const TensorMollifier moll(2);
  Eigen::VectorXd w(2);
  w << 1.0, 0.2;
  CHECK(moll.value(w) == 0.0);
  w << 0.999999, 0.0;
  CHECK(moll.value(w) == 0.0);  // exponential underflow guard region
  w << 0.5, -0.5;
  CHECK(moll.value(w) > 0.0);
}

TEST_CASE("scaled mollifier keeps unit mass at every eps") {
  const TensorMollifier moll(2);
  const AnisotropicFrame frame({Rational(1), Rational(1, 2)});
  const Grid fine(2, 1024, 4.0);
  for (const double eps : {0.9, 0.5, 0.35}) {
    double mass = 0.0;
    std::vector<int> idx;
    for (long i = 0; i < fine.size(); ++i) {
      fine.unflatten(i, idx);
      mass += moll.scaled(frame, eps, fine.point(idx));
    }
    mass *= std::pow(fine.h(), 2);
    // effective spacing h / eps^{beta_k} stays at or below 1/128 per axis
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }
}

TEST_CASE("mollify sifts a point mass onto the scaled kernel") {
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = (Eigen::VectorXd(2) << 2.0, -3.0).finished();
  const DiscreteMeasure mu(2, 2, atoms);
  const AnisotropicFrame frame = unit_frame(2);
  const Grid grid(2, 128, 4.0);
  const TensorMollifier moll(2);
  const double eps = 0.5;
  const auto fields = mollify(mu, frame, eps, grid);
  REQUIRE(fields.size() == 2);
  std::vector<int> idx;
  double worst = 0.0;
  for (long i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, idx);
    const double want = moll.scaled(frame, eps, grid.point(idx));
    worst = std::max(worst, std::abs(fields[0][static_cast<size_t>(i)] - 2.0 * want));
    worst = std::max(worst, std::abs(fields[1][static_cast<size_t>(i)] + 3.0 * want));
  }
  CHECK(worst == 0.0);  // sifting is exact at grid nodes
}

TEST_CASE("mollify preserves mass of atoms and density") {
  GridDensity den;
  den.origin = (Eigen::VectorXd(2) << -0.5, -0.5).finished();
  den.h = 0.125;
  den.shape = {8, 8};
  den.values.assign(64, 0.25);
  std::vector<Atom> atoms(1);
  atoms[0].x = (Eigen::VectorXd(2) << 0.25, -0.125).finished();
  atoms[0].w = (Eigen::VectorXd(1) << 1.5, 0).finished().head(1);
  const DiscreteMeasure mu(2, 1, atoms, den);
  // total mass = 1.5 + 64 * 0.125^2 * 0.25 = 1.75; at eps = 1/2 the scaled
  // kernel spans 64 grid cells per support unit, enough for 1e-8 quadrature
  const Grid grid(2, 1024, 8.0);
  const auto fields = mollify(mu, unit_frame(2), 0.5, grid);
  CHECK(std::abs(field_mass(grid, fields[0]) - 1.75) < 1e-8);
}

TEST_CASE("multiplier is (-1)-homogeneous for the anisotropic dilation") {
  const AnisotropicFrame frame({Rational(1), Rational(1, 2)});
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frame, coordinate_symbol(1));
  Rng rng(23);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd xi(2);
    xi << rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
    if (frame.quasi_norm(xi) < 1e-6) continue;
    const double lambda = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
    const double lhs = tf.multiplier_at(frame.dilate(lambda, xi));
    const double rhs = tf.multiplier_at(xi) / lambda;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("literal-weight denominator loses homogeneity off the isotropic case") {
  const AnisotropicFrame frame({Rational(1), Rational(1, 2)});
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frame, coordinate_symbol(1), QuasiNormForm::kLiteralWeights);
  Eigen::VectorXd xi(2);
  xi << 0.3, 0.7;
  const double lhs = tf.multiplier_at(frame.dilate(2.0, xi));
  const double rhs = tf.multiplier_at(xi) / 2.0;
  CHECK(std::abs(lhs - rhs) > 1e-3 * std::abs(rhs));
}

TEST_CASE("zero direction symbol gives the zero test function") {
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, unit_frame(2), {"zero", [](const Eigen::VectorXd&) { return 0.0; }});
  for (const auto& v : tf.phi()) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("even real multiplier gives a real test function") {
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, unit_frame(2), product_symbol(0, 0));
  double worst = 0.0;
  for (const auto& v : tf.phi()) worst = std::max(worst, std::abs(v.imag()));
  CHECK(worst < 1e-12);
}

TEST_CASE("multiplier pairing matches the direct Parseval sum") {
  // <T_m rho, rho> both in space and frequency, independently.
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, unit_frame(2), product_symbol(0, 0));
  std::complex<double> space{0.0, 0.0};
  for (size_t i = 0; i < tf.phi().size(); ++i)
    space += std::conj(tf.phi()[i]) * tf.rho()[i];  // T_m rho = conj(phi)
  space *= std::pow(grid.h(), 2);
  std::complex<double> freq{0.0, 0.0};
  for (size_t i = 0; i < tf.multiplier().size(); ++i)
    freq += tf.multiplier()[i] * std::norm(tf.rho_hat()[i]);
  freq *= std::pow(grid.dxi(), 2);
  REQUIRE(std::abs(freq) > 1e-6);
  CHECK(std::abs(space - freq) / std::abs(freq) < 1e-10);
}

TEST_CASE("plancherel identity for the transport operator") {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(1);
  const PlancherelReport rep = plancherel_identity_check(pp, 0, z, f, tf);
  CHECK(std::abs(rep.space_side) > 1e-3);
  CHECK(rep.rel_error < 1e-10);
  // the space route flips sign once per derivative order; agreement at odd
  // order pins the frequency route's sign convention
  CHECK(std::abs(rep.space_side - rep.freq_side) < 1e-12);
}

TEST_CASE("plancherel identity for the mixed-order anisotropic operator") {
  const OperatorSystem op = parse_operator("D[1,0] u1 + D[0,1] u1 + D[0,2] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const Grid grid(2, 128, 8.0);
  TestFunction tf(grid, frames[0], product_symbol(1, 1));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(1);
  const PlancherelReport rep = plancherel_identity_check(pp, 0, z, f, tf);
  CHECK(std::abs(rep.freq_side) > 1e-4);
  CHECK(rep.rel_error < 1e-10);
}

TEST_CASE("plancherel sides vanish for a cone direction") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd f(2);
  f << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const PlancherelReport rep = plancherel_identity_check(pp, 0, z, f, tf);
  CHECK(std::abs(rep.space_side) < 1e-8);
  CHECK(std::abs(rep.freq_side) < 1e-8);
}

TEST_CASE("blow-up functional: zero measure gives zero") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = (Eigen::VectorXd(2) << 0.0, 0.0).finished();
  atoms[0].w = (Eigen::VectorXd(2) << 0.0, 0.0).finished();
  // zero weights are legal atoms for the functional even if RN rejects them
  const DiscreteMeasure mu(2, 2, atoms);
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const BlowupSample s =
      blowup_functional(op, pp, 0, frames[0], mu, atoms[0].x, tf, 0.25);
  CHECK(std::abs(s.principal) == 0.0);
  CHECK(std::abs(s.remainder) == 0.0);
}

TEST_CASE("blow-up functional collapses for an atom at the blow-up point") {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 + D[0,1] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = (Eigen::VectorXd(1) << 1.0, 0).finished().head(1);
  const DiscreteMeasure mu(2, 1, atoms);
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));

  // wanted: -(integral rho d1 phi + integral rho d2 phi), eps-independent
  const std::complex<double> want =
      -(tf.mollifier_pairing(MultiIndex::unit(2, 0)) + tf.mollifier_pairing(MultiIndex::unit(2, 1)));
  REQUIRE(std::abs(want) > 1e-3);
  std::complex<double> first;
  for (const double eps : {0.5, 0.25, 0.125, 0.015625}) {
    const BlowupSample s = blowup_functional(op, pp, 0, frames[0], mu, atoms[0].x, tf, eps);
    CHECK(std::abs(s.principal - want) < 1e-12 * std::abs(want));
    CHECK(std::abs(s.remainder) == 0.0);
    if (eps == 0.5)
      first = s.principal;
    else
      CHECK(s.principal == first);  // identical arithmetic path, bit-equal
  }
}

TEST_CASE("blow-up functional matches a dense unclipped reference for shifted atoms") {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = (Eigen::VectorXd(2) << 0.3, -0.2).finished();
  atoms[0].w = (Eigen::VectorXd(1) << 2.0, 0).finished().head(1);
  const DiscreteMeasure mu(2, 1, atoms);
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const double eps = 0.5;

  const BlowupSample s = blowup_functional(op, pp, 0, frames[0], mu, z, tf, eps);

  const Bump1D bump(0);
  const ComplexField& dphi = tf.derivative(MultiIndex::unit(2, 0));
  std::complex<double> ref{0.0, 0.0};
  std::vector<int> idx;
  for (long i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, idx);
    const Eigen::VectorXd w = grid.point(idx);
    double r = 1.0;
    for (int k = 0; k < 2; ++k) r *= bump.value((z[k] - atoms[0].x[k]) / eps + w[k]);
    ref += r * dphi[static_cast<size_t>(i)];
  }
  ref *= std::pow(grid.h(), 2) * 2.0 * (-1.0);  // weight 2, sign (-1)^{|alpha|}
  REQUIRE(std::abs(ref) > 1e-6);
  CHECK(std::abs(s.principal - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("functional pairing is deterministic across thread counts") {
  const OperatorSystem op = parse_operator(kLineOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const DiscreteMeasure mu = line_chain_measure(6);
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(1));
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);

  setenv("AFREE_THREADS", "1", 1);
  const BlowupSample one = blowup_functional(op, pp, 0, frames[0], mu, z, tf, 0.25);
  setenv("AFREE_THREADS", "4", 1);
  const BlowupSample four = blowup_functional(op, pp, 0, frames[0], mu, z, tf, 0.25);
  unsetenv("AFREE_THREADS");
  CHECK(one.principal == four.principal);
  CHECK(one.remainder == four.remainder);
}

TEST_CASE("richardson extrapolation recovers geometric limits") {
  std::vector<std::complex<double>> v;
  for (int i = 0; i < 6; ++i) v.push_back(3.0 + std::pow(4.0, -i) * std::complex<double>{2.0, -1.0});
  CHECK(std::abs(richardson_extrapolate(v) - 3.0) < 1e-12);

  std::vector<std::complex<double>> flat(5, {7.5, 0.0});
  CHECK(richardson_extrapolate(flat) == std::complex<double>{7.5, 0.0});

  std::vector<std::complex<double>> diverging{{1, 0}, {2, 0}, {4, 0}, {8, 0}};
  CHECK(richardson_extrapolate(diverging) == std::complex<double>{8, 0});

  std::vector<std::complex<double>> two{{1, 0}, {2, 0}};
  CHECK(richardson_extrapolate(two) == std::complex<double>{2, 0});
}

TEST_CASE("log-log slope fit") {
  std::vector<double> x, y;
  for (int i = 0; i < 7; ++i) {
    const double e = std::pow(2.0, -i);
    x.push_back(e);
    y.push_back(0.7 * std::pow(e, 1.7));
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(std::isnan(loglog_slope({1.0, 0.5}, {0.0, 0.0})));
}

TEST_CASE("normalized limit of the dipole vanishes with zero gap") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const DiscreteMeasure mu = dipole_measure();
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const auto cert = check_uniform_singularity(mu, z, 2.0, 0.5, dyadic_epsilons(0.25, 8));
  REQUIRE(cert.pass);
  Eigen::VectorXd f(2);
  f << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const BlowupEntry entry = normalized_limit(op, pp, 0, frames[0], mu, f, z, tf, cert);
  for (const auto& v : entry.values) CHECK(std::abs(v) < 1e-14);
  CHECK(std::abs(entry.target) < 1e-14);
  CHECK(entry.gap < 1e-14);
  CHECK(std::isnan(entry.remainder_slope));  // no dominated terms, no remainder
}

TEST_CASE("normalized limit for a one-component atom hits the hand target") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
  const DiscreteMeasure mu(2, 2, atoms);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const auto cert = check_uniform_singularity(mu, z, 2.0, 0.5, dyadic_epsilons(0.25, 6));
  REQUIRE(cert.pass);
  Eigen::VectorXd f(2);
  f << 1.0, 0.0;
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  const BlowupEntry entry = normalized_limit(op, pp, 0, frames[0], mu, f, z, tf, cert);
  const std::complex<double> want = -tf.mollifier_pairing(MultiIndex::unit(2, 0));
  REQUIRE(std::abs(want) > 1e-3);
  CHECK(std::abs(entry.target - want) < 1e-14);
  for (const auto& v : entry.values) CHECK(std::abs(v - want) < 1e-12);
  CHECK(entry.gap < 1e-12);
}

TEST_CASE("normalized limit refuses a failing certificate") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  const DiscreteMeasure mu = dipole_measure();
  Eigen::VectorXd far(2);
  far << 10.0, 10.0;  // no singular mass nearby
  const auto cert = check_uniform_singularity(mu, far, 2.0, 0.5, dyadic_epsilons(0.25, 6));
  REQUIRE_FALSE(cert.pass);
  Eigen::VectorXd f(2);
  f << 1.0, 0.0;
  const Grid grid(2, 64, 8.0);
  TestFunction tf(grid, frames[0], coordinate_symbol(0));
  CHECK_THROWS_AS(normalized_limit(op, pp, 0, frames[0], mu, f, far, tf, cert),
                  CertificateFailed);
}

TEST_CASE("zero-order remainder decays with unit log-log slope") {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 + D[0,1] u1 + D[0,0] u1 = 0;");
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = (Eigen::VectorXd(1) << 1.0, 0).finished().head(1);
  const DiscreteMeasure mu(2, 1, atoms);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  const auto cert = check_uniform_singularity(mu, z, 2.0, 0.5, dyadic_epsilons(0.0625, 7));
  REQUIRE(cert.pass);
  const Grid grid(2, 64, 8.0);
  // the squared coordinate symbol is even per axis, so the zero-order
  // pairing integral rho * phi is strictly positive
  TestFunction tf(grid, frames[0], product_symbol(0, 0));
  const BlowupEntry entry =
      normalized_limit(op, pp, 0, frames[0], mu, Eigen::VectorXd::Ones(1), z, tf, cert);
  for (const double r : entry.remainders) CHECK(r > 0.0);
  CHECK(entry.remainder_slope == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("verify_theorem passes the dipole end to end") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const DiscreteMeasure mu = dipole_measure();
  TheoremConfig cfg;
  cfg.grid_n = 64;
  const TheoremReport rep =
      verify_theorem(op, mu, {Eigen::VectorXd::Zero(2)}, cfg);
  CHECK(rep.pass);
  CHECK(rep.afree.pass);
  REQUIRE(rep.points.size() == 1);
  const PointReport& pt = rep.points[0];
  CHECK(pt.certificate.pass);
  CHECK(pt.pointwise.pass);
  CHECK(pt.max_gap < 1e-8);
  // one equation, family = 2 coordinates + 3 products
  CHECK(pt.blowup.size() == 5);
  CHECK(std::abs(std::abs(pt.f[0]) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("verify_theorem raises NotAFree for a non-solution") {
  const OperatorSystem op = parse_operator("dims 2; D[1,0] u1 = 0;");
  std::vector<Atom> atoms(1);
  atoms[0].x = Eigen::VectorXd::Zero(2);
  atoms[0].w = (Eigen::VectorXd(1) << 1.0, 0).finished().head(1);
  const DiscreteMeasure mu(2, 1, atoms);
  TheoremConfig cfg;
  cfg.grid_n = 64;
  CHECK_THROWS_AS(verify_theorem(op, mu, {Eigen::VectorXd::Zero(2)}, cfg), NotAFree);
}

TEST_CASE("verify_theorem raises CertificateFailed on the atomized line") {
  const OperatorSystem op = parse_operator(kLineOperator);
  const DiscreteMeasure mu = line_chain_measure(10);
  TheoremConfig cfg;
  cfg.grid_n = 64;
  CHECK_THROWS_AS(verify_theorem(op, mu, {Eigen::VectorXd::Zero(2)}, cfg), CertificateFailed);
}

TEST_CASE("verify_theorem with no points is an empty pass") {
  const OperatorSystem op = parse_operator(kDipoleOperator);
  const DiscreteMeasure mu = dipole_measure();
  TheoremConfig cfg;
  cfg.grid_n = 64;
  const TheoremReport rep = verify_theorem(op, mu, {}, cfg);
  CHECK(rep.points.empty());
  CHECK(rep.pass);
}
