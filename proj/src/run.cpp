#include "afree/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "afree/cone.hpp"
#include "afree/dsl.hpp"

namespace afree {

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

nlohmann::json complex_json(const std::complex<double>& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json multi_index_json(const MultiIndex& a) {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k < a.dim(); ++k) out.push_back(a[k]);
  return out;
}

std::string resolve_against(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j, const std::string& base_dir) {
  RunConfig cfg;
  try {
    if (j.contains("operator")) cfg.operator_path = resolve_against(base_dir, j.at("operator"));
    if (j.contains("measure")) cfg.measure_path = resolve_against(base_dir, j.at("measure"));
    if (j.contains("points"))
      for (const auto& pt : j.at("points")) {
        Eigen::VectorXd v(pt.size());
        for (size_t k = 0; k < pt.size(); ++k) v[static_cast<int>(k)] = pt[k].get<double>();
        cfg.points.push_back(std::move(v));
      }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid_n = j.value("grid_n", cfg.grid_n);
    cfg.padding = j.value("padding", cfg.padding);
    cfg.eps0 = j.value("eps0", cfg.eps0);
    cfg.eps_count = j.value("eps_count", cfg.eps_count);
    cfg.p = j.value("p", cfg.p);
    cfg.q = j.value("q", cfg.q);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.resolution = j.value("resolution", cfg.resolution);
    cfg.cone_tol = j.value("cone_tol", cfg.cone_tol);
    cfg.residual_tol = j.value("residual_tol", cfg.residual_tol);
    cfg.certificate_tol = j.value("certificate_tol", cfg.certificate_tol);
    cfg.gap_tol = j.value("gap_tol", cfg.gap_tol);
    cfg.method = j.value("method", cfg.method);
    const std::string form = j.value("denominator", "inverse");
    if (form == "inverse") {
      cfg.form = QuasiNormForm::kInverseWeights;
    } else if (form == "literal") {
      cfg.form = QuasiNormForm::kLiteralWeights;
    } else {
      throw Error("denominator must be 'inverse' or 'literal'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed config: ") + e.what());
  }

  if (cfg.cone_tol <= 0.0 || cfg.residual_tol <= 0.0 || cfg.certificate_tol <= 0.0 ||
      cfg.gap_tol <= 0.0)
    throw Error("tolerances must be positive");
  if (cfg.eps_count < 4) throw Error("epsilon schedule needs at least 4 scales");
  if (!(cfg.eps0 > 0.0 && cfg.eps0 < 1.0)) throw Error("eps0 must lie in (0, 1)");
  if (!(cfg.p > 1.0)) throw Error("inner exponent must satisfy p > 1");
  if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw Error("outer exponent must satisfy 0 < q < 1");
  if (cfg.grid_n < 2 || (cfg.grid_n & (cfg.grid_n - 1)) != 0)
    throw Error("grid_n must be a power of two");
  if (cfg.padding < 4.0) throw Error("padding factor must be at least 4");
  if (cfg.samples < 1) throw Error("samples must be positive");
  if (cfg.resolution < 1) throw Error("resolution must be positive");
  if (cfg.method != "exact" && cfg.method != "sampled" && cfg.method != "both")
    throw Error("method must be exact, sampled, or both");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed config: ") + e.what());
  }
  return config_from_json(j, std::filesystem::path(path).parent_path().string());
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : cfg.points) pts.push_back(vec_json(p));
  return nlohmann::json{
      {"operator", cfg.operator_path},
      {"measure", cfg.measure_path},
      {"points", pts},
      {"seed", cfg.seed},
      {"grid_n", cfg.grid_n},
      {"padding", cfg.padding},
      {"eps0", cfg.eps0},
      {"eps_count", cfg.eps_count},
      {"p", cfg.p},
      {"q", cfg.q},
      {"samples", cfg.samples},
      {"resolution", cfg.resolution},
      {"cone_tol", cfg.cone_tol},
      {"residual_tol", cfg.residual_tol},
      {"certificate_tol", cfg.certificate_tol},
      {"gap_tol", cfg.gap_tol},
      {"method", cfg.method},
      {"denominator", cfg.form == QuasiNormForm::kInverseWeights ? "inverse" : "literal"}};
}

TheoremConfig theorem_config(const RunConfig& cfg) {
  TheoremConfig t;
  t.grid_n = cfg.grid_n;
  t.padding = cfg.padding;
  t.p = cfg.p;
  t.q = cfg.q;
  t.eps0 = cfg.eps0;
  t.eps_count = cfg.eps_count;
  t.samples = cfg.samples;
  t.seed = cfg.seed;
  t.resolution = cfg.resolution;
  t.cone_tol = cfg.cone_tol;
  t.residual_tol = cfg.residual_tol;
  t.certificate_tol = cfg.certificate_tol;
  t.gap_tol = cfg.gap_tol;
  t.form = cfg.form;
  return t;
}

OperatorSystem load_operator_checked(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open operator file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  OperatorSystem op = parse_operator(buf.str());
  if (op.d() > 8 || op.m() > 8 || op.n() > 8)
    throw Error("operator exceeds the CLI cap d, m, n <= 8");
  return op;
}

DiscreteMeasure load_measure_checked(const std::string& path, const OperatorSystem& op) {
  if (path.empty()) throw Error("config has no measure path");
  DiscreteMeasure mu = load_measure(path);
  if (mu.d() != op.d() || mu.m() != op.m())
    throw DimensionMismatch("measure dimensions differ from the operator");
  return mu;
}

nlohmann::json symbol_section(const OperatorSystem& op) {
  const PrincipalPart pp = principal_part(op);
  const HomogeneityWeights weights = solve_weights(pp);
  nlohmann::json eqs = nlohmann::json::array();
  for (int j = 0; j < pp.n(); ++j) {
    nlohmann::json full = nlohmann::json::array();
    for (const auto& a : pp.full[static_cast<size_t>(j)]) full.push_back(multi_index_json(a));
    nlohmann::json principal = nlohmann::json::array();
    for (const auto& [a, coeff] : pp.dominating[static_cast<size_t>(j)])
      principal.push_back(multi_index_json(a));
    nlohmann::json bw = nlohmann::json::array();
    nlohmann::json bd = nlohmann::json::array();
    std::string manifold;
    for (size_t k = 0; k < weights[static_cast<size_t>(j)].size(); ++k) {
      const Rational& b = weights[static_cast<size_t>(j)][k];
      bw.push_back(to_string(b));
      bd.push_back(to_double(b));
      if (k) manifold += " + ";
      manifold += "|xi" + std::to_string(k + 1) + "|^(" + to_string(Rational(1) / b) + ")";
    }
    manifold += " = 1";
    eqs.push_back(nlohmann::json{{"equation", j + 1},
                                 {"full", full},
                                 {"principal", principal},
                                 {"weights", bw},
                                 {"weights_decimal", bd},
                                 {"manifold", manifold}});
  }
  return nlohmann::json{{"d", op.d()}, {"m", op.m()}, {"n", op.n()}, {"equations", eqs}};
}

namespace {

nlohmann::json cone_json(const ConeResult& cone) {
  nlohmann::json basis = nlohmann::json::array();
  for (int c = 0; c < cone.dimension; ++c) basis.push_back(vec_json(cone.basis.col(c)));
  return nlohmann::json{{"dimension", cone.dimension},
                        {"method", cone.method},
                        {"basis", basis},
                        {"residuals", cone.residuals}};
}

}  // namespace

nlohmann::json cone_section(const OperatorSystem& op, const Eigen::VectorXd& x,
                            const RunConfig& cfg) {
  const PrincipalPart pp = principal_part(op);
  const auto frames = make_frames(solve_weights(pp));
  nlohmann::json out{{"point", vec_json(x)}};
  std::optional<ConeResult> exact, sampled;
  if (cfg.method == "exact" || cfg.method == "both") {
    exact = intersection_cone_exact(pp, x);
    out["exact"] = cone_json(*exact);
  }
  if (cfg.method == "sampled" || cfg.method == "both") {
    sampled = intersection_cone_sampled(pp, frames, x, cfg.samples, cfg.seed);
    out["sampled"] = cone_json(*sampled);
  }
  if (exact && sampled) {
    const std::vector<double> angles = principal_angles(exact->basis, sampled->basis);
    out["angles"] = angles;
    double worst = 0.0;
    for (double a : angles) worst = std::max(worst, a);
    out["dimensions_agree"] = exact->dimension == sampled->dimension;
    out["max_angle"] = worst;
  }
  return out;
}

nlohmann::json afree_section(const ResidualReport& rep) {
  return nlohmann::json{{"max_residual", rep.max_residual},
                        {"tests", rep.tests},
                        {"worst_equation", rep.worst_equation + 1},
                        {"worst_center", vec_json(rep.worst_center)},
                        {"worst_scale", rep.worst_scale},
                        {"pass", rep.pass}};
}

nlohmann::json certificate_json(const SingularityCertificate& cert) {
  return nlohmann::json{{"point", vec_json(cert.x)},
                        {"p", cert.p},
                        {"q", cert.q},
                        {"strategy", cert.strategy},
                        {"epsilons", cert.epsilons},
                        {"ratios", cert.ratios},
                        {"inner_mass", cert.inner_mass},
                        {"pass", cert.pass},
                        {"reason", cert.reason}};
}

nlohmann::json theorem_section(const TheoremReport& rep) {
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& row : rep.weights) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& b : row) r.push_back(to_string(b));
    weights.push_back(r);
  }
  nlohmann::json points = nlohmann::json::array();
  for (const PointReport& pt : rep.points) {
    nlohmann::json entries = nlohmann::json::array();
    for (const BlowupEntry& e : pt.blowup) {
      nlohmann::json values = nlohmann::json::array();
      for (const auto& v : e.values) values.push_back(complex_json(v));
      entries.push_back(nlohmann::json{{"equation", e.equation + 1},
                                       {"psi", e.psi},
                                       {"epsilons", e.epsilons},
                                       {"values", values},
                                       {"remainders", e.remainders},
                                       {"extrapolated", complex_json(e.extrapolated)},
                                       {"target", complex_json(e.target)},
                                       {"gap", e.gap},
                                       {"remainder_slope", e.remainder_slope}});
    }
    points.push_back(
        nlohmann::json{{"point", vec_json(pt.z)},
                       {"f", vec_json(pt.f)},
                       {"certificate", certificate_json(pt.certificate)},
                       {"pointwise", nlohmann::json{{"pass", pt.pointwise.pass},
                                                    {"max_residual", pt.pointwise.max_residual},
                                                    {"worst_xi", vec_json(pt.pointwise.worst_xi)}}},
                       {"blowup", entries},
                       {"max_gap", pt.max_gap},
                       {"pass", pt.pass}});
  }
  return nlohmann::json{{"afree", afree_section(rep.afree)},
                        {"weights", weights},
                        {"points", points},
                        {"pass", rep.pass}};
}

nlohmann::json report_shell(const RunConfig& cfg, const std::string& command) {
  return nlohmann::json{
      {"version", kVersion}, {"command", command}, {"config", config_json(cfg)}};
}

std::string blowup_csv(const TheoremReport& rep) {
  std::ostringstream out;
  out << "point,equation,psi,eps,value_re,value_im,remainder,inner_mass\n";
  out.precision(17);
  for (size_t pi = 0; pi < rep.points.size(); ++pi) {
    const PointReport& pt = rep.points[pi];
    for (const BlowupEntry& e : pt.blowup)
      for (size_t i = 0; i < e.epsilons.size(); ++i)
        out << pi << "," << e.equation + 1 << "," << e.psi << "," << e.epsilons[i] << ","
            << e.values[i].real() << "," << e.values[i].imag() << "," << e.remainders[i] << ","
            << pt.certificate.inner_mass[i] << "\n";
  }
  return out.str();
}

}  // namespace afree
