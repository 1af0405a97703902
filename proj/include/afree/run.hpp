#pragma once

#include <string>

#include "afree/blowup.hpp"
#include "afree/measure_json.hpp"
#include "afree/operator_system.hpp"

namespace afree {

inline constexpr const char* kVersion = "afree 0.1.0";

// One verification run, loaded from a JSON config file. Relative operator
// and measure paths resolve against the config file's directory.
struct RunConfig {
  std::string operator_path;
  std::string measure_path;
  std::vector<Eigen::VectorXd> points;
  std::uint64_t seed = 1;
  int grid_n = 128;
  double padding = 4.0;
  double eps0 = 0.25;
  int eps_count = 8;
  double p = 2.0;
  double q = 0.5;
  int samples = 64;
  int resolution = 16;
  double cone_tol = 1e-8;
  double residual_tol = 1e-8;
  double certificate_tol = kCertificateRatioTol;
  double gap_tol = 1e-6;
  std::string method = "both";  // exact | sampled | both
  QuasiNormForm form = QuasiNormForm::kInverseWeights;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j, const std::string& base_dir);
nlohmann::json config_json(const RunConfig& cfg);

TheoremConfig theorem_config(const RunConfig& cfg);

// Loads and enforces the CLI-side caps d, m, n <= 8.
OperatorSystem load_operator_checked(const std::string& path);
DiscreteMeasure load_measure_checked(const std::string& path, const OperatorSystem& op);

nlohmann::json symbol_section(const OperatorSystem& op);
nlohmann::json cone_section(const OperatorSystem& op, const Eigen::VectorXd& x,
                            const RunConfig& cfg);
nlohmann::json afree_section(const ResidualReport& rep);
nlohmann::json certificate_json(const SingularityCertificate& cert);
nlohmann::json theorem_section(const TheoremReport& rep);

// version/command/config shell every report starts from
nlohmann::json report_shell(const RunConfig& cfg, const std::string& command);

// eps-table rows for plotting: one line per (point, equation, psi, eps)
std::string blowup_csv(const TheoremReport& rep);

}  // namespace afree
