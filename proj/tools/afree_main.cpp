#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "afree/dsl.hpp"
#include "afree/run.hpp"

namespace {

using afree::RunConfig;

struct Cli {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw afree::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw afree::Error("cannot write '" + path + "'");
  out << text;
}

RunConfig load_with_overrides(const Cli& cli) {
  RunConfig cfg = afree::load_config(cli.config_path);
  if (cli.seed) cfg.seed = *cli.seed;
  if (cli.method) {
    if (*cli.method != "exact" && *cli.method != "sampled" && *cli.method != "both")
      throw afree::Error("method must be exact, sampled, or both");
    cfg.method = *cli.method;
  }
  return cfg;
}

std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

// Reports go to stdout and, when requested, to --out. Every path through a
// subcommand emits exactly one report object. timing_ms is the only field
// that varies between identical runs.
void emit(const Cli& cli, nlohmann::json report) {
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - g_start)
          .count();
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!cli.out_path.empty()) write_file(cli.out_path, text);
}

int cmd_parse(const Cli& cli, const std::string& op_path) {
  const afree::OperatorSystem op = afree::parse_operator(read_file(op_path));
  std::cout << "d=" << op.d() << " m=" << op.m() << " n=" << op.n() << "\n";
  std::cout << afree::serialize_operator(op);
  return 0;
}

int cmd_symbol(const Cli& cli) {
  const RunConfig cfg = load_with_overrides(cli);
  const afree::OperatorSystem op = afree::load_operator_checked(cfg.operator_path);
  nlohmann::json report = afree::report_shell(cfg, "symbol");
  report["symbol"] = afree::symbol_section(op);
  report["pass"] = true;
  emit(cli, report);
  return 0;
}

int cmd_wavecone(const Cli& cli) {
  const RunConfig cfg = load_with_overrides(cli);
  const afree::OperatorSystem op = afree::load_operator_checked(cfg.operator_path);
  nlohmann::json report = afree::report_shell(cfg, "wavecone");
  nlohmann::json cones = nlohmann::json::array();
  std::vector<Eigen::VectorXd> points = cfg.points;
  if (points.empty()) points.push_back(Eigen::VectorXd::Zero(op.d()));
  for (const auto& x : points) cones.push_back(afree::cone_section(op, x, cfg));
  report["cones"] = cones;
  report["pass"] = true;
  emit(cli, report);
  return 0;
}

int cmd_check_afree(const Cli& cli) {
  const RunConfig cfg = load_with_overrides(cli);
  const afree::OperatorSystem op = afree::load_operator_checked(cfg.operator_path);
  const afree::DiscreteMeasure mu = afree::load_measure_checked(cfg.measure_path, op);
  const afree::ResidualReport rep =
      afree::check_afree(op, mu, cfg.resolution, cfg.residual_tol);
  nlohmann::json report = afree::report_shell(cfg, "check-afree");
  report["afree"] = afree::afree_section(rep);
  report["pass"] = rep.pass;
  emit(cli, report);
  return rep.pass ? 0 : 4;
}

int cmd_check_singularity(const Cli& cli) {
  const RunConfig cfg = load_with_overrides(cli);
  const afree::OperatorSystem op = afree::load_operator_checked(cfg.operator_path);
  const afree::DiscreteMeasure mu = afree::load_measure_checked(cfg.measure_path, op);
  const std::vector<double> eps = afree::dyadic_epsilons(cfg.eps0, cfg.eps_count);
  nlohmann::json report = afree::report_shell(cfg, "check-singularity");
  nlohmann::json certs = nlohmann::json::array();
  bool all = true;
  for (const auto& z : cfg.points) {
    const afree::SingularityCertificate cert =
        afree::check_uniform_singularity(mu, z, cfg.p, cfg.q, eps, cfg.certificate_tol);
    all = all && cert.pass;
    certs.push_back(afree::certificate_json(cert));
  }
  report["certificates"] = certs;
  report["pass"] = all;
  emit(cli, report);
  return all ? 0 : 5;
}

// Shared by `blowup` and `verify`: the full pipeline, differing only in
// whether clause failures affect the exit code.
int run_theorem(const Cli& cli, const std::string& command, bool enforce_clauses) {
  const RunConfig cfg = load_with_overrides(cli);
  const afree::OperatorSystem op = afree::load_operator_checked(cfg.operator_path);
  const afree::DiscreteMeasure mu = afree::load_measure_checked(cfg.measure_path, op);
  const afree::TheoremReport rep =
      afree::verify_theorem(op, mu, cfg.points, afree::theorem_config(cfg));
  nlohmann::json report = afree::report_shell(cfg, command);
  report["theorem"] = afree::theorem_section(rep);
  report["pass"] = rep.pass;
  emit(cli, report);
  if (!cli.csv_path.empty()) write_file(cli.csv_path, afree::blowup_csv(rep));
  if (enforce_clauses && !rep.pass) return 6;
  return 0;
}

// Failure paths still leave a diagnostic report behind.
int fail_report(const Cli& cli, const std::string& command, const std::string& type,
                const std::string& message, int code) {
  nlohmann::json report{{"version", afree::kVersion},
                        {"command", command},
                        {"error", nlohmann::json{{"type", type}, {"message", message}}},
                        {"pass", false}};
  std::cerr << type << ": " << message << "\n";
  try {
    emit(cli, report);
  } catch (const afree::Error&) {
    // the report destination itself failed; the stderr line remains
  }
  return code;
}

int dispatch(const Cli& cli, const std::string& command, const std::string& op_path) {
  try {
    if (command == "parse") return cmd_parse(cli, op_path);
    if (command == "symbol") return cmd_symbol(cli);
    if (command == "wavecone") return cmd_wavecone(cli);
    if (command == "check-afree") return cmd_check_afree(cli);
    if (command == "check-singularity") return cmd_check_singularity(cli);
    if (command == "blowup") return run_theorem(cli, "blowup", false);
    if (command == "verify") return run_theorem(cli, "verify", true);
    throw afree::Error("unknown command");
  } catch (const afree::ParseError& e) {
    return fail_report(cli, command, "parse_error", e.what(), 2);
  } catch (const afree::InfeasibleWeights& e) {
    return fail_report(cli, command, "infeasible_weights", e.what(), 3);
  } catch (const afree::NoPositiveSolution& e) {
    return fail_report(cli, command, "no_positive_weights", e.what(), 3);
  } catch (const afree::NotAFree& e) {
    return fail_report(cli, command, "not_a_free", e.what(), 4);
  } catch (const afree::CertificateFailed& e) {
    return fail_report(cli, command, "certificate_failed", e.what(), 5);
  } catch (const afree::Error& e) {
    return fail_report(cli, command, "error", e.what(), 2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal symbols, wave cones, and blow-up verification for A-free measures"};
  app.require_subcommand(1);

  Cli cli;
  std::string op_path;

  CLI::App* parse = app.add_subcommand("parse", "Parse an operator file and echo canonical form");
  parse->add_option("operator", op_path, "operator source file")->required();

  auto add_config_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", cli.config_path, "run config JSON")->required();
    cmd->add_option("--seed", [&cli](const std::vector<std::string>& v) {
      cli.seed = std::stoull(v.at(0));
      return true;
    }, "override config seed");
    cmd->add_option("--out", cli.out_path, "write the report JSON here as well");
    return cmd;
  };

  CLI::App* symbol = add_config_cmd("symbol", "Principal part, weights, and dilation manifolds");
  (void)symbol;
  CLI::App* wavecone = add_config_cmd("wavecone", "Intersection kernel cones at the config points");
  wavecone->add_option("--method", [&cli](const std::vector<std::string>& v) {
    cli.method = v.at(0);
    return true;
  }, "exact | sampled | both");
  add_config_cmd("check-afree", "Weak-form residual of A mu = 0");
  add_config_cmd("check-singularity", "Uniform-singularity certificates at the config points");
  CLI::App* blowup = add_config_cmd("blowup", "Blow-up limits without clause enforcement");
  blowup->add_option("--csv", cli.csv_path, "write the eps table as CSV");
  CLI::App* verify = add_config_cmd("verify", "Verify the structure theorem end to end");
  verify->add_option("--csv", cli.csv_path, "write the eps table as CSV");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  return dispatch(cli, command, op_path);
}
