#include "afree/measure_json.hpp"

#include <fstream>

namespace afree {
namespace {

Eigen::VectorXd vec_from(const nlohmann::json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

nlohmann::json vec_to(const Eigen::VectorXd& v) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

}  // namespace

DiscreteMeasure measure_from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int m = j.at("m").get<int>();
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms"))
        atoms.push_back({vec_from(a.at("x")), vec_from(a.at("w"))});
    }
    std::optional<GridDensity> density;
    if (j.contains("density") && !j.at("density").is_null()) {
      const auto& g = j.at("density");
      GridDensity gd;
      gd.origin = vec_from(g.at("origin"));
      gd.h = g.at("h").get<double>();
      gd.shape = g.at("shape").get<std::vector<int>>();
      gd.values = g.at("values").get<std::vector<double>>();
      density = std::move(gd);
    }
    return DiscreteMeasure(d, m, std::move(atoms), std::move(density));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed measure json: ") + e.what());
  }
}

nlohmann::json measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::json j;
  j["d"] = mu.d();
  j["m"] = mu.m();
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : mu.atoms()) j["atoms"].push_back({{"x", vec_to(a.x)}, {"w", vec_to(a.w)}});
  if (mu.density()) {
    const GridDensity& g = *mu.density();
    j["density"] = {{"origin", vec_to(g.origin)},
                    {"h", g.h},
                    {"shape", g.shape},
                    {"values", g.values}};
  }
  return j;
}

DiscreteMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open measure file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid json in '" + path + "': " + e.what());
  }
  return measure_from_json(j);
}

void save_measure(const DiscreteMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write measure file '" + path + "'");
  out << measure_to_json(mu).dump(2) << "\n";
}

}  // namespace afree
