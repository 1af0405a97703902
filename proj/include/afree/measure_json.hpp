#pragma once

#include "afree/measure.hpp"
#include "json.hpp"

namespace afree {

// Wire format: {d, m, atoms: [{x: [...], w: [...]}],
//               density: {origin: [...], h, shape: [...], values: [...]}}
// with density optional.
DiscreteMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const DiscreteMeasure& mu);

DiscreteMeasure load_measure(const std::string& path);
void save_measure(const DiscreteMeasure& mu, const std::string& path);

}  // namespace afree
