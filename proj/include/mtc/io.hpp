#pragma once

#include <string>

#include "json.hpp"
#include "mtc/coset.hpp"

namespace mtc {

nlohmann::json md_to_json(const ModularData& md);
ModularData md_from_json(const nlohmann::json& j);

void save_modular_data(const ModularData& md, const std::string& path);
ModularData load_modular_data(const std::string& path);

/// Coset schema: {"c1": <data|{"file": path}>, "c2": ..., "ambient": ...,
///  "branching": {"<ambient label>": [{"c1": label, "c2": label, "mult": n}, ...]}}
nlohmann::json coset_to_json(const CosetSystem& cs);
CosetSystem coset_from_json(const nlohmann::json& j, const std::string& base_dir, Tolerances tol = {});

void save_coset_system(const CosetSystem& cs, const std::string& path);
CosetSystem load_coset_system(const std::string& path, Tolerances tol = {});

void save_solutions(const std::vector<CosetSystem>& solutions, const std::string& path);

} // namespace mtc
