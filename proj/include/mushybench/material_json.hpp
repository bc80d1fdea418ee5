#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "mushybench/material.hpp"

namespace mushybench {

/// Reads properties from a JSON object with keys C_s, C_l, kappa_s, kappa_l,
/// rho, L, T_s, T_l, T_m (optional) and lambda0 (default 0). Errors name the
/// offending key.
inline MaterialProperties parse_material(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigurationError("material: document must be a JSON object");

  static const std::set<std::string> known = {"C_s", "C_l", "kappa_s", "kappa_l", "rho",
                                              "L",   "T_s", "T_l",     "T_m",     "lambda0"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw ConfigurationError("material: unknown key '" + item.key() + "'");
    }
  }

  const auto number = [&](const char* key) -> double {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ConfigurationError(std::string("material: missing key '") + key + "'");
    if (!it->is_number()) {
      throw ConfigurationError(std::string("material: key '") + key + "' must be a number");
    }
    return it->get<double>();
  };

  MaterialProperties m;
  m.cp_solid = number("C_s");
  m.cp_liquid = number("C_l");
  m.kappa_solid = number("kappa_s");
  m.kappa_liquid = number("kappa_l");
  m.density = number("rho");
  m.latent_heat = number("L");
  m.t_solidus = number("T_s");
  m.t_liquidus = number("T_l");
  if (doc.contains("T_m") && !doc["T_m"].is_null()) m.t_melt = number("T_m");
  if (doc.contains("lambda0")) m.solidus_fraction = number("lambda0");
  validate(m);
  return m;
}

inline MaterialProperties load_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("material: cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError("material: " + path.string() + ": " + e.what());
  }
  return parse_material(doc);
}

inline nlohmann::json to_json(const MaterialProperties& m) {
  nlohmann::json doc = {{"C_s", m.cp_solid},       {"C_l", m.cp_liquid},
                        {"kappa_s", m.kappa_solid}, {"kappa_l", m.kappa_liquid},
                        {"rho", m.density},         {"L", m.latent_heat},
                        {"T_s", m.t_solidus},       {"T_l", m.t_liquidus},
                        {"lambda0", m.solidus_fraction}};
  if (m.t_melt) doc["T_m"] = *m.t_melt;
  return doc;
}

}  // namespace mushybench
