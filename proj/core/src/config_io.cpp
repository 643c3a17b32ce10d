#include "ladder/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace ladder {

namespace {

using nlohmann::json;

double parse_nbar(const json& value, const std::string& key) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_object()) {
    if (value.size() != 1) {
      throw std::invalid_argument(key + ": expected one of thermal/pump");
    }
    if (value.contains("thermal")) {
      const json& t = value.at("thermal");
      for (const auto& [k, v] : t.items()) {
        if (k != "omega" && k != "T") {
          throw std::invalid_argument(key + ".thermal: unknown key '" + k + "'");
        }
      }
      return nbar_thermal(t.at("omega").get<double>(), t.at("T").get<double>());
    }
    if (value.contains("pump")) {
      const json& p = value.at("pump");
      for (const auto& [k, v] : p.items()) {
        if (k != "R" && k != "dipole" && k != "gamma") {
          throw std::invalid_argument(key + ".pump: unknown key '" + k + "'");
        }
      }
      return nbar_pump(p.at("R").get<double>(), p.at("dipole").get<double>(),
                       p.at("gamma").get<double>());
    }
  }
  throw std::invalid_argument(key + ": expected a number, thermal{...} or pump{...}");
}

}  // namespace

std::string mode_to_string(DipoleMode mode) {
  return mode == DipoleMode::orthogonal ? "orthogonal" : "interfering";
}

DipoleMode mode_from_string(const std::string& s) {
  if (s == "orthogonal") return DipoleMode::orthogonal;
  if (s == "interfering") return DipoleMode::interfering;
  throw std::invalid_argument("mode must be 'orthogonal' or 'interfering', got '" + s + "'");
}

EnsembleConfig parse_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }
  static const std::set<std::string> known = {
      "n_atoms", "nbar1", "nbar2", "theta_deg", "mode",
      "gamma1",  "gamma2", "omega12", "omega23"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }

  EnsembleConfig cfg;
  cfg.n_atoms = j.at("n_atoms").get<int>();
  if (j.contains("nbar1")) cfg.nbar1 = parse_nbar(j.at("nbar1"), "nbar1");
  if (j.contains("nbar2")) cfg.nbar2 = parse_nbar(j.at("nbar2"), "nbar2");
  if (j.contains("theta_deg")) {
    cfg.theta = j.at("theta_deg").get<double>() * M_PI / 180.0;
  }
  if (j.contains("mode")) {
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
  } else if (j.contains("theta_deg")) {
    cfg.mode = (std::abs(std::cos(cfg.theta)) < 1e-12) ? DipoleMode::orthogonal
                                                       : DipoleMode::interfering;
  }
  if (j.contains("gamma1")) cfg.gamma1 = j.at("gamma1").get<double>();
  if (j.contains("gamma2")) cfg.gamma2 = j.at("gamma2").get<double>();
  if (j.contains("omega12")) cfg.omega12 = j.at("omega12").get<double>();
  if (j.contains("omega23")) cfg.omega23 = j.at("omega23").get<double>();
  validate(cfg);
  return cfg;
}

EnsembleConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  return parse_config(in);
}

}  // namespace ladder
