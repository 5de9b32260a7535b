#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "diracshell/approx.hpp"

namespace diracshell {

// Malformed or inconsistent run configuration. key() is the dotted path of the
// offending entry, e.g. "coupling.F.matrix".
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct GridSpec {
  std::array<double, 3> min{};
  std::array<double, 3> max{};
  std::array<int, 3> points{1, 1, 1};
};

struct RunConfig {
  // problem
  int dimension = 2;
  double mass = 1.0;
  // surface
  ShapeSpec shape;
  // coupling
  CouplingSpec coupling;
  // numerics
  int surface_order = 256;
  SingularRuleOptions singular;
  int scan_points = 400;
  double margin = 1e-3;
  double rank_tol = 1e-8;
  RootOptions roots;
  bool stability_check = true;
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025, 0.0125};
  std::string profile = "uniform";
  EpsOptions eps;
  bool eps_convergence_check = false;
  int eigen_index = 0;
  GridSpec grid;
  std::array<double, 3> decay_direction{1, 0, 0};
  // output
  std::string out_dir = ".";
  std::string prefix = "run";

  // normalized echo with every default filled in; parse_config(echo) reproduces it
  nlohmann::json echo;
};

// Sections: problem, surface, coupling, numerics, output. Unknown keys are errors.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& echo);

// Points of the eigenfunction grid in row-major order (x fastest).
std::vector<Point> grid_points(const GridSpec& g, int dimension);
double grid_cell_volume(const GridSpec& g, int dimension);

}  // namespace diracshell
