#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "diracshell/config.hpp"

namespace diracshell {

inline constexpr const char* kSchemaVersion = "dirac-shell/1";

struct SelftestCheck {
  std::string name;
  double defect = 0;
  double tol = 0;
  bool pass() const { return defect <= tol; }
};

// Bessel reference table, Dirac algebra, kernel symmetry and finite-difference
// residual checks. The random sample points come from `seed`.
std::vector<SelftestCheck> run_selftest(unsigned seed = 1);

// Everything the exact pipeline produces for one configuration: surface,
// coupling, Weyl operator, gap scan and refined roots. T refers to members, so
// the object is neither copied nor moved. Non-hermitian couplings raise
// ConfigError on "coupling" with the defect norm.
struct ExactSolution {
  explicit ExactSolution(const RunConfig& c);
  ExactSolution(const ExactSolution&) = delete;
  ExactSolution& operator=(const ExactSolution&) = delete;

  Surface surface;
  WeylOperator op;
  ReducedCoupling rc;
  BSFunction T;
  SpectralResult result;
};

// Each command writes its files to out_dir (created when missing) and returns the
// JSON record, which is also written as <prefix>_<command>.json. Keys are sorted;
// only the "timing" object depends on the run.
nlohmann::json cmd_solve(const RunConfig& c, const std::string& out_dir);
nlohmann::json cmd_approx(const RunConfig& c, const std::string& out_dir);
nlohmann::json cmd_eigenfunction(const RunConfig& c, const std::string& out_dir);
nlohmann::json cmd_oracle_compare(const RunConfig& c, const std::string& out_dir);

}  // namespace diracshell
