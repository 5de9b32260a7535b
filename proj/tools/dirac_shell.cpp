// dirac_shell: bound states of Dirac operators with non-local shell interactions.
//
//   dirac_shell selftest
//   dirac_shell solve --config run.json [--out DIR] [--threads N]
//   dirac_shell approx | eigenfunction | oracle-compare --config run.json
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 self-test failure.

#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "diracshell/commands.hpp"

using namespace diracshell;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSelftest = 4;

int selftest(unsigned seed) {
  const auto checks = run_selftest(seed);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%s  %-40s defect=%.3e  tol=%.1e\n", c.pass() ? "PASS" : "FAIL", c.name.c_str(), c.defect, c.tol);
    failed += !c.pass();
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed ? kExitSelftest : 0;
}

void summarize(const nlohmann::json& rec) {
  const std::string cmd = rec.at("command");
  if (cmd == "solve") {
    std::cout << "rank " << rec["rank"] << ", " << rec["eigenvalue_count"] << " eigenvalue(s)\n";
    for (const auto& e : rec["eigenvalues"])
      std::cout << "  z = " << e["z"].get<double>() << "  |det| = " << e["det_residual"]
                << "  stability = " << e["stability_delta"] << '\n';
  } else if (cmd == "approx") {
    std::cout << "z* = " << rec["z_star"].get<double>() << " (" << rec["profile"].get<std::string>() << ")\n";
    for (const auto& r : rec["sweep"])
      std::cout << "  eps = " << r["eps"] << "  z_eps = " << r["z_eps"] << "  |z_eps - z*| = " << r["abs_err"] << '\n';
    std::cout << "fitted order " << rec["fitted_order"] << '\n';
  } else if (cmd == "eigenfunction") {
    std::cout << "z = " << rec["z"].get<double>() << ", " << rec["points"] << " points (" << rec["collar_points"]
              << " in the collar), decay rate " << rec["decay_fit"]["rate"] << " vs "
              << rec["decay_fit"]["expected"] << '\n';
  } else if (cmd == "oracle-compare") {
    std::cout << "max |T - T_oracle| = " << rec["max_T_diff"] << ", max root difference = " << rec["max_root_diff"]
              << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of Dirac operators with non-local shell interactions"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  unsigned seed = 1;
  double bessel_fault_rel = 0;

  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--inject-bessel-fault", bessel_fault_rel, "scale Bessel values by 1 + REL (testing)")
      ->group("");

  auto* st = app.add_subcommand("selftest", "Bessel, Dirac algebra and kernel checks");
  std::vector<CLI::App*> runs;
  for (const char* name : {"solve", "approx", "eigenfunction", "oracle-compare"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    runs.push_back(sub);
  }
  runs[0]->description("exact eigenvalues from the Birman-Schwinger determinant");
  runs[1]->description("eps-sweep of the scaled finite-rank approximation");
  runs[2]->description("eigenfunction samples on a grid");
  runs[3]->description("exact solver against the rotationally reduced oracle");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  if (bessel_fault_rel != 0) set_bessel_fault(bessel_fault_rel);

  try {
    if (st->parsed()) return selftest(seed);
    const RunConfig cfg = load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    nlohmann::json rec;
    if (runs[0]->parsed()) rec = cmd_solve(cfg, dir);
    if (runs[1]->parsed()) rec = cmd_approx(cfg, dir);
    if (runs[2]->parsed()) rec = cmd_eigenfunction(cfg, dir);
    if (runs[3]->parsed()) rec = cmd_oracle_compare(cfg, dir);
    summarize(rec);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
