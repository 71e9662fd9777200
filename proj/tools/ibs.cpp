#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ibs/ibs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAbort = 1;
constexpr int kExitConfig = 2;

int fail(ibs_status s, const char* context) {
  std::fprintf(stderr, "ibs: %s: %s\n", context, ibs_last_error());
  return s == IBS_ERR_CONFIG || s == IBS_ERR_IO || s == IBS_ERR_INVALID_ARGUMENT ? kExitConfig : kExitAbort;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  ibs_config* cfg = nullptr;
  ibs_status s = ibs_config_load(config_path.c_str(), &cfg);
  if (s != IBS_OK) return fail(s, "config");
  if (!out_dir.empty() && (s = ibs_config_set_out_dir(cfg, out_dir.c_str())) != IBS_OK) {
    ibs_config_free(cfg);
    return fail(s, "config");
  }
  ibs_run_summary summary{};
  s = ibs_run(cfg, &summary);
  const std::string dir = ibs_config_out_dir(cfg);
  ibs_config_free(cfg);
  if (s != IBS_OK) return fail(s, "run");
  static const char* const names[] = {"completed", "margin-abort", "nan-abort"};
  std::printf("%s after %ld steps, t = %.6g, output in %s\n", names[summary.termination], summary.steps,
              summary.final_time, dir.c_str());
  if (summary.termination != IBS_COMPLETED) {
    std::fprintf(stderr, "ibs: %s\n", ibs_last_error());
    return kExitAbort;
  }
  return kExitOk;
}

void print_value(const char* key, double v) { std::printf("%-15s %.16e\n", key, v); }

int cmd_diagnose(const std::string& snapshot, const std::string& config_path) {
  ibs_config* cfg = nullptr;
  ibs_status s;
  if (!config_path.empty() && (s = ibs_config_load(config_path.c_str(), &cfg)) != IBS_OK) return fail(s, "config");
  ibs_state* state = nullptr;
  if ((s = ibs_state_load(snapshot.c_str(), &state)) != IBS_OK) {
    ibs_config_free(cfg);
    return fail(s, "snapshot");
  }
  ibs_record r{};
  s = ibs_diagnose(state, cfg, &r);
  ibs_state_free(state);
  ibs_config_free(cfg);
  if (s != IBS_OK) return fail(s, "diagnose");
  print_value("t", r.t);
  print_value("E", r.energy);
  print_value("D_rate", r.dissipation);
  print_value("area", r.area);
  print_value("s", r.perimeter);
  print_value("closure_defect", r.closure_defect);
  print_value("beta1", r.beta1);
  print_value("beta2", r.beta2);
  print_value("H1", r.H1);
  print_value("H2", r.H2);
  print_value("H2_5", r.H2_5);
  print_value("h0", r.h0);
  print_value("h1_5", r.h1_5);
  for (int k = 0; k < 4; ++k) {
    const std::string a = "a" + std::to_string(k + 1);
    const std::string b = "b" + std::to_string(k + 1);
    print_value(a.c_str(), r.a[k]);
    print_value(b.c_str(), r.b[k]);
  }
  print_value("fuglede", r.fuglede);
  print_value("gage", r.gage);
  return kExitOk;
}

void report(int id, const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("[%s] %2d %s (%.1fs): %s\n", passed ? "PASS" : "FAIL", id, name, seconds, detail);
  std::fflush(stdout);
}

int cmd_verify(const std::vector<int>& ids) {
  int failed = 0;
  const ibs_status s = ibs_verify(ids.empty() ? nullptr : ids.data(), ids.size(), report, nullptr, &failed);
  if (s != IBS_OK) return fail(s, "verify");
  const int total = ids.empty() ? ibs_criterion_count() : static_cast<int>(ids.size());
  std::printf("%d/%d criteria passed\n", total - failed, total);
  return failed == 0 ? kExitOk : kExitAbort;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic string in 2-D Stokes flow"};
  app.set_version_flag("--version", std::string(ibs_version()));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  CLI::App* run = app.add_subcommand("run", "Simulate a configured preset and write outputs");
  run->add_option("--config", config_path, "Config file (key = value)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides out_dir)");

  std::string snapshot, diag_config;
  CLI::App* diagnose = app.add_subcommand("diagnose", "Print diagnostics of a snapshot");
  diagnose->add_option("--snapshot", snapshot, "snapshot_<step>.csv")->required();
  diagnose->add_option("--config", diag_config, "Config supplying force parameters");

  std::vector<int> ids;
  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--only", ids, "Criterion ids to run")->check(CLI::Range(1, ibs_criterion_count()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return cmd_run(config_path, out_dir);
  if (*diagnose) return cmd_diagnose(snapshot, diag_config);
  return cmd_verify(ids);
}
