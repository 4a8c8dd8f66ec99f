#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "exdyn/exdyn.h"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("EXDYN_JOBS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    std::fprintf(stderr, "exdyn: ignoring EXDYN_JOBS='%s' (expected a positive integer)\n", env);
    return 1;
  }
  return static_cast<int>(n);
}

int report_error(exdyn_status status, const char* what) {
  std::fprintf(stderr, "exdyn: %s: %s\n", what, exdyn_last_error());
  return status == EXDYN_ERR_CONFIG || status == EXDYN_ERR_PARAMETER ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification and simulation of immediate exchange models"};
  std::string config_path;
  std::string out_dir;
  std::string arithmetic;
  std::uint64_t seed = 0;
  int jobs = 0;

  app.add_option("--config", config_path, "Run configuration (key = value)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides the config's output key)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides the config)");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads (default: EXDYN_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--arithmetic", arithmetic, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.set_version_flag("--version", std::string(exdyn_version()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error is 2, like a bad config
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!jobs_opt->count()) jobs = jobs_from_env();

  exdyn_config* config = nullptr;
  if (exdyn_status st = exdyn_config_load(config_path.c_str(), &config); st != EXDYN_OK) {
    return report_error(st, config_path.c_str());
  }
  if (seed_opt->count()) exdyn_config_set_seed(config, seed);
  if (!arithmetic.empty()) exdyn_config_set_arithmetic(config, arithmetic.c_str());

  exdyn_run_result* result = nullptr;
  const exdyn_status st = exdyn_execute(config, out_dir.empty() ? nullptr : out_dir.c_str(), jobs, &result);
  exdyn_config_free(config);
  if (st != EXDYN_OK) return report_error(st, "run failed");

  std::fputs(exdyn_run_result_summary(result), stdout);
  const int code = exdyn_run_result_exit_code(result);
  exdyn_run_result_free(result);
  return code;
}
