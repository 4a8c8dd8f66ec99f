#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exdyn/models.hpp"
#include "exdyn/simulate.hpp"
#include "exdyn/verify.hpp"

namespace exdyn {

enum class Command { verify_algebra, verify_duality, verify_reversibility, verify_all, thermalize, simulate, dual_check };

std::string to_string(Command command);

/// A run description. The text form is one `key = value` per line; `#`
/// starts a comment. Keys:
///
///   command     verify-algebra | verify-duality | verify-reversibility |
///               verify-all | thermalize | simulate | dual-check
///   model       IEM(s1,t1;s2,t2) | RIEM(g1,d1;g2,d2) | RW | PIEM(q1,q2)
///   nmax        largest mass sector (>= 1)
///   graph       edge-list file, "pair" or "path:N" (default "pair")
///   init        comma-separated initial wealths
///   seed        unsigned 64-bit seed
///   tmax        simulated time for `simulate`
///   samples     stationary samples for `simulate` (0 disables the histogram)
///   burn_in     events discarded before sampling
///   thin        time between samples
///   time        prediction time for `dual-check`
///   replicas    Monte Carlo replicas for `dual-check`
///   vertex      restrict `dual-check` to one vertex
///   max_relative_error   dual-check acceptance (default 0.02)
///   output      output directory
///   arithmetic  exact | float
///   tolerance   float comparison tolerance (default 1e-12)
struct RunConfig {
  std::optional<Command> command;
  std::optional<ModelSpec> model;
  long nmax = 0;
  std::string graph = "pair";
  Configuration init;
  std::uint64_t seed = 1;
  double tmax = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t burn_in = 1000;
  double thin = 1.0;
  double time = 0.0;
  std::uint64_t replicas = 0;
  std::optional<long> vertex;
  double max_relative_error = 0.02;
  std::string output;
  Arithmetic arithmetic;
  /// Directory used to resolve a relative graph path.
  std::string base_dir;
  /// Position (line, column) of each key's value, for error messages.
  std::map<std::string, std::pair<std::size_t, std::size_t>> positions;
};

/// Parses and validates. ConfigError carries the line and column.
RunConfig parse_config(std::string_view text, std::string base_dir = "");
RunConfig load_config(const std::string& path);

/// Re-checks command-specific requirements (after flag overrides).
void validate_config(const RunConfig& config);

Graph resolve_graph(const RunConfig& config);

struct ExecuteResult {
  int exit_code = 0;
  std::string summary;
  std::vector<std::string> files;
};

/// Runs the command and writes its artifacts to `out_dir` (created if
/// needed). Exit code 0 when every check passes or the simulation
/// completes, 1 when a check fails.
ExecuteResult execute(const RunConfig& config, const std::string& out_dir, unsigned jobs = 1);

}  // namespace exdyn
