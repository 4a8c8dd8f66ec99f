#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "exdyn/config.hpp"
#include "exdyn/errors.hpp"

using namespace exdyn;
namespace fs = std::filesystem;

namespace {

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("no error for: " << text);
  return ConfigError("unreachable");
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("exdyn-test-config-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("a full config parses") {
  const auto c = parse_config(
      "# comment\n"
      "command = dual-check\n"
      "model = IEM(1,1)   # trailing\n"
      "graph = path:4\n"
      "init = 4, 0, 0, 2\n"
      "time = 1\n"
      "replicas = 100\n"
      "seed = 12345678901234\n"
      "max_relative_error = 0.05\n");
  CHECK(*c.command == Command::dual_check);
  CHECK(c.model->to_string() == "IEM(1,1;1,1)");
  CHECK(c.init == Configuration{4, 0, 0, 2});
  CHECK(c.seed == 12345678901234ULL);
  CHECK(c.max_relative_error == 0.05);
  CHECK(resolve_graph(c).vertices == 4);
  CHECK(c.positions.at("model") == std::pair<std::size_t, std::size_t>{3, 9});
}

TEST_CASE("errors carry line and column") {
  auto e = error_of("command = verify-all\nmodle = RW\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 1);

  e = error_of("command = verify-all\nmodel = RW\n  nmax = zero\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 10);

  e = error_of("command = verify-all\nmodel = IEM(1,0)\nnmax = 3\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 9);

  e = error_of("command = verify-all\ncommand = simulate\n");
  CHECK(e.line() == 2);

  e = error_of("just words\n");
  CHECK(e.line() == 1);

  e = error_of("command = fly\n");
  CHECK(e.column() == 11);
  CHECK(std::string(e.what()).find("line 1, column 11") != std::string::npos);
}

TEST_CASE("command requirements") {
  CHECK_THROWS_AS(parse_config("model = RW\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = verify-all\nmodel = RW\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = simulate\nmodel = RW\ninit = 1,1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = dual-check\nmodel = RW\ninit = 1,1\nreplicas = 3\n"), ConfigError);
  CHECK_NOTHROW(parse_config("command = thermalize\nmodel = RIEM(2,1;3,1)\nnmax = 4\n"));
  const auto e = error_of("command = verify-duality\nmodel = RIEM(2,1;3,1)\nnmax = 4\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 9);
  CHECK_THROWS_AS(parse_config("command = verify-all\nmodel = RW\nnmax = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = verify-all\nmodel = RW\nnmax = 2\narithmetic = fuzzy\n"), ConfigError);
}

TEST_CASE("graph files resolve against the config directory") {
  const fs::path dir = scratch("graph");
  std::ofstream(dir / "g.txt") << "0 1\n1 2\n";
  std::ofstream(dir / "run.cfg") << "command = simulate\nmodel = RW\ngraph = g.txt\ninit = 1,2,3\ntmax = 1\n";
  const auto c = load_config((dir / "run.cfg").string());
  CHECK(resolve_graph(c).vertices == 3);
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("execute writes its artifacts") {
  const fs::path dir = scratch("exec");
  auto c = parse_config("command = verify-duality\nmodel = IEM(1,1;2,1)\nnmax = 3\n");
  auto r = execute(c, (dir / "bad").string());
  CHECK(r.exit_code == 1);
  CHECK(fs::exists(dir / "bad" / "report.json"));
  CHECK(fs::exists(dir / "bad" / "witnesses.json"));

  c = parse_config("command = verify-all\nmodel = RW\nnmax = 3\n");
  r = execute(c, (dir / "good").string());
  CHECK(r.exit_code == 0);
  CHECK_FALSE(fs::exists(dir / "good" / "witnesses.json"));

  c = parse_config("command = thermalize\nmodel = IEM(3/2,1/2)\nnmax = 4\n");
  r = execute(c, (dir / "therm").string());
  CHECK(r.exit_code == 0);
  std::ifstream csv(dir / "therm" / "thermalize.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "agent,total,state,stationary,split_law");

  c = parse_config("command = simulate\nmodel = IEM(1,1)\ninit = 3,3\ntmax = 5\nsamples = 100\n");
  r = execute(c, (dir / "sim").string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "sim" / "trajectory.csv"));
  CHECK(fs::exists(dir / "sim" / "histogram.csv"));
  CHECK(fs::exists(dir / "sim" / "summary.json"));

  c = parse_config("command = dual-check\nmodel = IEM(1,1)\ngraph = path:3\ninit = 3,0,0\ntime = 0.5\nreplicas = 20000\nmax_relative_error = 0.15\n");
  r = execute(c, (dir / "dual").string(), 2);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "dual" / "dual_check.csv"));

  c = parse_config("command = dual-check\nmodel = IEM(1,1)\ngraph = path:3\ninit = 3,0\ntime = 0.5\nreplicas = 20\n");
  CHECK_THROWS_AS(execute(c, (dir / "dual2").string()), ConfigError);
  fs::remove_all(dir);
}
