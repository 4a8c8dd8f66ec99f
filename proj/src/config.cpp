#include "exdyn/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "exdyn/errors.hpp"

namespace exdyn {

std::string to_string(Command command) {
  switch (command) {
    case Command::verify_algebra: return "verify-algebra";
    case Command::verify_duality: return "verify-duality";
    case Command::verify_reversibility: return "verify-reversibility";
    case Command::verify_all: return "verify-all";
    case Command::thermalize: return "thermalize";
    case Command::simulate: return "simulate";
    case Command::dual_check: return "dual-check";
  }
  return "?";
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"command", "model",   "nmax",    "graph",    "init",
                                          "seed",    "tmax",    "samples", "burn_in",  "thin",
                                          "time",    "replicas", "vertex", "max_relative_error",
                                          "output",  "arithmetic", "tolerance"};
  return keys;
}

struct Cursor {
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(const std::string& message, Cursor at) { throw ConfigError(message, at.line, at.column); }

std::optional<Command> command_from(const std::string& s) {
  for (Command c : {Command::verify_algebra, Command::verify_duality, Command::verify_reversibility,
                    Command::verify_all, Command::thermalize, Command::simulate, Command::dual_check}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v, Cursor at) {
  if (v.empty() || !std::isdigit(static_cast<unsigned char>(v[0]))) fail(key + ": expected an unsigned integer", at);
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (errno == ERANGE || *end != '\0') fail(key + ": expected an unsigned integer, got '" + v + "'", at);
  return x;
}

long parse_long(const std::string& key, const std::string& v, Cursor at) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || errno == ERANGE || *end != '\0') fail(key + ": expected an integer, got '" + v + "'", at);
  return x;
}

double parse_double(const std::string& key, const std::string& v, Cursor at) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || errno == ERANGE || *end != '\0' || !std::isfinite(x)) {
    fail(key + ": expected a number, got '" + v + "'", at);
  }
  return x;
}

std::string trim(const std::string& s, std::size_t& offset) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  offset = a;
  return s.substr(a, b - a);
}

bool is_verify(Command c) {
  return c == Command::verify_algebra || c == Command::verify_duality || c == Command::verify_reversibility ||
         c == Command::verify_all;
}

Cursor position_of(const RunConfig& config, const std::string& key) {
  auto it = config.positions.find(key);
  if (it == config.positions.end()) return {0, 0};
  return {it->second.first, it->second.second};
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string base_dir) {
  RunConfig config;
  config.base_dir = std::move(base_dir);
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t lead = 0;
    const std::string content = trim(line, lead);
    if (content.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'", {lineno, lead + 1});
    std::size_t key_off = 0;
    const std::string key = trim(line.substr(0, eq), key_off);
    const Cursor key_at{lineno, key_off + 1};
    if (key.empty()) fail("missing key before '='", {lineno, eq + 1});
    for (char c : key) {
      if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) fail("malformed key '" + key + "'", key_at);
    }
    if (!known_keys().count(key)) fail("unknown key '" + key + "'", key_at);
    if (config.positions.count(key)) fail("key '" + key + "' given twice", key_at);
    std::size_t value_off = 0;
    const std::string value = trim(line.substr(eq + 1), value_off);
    const Cursor at{lineno, eq + 1 + value_off + 1};
    if (value.empty()) fail(key + ": missing value", at);
    config.positions[key] = {at.line, at.column};

    if (key == "command") {
      config.command = command_from(value);
      if (!config.command) fail("command: unknown command '" + value + "'", at);
    } else if (key == "model") {
      try {
        config.model = parse_model_spec(value);
      } catch (const Error& e) {
        fail(std::string("model: ") + e.what(), at);
      }
    } else if (key == "nmax") {
      config.nmax = parse_long(key, value, at);
      if (config.nmax < 1) fail("nmax: must be at least 1", at);
    } else if (key == "graph") {
      config.graph = value;
    } else if (key == "init") {
      config.init.clear();
      std::size_t start = 0;
      while (true) {
        const auto comma = value.find(',', start);
        std::size_t off = 0;
        const std::string item = trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start), off);
        const long w = parse_long(key, item, at);
        if (w < 0) fail("init: wealths must be non-negative", at);
        config.init.push_back(w);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else if (key == "seed") {
      config.seed = parse_u64(key, value, at);
    } else if (key == "tmax") {
      config.tmax = parse_double(key, value, at);
      if (!(config.tmax > 0)) fail("tmax: must be positive", at);
    } else if (key == "samples") {
      config.samples = parse_u64(key, value, at);
    } else if (key == "burn_in") {
      config.burn_in = parse_u64(key, value, at);
    } else if (key == "thin") {
      config.thin = parse_double(key, value, at);
      if (!(config.thin > 0)) fail("thin: must be positive", at);
    } else if (key == "time") {
      config.time = parse_double(key, value, at);
      if (config.time < 0) fail("time: must be non-negative", at);
    } else if (key == "replicas") {
      config.replicas = parse_u64(key, value, at);
      if (config.replicas == 0) fail("replicas: must be positive", at);
    } else if (key == "vertex") {
      config.vertex = parse_long(key, value, at);
      if (*config.vertex < 0) fail("vertex: must be non-negative", at);
    } else if (key == "max_relative_error") {
      config.max_relative_error = parse_double(key, value, at);
      if (!(config.max_relative_error > 0)) fail("max_relative_error: must be positive", at);
    } else if (key == "output") {
      config.output = value;
    } else if (key == "arithmetic") {
      if (value == "exact") {
        config.arithmetic.mode = Arithmetic::Mode::exact;
      } else if (value == "float") {
        config.arithmetic.mode = Arithmetic::Mode::floating;
      } else {
        fail("arithmetic: expected 'exact' or 'float', got '" + value + "'", at);
      }
    } else if (key == "tolerance") {
      config.arithmetic.tolerance = parse_double(key, value, at);
      if (!(config.arithmetic.tolerance > 0)) fail("tolerance: must be positive", at);
    }
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::filesystem::path(path).parent_path().string());
}

void validate_config(const RunConfig& config) {
  if (!config.command) throw ConfigError("missing required key 'command'");
  const Command c = *config.command;
  const std::string name = to_string(c);
  auto require = [&](bool present, const std::string& key) {
    if (!present) throw ConfigError("command " + name + " needs key '" + key + "'");
  };
  require(config.model.has_value(), "model");
  if (is_verify(c) || c == Command::thermalize) require(config.nmax >= 1, "nmax");
  if (c == Command::simulate) {
    require(!config.init.empty(), "init");
    require(config.tmax > 0, "tmax");
  }
  if (c == Command::dual_check) {
    require(!config.init.empty(), "init");
    require(config.replicas > 0, "replicas");
    require(config.positions.count("time") != 0, "time");
  }
  const ModelSpec& spec = *config.model;
  if (c != Command::thermalize && spec.family() == Family::riem && !spec.exchange_symmetric()) {
    const Cursor at = position_of(config, "model");
    throw ConfigError("model: " + spec.to_string() + " has gamma1 != gamma2, which " + name +
                          " requires to be equal (the exchange would leave the pocket capacities)",
                      at.line, at.column);
  }
}

Graph resolve_graph(const RunConfig& config) {
  const std::string& g = config.graph;
  if (g == "pair") return Graph::pair();
  if (g.rfind("path:", 0) == 0) {
    const Cursor at = position_of(config, "graph");
    const long n = parse_long("graph", g.substr(5), at);
    if (n < 1) fail("graph: path needs at least one vertex", at);
    return Graph::path(n);
  }
  std::filesystem::path p(g);
  if (p.is_relative() && !config.base_dir.empty()) p = std::filesystem::path(config.base_dir) / p;
  return read_edge_list_file(p.string());
}

}  // namespace exdyn
