#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "exdyn/config.hpp"
#include "exdyn/errors.hpp"
#include "report_json.hpp"

namespace exdyn {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Output {
 public:
  Output(const std::string& dir, ExecuteResult& result) : dir_(dir), result_(result) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    result_.files.push_back(p.string());
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

 private:
  fs::path dir_;
  ExecuteResult& result_;
};

Suite suite_of(Command c) {
  switch (c) {
    case Command::verify_algebra: return Suite::algebra;
    case Command::verify_duality: return Suite::duality;
    case Command::verify_reversibility: return Suite::reversibility;
    default: return Suite::all;
  }
}

json arithmetic_json(const Arithmetic& a) {
  if (a.is_exact()) return "exact";
  return json{{"mode", "float"}, {"tolerance", a.tolerance}};
}

void summarize(const std::vector<CheckReport>& reports, ExecuteResult& result) {
  std::ostringstream s;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    s << to_string(r.verdict) << "  " << r.theorem << "  " << r.name << '\n';
    if (!r.ok()) {
      ++failed;
      const Witness& w = *r.witness;
      s << "      witness sector " << w.sector << ": " << w.row << (w.col.empty() ? "" : " / " + w.col) << "  lhs "
        << w.lhs << "  rhs " << w.rhs << '\n';
    }
    for (const auto& note : r.notes) s << "      note: " << note << '\n';
  }
  s << reports.size() << " checks, " << failed << " failed\n";
  result.summary = s.str();
  result.exit_code = failed == 0 ? 0 : 1;
}

void run_verify(const RunConfig& cfg, Output& out, ExecuteResult& result, unsigned jobs) {
  const ModelSpec& spec = *cfg.model;
  const auto reports = run_suite(spec, cfg.nmax, suite_of(*cfg.command), cfg.arithmetic, jobs);
  summarize(reports, result);
  json doc;
  doc["command"] = to_string(*cfg.command);
  doc["model"] = spec.to_string();
  doc["nmax"] = cfg.nmax;
  doc["arithmetic"] = arithmetic_json(cfg.arithmetic);
  doc["passed"] = result.exit_code == 0;
  doc["checks"] = reports_to_json(reports);
  out.write_json("report.json", doc);
  if (result.exit_code != 0) {
    json failing = json::array();
    for (const auto& r : reports) {
      if (!r.ok()) failing.push_back(report_to_json(r));
    }
    out.write_json("witnesses.json", failing);
  }
}

void run_thermalize(const RunConfig& cfg, Output& out, ExecuteResult& result) {
  const ModelSpec& spec = *cfg.model;
  std::ostringstream csv;
  csv << "agent,total,state,stationary,split_law\n";
  for (int agent = 0; agent < 2; ++agent) {
    const SectorOperator gen = thermalizing_generator(spec, agent, cfg.nmax);
    for (long n = 0; n <= cfg.nmax; ++n) {
      if (gen.rows()->at(n).size() == 0) continue;
      const Pmf pi = thermalize(gen, n);
      const Pmf law = split_law(spec, agent, n);
      for (std::size_t i = 0; i < pi.size(); ++i) {
        csv << agent + 1 << ',' << n << ',' << pi.support[i] << ',' << to_string(pi.mass[i]) << ','
            << to_string(law(pi.support[i])) << '\n';
      }
    }
  }
  out.write("thermalize.csv", csv.str());
  const std::vector<CheckReport> reports{check_thermalization(spec, cfg.nmax)};
  summarize(reports, result);
  json doc;
  doc["command"] = "thermalize";
  doc["model"] = spec.to_string();
  doc["nmax"] = cfg.nmax;
  doc["passed"] = result.exit_code == 0;
  doc["checks"] = reports_to_json(reports);
  out.write_json("report.json", doc);
}

long total_of(const Configuration& c) { return std::accumulate(c.begin(), c.end(), 0L); }

void run_simulate(const RunConfig& cfg, Output& out, ExecuteResult& result) {
  const ModelSpec& spec = *cfg.model;
  const Graph graph = resolve_graph(cfg);
  const long total = total_of(cfg.init);
  const Simulator sim(graph, spec, total);
  CounterRng rng(cfg.seed, 0);
  const Trajectory tr = sim.run(cfg.init, cfg.tmax, rng);
  std::ostringstream traj;
  write_trajectory_csv(traj, tr, graph);
  out.write("trajectory.csv", traj.str());

  json doc;
  doc["command"] = "simulate";
  doc["model"] = spec.to_string();
  doc["graph"] = {{"vertices", graph.vertices}, {"edges", graph.edges.size()}};
  doc["seed"] = cfg.seed;
  doc["tmax"] = cfg.tmax;
  doc["total_mass"] = total;
  doc["events"] = tr.events.size();
  doc["final"] = tr.final;
  std::ostringstream s;
  s << "simulated " << tr.events.size() << " events on " << graph.vertices << " vertices up to t=" << g17(cfg.tmax)
    << '\n';
  if (cfg.samples > 0) {
    const Histogram h = stationary_histogram(sim, cfg.init, cfg.burn_in, cfg.samples, cfg.thin, cfg.seed);
    std::ostringstream hist;
    write_histogram_csv(hist, h);
    out.write("histogram.csv", hist.str());
    json hj;
    hj["samples"] = h.samples;
    hj["burn_in"] = cfg.burn_in;
    hj["thin"] = cfg.thin;
    hj["events"] = h.events;
    if (!h.warnings.empty()) hj["warnings"] = h.warnings;
    if (graph.vertices == 2) {
      const double tv = total_variation(h.per_vertex[0], two_agent_stationary(spec, total));
      hj["tv_to_exact"] = tv;
      s << "stationary histogram: " << h.samples << " samples, TV to the exact law " << g17(tv) << '\n';
    }
    doc["histogram"] = hj;
  }
  out.write_json("summary.json", doc);
  result.summary = s.str();
  result.exit_code = 0;
}

void run_dual_check(const RunConfig& cfg, Output& out, ExecuteResult& result, unsigned jobs) {
  const ModelSpec& spec = *cfg.model;
  const Graph graph = resolve_graph(cfg);
  if (static_cast<long>(cfg.init.size()) != graph.vertices) {
    throw ConfigError("init: " + std::to_string(cfg.init.size()) + " wealths for a graph with " +
                      std::to_string(graph.vertices) + " vertices");
  }
  if (cfg.vertex && *cfg.vertex >= graph.vertices) throw ConfigError("vertex: outside the graph");
  const Simulator sim(graph, spec, total_of(cfg.init));
  const auto predicted = dual_moment_estimate(graph, spec, cfg.init, cfg.time);
  const MonteCarloMean mc = monte_carlo_mean(sim, cfg.init, cfg.time, cfg.replicas, cfg.seed, jobs);

  std::ostringstream csv;
  csv << "vertex,predicted,monte_carlo,stderr,relative_error\n";
  std::ostringstream s;
  json rows = json::array();
  bool passed = true;
  for (long v = 0; v < graph.vertices; ++v) {
    if (cfg.vertex && *cfg.vertex != v) continue;
    const auto i = static_cast<std::size_t>(v);
    const double p = predicted[i];
    const double rel = p != 0.0 ? std::abs(mc.mean[i] - p) / std::abs(p) : std::abs(mc.mean[i]);
    const bool ok = rel <= cfg.max_relative_error;
    passed = passed && ok;
    csv << v << ',' << g17(p) << ',' << g17(mc.mean[i]) << ',' << g17(mc.stderr_[i]) << ',' << g17(rel) << '\n';
    rows.push_back({{"vertex", v},
                    {"predicted", p},
                    {"monte_carlo", mc.mean[i]},
                    {"stderr", mc.stderr_[i]},
                    {"relative_error", rel},
                    {"pass", ok}});
    s << (ok ? "pass" : "fail") << "  vertex " << v << "  predicted " << g17(p) << "  monte carlo " << g17(mc.mean[i])
      << "  relative error " << g17(rel) << '\n';
  }
  out.write("dual_check.csv", csv.str());
  json doc;
  doc["command"] = "dual-check";
  doc["model"] = spec.to_string();
  doc["graph"] = {{"vertices", graph.vertices}, {"edges", graph.edges.size()}};
  doc["time"] = cfg.time;
  doc["replicas"] = cfg.replicas;
  doc["seed"] = cfg.seed;
  doc["max_relative_error"] = cfg.max_relative_error;
  doc["passed"] = passed;
  doc["vertices"] = rows;
  out.write_json("report.json", doc);
  result.summary = s.str();
  result.exit_code = passed ? 0 : 1;
}

}  // namespace

ExecuteResult execute(const RunConfig& config, const std::string& out_dir, unsigned jobs) {
  validate_config(config);
  std::string dir = out_dir;
  if (dir.empty()) dir = config.output.empty() ? "exdyn-out" : config.output;
  ExecuteResult result;
  Output out(dir, result);
  jobs = std::max(1u, jobs);
  switch (*config.command) {
    case Command::verify_algebra:
    case Command::verify_duality:
    case Command::verify_reversibility:
    case Command::verify_all: run_verify(config, out, result, jobs); break;
    case Command::thermalize: run_thermalize(config, out, result); break;
    case Command::simulate: run_simulate(config, out, result); break;
    case Command::dual_check: run_dual_check(config, out, result, jobs); break;
  }
  return result;
}

}  // namespace exdyn
