#include "exdyn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "exdyn/errors.hpp"

namespace exdyn {

// ---------------------------------------------------------------------------
// Graphs

bool Graph::connected() const {
  if (vertices <= 1) return true;
  std::vector<std::vector<long>> adj(static_cast<std::size_t>(vertices));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<char> seen(adj.size(), 0);
  std::vector<long> stack{0};
  seen[0] = 1;
  long count = 1;
  while (!stack.empty()) {
    const long u = stack.back();
    stack.pop_back();
    for (long v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == vertices;
}

Graph Graph::path(long n) {
  Graph g;
  g.vertices = n;
  for (long i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

Graph read_edge_list(std::istream& in) {
  Graph g;
  std::set<std::pair<long, long>> seen;
  std::string line;
  long lineno = 0;
  long top = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    long u = 0;
    long v = 0;
    if (!(is >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParameterError("edge list line " + std::to_string(lineno) + ": expected two vertex indices");
    }
    std::string rest;
    if (!(is >> v) || (is >> rest)) {
      throw ParameterError("edge list line " + std::to_string(lineno) + ": expected exactly two vertex indices");
    }
    if (u < 0 || v < 0) throw ParameterError("edge list line " + std::to_string(lineno) + ": negative vertex index");
    if (u == v) throw ParameterError("edge list line " + std::to_string(lineno) + ": self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw ParameterError("edge list line " + std::to_string(lineno) + ": repeated edge " + std::to_string(u) + " " +
                           std::to_string(v));
    }
    g.edges.emplace_back(u, v);
    top = std::max(top, v);
  }
  g.vertices = top + 1;
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(Graph graph, ModelSpec spec, long max_wealth)
    : graph_(std::move(graph)), spec_(std::move(spec)), max_wealth_(max_wealth) {
  if (max_wealth_ < 0) throw ParameterError("maximal wealth must be non-negative");
  for (const auto& [u, v] : graph_.edges) {
    if (u < 0 || v >= graph_.vertices || u >= v) throw ParameterError("graph edges must satisfy 0 <= u < v < vertices");
  }
  if (spec_.family() == Family::riem && !spec_.exchange_symmetric()) {
    throw ModelError("RIEM on a graph needs gamma1 = gamma2");
  }
  if (graph_.vertices > 2 && !spec_.symmetric()) {
    throw ModelError("graphs with more than two vertices need a model with identical agents, got " + spec_.to_string());
  }
  capacity_.assign(static_cast<std::size_t>(graph_.vertices), -1);
  if (spec_.family() == Family::riem) {
    const StateSpace pairs = pair_space(spec_);
    for (long v = 0; v < graph_.vertices; ++v) capacity_[static_cast<std::size_t>(v)] = pairs.capacity[v == 1 ? 1 : 0];
  }
  split_cdf_.resize(2);
  split_support_.resize(2);
  for (int agent = 0; agent < 2; ++agent) {
    long top = max_wealth_;
    if (spec_.family() == Family::riem) top = std::min(top, pair_space(spec_).capacity[static_cast<std::size_t>(agent)]);
    for (long n = 0; n <= top; ++n) {
      const Pmf law = split_law(spec_, agent, n);
      split_cdf_[agent].push_back(cumulative(law));
      split_support_[agent].push_back(law.support);
    }
  }
}

std::pair<long, long> Simulator::exchange(long n1, long n2, CounterRng& rng) const {
  auto draw = [&](int agent, long n) {
    const auto& cdf = split_cdf_[agent];
    if (n < 0 || n >= static_cast<long>(cdf.size())) {
      throw CapacityError("wealth " + std::to_string(n) + " outside the tabulated range of agent " +
                          std::to_string(agent + 1));
    }
    return sample_cumulative(split_support_[agent][static_cast<std::size_t>(n)], cdf[static_cast<std::size_t>(n)], rng);
  };
  const long k1 = draw(0, n1);
  const long k2 = draw(1, n2);
  return {k2 + n1 - k1, k1 + n2 - k2};
}

void Simulator::step(Configuration& config, std::size_t edge, CounterRng& rng) const {
  const auto [u, v] = graph_.edges.at(edge);
  auto& a = config[static_cast<std::size_t>(u)];
  auto& b = config[static_cast<std::size_t>(v)];
  std::tie(a, b) = exchange(a, b, rng);
}

void Simulator::validate(const Configuration& config) const {
  if (static_cast<long>(config.size()) != graph_.vertices) {
    throw ParameterError("configuration has " + std::to_string(config.size()) + " entries for " +
                         std::to_string(graph_.vertices) + " vertices");
  }
  long total = 0;
  for (std::size_t v = 0; v < config.size(); ++v) {
    if (config[v] < 0) throw ParameterError("negative wealth at vertex " + std::to_string(v));
    if (capacity_[v] >= 0 && config[v] > capacity_[v]) {
      throw CapacityError("wealth " + std::to_string(config[v]) + " at vertex " + std::to_string(v) +
                          " exceeds the capacity " + std::to_string(capacity_[v]));
    }
    total += config[v];
  }
  if (total > max_wealth_) {
    throw ParameterError("total wealth " + std::to_string(total) + " exceeds the tabulated " +
                         std::to_string(max_wealth_));
  }
}

Trajectory Simulator::run(const Configuration& init, double tmax, CounterRng& rng, bool record) const {
  if (!(tmax > 0)) throw ParameterError("tmax must be positive");
  validate(init);
  Trajectory tr;
  tr.initial = init;
  tr.tmax = tmax;
  Configuration config = init;
  const auto m = static_cast<std::uint64_t>(graph_.edges.size());
  double t = 0.0;
  while (m > 0) {
    t += rng.exponential(static_cast<double>(m));
    if (t > tmax) break;
    const auto e = static_cast<std::size_t>(rng.below(m));
    step(config, e, rng);
    if (record) {
      const auto [u, v] = graph_.edges[e];
      tr.events.push_back({t, e, config[static_cast<std::size_t>(u)], config[static_cast<std::size_t>(v)]});
    }
  }
  tr.final = std::move(config);
  return tr;
}

Configuration Simulator::evolve(Configuration config, double t, CounterRng& rng) const {
  const auto m = static_cast<std::uint64_t>(graph_.edges.size());
  double clock = 0.0;
  while (m > 0) {
    clock += rng.exponential(static_cast<double>(m));
    if (clock > t) break;
    step(config, static_cast<std::size_t>(rng.below(m)), rng);
  }
  return config;
}

// ---------------------------------------------------------------------------
// Statistics

Histogram stationary_histogram(const Simulator& sim, const Configuration& init, std::uint64_t burn_in,
                               std::uint64_t samples, double thin, std::uint64_t seed) {
  if (!(thin > 0)) throw ParameterError("thin must be positive");
  sim.validate(init);
  const Graph& g = sim.graph();
  CounterRng rng(seed, 0);
  const auto m = static_cast<std::uint64_t>(g.edges.size());
  Configuration config = init;
  Histogram h;
  h.per_vertex.resize(static_cast<std::size_t>(g.vertices));
  if (!g.connected()) h.warnings.push_back("graph is disconnected: mass is conserved per component");
  if (m > 0) {
    for (std::uint64_t i = 0; i < burn_in; ++i) sim.step(config, static_cast<std::size_t>(rng.below(m)), rng);
  }
  h.events = m > 0 ? burn_in : 0;
  double next_event = m > 0 ? rng.exponential(static_cast<double>(m)) : INFINITY;
  double sample_time = thin;
  while (h.samples < samples) {
    if (next_event <= sample_time) {
      sim.step(config, static_cast<std::size_t>(rng.below(m)), rng);
      ++h.events;
      next_event += rng.exponential(static_cast<double>(m));
      continue;
    }
    for (std::size_t v = 0; v < config.size(); ++v) ++h.per_vertex[v][config[v]];
    if (g.vertices <= 3) ++h.joint[config];
    ++h.samples;
    sample_time += thin;
  }
  return h;
}

std::map<State, std::map<State, std::uint64_t>> empirical_kernel(const Simulator& sim, const Configuration& init,
                                                                 std::uint64_t events, std::uint64_t seed) {
  sim.validate(init);
  const auto m = static_cast<std::uint64_t>(sim.graph().edges.size());
  if (m == 0) throw ParameterError("empirical kernel needs at least one edge");
  CounterRng rng(seed, 0);
  std::map<State, std::map<State, std::uint64_t>> counts;
  Configuration config = init;
  for (std::uint64_t i = 0; i < events; ++i) {
    const Configuration before = config;
    sim.step(config, static_cast<std::size_t>(rng.below(m)), rng);
    ++counts[before][config];
  }
  return counts;
}

double total_variation(const std::map<long, std::uint64_t>& counts, const Pmf& exact) {
  std::uint64_t total = 0;
  for (const auto& [x, c] : counts) total += c;
  if (total == 0) throw ParameterError("total variation of an empty histogram");
  std::set<long> keys(exact.support.begin(), exact.support.end());
  for (const auto& [x, c] : counts) keys.insert(x);
  double tv = 0.0;
  for (long x : keys) {
    auto it = counts.find(x);
    const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    tv += std::abs(emp - exact(x).get_d());
  }
  return tv / 2;
}

double total_variation(const std::map<State, std::uint64_t>& counts, const std::map<State, double>& exact) {
  std::uint64_t total = 0;
  for (const auto& [x, c] : counts) total += c;
  if (total == 0) throw ParameterError("total variation of an empty histogram");
  std::set<State> keys;
  for (const auto& [x, p] : exact) keys.insert(x);
  for (const auto& [x, c] : counts) keys.insert(x);
  double tv = 0.0;
  for (const auto& x : keys) {
    auto it = counts.find(x);
    auto jt = exact.find(x);
    const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    tv += std::abs(emp - (jt == exact.end() ? 0.0 : jt->second));
  }
  return tv / 2;
}

double kernel_distance(const std::map<State, std::map<State, std::uint64_t>>& counts, const SectorOperator& pi) {
  double worst = 0.0;
  for (const auto& [x, row] : counts) {
    long n = 0;
    for (long v : x) n += v;
    const Sector& sector = pi.rows()->at(n);
    const auto& block = pi.block(n);
    std::map<State, double> exact;
    for (const auto& [j, p] : block.row(sector.index(x))) exact[pi.cols()->at(n).state(j)] = p.get_d();
    worst = std::max(worst, total_variation(row, exact));
  }
  return worst;
}

Pmf two_agent_stationary(const ModelSpec& spec, long total) {
  return condition_on_sum([&](long n) { return pair_weight(spec, 0, n); },
                          [&](long n) { return pair_weight(spec, 1, n); }, total);
}

// ---------------------------------------------------------------------------
// Dual particle

std::vector<std::vector<double>> dual_rates(const Graph& graph, const ModelSpec& spec) {
  const SectorOperator pi = transition_operator(spec, 1);
  const double forward = pi.entry({1, 0}, {0, 1}).get_d();
  const double backward = pi.entry({0, 1}, {1, 0}).get_d();
  const auto n = static_cast<std::size_t>(graph.vertices);
  std::vector<std::vector<double>> rates(n, std::vector<double>(n, 0.0));
  for (const auto& [u, v] : graph.edges) {
    rates[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += forward;
    rates[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] += backward;
  }
  return rates;
}

std::vector<double> dual_transition_row(const std::vector<std::vector<double>>& rates, long i, double t) {
  const std::size_t n = rates.size();
  if (i < 0 || static_cast<std::size_t>(i) >= n) throw ParameterError("vertex out of range");
  if (t < 0) throw ParameterError("time must be non-negative");
  std::vector<double> out(n, 0.0);
  out[static_cast<std::size_t>(i)] = 1.0;
  double lambda = 0.0;
  for (const auto& row : rates) {
    double s = 0.0;
    for (double r : row) s += r;
    lambda = std::max(lambda, s);
  }
  if (lambda == 0.0 || t == 0.0) return out;
  // P = I + Q / lambda; split t so that each piece has a moderate Poisson mean.
  const auto pieces = static_cast<long>(std::ceil(lambda * t / 32.0));
  const double mean = lambda * t / static_cast<double>(pieces);
  auto jump = [&](const std::vector<double>& v) {
    std::vector<double> w(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      if (v[a] == 0.0) continue;
      double out_rate = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        w[b] += v[a] * rates[a][b] / lambda;
        out_rate += rates[a][b];
      }
      w[a] += v[a] * (1.0 - out_rate / lambda);
    }
    return w;
  };
  for (long p = 0; p < pieces; ++p) {
    std::vector<double> term = out;
    std::vector<double> acc(n, 0.0);
    double weight = std::exp(-mean);
    double covered = 0.0;
    for (long k = 0; k < 10000; ++k) {
      for (std::size_t j = 0; j < n; ++j) acc[j] += weight * term[j];
      covered += weight;
      if (1.0 - covered < 1e-17 && static_cast<double>(k) > mean) break;
      term = jump(term);
      weight *= mean / static_cast<double>(k + 1);
    }
    out = std::move(acc);
  }
  return out;
}

std::vector<double> dual_moment_estimate(const Graph& graph, const ModelSpec& spec, const Configuration& init,
                                         double t) {
  if (graph.vertices > 100) throw ParameterError("dual prediction is limited to 100 vertices");
  if (static_cast<long>(init.size()) != graph.vertices) throw ParameterError("configuration does not match the graph");
  if (!spec.exchange_symmetric()) throw ModelError(spec.to_string() + " is not self-dual; no dual prediction");
  if (graph.vertices > 2 && !spec.symmetric()) throw ModelError("graphs with more than two vertices need identical agents");
  const DualityFunction d = duality_function(spec);
  std::vector<double> c(init.size());
  for (std::size_t v = 0; v < init.size(); ++v) c[v] = d.site[v == 1 ? 1 : 0](1, 1).get_d();
  const auto rates = dual_rates(graph, spec);
  std::vector<double> out(init.size(), 0.0);
  for (std::size_t i = 0; i < init.size(); ++i) {
    const auto row = dual_transition_row(rates, static_cast<long>(i), t);
    double s = 0.0;
    for (std::size_t j = 0; j < init.size(); ++j) s += row[j] * c[j] * static_cast<double>(init[j]);
    out[i] = s / c[i];
  }
  return out;
}

MonteCarloMean monte_carlo_mean(const Simulator& sim, const Configuration& init, double t, std::uint64_t replicas,
                                std::uint64_t seed, unsigned jobs) {
  sim.validate(init);
  if (replicas == 0) throw ParameterError("need at least one replica");
  const std::size_t n = init.size();
  const unsigned threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(jobs, replicas)));
  // Integer sums make the aggregate independent of the thread split.
  std::vector<std::vector<std::uint64_t>> sums(threads, std::vector<std::uint64_t>(n, 0));
  std::vector<std::vector<std::uint64_t>> squares(threads, std::vector<std::uint64_t>(n, 0));
  auto work = [&](unsigned id) {
    for (std::uint64_t r = id; r < replicas; r += threads) {
      CounterRng rng(seed, r);
      const Configuration end = sim.evolve(init, t, rng);
      for (std::size_t v = 0; v < n; ++v) {
        const auto w = static_cast<std::uint64_t>(end[v]);
        sums[id][v] += w;
        squares[id][v] += w * w;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  MonteCarloMean out;
  out.replicas = replicas;
  out.mean.assign(n, 0.0);
  out.stderr_.assign(n, 0.0);
  const auto r = static_cast<double>(replicas);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t s = 0;
    std::uint64_t q = 0;
    for (unsigned id = 0; id < threads; ++id) {
      s += sums[id][v];
      q += squares[id][v];
    }
    const double mean = static_cast<double>(s) / r;
    const double var = replicas > 1 ? (static_cast<double>(q) - r * mean * mean) / (r - 1) : 0.0;
    out.mean[v] = mean;
    out.stderr_[v] = std::sqrt(std::max(var, 0.0) / r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const Graph& graph) {
  out << "time,vertex,wealth\n";
  for (std::size_t v = 0; v < trajectory.initial.size(); ++v) out << "0," << v << ',' << trajectory.initial[v] << '\n';
  for (const auto& e : trajectory.events) {
    const auto [u, v] = graph.edges.at(e.edge);
    const std::string t = g17(e.time);
    out << t << ',' << u << ',' << e.first << '\n';
    out << t << ',' << v << ',' << e.second << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
  out << "vertex,state,count\n";
  for (std::size_t v = 0; v < histogram.per_vertex.size(); ++v) {
    for (const auto& [w, c] : histogram.per_vertex[v]) out << v << ',' << w << ',' << c << '\n';
  }
}

}  // namespace exdyn
