#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exdyn/models.hpp"
#include "exdyn/random.hpp"

namespace exdyn {

/// Simple undirected graph; edges are stored with u < v.
struct Graph {
  long vertices = 0;
  std::vector<std::pair<long, long>> edges;

  bool connected() const;
  static Graph path(long n);
  static Graph pair() { return path(2); }
};

/// One "u v" pair per line, 0-indexed; blank lines and '#' comments are
/// skipped. The vertex count is one more than the largest index. Throws
/// ParameterError (with the line number) for self-loops, repeated edges or
/// malformed lines.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

using Configuration = std::vector<long>;

struct Event {
  double time = 0.0;
  std::size_t edge = 0;
  long first = 0;
  long second = 0;
};

struct Trajectory {
  Configuration initial;
  Configuration final;
  std::vector<Event> events;
  double tmax = 0.0;
};

/// Many-agent exchange dynamics on a graph. On an edge (u, v) with u < v
/// vertex u plays agent 1 and v agent 2. Graphs with more than two vertices
/// need a symmetric model; RIEM needs gamma1 = gamma2.
class Simulator {
 public:
  /// `max_wealth` bounds every vertex's wealth (the conserved total); split
  /// laws are tabulated up to it.
  Simulator(Graph graph, ModelSpec spec, long max_wealth);

  const Graph& graph() const noexcept { return graph_; }
  const ModelSpec& spec() const noexcept { return spec_; }

  /// New wealths of an edge's endpoints after one split, exchange and addition.
  std::pair<long, long> exchange(long n1, long n2, CounterRng& rng) const;
  void step(Configuration& config, std::size_t edge, CounterRng& rng) const;

  /// Gillespie run on [0, tmax]: global clock of rate |E|, uniform edge.
  Trajectory run(const Configuration& init, double tmax, CounterRng& rng, bool record = true) const;

  /// Configuration at time t without recording events.
  Configuration evolve(Configuration config, double t, CounterRng& rng) const;

  void validate(const Configuration& config) const;

 private:
  Graph graph_;
  ModelSpec spec_;
  long max_wealth_;
  std::vector<long> capacity_;
  /// split_cdf_[agent][n]
  std::vector<std::vector<std::vector<double>>> split_cdf_;
  std::vector<std::vector<std::vector<long>>> split_support_;
};

struct Histogram {
  /// counts[v][w]: number of samples with vertex v holding w.
  std::vector<std::map<long, std::uint64_t>> per_vertex;
  /// Joint counts over whole configurations (kept for up to three vertices).
  std::map<Configuration, std::uint64_t> joint;
  std::uint64_t samples = 0;
  std::uint64_t events = 0;
  std::vector<std::string> warnings;
};

/// Runs `burn_in` events, then samples the configuration every `thin` time
/// units until `samples` samples are collected.
Histogram stationary_histogram(const Simulator& sim, const Configuration& init, std::uint64_t burn_in,
                               std::uint64_t samples, double thin, std::uint64_t seed);

/// Empirical one-step kernel of the two-agent chain: counts[x][y] of jumps
/// x -> y over `events` consecutive events from `init`.
std::map<State, std::map<State, std::uint64_t>> empirical_kernel(const Simulator& sim, const Configuration& init,
                                                                 std::uint64_t events, std::uint64_t seed);

/// Total variation distance between an empirical count map and an exact pmf.
double total_variation(const std::map<long, std::uint64_t>& counts, const Pmf& exact);
double total_variation(const std::map<State, std::uint64_t>& counts, const std::map<State, double>& exact);

/// Largest TV distance between an empirical kernel row and the exact Pi row.
double kernel_distance(const std::map<State, std::map<State, std::uint64_t>>& counts, const SectorOperator& pi);

/// Exact sector-conditioned stationary law of the two-agent chain as a pmf
/// of the first agent's wealth.
Pmf two_agent_stationary(const ModelSpec& spec, long total);

/// Rates of the single dual particle, read from Pi on the mass-one sector:
/// rates[u][v] for every directed edge.
std::vector<std::vector<double>> dual_rates(const Graph& graph, const ModelSpec& spec);

/// p_t(i, .) for the dual particle started at i, by uniformisation.
std::vector<double> dual_transition_row(const std::vector<std::vector<double>>& rates, long i, double t);

/// Duality prediction of E[n_i(t)] for each vertex i from `init`.
std::vector<double> dual_moment_estimate(const Graph& graph, const ModelSpec& spec, const Configuration& init, double t);

struct MonteCarloMean {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::uint64_t replicas = 0;
};

/// Mean wealth per vertex at time t over independent replicas; replica r
/// uses stream r of `seed`. Result does not depend on `jobs`.
MonteCarloMean monte_carlo_mean(const Simulator& sim, const Configuration& init, double t, std::uint64_t replicas,
                                std::uint64_t seed, unsigned jobs = 1);

/// CSV writers (fixed "%.17g" formatting).
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const Graph& graph);
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

}  // namespace exdyn
