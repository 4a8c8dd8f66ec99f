#include <sstream>

#include "doctest.h"
#include "exdyn/errors.hpp"
#include "exdyn/simulate.hpp"
#include "oracle.hpp"

using namespace exdyn;

TEST_CASE("edge lists") {
  std::istringstream in("# triangle\n0 1\n1 2\n\n2 0\n");
  const Graph g = read_edge_list(in);
  CHECK(g.vertices == 3);
  CHECK(g.edges.size() == 3);
  CHECK(g.edges[2] == std::pair<long, long>{0, 2});
  CHECK(g.connected());

  std::istringstream loop("0 1\n1 1\n");
  CHECK_THROWS_WITH_AS(read_edge_list(loop), doctest::Contains("line 2"), ParameterError);
  std::istringstream repeat("0 1\n1 0\n");
  CHECK_THROWS_AS(read_edge_list(repeat), ParameterError);
  std::istringstream junk("0 x\n");
  CHECK_THROWS_AS(read_edge_list(junk), ParameterError);
  std::istringstream negative("-1 2\n");
  CHECK_THROWS_AS(read_edge_list(negative), ParameterError);
  CHECK_THROWS_AS(read_edge_list_file("/nonexistent/graph.txt"), IoError);

  std::istringstream split("0 1\n2 3\n");
  CHECK_FALSE(read_edge_list(split).connected());
  CHECK(Graph::path(4).edges.size() == 3);
}

TEST_CASE("simulator preconditions") {
  CHECK_THROWS_AS(Simulator(Graph::pair(), ModelSpec::riem(2, 1, 3, 1), 4), ModelError);
  CHECK_THROWS_AS(Simulator(Graph::path(3), ModelSpec::iem(1, 1, 1, 2), 4), ModelError);
  CHECK_NOTHROW(Simulator(Graph::pair(), ModelSpec::iem(1, 1, 1, 2), 4));
  const Simulator sim(Graph::pair(), ModelSpec::iem(1, 1, 1, 1), 5);
  CHECK_THROWS(sim.validate({1, 1, 1}));
  CHECK_THROWS(sim.validate({-1, 1}));
  CHECK_THROWS(sim.validate({6, 0}));
}

TEST_CASE("runs conserve mass and are reproducible") {
  const Simulator sim(Graph::path(5), ModelSpec::iem(2, 1, 2, 1), 12);
  CounterRng a(5, 0);
  CounterRng b(5, 0);
  const Trajectory x = sim.run({3, 0, 4, 0, 5}, 20.0, a);
  const Trajectory y = sim.run({3, 0, 4, 0, 5}, 20.0, b);
  CHECK(x.final == y.final);
  REQUIRE(x.events.size() == y.events.size());
  CHECK_FALSE(x.events.empty());
  long total = 0;
  for (long w : x.final) total += w;
  CHECK(total == 12);
  double last = 0;
  for (const Event& e : x.events) {
    CHECK(e.time >= last);
    CHECK(e.time <= 20.0);
    last = e.time;
  }
}

TEST_CASE("one exchange follows the exact kernel") {
  const auto spec = ModelSpec::iem(1, 1, 1, 1);
  const oracle::Model m = oracle::Model::make_iem(1, 1, 1, 1);
  const Simulator sim(Graph::pair(), spec, 4);
  CounterRng rng(3, 0);
  std::map<std::pair<long, long>, int> counts;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) counts[sim.exchange(3, 1, rng)]++;
  for (const auto& [y, p] : oracle::pi_row(m, 3, 1)) {
    CHECK(counts[y] / double(trials) == doctest::Approx(p.get_d()).epsilon(0.05));
  }
}

TEST_CASE("stationary histogram and distances") {
  const auto spec = ModelSpec::rw();
  const Simulator sim(Graph::pair(), spec, 6);
  const Histogram h = stationary_histogram(sim, {6, 0}, 200, 20000, 2.0, 17);
  CHECK(h.samples == 20000);
  CHECK(h.warnings.empty());
  const Pmf exact = two_agent_stationary(spec, 6);
  for (long k = 0; k <= 6; ++k) CHECK(exact(k) == oracle::binomial(6, oracle::Q(1, 2), k));
  CHECK(total_variation(h.per_vertex[0], exact) < 0.03);

  const Histogram again = stationary_histogram(sim, {6, 0}, 200, 20000, 2.0, 17);
  CHECK(again.per_vertex == h.per_vertex);

  std::istringstream split("0 1\n2 3\n");
  const Simulator apart(read_edge_list(split), spec, 4);
  CHECK_FALSE(stationary_histogram(apart, {1, 1, 1, 1}, 10, 10, 1.0, 1).warnings.empty());

  std::map<long, std::uint64_t> point{{2, 10}};
  Pmf dirac;
  dirac.support = {2};
  dirac.mass = {Rational(1)};
  CHECK(total_variation(point, dirac) == 0.0);
}

TEST_CASE("dual prediction on two vertices has a closed form") {
  // Symmetric pair: E n_1(t) = N/2 + (n_1(0) - N/2) e^{-2 r t} with crossing rate r.
  const auto spec = ModelSpec::iem(1, 1, 1, 1);
  const auto rates = dual_rates(Graph::pair(), spec);
  CHECK(rates[0][1] == doctest::Approx(0.5));
  const auto e = dual_moment_estimate(Graph::pair(), spec, {6, 0}, 0.7);
  CHECK(e[0] == doctest::Approx(3 + 3 * std::exp(-0.7)));
  CHECK(e[0] + e[1] == doctest::Approx(6));

  const auto row = dual_transition_row(rates, 0, 40.0);
  CHECK(row[0] + row[1] == doctest::Approx(1.0));
  CHECK(row[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(dual_moment_estimate(Graph::pair(), ModelSpec::iem(1, 1, 2, 1), {1, 1}, 1.0), ModelError);
}

TEST_CASE("monte carlo means do not depend on the thread count") {
  const Simulator sim(Graph::path(3), ModelSpec::iem(1, 1, 1, 1), 5);
  const auto a = monte_carlo_mean(sim, {5, 0, 0}, 1.0, 2000, 8, 1);
  const auto b = monte_carlo_mean(sim, {5, 0, 0}, 1.0, 2000, 8, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  const auto predicted = dual_moment_estimate(Graph::path(3), ModelSpec::iem(1, 1, 1, 1), {5, 0, 0}, 1.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.mean[i] - predicted[i]) < 5 * a.stderr_[i] + 1e-12);
}

TEST_CASE("csv writers") {
  const Simulator sim(Graph::pair(), ModelSpec::iem(1, 1, 1, 1), 2);
  CounterRng rng(1, 0);
  const Trajectory tr = sim.run({1, 1}, 3.0, rng);
  std::ostringstream out;
  write_trajectory_csv(out, tr, sim.graph());
  CHECK(out.str().rfind("time,vertex,wealth\n", 0) == 0);
  Histogram h;
  h.per_vertex = {{{0, 3}}, {{2, 3}}};
  std::ostringstream hist;
  write_histogram_csv(hist, h);
  CHECK(hist.str() == "vertex,state,count\n0,0,3\n1,2,3\n");
}
