#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "exdyn/config.hpp"
#include "exdyn/models.hpp"
#include "exdyn/simulate.hpp"
#include "exdyn/verify.hpp"
#include "oracle.hpp"

using namespace exdyn;
namespace fs = std::filesystem;

namespace {

struct Case {
  ModelSpec spec;
  oracle::Model model;
};

std::vector<Case> self_dual_cases() {
  return {
      {ModelSpec::iem(1, 1, 1, 1), oracle::Model::make_iem(1, 1, 1, 1)},
      {ModelSpec::iem(2, 1, 2, 3), oracle::Model::make_iem(2, 1, 2, 3)},
      {ModelSpec::riem(2, 1, 2, 3), oracle::Model::make_riem(2, 1, 2, 3)},
      {ModelSpec::rw(), oracle::Model::make_rw()},
      {ModelSpec::piem(1, 2), oracle::Model::make_piem(1, 2)},
  };
}

// Collects the reasons a criterion failed.
struct Outcome {
  std::vector<std::string> problems;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void require(const CheckReport& r) {
    if (r.ok()) return;
    std::string w = r.theorem + " [" + r.model + "]";
    if (r.witness) w += " sector " + std::to_string(r.witness->sector) + " " + r.witness->row + " / " + r.witness->col;
    problems.push_back(w);
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.problems.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.1f s, limit %.0f s", secs, limit_seconds);
    out.problems.push_back(buf);
  }
  const bool pass = out.problems.empty();
  if (!pass) ++failures;
  std::printf("[%s] %2d %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  for (const auto& p : out.problems) std::printf("         %s\n", p.c_str());
  std::fflush(stdout);
}

double tv(const std::map<long, std::uint64_t>& counts, const std::function<double(long)>& exact, long lo, long hi) {
  std::uint64_t n = 0;
  for (const auto& [k, c] : counts) n += c;
  double d = 0;
  for (long k = lo; k <= hi; ++k) {
    auto it = counts.find(k);
    const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
    d += std::abs(emp - exact(k));
  }
  for (const auto& [k, c] : counts) {
    if (k < lo || k > hi) d += static_cast<double>(c) / static_cast<double>(n);
  }
  return d / 2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
  criterion(1, "algebra relations, N <= 12", 10, [](Outcome& o) {
    std::size_t checked = 0;
    for (const Rational& kappa : {Rational(1), Rational(2), make_rational(3, 2)}) {
      for (const auto& r : check_algebra_relations(Algebra::su11, kappa, 12)) {
        o.require(r);
        checked += r.checked;
      }
    }
    for (long gamma = 1; gamma <= 4; ++gamma) {
      for (const auto& r : check_algebra_relations(Algebra::su2, gamma, 12)) {
        o.require(r);
        checked += r.checked;
      }
    }
    for (const auto& r : check_algebra_relations(Algebra::heisenberg, 0, 12)) {
      o.require(r);
      checked += r.checked;
    }
    o.require(checked > 0, "no identities compared");
    o.detail = std::to_string(checked) + " entries";
  });

  criterion(2, "thermalization to the split laws, N <= 12", 30, [](Outcome& o) {
    const std::vector<std::pair<Rational, Rational>> sip{{1, 1}, {2, 2}, {1, 3}, {make_rational(3, 2), make_rational(1, 2)}};
    for (const auto& [s, t] : sip) {
      const SectorOperator gen = sip_generator(s, t, 12);
      for (long n = 0; n <= 12; ++n) {
        const Pmf pi = thermalize(gen, n);
        for (long k = 0; k <= n; ++k) {
          o.require(pi(k) == oracle::beta_binomial(n, s, t, k),
                    "SIP(" + to_string(s) + "," + to_string(t) + ") N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
    for (const Rational& q : {Rational(1), Rational(2), make_rational(1, 3)}) {
      const SectorOperator gen = rw_generator(q, 12);
      for (long n = 0; n <= 12; ++n) {
        const Pmf pi = thermalize(gen, n);
        for (long k = 0; k <= n; ++k) {
          o.require(pi(k) == oracle::binomial(n, 1 / (1 + q), k),
                    "RW(" + to_string(q) + ") N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
  });

  criterion(3, "projection identity and detailed balance, all families, N <= 10", 60, [](Outcome& o) {
    const long nmax = 10;
    for (const auto& [spec, m] : self_dual_cases()) {
      const SectorOperator p = redistribution_operator(spec, nmax);
      o.require(check_projection_identity(p, pocket_stationary_measure(spec, p.rows()), "projection"));

      // P against the direct split probabilities.
      for (long n = 0; n <= nmax; ++n) {
        for (const State& s : p.rows()->at(n).states()) {
          const long n1 = s[0] + s[1];
          const long n2 = s[2] + s[3];
          for (long k1 = 0; k1 <= n1; ++k1) {
            for (long k2 = 0; k2 <= n2; ++k2) {
              const oracle::Q want = oracle::split(m, 0, n1, k1) * oracle::split(m, 1, n2, k2);
              if (want == 0) continue;
              o.require(p.entry(s, {k1, n1 - k1, k2, n2 - k2}) == want, "P entry " + to_string(s));
            }
          }
        }
      }

      const SectorOperator pi = transition_operator(spec, nmax);
      std::map<long, std::vector<Rational>> weights;
      for (long n = 0; n <= nmax; ++n) {
        const Sector& sec = pi.rows()->at(n);
        weights[n].reserve(sec.size());
        for (const State& x : sec.states()) {
          weights[n].push_back(oracle::pair_weight(m, 0, x[0]) * oracle::pair_weight(m, 1, x[1]));
          const auto row = oracle::pi_row(m, x[0], x[1]);
          oracle::Q sum = 0;
          for (const State& y : sec.states()) {
            const auto it = row.find({y[0], y[1]});
            const oracle::Q want = it == row.end() ? oracle::Q(0) : it->second;
            sum += pi.entry(x, y);
            o.require(pi.entry(x, y) == want, "Pi " + to_string(x) + "->" + to_string(y) + " [" + spec.to_string() + "]");
          }
          o.require(sum == 1, "Pi row sum " + to_string(x));
        }
      }
      o.require(check_detailed_balance(pi, Measure(pi.rows(), weights), "detailed balance"));

      // The conditioned stationary law is the named two-agent law.
      for (long n = 0; n <= nmax; ++n) {
        if (oracle::sector(m, n).empty()) continue;
        const Pmf law = two_agent_stationary(spec, n);
        for (const auto& [a, b] : oracle::sector(m, n)) {
          oracle::Q want;
          switch (m.kind) {
            case oracle::Model::iem:
              want = oracle::beta_binomial(n, m.s[0] + m.t[0], m.s[1] + m.t[1], a);
              break;
            case oracle::Model::riem: want = oracle::hypergeometric(n, m.g[0] + m.d[0], m.g[1] + m.d[1], a); break;
            case oracle::Model::rw: want = oracle::binomial(n, oracle::Q(1, 2), a); break;
            case oracle::Model::piem: want = oracle::binomial(n, (1 + m.q[0]) / (2 + m.q[0] + m.q[1]), a); break;
          }
          o.require(law(a) == want, "stationary law " + spec.to_string() + " N=" + std::to_string(n));
        }
      }
    }
  });

  criterion(4, "self-duality, totals <= 10", 120, [](Outcome& o) {
    const long nmax = 10;
    std::size_t checked = 0;
    for (const auto& [spec, m] : self_dual_cases()) {
      const auto r = check_self_duality(transition_operator(spec, nmax), duality_function(spec), nmax);
      o.require(r);
      o.require(r.verdict == Verdict::pass, r.theorem + " not a full pass");
      checked += r.checked;
      for (long nk = 0; nk <= nmax; ++nk) {
        for (long nn = 0; nn <= nmax; ++nn) {
          for (const auto& k : oracle::sector(m, nk)) {
            for (const auto& n : oracle::sector(m, nn)) {
              if (oracle::duality_defect(m, k, n) != 0) {
                o.problems.push_back("oracle defect " + spec.to_string());
              }
            }
          }
        }
      }
    }
    o.detail = std::to_string(checked) + " identities";
  });

  criterion(5, "self-duality fails without the hypothesis, witness at total <= 4", 0, [](Outcome& o) {
    const std::vector<std::pair<Case, long>> cases{
        {{ModelSpec::iem(1, 1, 2, 1), oracle::Model::make_iem(1, 1, 2, 1)}, 4},
        {{ModelSpec::riem(2, 1, 3, 1), oracle::Model::make_riem(2, 1, 3, 1)}, 2},
    };
    std::string detail;
    for (const auto& [c, nmax] : cases) {
      const auto r = check_self_duality(transition_operator(c.spec, nmax), duality_function(c.spec), nmax);
      o.require(r.verdict == Verdict::fail, c.spec.to_string() + " did not fail");
      o.require(r.witness.has_value(), c.spec.to_string() + " has no witness");
      if (r.witness) {
        o.require(r.witness->sector <= 4, "witness beyond total 4");
        o.require(r.witness->lhs != r.witness->rhs, "witness sides agree");
        detail += c.spec.to_string() + ": " + r.witness->row + " / " + r.witness->col + "  ";
      }
      bool found = false;
      for (long nk = 0; nk <= nmax && !found; ++nk) {
        for (long nn = 0; nn <= nmax && !found; ++nn) {
          for (const auto& k : oracle::sector(c.model, nk)) {
            for (const auto& n : oracle::sector(c.model, nn)) {
              if (oracle::duality_defect(c.model, k, n) != 0) found = true;
            }
          }
        }
      }
      o.require(found, "oracle finds no defect for " + c.spec.to_string());
    }
    o.detail = detail;
  });

  criterion(6, "pair symmetries commute with Pi, N <= 10", 0, [](Outcome& o) {
    const long nmax = 10;
    for (const auto& [spec, m] : self_dual_cases()) {
      const SectorOperator pi = transition_operator(spec, nmax);
      for (const auto& d : pair_symmetries(spec)) {
        o.require(check_symmetry(pi, build_symmetry(d, pi.rows()), "symmetry " + d.to_string()));
      }
      const std::vector<int> alphas = m.kind == oracle::Model::rw || m.kind == oracle::Model::piem
                                          ? std::vector<int>{1, -1}
                                          : std::vector<int>{1, -1, 0};
      for (int alpha : alphas) {
        for (long n = 0; n < nmax; ++n) {
          for (const auto& x : oracle::sector(m, n)) {
            if (!oracle::commutator_row(m, alpha, x).empty()) {
              o.problems.push_back("oracle commutator " + spec.to_string() + " alpha " + std::to_string(alpha));
            }
          }
        }
      }
    }
  });

  criterion(7, "constructive duality from the cheap duality, k, n <= 8", 0, [](Outcome& o) {
    const std::vector<Case> cases{{ModelSpec::iem(1, 1, 1, 1), oracle::Model::make_iem(1, 1, 1, 1)},
                                  {ModelSpec::iem(2, 1, 2, 3), oracle::Model::make_iem(2, 1, 2, 3)}};
    for (const auto& [spec, m] : cases) {
      o.require(check_constructive_duality(spec, 8));
      for (int a = 0; a < 2; ++a) {
        const oracle::Q r = m.s[a] + m.t[a];
        std::optional<oracle::Q> constant;
        for (long k = 0; k <= 8; ++k) {
          for (long n = 0; n <= 8; ++n) {
            const oracle::Q got = oracle::exp_raise_cheap(r, k, n);
            const oracle::Q want = oracle::duality(m, a, k, n);
            if (want == 0) {
              o.require(got == 0, "oracle nonzero where d vanishes");
              continue;
            }
            const oracle::Q ratio = got / want;
            if (!constant) constant = ratio;
            o.require(ratio == *constant, "oracle ratio not constant " + spec.to_string());
          }
        }
      }
    }
  });

  criterion(8, "simulation against the exact stationary law and kernel", 60, [](Outcome& o) {
    const ModelSpec spec = ModelSpec::iem(1, 1, 1, 1);
    const oracle::Model m = oracle::Model::make_iem(1, 1, 1, 1);
    const Simulator sim(Graph::pair(), spec, 20);
    const Histogram h = stationary_histogram(sim, {10, 10}, 1000, 100000, 3.0, 2024);
    o.require(h.samples == 100000, "sample count");
    const double d = tv(h.per_vertex[0], [](long k) { return oracle::beta_binomial(20, 2, 2, k).get_d(); }, 0, 20);
    o.require(d < 0.02, "stationary TV " + std::to_string(d));

    const Simulator small(Graph::pair(), spec, 3);
    const auto counts = empirical_kernel(small, {2, 1}, 1000000, 7);
    double worst = 0;
    std::uint64_t total = 0;
    for (const auto& [x, row] : counts) {
      std::uint64_t n = 0;
      for (const auto& [y, c] : row) n += c;
      total += n;
      const auto exact = oracle::pi_row(m, x[0], x[1]);
      double dist = 0;
      for (long a = 0; a <= 3; ++a) {
        const auto it = row.find(State{a, 3 - a});
        const double emp = it == row.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
        const auto e = exact.find({a, 3 - a});
        dist += std::abs(emp - (e == exact.end() ? 0.0 : e->second.get_d()));
      }
      worst = std::max(worst, dist / 2);
    }
    o.require(counts.size() == 4, "kernel rows visited " + std::to_string(counts.size()));
    o.require(total == 1000000, "kernel events " + std::to_string(total));
    o.require(worst < 0.005, "kernel TV " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof buf, "TV %.4f, kernel TV %.4f", d, worst);
    o.detail = buf;
  });

  criterion(9, "dual prediction against Monte Carlo on a 4-vertex path", 120, [](Outcome& o) {
    const ModelSpec spec = ModelSpec::iem(1, 1, 1, 1);
    const oracle::Model m = oracle::Model::make_iem(1, 1, 1, 1);
    const Graph g = Graph::path(4);
    const Configuration init{4, 0, 0, 2};
    const double t = 1.0;
    const auto predicted = dual_moment_estimate(g, spec, init, t);
    const Simulator sim(g, spec, 6);
    const MonteCarloMean mc = monte_carlo_mean(sim, init, t, 100000, 99, 4);

    // Oracle: each edge fires at rate 1, the lone dual particle crosses with Pi((1,0)->(0,1)).
    const double cross = oracle::pi_row(m, 1, 0)[{0, 1}].get_d();
    std::vector<std::vector<double>> q(4, std::vector<double>(4, 0.0));
    for (const auto& [u, v] : g.edges) {
      q[u][v] += cross;
      q[v][u] += cross;
      q[u][u] -= cross;
      q[v][v] -= cross;
    }
    const auto pt = oracle::expm(q, t);
    std::string detail;
    for (std::size_t i = 0; i < 4; ++i) {
      double want = 0;
      for (std::size_t j = 0; j < 4; ++j) want += pt[i][j] * static_cast<double>(init[j]);
      o.require(std::abs(predicted[i] - want) < 1e-9, "prediction differs from oracle at vertex " + std::to_string(i));
      const double rel = std::abs(mc.mean[i] - predicted[i]) / predicted[i];
      o.require(rel < 0.02, "vertex " + std::to_string(i) + " relative error " + std::to_string(rel));
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f/%.3f ", predicted[i], mc.mean[i]);
      detail += buf;
    }
    o.detail = detail;
  });

  criterion(10, "repeated CLI runs are byte-identical", 0, [](Outcome& o) {
    const fs::path root = fs::temp_directory_path() / ("exdyn-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    const std::vector<std::pair<std::string, std::string>> configs{
        {"simulate", "command = simulate\nmodel = IEM(1,1)\ninit = 5,3\ntmax = 50\nsamples = 2000\nthin = 2\nseed = 11\n"},
        {"dual", "command = dual-check\nmodel = IEM(1,1)\ngraph = path:4\ninit = 4,0,0,2\ntime = 1\nreplicas = 5000\n"
                 "max_relative_error = 0.5\nseed = 5\n"},
        {"verify", "command = verify-all\nmodel = IEM(1,1;2,1)\nnmax = 4\n"},
    };
    std::size_t files = 0;
    for (const auto& [name, text] : configs) {
      const fs::path cfg = root / (name + ".cfg");
      std::ofstream(cfg) << text;
      for (const char* run : {"a", "b"}) {
        const std::string jobs = std::string(run) == "a" ? "1" : "3";
        const std::string cmd = std::string("\"") + EXDYN_CLI_PATH + "\" --config \"" + cfg.string() + "\" --out \"" +
                                (root / name / run).string() + "\" --jobs " + jobs + " > \"" +
                                (root / (name + "_" + run + ".stdout")).string() + "\" 2>&1";
        const int rc = std::system(cmd.c_str());
        o.require(rc != -1, "could not run the CLI");
      }
      o.require(slurp(root / (name + "_a.stdout")) == slurp(root / (name + "_b.stdout")), name + ": stdout differs");
      const fs::path a = root / name / "a";
      const fs::path b = root / name / "b";
      std::vector<std::string> names;
      for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
      o.require(!names.empty(), name + ": no outputs");
      for (const auto& e : fs::directory_iterator(b)) {
        o.require(fs::exists(a / e.path().filename()), name + ": extra file " + e.path().filename().string());
      }
      for (const auto& f : names) {
        ++files;
        o.require(fs::exists(b / f), name + ": missing " + f);
        o.require(slurp(a / f) == slurp(b / f), name + ": " + f + " differs");
      }
    }
    o.detail = std::to_string(files) + " files compared";
    if (o.problems.empty()) fs::remove_all(root);
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
