#include "exdyn/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "exdyn/errors.hpp"

namespace exdyn {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::partial: return "partial";
  }
  return "?";
}

namespace {

std::string double_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string value_string(const Rational& x) { return to_string(x); }
std::string value_string(double x) { return double_string(x); }

CheckReport make_report(std::string name, std::string theorem, long nmax) {
  CheckReport r;
  r.name = std::move(name);
  r.theorem = std::move(theorem);
  r.nmax = nmax;
  return r;
}

void finish(CheckReport& r) {
  std::sort(r.excluded.begin(), r.excluded.end());
  r.excluded.erase(std::unique(r.excluded.begin(), r.excluded.end()), r.excluded.end());
  if (r.witness) {
    r.verdict = Verdict::fail;
  } else {
    r.verdict = r.excluded.empty() ? Verdict::pass : Verdict::partial;
  }
}

StateSpace coarse_space(const StateSpace& fine, const AdditionMap& map) {
  if (!fine.bounded()) return StateSpace::unbounded(static_cast<int>(map.groups.size()));
  std::vector<long> caps;
  for (const auto& g : map.groups) {
    long c = 0;
    for (int slot : g) c += fine.capacity.at(static_cast<std::size_t>(slot));
    caps.push_back(c);
  }
  return StateSpace::bounded(std::move(caps));
}

template <class T, class KernelT>
CheckReport self_duality_impl(const BasicSectorOperator<T>& pi, const KernelT& d, long nmax, double tol,
                              CheckReport r) {
  if (pi.shift() != 0) throw ShapeError("self-duality needs a mass-conserving operator");
  nmax = std::min(nmax, pi.rows()->nmax());
  r.nmax = nmax;
  for (long kt = 0; kt <= nmax && !r.witness; ++kt) {
    if (!pi.has_block(kt)) {
      r.excluded.push_back(kt);
      continue;
    }
    const Sector& sk = pi.rows()->at(kt);
    const auto& pk = pi.block(kt);
    for (long nt = 0; nt <= nmax && !r.witness; ++nt) {
      if (!pi.has_block(nt)) {
        r.excluded.push_back(nt);
        continue;
      }
      const Sector& sn = pi.rows()->at(nt);
      const auto& pn = pi.block(nt);
      std::vector<std::vector<T>> a(sk.size(), std::vector<T>(sn.size(), T(0)));
      for (std::size_t k = 0; k < sk.size(); ++k) {
        for (std::size_t n = 0; n < sn.size(); ++n) a[k][n] = d(sk.state(k), sn.state(n));
      }
      for (std::size_t k = 0; k < sk.size() && !r.witness; ++k) {
        for (std::size_t n = 0; n < sn.size(); ++n) {
          T lhs(0);
          for (const auto& [m, v] : pn.row(n)) lhs += v * a[k][m];
          T rhs(0);
          for (const auto& [l, v] : pk.row(k)) rhs += v * a[l][n];
          ++r.checked;
          if (!nearly_equal(lhs, rhs, tol)) {
            r.witness = Witness{nt, "k=" + to_string(sk.state(k)), "n=" + to_string(sn.state(n)), value_string(lhs),
                                value_string(rhs), "sum_m Pi(n->m) D(k,m) vs sum_l Pi(k->l) D(l,n)"};
            break;
          }
        }
      }
    }
  }
  finish(r);
  return r;
}

template <class T>
CheckReport identity_impl(const BasicSectorOperator<T>& lhs, const BasicSectorOperator<T>& rhs, double tol,
                          CheckReport r) {
  if (!(lhs.rows()->space() == rhs.rows()->space()) || !(lhs.cols()->space() == rhs.cols()->space()) ||
      lhs.shift() != rhs.shift()) {
    throw ShapeError("operators in '" + r.name + "' act on different spaces or shift differently");
  }
  const long nmax = std::min(lhs.rows()->nmax(), rhs.rows()->nmax());
  r.nmax = nmax;
  bool compared = false;
  for (long n = 0; n <= nmax; ++n) {
    if (!lhs.has_block(n) || !rhs.has_block(n)) {
      r.excluded.push_back(n);
      continue;
    }
    compared = true;
    const auto& a = lhs.block(n);
    const auto& b = rhs.block(n);
    r.checked += a.nonzeros() + b.nonzeros();
    if (auto diff = first_difference(a, b, tol)) {
      r.witness = Witness{n, to_string(lhs.rows()->at(n).state(diff->row)),
                          to_string(lhs.cols()->at(n - lhs.shift()).state(diff->col)), value_string(diff->lhs),
                          value_string(diff->rhs), ""};
      break;
    }
  }
  if (!compared && !r.witness) throw ShapeError("'" + r.name + "' has no sector where both sides are defined");
  finish(r);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Self-duality

CheckReport check_self_duality(const SectorOperator& pi, const Kernel& d, long nmax, std::string theorem) {
  return self_duality_impl(pi, d, nmax, 0.0, make_report("self-duality", std::move(theorem), nmax));
}

CheckReport check_self_duality(const FloatSectorOperator& pi, const FloatKernel& d, long nmax, double tolerance,
                               std::string theorem) {
  CheckReport r = make_report("self-duality", std::move(theorem), nmax);
  r.arithmetic = Arithmetic::floating(tolerance);
  return self_duality_impl(pi, d, nmax, tolerance, std::move(r));
}

CheckReport check_self_duality(const SectorOperator& pi, const DualityFunction& d, long nmax,
                               Arithmetic arithmetic) {
  const std::string theorem = "self-duality/" + to_string(d.family);
  CheckReport r;
  if (arithmetic.is_exact()) {
    r = check_self_duality(pi, Kernel([&](const State& k, const State& n) { return d(k, n); }), nmax, theorem);
  } else {
    r = check_self_duality(to_float(pi),
                           FloatKernel([&](const State& k, const State& n) { return d.value_float(k, n); }), nmax,
                           arithmetic.tolerance, theorem);
  }
  if (d.warning) r.notes.push_back(*d.warning);
  return r;
}

// ---------------------------------------------------------------------------
// Reversibility and operator identities

CheckReport check_detailed_balance(const SectorOperator& op, const Measure& mu, std::string theorem) {
  if (op.shift() != 0) throw ShapeError("detailed balance needs a mass-conserving operator");
  if (!(op.rows()->space() == mu.sectors()->space())) throw ShapeError("measure and operator live on different spaces");
  CheckReport r = make_report("detailed-balance", std::move(theorem), op.rows()->nmax());
  for (long n = 0; n <= op.rows()->nmax() && !r.witness; ++n) {
    if (!op.has_block(n) || !mu.sectors()->contains(n)) {
      r.excluded.push_back(n);
      continue;
    }
    const Sector& sector = op.rows()->at(n);
    const auto& w = mu.on(n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (sgn(w[i]) == 0) throw ConditioningError("state " + to_string(sector.state(i)) + " has zero mass");
    }
    const auto& block = op.block(n);
    for (std::size_t x = 0; x < block.rows() && !r.witness; ++x) {
      for (const auto& [y, v] : block.row(x)) {
        const Rational lhs = w[x] * v;
        const Rational rhs = w[y] * block.at(y, x);
        ++r.checked;
        if (lhs != rhs) {
          r.witness = Witness{n, to_string(sector.state(x)), to_string(sector.state(y)), to_string(lhs),
                              to_string(rhs), "mu(x) op(x->y) vs mu(y) op(y->x)"};
          break;
        }
      }
    }
  }
  finish(r);
  return r;
}

CheckReport check_stochastic(const SectorOperator& op, std::string theorem) {
  CheckReport r = make_report("stochastic", std::move(theorem), op.rows()->nmax());
  if (op.shift() != 0) throw ShapeError("a stochastic operator conserves mass");
  for (long n = 0; n <= op.rows()->nmax() && !r.witness; ++n) {
    if (!op.has_block(n)) {
      r.excluded.push_back(n);
      continue;
    }
    const auto& block = op.block(n);
    for (std::size_t x = 0; x < block.rows(); ++x) {
      bool negative = false;
      for (const auto& [y, v] : block.row(x)) negative = negative || sgn(v) < 0;
      const Rational sum = block.row_sum(x);
      ++r.checked;
      if (sum != 1 || negative) {
        r.witness = Witness{n, to_string(op.rows()->at(n).state(x)), "", to_string(sum), "1",
                            negative ? "row has a negative entry" : "row sum"};
        break;
      }
    }
  }
  finish(r);
  return r;
}

CheckReport check_operator_identity(const SectorOperator& lhs, const SectorOperator& rhs, std::string name,
                                    std::string theorem) {
  return identity_impl(lhs, rhs, 0.0, make_report(std::move(name), std::move(theorem), 0));
}

CheckReport check_operator_identity(const FloatSectorOperator& lhs, const FloatSectorOperator& rhs, double tolerance,
                                    std::string name, std::string theorem) {
  CheckReport r = make_report(std::move(name), std::move(theorem), 0);
  r.arithmetic = Arithmetic::floating(tolerance);
  return identity_impl(lhs, rhs, tolerance, std::move(r));
}

CheckReport check_commutation(const SectorOperator& a, const SectorOperator& b, const SectorOperator& c,
                              std::string name, std::string theorem) {
  return check_operator_identity(commutator(a, b).value, c, std::move(name), std::move(theorem));
}

CheckReport check_symmetry(const SectorOperator& op, const SectorOperator& s, std::string theorem) {
  return check_operator_identity(s * op, op * s, "symmetry", std::move(theorem));
}

CheckReport check_projection_identity(const SectorOperator& p, const Measure& mu, std::string theorem) {
  const AdditionMap map = AdditionMap::pockets_to_pairs();
  auto pairs = make_sectors(coarse_space(p.rows()->space(), map), p.rows()->nmax());
  const SectorOperator tt = lift_operator(p.cols(), pairs, map) * canonical_inverse_operator(mu, pairs, map);
  return check_operator_identity(p, tt, "projection", std::move(theorem));
}

CheckReport check_exchange_commutation(const SectorOperator& s, std::string theorem) {
  const SectorOperator e = exchange_operator(s.rows());
  return check_operator_identity(s * e, e * s, "exchange-commutation", std::move(theorem));
}

CheckReport check_lumpability(const SectorOperator& b, const Measure& mu, SectorsPtr coarse, std::string theorem) {
  CheckReport r = make_report("lumpability", std::move(theorem), b.rows()->nmax());
  const LumpResult result = lump_operator(b, mu, coarse, coarse);
  r.checked = result.certificate.sectors.size();
  for (long n = 0; n <= b.rows()->nmax(); ++n) {
    if (std::find(result.certificate.sectors.begin(), result.certificate.sectors.end(), n) ==
        result.certificate.sectors.end()) {
      r.excluded.push_back(n);
    }
  }
  if (const auto& w = result.certificate.witness) {
    r.witness = Witness{w->sector, to_string(w->first) + " vs " + to_string(w->second),
                        "indicator of " + to_string(w->coarse_column), to_string(w->first_value),
                        to_string(w->second_value), "fibre " + to_string(w->fibre)};
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Constructive and cheap duality

namespace {

/// Applies a single-slot operator to a function indexed by the slot value.
std::vector<Rational> apply_single(const SectorOperator& x, const std::vector<Rational>& f) {
  std::vector<Rational> out(f.size(), Rational(0));
  for (std::size_t m = 0; m < f.size(); ++m) {
    const long n = static_cast<long>(m);
    if (!x.has_block(n)) continue;
    const auto& block = x.block(n);
    const long source = n - x.shift();
    if (block.rows() == 0 || source < 0 || source >= static_cast<long>(f.size())) continue;
    for (const auto& [j, v] : block.row(0)) out[m] += v * f[static_cast<std::size_t>(source) + j];
  }
  return out;
}

}  // namespace

CheckReport check_constructive_duality(const ModelSpec& spec, long nmax, DualityForm form) {
  CheckReport r = make_report("constructive-duality", "constructive-duality/" + to_string(spec.family()), nmax);
  r.model = spec.to_string();
  const DualityFunction d = duality_function(spec, form);
  for (int agent = 0; agent < 2 && !r.witness; ++agent) {
    StateSpace space = StateSpace::unbounded(1);
    long top = nmax;
    if (spec.family() == Family::riem) {
      const long cap = pair_space(spec).capacity[static_cast<std::size_t>(agent)];
      space = StateSpace::bounded({cap});
      top = std::min(top, cap);
    }
    auto sectors = make_sectors(space, nmax + 1);
    const SectorOperator raise = build_symmetry(raising_symmetry(spec, agent), sectors);
    const auto size = static_cast<std::size_t>(nmax + 2);

    std::optional<Rational> constant;
    for (long n = 0; n <= top && !r.witness; ++n) {
      std::vector<Rational> term(size, Rational(0));
      term[static_cast<std::size_t>(n)] = 1 / cheap_duality_weight(spec, agent, n);
      std::vector<Rational> sum = term;
      for (long j = 1; j <= n + 1; ++j) {
        term = apply_single(raise, term);
        for (auto& v : term) v /= j;
        for (std::size_t i = 0; i < size; ++i) sum[i] += term[i];
      }
      for (long k = 0; k <= top; ++k) {
        const Rational built = sum[static_cast<std::size_t>(k)];
        const Rational closed = d.site[agent](k, n);
        if (!constant && sgn(closed) != 0) {
          constant = built / closed;
          r.notes.push_back("agent " + std::to_string(agent + 1) + " constant " + to_string(*constant));
        }
        ++r.checked;
        const Rational expected = constant ? *constant * closed : Rational(0);
        if (built != expected) {
          r.witness = Witness{n, "k=" + std::to_string(k) + " agent " + std::to_string(agent + 1),
                              "n=" + std::to_string(n), to_string(built), to_string(expected),
                              "exp(raising) cheap duality vs constant * d(k,n)"};
          break;
        }
      }
    }
  }
  finish(r);
  return r;
}

CheckReport check_cheap_duality(const ModelSpec& spec, const SectorOperator& pi, long nmax) {
  Kernel cheap = [&](const State& k, const State& n) -> Rational {
    if (k != n) return 0;
    return 1 / (pair_weight(spec, 0, n[0]) * pair_weight(spec, 1, n[1]));
  };
  CheckReport r = check_self_duality(pi, cheap, nmax, "cheap-duality/" + to_string(spec.family()));
  r.name = "cheap-duality";
  r.model = spec.to_string();
  return r;
}

CheckReport check_thermalization(const ModelSpec& spec, long nmax) {
  CheckReport r = make_report("thermalization", "thermalization/" + to_string(spec.family()), nmax);
  r.model = spec.to_string();
  for (int agent = 0; agent < 2 && !r.witness; ++agent) {
    const SectorOperator gen = thermalizing_generator(spec, agent, nmax);
    for (long n = 0; n <= nmax && !r.witness; ++n) {
      if (gen.rows()->at(n).size() == 0) continue;
      const Pmf stationary = thermalize(gen, n);
      const Pmf law = split_law(spec, agent, n);
      for (long k = 0; k <= n; ++k) {
        ++r.checked;
        if (stationary(k) != law(k)) {
          r.witness = Witness{n, "agent " + std::to_string(agent + 1), "k=" + std::to_string(k),
                              to_string(stationary(k)), to_string(law(k)), "stationary law vs split law"};
          break;
        }
      }
    }
  }
  finish(r);
  return r;
}

std::vector<CheckReport> check_algebra_relations(Algebra algebra, const Rational& param, long nmax) {
  std::vector<CheckReport> out;
  const std::string theorem = "algebra/" + to_string(algebra);
  auto tag = [&](std::string name) {
    return algebra == Algebra::heisenberg ? name : name + " param=" + to_string(param);
  };
  switch (algebra) {
    case Algebra::su11: {
      auto sectors = make_sectors(StateSpace::unbounded(1), nmax);
      auto k = [&](Ladder a) { return k_operator(a, param, 0, sectors); };
      out.push_back(check_commutation(k(Ladder::raise), k(Ladder::lower), Rational(2) * k(Ladder::diagonal),
                                      tag("[K+,K-]=2K0"), theorem));
      out.push_back(check_commutation(k(Ladder::raise), k(Ladder::diagonal), k(Ladder::raise), tag("[K+,K0]=K+"),
                                      theorem));
      out.push_back(check_commutation(k(Ladder::lower), k(Ladder::diagonal), Rational(-1) * k(Ladder::lower),
                                      tag("[K-,K0]=-K-"), theorem));
      break;
    }
    case Algebra::su2: {
      if (!is_integer(param)) throw ParameterError("SU(2) parameter must be an integer");
      const long gamma = param.get_num().get_si();
      auto sectors = make_sectors(StateSpace::bounded({gamma}), nmax);
      auto j = [&](Ladder a) { return j_operator(a, gamma, 0, sectors); };
      out.push_back(check_commutation(j(Ladder::raise), j(Ladder::lower), Rational(2) * j(Ladder::diagonal),
                                      tag("[J+,J-]=2J0"), theorem));
      out.push_back(check_commutation(j(Ladder::raise), j(Ladder::diagonal), Rational(-1) * j(Ladder::raise),
                                      tag("[J+,J0]=-J+"), theorem));
      out.push_back(check_commutation(j(Ladder::lower), j(Ladder::diagonal), j(Ladder::lower), tag("[J-,J0]=J-"),
                                      theorem));
      break;
    }
    case Algebra::heisenberg: {
      auto sectors = make_sectors(StateSpace::unbounded(1), nmax);
      out.push_back(check_commutation(ladder_operator(Ladder::raise, 0, sectors),
                                      ladder_operator(Ladder::lower, 0, sectors), SectorOperator::identity(sectors),
                                      tag("[a+,a]=1"), theorem));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

Suite parse_suite(const std::string& name) {
  if (name == "algebra") return Suite::algebra;
  if (name == "duality") return Suite::duality;
  if (name == "reversibility") return Suite::reversibility;
  if (name == "all") return Suite::all;
  throw ParameterError("unknown suite '" + name + "'");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::algebra: return "algebra";
    case Suite::duality: return "duality";
    case Suite::reversibility: return "reversibility";
    case Suite::all: return "all";
  }
  return "?";
}

std::vector<CheckReport> run_tasks(const std::vector<std::function<CheckReport()>>& tasks, unsigned jobs) {
  std::vector<CheckReport> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<CheckReport> run_suite(const ModelSpec& spec, long nmax, Suite suite, Arithmetic arithmetic,
                                   unsigned jobs) {
  if (nmax < 1) throw ParameterError("nmax must be at least 1");
  const std::string family = to_string(spec.family());
  const bool algebra = suite == Suite::algebra || suite == Suite::all;
  const bool duality = suite == Suite::duality || suite == Suite::all;
  const bool reversibility = suite == Suite::reversibility || suite == Suite::all;

  auto pockets = make_sectors(pocket_space(spec), nmax);
  auto pairs = make_sectors(pair_space(spec), nmax);
  const auto pi = std::make_shared<const SectorOperator>(transition_operator(spec, nmax));
  const auto p = std::make_shared<const SectorOperator>(redistribution_operator(spec, nmax));
  const auto mu = std::make_shared<const Measure>(pocket_stationary_measure(spec, pockets));

  std::vector<std::function<CheckReport()>> tasks;

  if (algebra) {
    std::vector<Rational> params;
    Algebra alg = Algebra::heisenberg;
    for (const auto& d : pocket_symmetries(spec)) {
      alg = d.algebra;
      for (const auto& x : d.params) params.push_back(x);
    }
    for (const auto& d : pair_symmetries(spec)) {
      for (const auto& x : d.params) params.push_back(x);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    if (alg == Algebra::heisenberg) params = {Rational(1)};
    for (const auto& x : params) {
      tasks.emplace_back([=] {
        // The relations come as a group; report them as one check per relation.
        auto reports = check_algebra_relations(alg, x, nmax);
        CheckReport merged = reports.front();
        merged.name = "algebra-relations " + to_string(alg) + (alg == Algebra::heisenberg ? "" : " " + to_string(x));
        for (std::size_t i = 1; i < reports.size(); ++i) {
          merged.checked += reports[i].checked;
          for (long e : reports[i].excluded) merged.excluded.push_back(e);
          if (!merged.witness && reports[i].witness) {
            merged.witness = reports[i].witness;
            merged.witness->note = reports[i].name;
          }
        }
        if (merged.witness && merged.witness->note.empty()) merged.witness->note = reports.front().name;
        finish(merged);
        return merged;
      });
    }

    const auto pocket_syms = pocket_symmetries(spec);
    const auto pair_syms = pair_symmetries(spec);
    for (std::size_t i = 0; i < pocket_syms.size(); ++i) {
      const SymmetryDescriptor fine = pocket_syms[i];
      const SymmetryDescriptor coarse = pair_syms[i];
      tasks.emplace_back([=] {
        CheckReport r = check_symmetry(*p, build_symmetry(fine, pockets), "symmetry/pocket/" + family);
        r.name = "symmetry P " + fine.to_string();
        return r;
      });
      tasks.emplace_back([=] {
        CheckReport r = check_exchange_commutation(build_symmetry(fine, pockets), "exchange-commutation/" + family);
        r.name = "exchange-commutation " + fine.to_string();
        return r;
      });
      tasks.emplace_back([=] {
        const SectorOperator lift = lift_operator(pockets, pairs);
        CheckReport r = check_operator_identity(build_symmetry(fine, pockets) * lift,
                                                lift * build_symmetry(coarse, pairs), "lumped-symmetry " + coarse.to_string(),
                                                "lumped-symmetry/" + family);
        return r;
      });
      tasks.emplace_back([=] {
        CheckReport r = check_symmetry(*pi, build_symmetry(coarse, pairs), "symmetry/" + family);
        r.name = "symmetry Pi " + coarse.to_string();
        return r;
      });
    }

    tasks.emplace_back([=] {
      return check_lumpability(*p * exchange_operator(pockets), *mu, pairs, "lumpability/" + family);
    });
    tasks.emplace_back([=] {
      return check_operator_identity(*pi, transition_operator_direct(spec, nmax), "transition composed vs direct",
                                     "transition/" + family);
    });
    switch (spec.family()) {
      case Family::iem: {
        const auto& q = spec.as<IemParams>();
        for (auto [s, t] : {std::pair{q.s1, q.t1}, std::pair{q.s2, q.t2}}) {
          tasks.emplace_back([=] {
            return check_operator_identity(sip_generator_abstract(s, t, nmax), sip_generator(s, t, nmax),
                                           "SIP(" + to_string(s) + "," + to_string(t) + ") abstract form",
                                           "generator/sip");
          });
        }
        break;
      }
      case Family::rw:
      case Family::piem: {
        std::vector<Rational> qs{1};
        if (spec.family() == Family::piem) qs = {spec.as<PiemParams>().q1, spec.as<PiemParams>().q2};
        for (const auto& q : qs) {
          tasks.emplace_back([=] {
            return check_operator_identity(rw_generator_factorized(q, nmax), rw_generator(q, nmax),
                                           "RW(" + to_string(q) + ") factorized form", "generator/rw");
          });
        }
        break;
      }
      case Family::riem: break;
    }
  }

  if (reversibility) {
    tasks.emplace_back([=] { return check_stochastic(*pi, "stochastic/" + family); });
    tasks.emplace_back([=] { return check_projection_identity(*p, *mu, "projection/" + family); });
    tasks.emplace_back([=] {
      CheckReport r = check_detailed_balance(*p, *mu, "reversibility/pocket/" + family);
      r.name = "detailed-balance P";
      return r;
    });
    tasks.emplace_back([=] {
      CheckReport r = check_detailed_balance(*pi, pair_stationary_measure(spec, pairs), "reversibility/" + family);
      r.name = "detailed-balance Pi";
      return r;
    });
    tasks.emplace_back([=] { return check_thermalization(spec, nmax); });
  }

  if (duality) {
    tasks.emplace_back([=] { return check_self_duality(*pi, duality_function(spec), nmax, arithmetic); });
    tasks.emplace_back([=] { return check_cheap_duality(spec, *pi, nmax); });
    tasks.emplace_back([=] { return check_constructive_duality(spec, nmax); });
  }

  auto reports = run_tasks(tasks, jobs);
  for (auto& r : reports) {
    r.model = spec.to_string();
    if (r.nmax == 0) r.nmax = nmax;
  }
  return reports;
}

}  // namespace exdyn
