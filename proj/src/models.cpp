#include "exdyn/models.hpp"

#include <cctype>
#include <cmath>

#include "exdyn/errors.hpp"

namespace exdyn {

// ---------------------------------------------------------------------------
// ModelSpec

std::string to_string(Family family) {
  switch (family) {
    case Family::iem: return "iem";
    case Family::riem: return "riem";
    case Family::rw: return "rw";
    case Family::piem: return "piem";
  }
  return "?";
}

ModelSpec::ModelSpec(Params params) : params_(std::move(params)) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, IemParams>) {
          if (sgn(p.s1) <= 0 || sgn(p.t1) <= 0 || sgn(p.s2) <= 0 || sgn(p.t2) <= 0) {
            throw ParameterError("IEM parameters must be positive");
          }
        } else if constexpr (std::is_same_v<P, RiemParams>) {
          if (p.gamma1 < 1 || p.delta1 < 1 || p.gamma2 < 1 || p.delta2 < 1) {
            throw ParameterError("RIEM capacities must be at least 1");
          }
        } else if constexpr (std::is_same_v<P, PiemParams>) {
          if (sgn(p.q1) <= 0 || sgn(p.q2) <= 0) throw ParameterError("PIEM asymmetries must be positive");
        }
      },
      params_);
}

ModelSpec ModelSpec::iem(Rational s1, Rational t1, Rational s2, Rational t2) {
  return ModelSpec(IemParams{std::move(s1), std::move(t1), std::move(s2), std::move(t2)});
}
ModelSpec ModelSpec::riem(long gamma1, long delta1, long gamma2, long delta2) {
  return ModelSpec(RiemParams{gamma1, delta1, gamma2, delta2});
}
ModelSpec ModelSpec::rw() { return ModelSpec(RwParams{}); }
ModelSpec ModelSpec::piem(Rational q1, Rational q2) { return ModelSpec(PiemParams{std::move(q1), std::move(q2)}); }

Family ModelSpec::family() const { return static_cast<Family>(params_.index()); }

bool ModelSpec::symmetric() const {
  switch (family()) {
    case Family::iem: {
      const auto& p = as<IemParams>();
      return p.s1 == p.s2 && p.t1 == p.t2;
    }
    case Family::riem: {
      const auto& p = as<RiemParams>();
      return p.gamma1 == p.gamma2 && p.delta1 == p.delta2;
    }
    case Family::rw: return true;
    case Family::piem: return as<PiemParams>().q1 == as<PiemParams>().q2;
  }
  return false;
}

bool ModelSpec::exchange_symmetric() const {
  switch (family()) {
    case Family::iem: return as<IemParams>().s1 == as<IemParams>().s2;
    case Family::riem: return as<RiemParams>().gamma1 == as<RiemParams>().gamma2;
    default: return true;
  }
}

std::string ModelSpec::to_string() const {
  using exdyn::to_string;
  switch (family()) {
    case Family::iem: {
      const auto& p = as<IemParams>();
      return "IEM(" + to_string(p.s1) + "," + to_string(p.t1) + ";" + to_string(p.s2) + "," + to_string(p.t2) + ")";
    }
    case Family::riem: {
      const auto& p = as<RiemParams>();
      return "RIEM(" + std::to_string(p.gamma1) + "," + std::to_string(p.delta1) + ";" + std::to_string(p.gamma2) +
             "," + std::to_string(p.delta2) + ")";
    }
    case Family::rw: return "RW";
    case Family::piem: {
      const auto& p = as<PiemParams>();
      return "PIEM(" + to_string(p.q1) + "," + to_string(p.q2) + ")";
    }
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

/// Splits "a,b;c,d" into groups separated by ';' of items separated by ','.
std::vector<std::vector<std::string>> split_args(std::string_view body) {
  std::vector<std::vector<std::string>> groups(1);
  std::string item;
  auto flush = [&] {
    groups.back().push_back(trim(item));
    item.clear();
  };
  for (char c : body) {
    if (c == ',') {
      flush();
    } else if (c == ';') {
      flush();
      groups.emplace_back();
    } else {
      item += c;
    }
  }
  flush();
  return groups;
}

long parse_capacity(const std::string& s) {
  Rational r = parse_rational(s);
  if (!is_integer(r)) throw ParameterError("RIEM capacity '" + s + "' is not an integer");
  return r.get_num().get_si();
}

}  // namespace

ModelSpec parse_model_spec(std::string_view text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  const std::string name = upper(trim(s.substr(0, open)));
  std::vector<std::vector<std::string>> groups;
  if (open != std::string::npos) {
    if (s.back() != ')') throw ParameterError("model '" + s + "' is missing a closing parenthesis");
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    if (!trim(body).empty()) groups = split_args(body);
  }

  std::vector<std::string> flat;
  for (const auto& g : groups) {
    for (const auto& item : g) flat.push_back(item);
  }
  for (const auto& item : flat) {
    if (item.empty()) throw ParameterError("model '" + s + "' has an empty parameter");
  }
  const bool two_groups_of_two = groups.size() == 2 && groups[0].size() == 2 && groups[1].size() == 2;
  const bool one_group_of_two = groups.size() == 1 && groups[0].size() == 2;

  if (name == "IEM") {
    if (two_groups_of_two) {
      return ModelSpec::iem(parse_rational(flat[0]), parse_rational(flat[1]), parse_rational(flat[2]),
                            parse_rational(flat[3]));
    }
    if (one_group_of_two) {
      return ModelSpec::iem(parse_rational(flat[0]), parse_rational(flat[1]), parse_rational(flat[0]),
                            parse_rational(flat[1]));
    }
    throw ParameterError("IEM expects (s1,t1;s2,t2) or (s,t), got '" + s + "'");
  }
  if (name == "RIEM") {
    if (two_groups_of_two) {
      return ModelSpec::riem(parse_capacity(flat[0]), parse_capacity(flat[1]), parse_capacity(flat[2]),
                             parse_capacity(flat[3]));
    }
    if (one_group_of_two) {
      return ModelSpec::riem(parse_capacity(flat[0]), parse_capacity(flat[1]), parse_capacity(flat[0]),
                             parse_capacity(flat[1]));
    }
    throw ParameterError("RIEM expects (gamma1,delta1;gamma2,delta2), got '" + s + "'");
  }
  if (name == "RW") {
    if (!flat.empty()) throw ParameterError("RW takes no parameters");
    return ModelSpec::rw();
  }
  if (name == "PIEM") {
    if (groups.size() == 1 && flat.size() == 2) return ModelSpec::piem(parse_rational(flat[0]), parse_rational(flat[1]));
    if (groups.size() == 1 && flat.size() == 1) return ModelSpec::piem(parse_rational(flat[0]), parse_rational(flat[0]));
    throw ParameterError("PIEM expects (q1,q2), got '" + s + "'");
  }
  throw ParameterError("unknown model family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Split laws, spaces and stationary weights

Pmf split_law(const ModelSpec& spec, int agent, long n) {
  if (agent != 0 && agent != 1) throw ParameterError("agent must be 0 or 1");
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      return agent == 0 ? beta_binomial_pmf(n, p.s1, p.t1) : beta_binomial_pmf(n, p.s2, p.t2);
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      return agent == 0 ? hypergeometric_pmf(n, p.gamma1, p.delta1) : hypergeometric_pmf(n, p.gamma2, p.delta2);
    }
    case Family::rw: return binomial_pmf(n, Rational(1, 2));
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      return binomial_pmf(n, 1 / (1 + (agent == 0 ? p.q1 : p.q2)));
    }
  }
  throw ModelError("unknown family");
}

StateSpace pocket_space(const ModelSpec& spec) {
  if (spec.family() == Family::riem) {
    const auto& p = spec.as<RiemParams>();
    return StateSpace::bounded({p.gamma1, p.delta1, p.gamma2, p.delta2});
  }
  return StateSpace::unbounded(4);
}

StateSpace pair_space(const ModelSpec& spec) {
  if (spec.family() == Family::riem) {
    const auto& p = spec.as<RiemParams>();
    return StateSpace::bounded({p.gamma1 + p.delta1, p.gamma2 + p.delta2});
  }
  return StateSpace::unbounded(2);
}

Rational pocket_weight(const ModelSpec& spec, int slot, long n) {
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      const Rational* beta[4] = {&p.s1, &p.t1, &p.s2, &p.t2};
      return rising_factorial(*beta[slot], n) / Rational(factorial(n));
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      const long caps[4] = {p.gamma1, p.delta1, p.gamma2, p.delta2};
      return Rational(binomial(caps[slot], n));
    }
    case Family::rw: return Rational(1) / Rational(factorial(n));
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      const Rational rate = slot == 1 ? p.q1 : slot == 3 ? p.q2 : Rational(1);
      return pow(rate, n) / Rational(factorial(n));
    }
  }
  throw ModelError("unknown family");
}

Rational pair_weight(const ModelSpec& spec, int agent, long n) {
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      const Rational r = agent == 0 ? Rational(p.s1 + p.t1) : Rational(p.s2 + p.t2);
      return rising_factorial(r, n) / Rational(factorial(n));
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      return Rational(binomial(agent == 0 ? p.gamma1 + p.delta1 : p.gamma2 + p.delta2, n));
    }
    case Family::rw: return pow(Rational(2), n) / Rational(factorial(n));
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      return pow(1 + (agent == 0 ? p.q1 : p.q2), n) / Rational(factorial(n));
    }
  }
  throw ModelError("unknown family");
}

Measure pocket_stationary_measure(const ModelSpec& spec, SectorsPtr pockets) {
  return Measure::product(std::move(pockets), [&](int slot, long n) { return pocket_weight(spec, slot, n); });
}

Measure pair_stationary_measure(const ModelSpec& spec, SectorsPtr pairs) {
  return Measure::product(std::move(pairs), [&](int agent, long n) { return pair_weight(spec, agent, n); });
}

// ---------------------------------------------------------------------------
// Redistribution and transition operators

SectorOperator redistribution_operator(const ModelSpec& spec, long nmax) {
  auto pockets = make_sectors(pocket_space(spec), nmax);
  return SectorOperator::from_action(pockets, pockets, 0, [&](const State& s, const auto& emit) {
    const long n1 = s[0] + s[1];
    const long n2 = s[2] + s[3];
    const Pmf first = split_law(spec, 0, n1);
    const Pmf second = split_law(spec, 1, n2);
    for (std::size_t a = 0; a < first.size(); ++a) {
      for (std::size_t b = 0; b < second.size(); ++b) {
        const long k1 = first.support[a];
        const long k2 = second.support[b];
        emit(State{k1, n1 - k1, k2, n2 - k2}, first.mass[a] * second.mass[b]);
      }
    }
  });
}

SectorOperator transition_operator(const ModelSpec& spec, long nmax) {
  auto pockets = make_sectors(pocket_space(spec), nmax);
  auto pairs = make_sectors(pair_space(spec), nmax);
  const SectorOperator lift = lift_operator(pockets, pairs);
  const SectorOperator inverse = canonical_inverse_operator(pocket_stationary_measure(spec, pockets), pairs);
  const SectorOperator exchange = exchange_operator(pockets);
  const SectorOperator p = redistribution_operator(spec, nmax);
  return inverse * (p * (exchange * lift));
}

SectorOperator transition_operator_direct(const ModelSpec& spec, long nmax) {
  auto pairs = make_sectors(pair_space(spec), nmax);
  const StateSpace pockets = pocket_space(spec);
  return SectorOperator::from_action(pairs, pairs, 0, [&](const State& x, const auto& emit) {
    const Pmf first = split_law(spec, 0, x[0]);
    const Pmf second = split_law(spec, 1, x[1]);
    for (std::size_t a = 0; a < first.size(); ++a) {
      for (std::size_t b = 0; b < second.size(); ++b) {
        const Rational prob = first.mass[a] * second.mass[b];
        if (is_zero(prob)) continue;
        const long k1 = first.support[a];
        const long k2 = second.support[b];
        const State exchanged{k2, x[0] - k1, k1, x[1] - k2};
        if (!pockets.contains(exchanged)) {
          throw CapacityError("exchange moves " + to_string(State{k1, x[0] - k1, k2, x[1] - k2}) + " to " +
                              to_string(exchanged) + ", outside " + to_string(pockets));
        }
        emit(State{exchanged[0] + exchanged[1], exchanged[2] + exchanged[3]}, prob);
      }
    }
  });
}

SectorOperator generator(const ModelSpec& spec, long nmax) {
  SectorOperator pi = transition_operator(spec, nmax);
  return pi - SectorOperator::identity(pi.rows());
}

// ---------------------------------------------------------------------------
// Thermalising two-site generators

namespace {

/// Two-site mass-conserving generator with the given left/right jump rates.
SectorOperator two_site_generator(SectorsPtr sectors, const std::function<Rational(long, long)>& rate_right,
                                  const std::function<Rational(long, long)>& rate_left) {
  return SectorOperator::from_action(sectors, sectors, 0, [&](const State& x, const auto& emit) {
    const long n = x[0];
    const long m = x[1];
    const Rational right = n > 0 ? rate_right(n, m) : Rational(0);
    const Rational left = m > 0 ? rate_left(n, m) : Rational(0);
    if (n > 0) emit(State{n - 1, m + 1}, right);
    if (m > 0) emit(State{n + 1, m - 1}, left);
    emit(x, -(right + left));
  });
}

/// Copies the blocks of `op` that fit into `sectors` (same space, smaller range).
SectorOperator restrict_to(const SectorOperator& op, SectorsPtr sectors) {
  SectorOperator out(sectors, sectors, op.shift());
  for (const auto& [n, block] : op.blocks()) {
    if (n <= sectors->nmax() && n - op.shift() <= sectors->nmax()) out.set_block(n, block);
  }
  return out;
}

}  // namespace

SectorOperator sip_generator(const Rational& s, const Rational& t, long nmax) {
  if (sgn(s) <= 0 || sgn(t) <= 0) throw ParameterError("SIP parameters must be positive");
  return two_site_generator(
      make_sectors(StateSpace::unbounded(2), nmax), [&](long n, long m) { return Rational(n * (t + m)); },
      [&](long n, long m) { return Rational(m * (s + n)); });
}

SectorOperator sip_generator_abstract(const Rational& s, const Rational& t, long nmax) {
  if (sgn(s) <= 0 || sgn(t) <= 0) throw ParameterError("SIP parameters must be positive");
  auto wide = make_sectors(StateSpace::unbounded(2), nmax + 1);
  const auto k = [&](Ladder alpha, int slot) { return k_operator(alpha, slot == 0 ? s : t, slot, wide); };
  SectorOperator gen = k(Ladder::raise, 0) * k(Ladder::lower, 1) + k(Ladder::lower, 0) * k(Ladder::raise, 1) -
                       Rational(2) * (k(Ladder::diagonal, 0) * k(Ladder::diagonal, 1)) +
                       Rational(s * t / 2) * SectorOperator::identity(wide);
  return restrict_to(gen, make_sectors(StateSpace::unbounded(2), nmax));
}

std::pair<SectorOperator, SectorOperator> sip_generator_verbatim_parts(const Rational& s, const Rational& t,
                                                                       long nmax) {
  auto sectors = make_sectors(StateSpace::unbounded(2), nmax);
  SectorOperator conserving = SectorOperator::from_action(sectors, sectors, 0, [&](const State& x, const auto& emit) {
    const long n = x[0];
    const long m = x[1];
    if (m > 0) emit(State{n + 1, m - 1}, Rational(m * (s + n)));
    emit(x, Rational(-(n * (t + m)) - m * (s + n)));
  });
  // Only jumps that stay in N^2 are representable.
  SectorOperator off_sector = SectorOperator::from_action(sectors, sectors, 2, [&](const State& x, const auto& emit) {
    const long n = x[0];
    const long m = x[1];
    if (n > 0 && m > 0) emit(State{n - 1, m - 1}, Rational(n * (t + m)));
  });
  return {conserving, off_sector};
}

SectorOperator sep_generator(long gamma, long delta, long nmax) {
  if (gamma < 1 || delta < 1) throw ParameterError("SEP capacities must be at least 1");
  return two_site_generator(
      make_sectors(StateSpace::bounded({gamma, delta}), nmax), [&](long n, long m) { return Rational(n * (delta - m)); },
      [&](long n, long m) { return Rational(m * (gamma - n)); });
}

SectorOperator rw_generator(const Rational& q, long nmax) {
  if (sgn(q) <= 0) throw ParameterError("random-walk asymmetry must be positive");
  return two_site_generator(
      make_sectors(StateSpace::unbounded(2), nmax), [&](long n, long) { return Rational(q * n); },
      [&](long, long m) { return Rational(m); });
}

namespace {

SectorOperator factorized(const Rational& lower1, const Rational& lower2, const Rational& raise1,
                          const Rational& raise2, long nmax) {
  auto wide = make_sectors(StateSpace::unbounded(2), nmax + 1);
  SectorOperator lowering = ladder_operator(Ladder::lower, 0, wide, lower1) - ladder_operator(Ladder::lower, 1, wide, lower2);
  SectorOperator raising = ladder_operator(Ladder::raise, 0, wide, raise1) - ladder_operator(Ladder::raise, 1, wide, raise2);
  return restrict_to(Rational(-1) * (lowering * raising), make_sectors(StateSpace::unbounded(2), nmax));
}

}  // namespace

SectorOperator rw_generator_factorized(const Rational& q, long nmax) {
  if (sgn(q) <= 0) throw ParameterError("random-walk asymmetry must be positive");
  return factorized(q, 1, 1, 1, nmax);
}

SectorOperator rw_generator_factorized_verbatim(const Rational& q, long nmax) {
  if (sgn(q) <= 0) throw ParameterError("random-walk asymmetry must be positive");
  return factorized(1, 1, 1, q, nmax);
}

Pmf thermalize(const SectorOperator& gen, long total) {
  if (gen.shift() != 0 || gen.rows()->space().arity != 2) {
    throw ShapeError("thermalize needs a mass-conserving two-site generator");
  }
  const Sector& sector = gen.rows()->at(total);
  const auto& block = gen.block(total);
  const std::size_t size = sector.size();
  // pi L = 0  <=>  L^T pi^T = 0
  DenseMatrix a(size, std::vector<Rational>(size, Rational(0)));
  for (std::size_t r = 0; r < size; ++r) {
    for (const auto& [c, v] : block.row(r)) a[c][r] = v;
  }
  auto kernel = null_space(std::move(a), size);
  if (kernel.size() != 1) {
    throw MultiplicityError("sector " + std::to_string(total) + " has " + std::to_string(kernel.size()) +
                            " independent stationary laws");
  }
  auto& pi = kernel.front();
  Rational z(0);
  for (const auto& x : pi) z += x;
  Pmf pmf;
  for (std::size_t i = 0; i < size; ++i) {
    pmf.support.push_back(sector.state(i)[0]);
    pmf.mass.push_back(pi[i] / z);
  }
  return pmf;
}

SectorOperator thermalizing_generator(const ModelSpec& spec, int agent, long nmax) {
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      return agent == 0 ? sip_generator(p.s1, p.t1, nmax) : sip_generator(p.s2, p.t2, nmax);
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      return agent == 0 ? sep_generator(p.gamma1, p.delta1, nmax) : sep_generator(p.gamma2, p.delta2, nmax);
    }
    case Family::rw: return rw_generator(1, nmax);
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      return rw_generator(agent == 0 ? p.q1 : p.q2, nmax);
    }
  }
  throw ModelError("unknown family");
}

// ---------------------------------------------------------------------------
// Symmetries

std::vector<SymmetryDescriptor> pocket_symmetries(const ModelSpec& spec) {
  const std::vector<int> slots{0, 1, 2, 3};
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      std::vector<SymmetryDescriptor> out;
      for (Ladder alpha : {Ladder::raise, Ladder::lower, Ladder::diagonal}) {
        out.push_back({Algebra::su11, alpha, {p.s1, p.t1, p.s2, p.t2}, slots});
      }
      return out;
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      std::vector<SymmetryDescriptor> out;
      for (Ladder alpha : {Ladder::raise, Ladder::lower, Ladder::diagonal}) {
        out.push_back({Algebra::su2,
                       alpha,
                       {Rational(p.gamma1), Rational(p.delta1), Rational(p.gamma2), Rational(p.delta2)},
                       slots});
      }
      return out;
    }
    case Family::rw:
      return {{Algebra::heisenberg, Ladder::raise, {1, 1, 1, 1}, slots},
              {Algebra::heisenberg, Ladder::lower, {1, 1, 1, 1}, slots}};
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      return {{Algebra::heisenberg, Ladder::raise, {1, p.q1, 1, p.q2}, slots},
              {Algebra::heisenberg, Ladder::lower, {1, 1, 1, 1}, slots}};
    }
  }
  throw ModelError("unknown family");
}

std::vector<SymmetryDescriptor> pair_symmetries(const ModelSpec& spec) {
  std::vector<SymmetryDescriptor> out;
  for (const auto& d : pocket_symmetries(spec)) out.push_back(lumped_symmetry(d, AdditionMap::pockets_to_pairs()));
  return out;
}

// ---------------------------------------------------------------------------
// Duality functions

Rational OneSiteDuality::operator()(long k, long n) const {
  if (k < 0 || n < 0) return 0;
  switch (family) {
    case Family::iem:
      if (k > n) return 0;
      return Rational(falling_factorial(n, k)) / rising_factorial(parameter, k);
    case Family::riem: {
      if (k == 0) return 1;
      const long r = parameter.get_num().get_si();
      if (k > n || n > r) return 0;
      Rational v(binomial(n, k), binomial(r, k));
      v.canonicalize();
      return v;
    }
    case Family::rw:
      if (k > n) return 0;
      return Rational(falling_factorial(n, k));
    case Family::piem:
      if (k > n) return 0;
      return Rational(falling_factorial(n, k)) / pow(1 + parameter, form == DualityForm::corrected ? k : n);
  }
  return 0;
}

double OneSiteDuality::value_float(long k, long n) const {
  double v = (*this)(k, n).get_d();
  if (family == Family::piem) v *= std::exp(1.0 + parameter.get_d());
  return v;
}

Rational DualityFunction::operator()(const State& k, const State& n) const {
  return site[0](k.at(0), n.at(0)) * site[1](k.at(1), n.at(1));
}

double DualityFunction::value_float(const State& k, const State& n) const {
  return site[0].value_float(k.at(0), n.at(0)) * site[1].value_float(k.at(1), n.at(1));
}

DualityFunction duality_function(const ModelSpec& spec, DualityForm form) {
  DualityFunction d;
  d.family = spec.family();
  for (int agent = 0; agent < 2; ++agent) {
    OneSiteDuality& site = d.site[agent];
    site.family = spec.family();
    site.form = form;
    switch (spec.family()) {
      case Family::iem: {
        const auto& p = spec.as<IemParams>();
        site.parameter = agent == 0 ? Rational(p.s1 + p.t1) : Rational(p.s2 + p.t2);
        break;
      }
      case Family::riem: {
        const auto& p = spec.as<RiemParams>();
        site.parameter = agent == 0 ? p.gamma1 + p.delta1 : p.gamma2 + p.delta2;
        break;
      }
      case Family::rw: break;
      case Family::piem: {
        const auto& p = spec.as<PiemParams>();
        site.parameter = agent == 0 ? p.q1 : p.q2;
        break;
      }
    }
  }
  if (!spec.exchange_symmetric()) {
    d.warning = spec.family() == Family::iem ? "s1 != s2: the self-duality hypothesis does not hold"
                                             : "gamma1 != gamma2: the self-duality hypothesis does not hold";
  }
  return d;
}

Rational cheap_duality_weight(const ModelSpec& spec, int agent, long n) {
  switch (spec.family()) {
    case Family::rw: return Rational(1) / Rational(factorial(n));
    default: return pair_weight(spec, agent, n);
  }
}

SymmetryDescriptor raising_symmetry(const ModelSpec& spec, int agent) {
  switch (spec.family()) {
    case Family::iem: {
      const auto& p = spec.as<IemParams>();
      return {Algebra::su11, Ladder::raise, {agent == 0 ? Rational(p.s1 + p.t1) : Rational(p.s2 + p.t2)}, {0}};
    }
    case Family::riem: {
      const auto& p = spec.as<RiemParams>();
      return {Algebra::su2, Ladder::raise, {Rational(agent == 0 ? p.gamma1 + p.delta1 : p.gamma2 + p.delta2)}, {0}};
    }
    case Family::rw: return {Algebra::heisenberg, Ladder::raise, {1}, {0}};
    case Family::piem: {
      const auto& p = spec.as<PiemParams>();
      return {Algebra::heisenberg, Ladder::raise, {1 + (agent == 0 ? p.q1 : p.q2)}, {0}};
    }
  }
  throw ModelError("unknown family");
}

}  // namespace exdyn
