#include "exdyn/statespace.hpp"

#include <numeric>

#include "exdyn/errors.hpp"
#include "exdyn/lumping.hpp"

namespace exdyn {

std::string to_string(const State& state) {
  std::string out = "(";
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(state[i]);
  }
  return out + ")";
}

PocketState PocketState::from_state(const State& s) {
  if (s.size() != 4) throw ShapeError("pocket state needs four slots, got " + to_string(s));
  return {s[0], s[1], s[2], s[3]};
}

PocketState exchange_map(const PocketState& s) { return {s.n21, s.n12, s.n11, s.n22}; }

PairState addition_map(const PocketState& s) { return {s.n11 + s.n12, s.n21 + s.n22}; }

bool StateSpace::contains(const State& s) const {
  if (static_cast<int>(s.size()) != arity) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) return false;
    if (bounded() && s[i] > capacity[i]) return false;
  }
  return true;
}

std::string to_string(const StateSpace& space) {
  std::string out = "N^" + std::to_string(space.arity);
  if (space.bounded()) out += " capped at " + to_string(State(space.capacity));
  return out;
}

namespace {

void enumerate(const StateSpace& space, long remaining, State& prefix, std::vector<State>& out) {
  const std::size_t slot = prefix.size();
  if (slot + 1 == static_cast<std::size_t>(space.arity)) {
    if (space.bounded() && remaining > space.capacity[slot]) return;
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const long cap = space.bounded() ? std::min(remaining, space.capacity[slot]) : remaining;
  for (long v = 0; v <= cap; ++v) {
    prefix.push_back(v);
    enumerate(space, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Sector::Sector(StateSpace space, long total) : space_(std::move(space)), total_(total) {
  if (space_.arity <= 0) throw ShapeError("state space needs at least one slot");
  if (space_.bounded() && static_cast<int>(space_.capacity.size()) != space_.arity) {
    throw ShapeError("capacity list does not match the arity");
  }
  if (total_ < 0) return;
  State prefix;
  enumerate(space_, total_, prefix, states_);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::optional<std::size_t> Sector::find(const State& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Sector::index(const State& s) const {
  auto i = find(s);
  if (!i) throw CapacityError("state " + to_string(s) + " is not in sector " + std::to_string(total_));
  return *i;
}

Sectors::Sectors(StateSpace space, long nmax) : space_(space), nmax_(nmax), empty_(space, -1) {
  if (nmax < 0) throw ParameterError("sector range needs nmax >= 0");
  sectors_.reserve(static_cast<std::size_t>(nmax + 1));
  for (long n = 0; n <= nmax; ++n) sectors_.emplace_back(space, n);
}

const Sector& Sectors::at(long total) const {
  if (total < 0) return empty_;
  if (total > nmax_) {
    throw ShapeError("sector " + std::to_string(total) + " is beyond the truncation " + std::to_string(nmax_));
  }
  return sectors_[static_cast<std::size_t>(total)];
}

SectorsPtr make_sectors(StateSpace space, long nmax) { return std::make_shared<const Sectors>(std::move(space), nmax); }

Measure::Measure(SectorsPtr sectors, std::map<long, std::vector<Rational>> weights)
    : sectors_(std::move(sectors)), weights_(std::move(weights)) {
  for (const auto& [n, w] : weights_) {
    if (w.size() != sectors_->at(n).size()) throw ShapeError("measure weights do not match sector size");
    for (const auto& x : w) {
      if (sgn(x) < 0) throw ParameterError("measure weights must be non-negative");
    }
  }
}

Measure Measure::product(SectorsPtr sectors, const std::function<Rational(int, long)>& slot_weight) {
  std::map<long, std::vector<Rational>> weights;
  for (long n = 0; n <= sectors->nmax(); ++n) {
    const Sector& sector = sectors->at(n);
    std::vector<Rational> w;
    w.reserve(sector.size());
    Rational z(0);
    for (const State& s : sector.states()) {
      Rational x(1);
      for (std::size_t slot = 0; slot < s.size(); ++slot) x *= slot_weight(static_cast<int>(slot), s[slot]);
      z += x;
      w.push_back(x);
    }
    if (sgn(z) != 0) {
      for (auto& x : w) x /= z;
    }
    weights.emplace(n, std::move(w));
  }
  return Measure(std::move(sectors), std::move(weights));
}

Measure Measure::uniform(SectorsPtr sectors) {
  return product(std::move(sectors), [](int, long) { return Rational(1); });
}

const std::vector<Rational>& Measure::on(long total) const {
  auto it = weights_.find(total);
  if (it == weights_.end()) throw ShapeError("measure has no sector " + std::to_string(total));
  return it->second;
}

Rational Measure::at(long total, const State& s) const { return on(total)[sectors_->at(total).index(s)]; }

// ---------------------------------------------------------------------------
// Addition map, lifting and the canonical inverse

State AdditionMap::apply(const State& fine) const {
  State coarse(groups.size(), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int slot : groups[g]) coarse[g] += fine.at(static_cast<std::size_t>(slot));
  }
  return coarse;
}

int AdditionMap::fine_arity() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

std::vector<Rational> lift_function(const std::function<Rational(const State&)>& f, const Sector& fine,
                                    const AdditionMap& map) {
  std::vector<Rational> out;
  out.reserve(fine.size());
  for (const State& s : fine.states()) out.push_back(f(map.apply(s)));
  return out;
}

std::vector<Rational> mu_canonical_inverse(const Measure& mu, long total, const std::vector<Rational>& g,
                                           const Sector& coarse, const AdditionMap& map) {
  const Sector& fine = mu.sectors()->at(total);
  const auto& w = mu.on(total);
  if (g.size() != fine.size()) throw ShapeError("function does not match the sector size");
  std::vector<Rational> num(coarse.size(), Rational(0));
  std::vector<Rational> den(coarse.size(), Rational(0));
  std::vector<char> reached(coarse.size(), 0);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const auto y = coarse.index(map.apply(fine.state(i)));
    reached[y] = 1;
    num[y] += w[i] * g[i];
    den[y] += w[i];
  }
  for (std::size_t y = 0; y < coarse.size(); ++y) {
    if (!reached[y]) continue;
    if (sgn(den[y]) == 0) {
      throw ConditioningError("fibre over " + to_string(coarse.state(y)) + " has zero mass");
    }
    num[y] /= den[y];
  }
  return num;
}

SectorOperator lift_operator(SectorsPtr fine, SectorsPtr coarse, const AdditionMap& map) {
  if (map.fine_arity() != fine->space().arity || static_cast<int>(map.groups.size()) != coarse->space().arity) {
    throw ShapeError("addition map does not match the state spaces");
  }
  return SectorOperator::from_action(fine, coarse, 0, [&](const State& s, const auto& emit) {
    emit(map.apply(s), Rational(1));
  });
}

SectorOperator canonical_inverse_operator(const Measure& mu, SectorsPtr coarse, const AdditionMap& map) {
  const SectorsPtr& fine = mu.sectors();
  if (map.fine_arity() != fine->space().arity || static_cast<int>(map.groups.size()) != coarse->space().arity) {
    throw ShapeError("addition map does not match the state spaces");
  }
  SectorOperator op = SectorOperator::zeros(coarse, fine, 0);
  for (auto n : op.sectors()) {
    const Sector& fs = fine->at(n);
    const Sector& cs = coarse->at(n);
    const auto& w = mu.on(n);
    std::vector<Rational> fibre_mass(cs.size(), Rational(0));
    std::vector<char> reached(cs.size(), 0);
    std::vector<std::size_t> target(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      target[i] = cs.index(map.apply(fs.state(i)));
      reached[target[i]] = 1;
      fibre_mass[target[i]] += w[i];
    }
    for (std::size_t y = 0; y < cs.size(); ++y) {
      if (reached[y] && sgn(fibre_mass[y]) == 0) {
        throw ConditioningError("fibre over " + to_string(cs.state(y)) + " has zero mass");
      }
    }
    auto& block = op.block(n);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (sgn(w[i]) != 0) block.add(target[i], i, w[i] / fibre_mass[target[i]]);
    }
  }
  return op;
}

SectorOperator exchange_operator(SectorsPtr pockets) {
  if (pockets->space().arity != 4) throw ShapeError("the exchange map acts on four-pocket states");
  return SectorOperator::from_action(pockets, pockets, 0, [](const State& s, const auto& emit) {
    emit(exchange_map(PocketState::from_state(s)).to_state(), Rational(1));
  });
}

// ---------------------------------------------------------------------------
// Lumping

LumpResult lump_operator(const SectorOperator& b, const Measure& mu, SectorsPtr coarse_rows, SectorsPtr coarse_cols,
                         const AdditionMap& map) {
  if (!(mu.sectors()->space() == b.rows()->space())) throw ShapeError("measure and operator rows differ");
  const SectorOperator lifted = b * lift_operator(b.cols(), coarse_cols, map);

  LumpResult result;
  result.certificate.lumpable = true;
  for (const auto& [n, block] : lifted.blocks()) {
    if (!coarse_rows->contains(n)) continue;
    result.certificate.sectors.push_back(n);
    const Sector& fine = b.rows()->at(n);
    const Sector& coarse = coarse_rows->at(n);
    const Sector& coarse_col_sector = coarse_cols->at(n - lifted.shift());
    std::vector<long> representative(coarse.size(), -1);
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const auto y = coarse.index(map.apply(fine.state(i)));
      if (representative[y] < 0) {
        representative[y] = static_cast<long>(i);
        continue;
      }
      const auto first = static_cast<std::size_t>(representative[y]);
      SparseMatrix<Rational> a(1, block.cols());
      SparseMatrix<Rational> c(1, block.cols());
      for (const auto& [col, v] : block.row(first)) a.add(0, col, v);
      for (const auto& [col, v] : block.row(i)) c.add(0, col, v);
      if (auto diff = first_difference(a, c)) {
        result.certificate.lumpable = false;
        result.certificate.witness =
            LumpWitness{n, coarse.state(y), fine.state(first), fine.state(i), coarse_col_sector.state(diff->col),
                        diff->lhs, diff->rhs};
        return result;
      }
    }
  }
  result.lumped = canonical_inverse_operator(mu, coarse_rows, map) * lifted;
  return result;
}

LumpResult lump_operator(const SectorOperator& b, SectorsPtr coarse_rows, SectorsPtr coarse_cols,
                         const AdditionMap& map) {
  return lump_operator(b, Measure::uniform(b.rows()), std::move(coarse_rows), std::move(coarse_cols), map);
}

}  // namespace exdyn
