#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exdyn/rational.hpp"

namespace exdyn {

/// A configuration of `arity` non-negative integer slots.
using State = std::vector<long>;

std::string to_string(const State& state);

/// Two agents' wealths.
struct PairState {
  long n1 = 0;
  long n2 = 0;
  State to_state() const { return {n1, n2}; }
  friend bool operator==(const PairState&, const PairState&) = default;
};

/// Four pockets: agent 1 top/bottom, agent 2 top/bottom.
struct PocketState {
  long n11 = 0;
  long n12 = 0;
  long n21 = 0;
  long n22 = 0;
  State to_state() const { return {n11, n12, n21, n22}; }
  static PocketState from_state(const State& s);
  friend bool operator==(const PocketState&, const PocketState&) = default;
};

/// Swaps the two top pockets: (n11,n12;n21,n22) -> (n21,n12;n11,n22).
PocketState exchange_map(const PocketState& s);

/// Adds each agent's pockets: (n11,n12;n21,n22) -> (n11+n12, n21+n22).
PairState addition_map(const PocketState& s);

/// The slots of a product state space, optionally with per-slot capacities.
struct StateSpace {
  int arity = 0;
  /// Empty for an unbounded space, otherwise one capacity per slot.
  std::vector<long> capacity;

  static StateSpace unbounded(int arity) { return {arity, {}}; }
  static StateSpace bounded(std::vector<long> caps) { return {static_cast<int>(caps.size()), std::move(caps)}; }

  bool bounded() const noexcept { return !capacity.empty(); }
  bool contains(const State& s) const;
  friend bool operator==(const StateSpace&, const StateSpace&) = default;
};

std::string to_string(const StateSpace& space);

/// All states of a space with a fixed total, in lexicographic order.
class Sector {
 public:
  Sector(StateSpace space, long total);

  long total() const noexcept { return total_; }
  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return states_.size(); }
  const State& state(std::size_t i) const { return states_.at(i); }
  const std::vector<State>& states() const noexcept { return states_; }
  std::optional<std::size_t> find(const State& s) const;
  /// Like find() but throws CapacityError for states outside the sector.
  std::size_t index(const State& s) const;

 private:
  StateSpace space_;
  long total_;
  std::vector<State> states_;
  std::map<State, std::size_t> index_;
};

/// Sectors 0..nmax of one state space. Negative totals resolve to an empty
/// sector; totals above nmax are outside the truncation and throw.
class Sectors {
 public:
  Sectors(StateSpace space, long nmax);

  const StateSpace& space() const noexcept { return space_; }
  long nmax() const noexcept { return nmax_; }
  bool contains(long total) const noexcept { return total <= nmax_; }
  const Sector& at(long total) const;

 private:
  StateSpace space_;
  long nmax_;
  std::vector<Sector> sectors_;
  Sector empty_;
};

using SectorsPtr = std::shared_ptr<const Sectors>;

SectorsPtr make_sectors(StateSpace space, long nmax);

/// A function on every sector of a space, stored densely per sector in the
/// sector's canonical order.
using SectorFunction = std::map<long, std::vector<Rational>>;

/// A probability measure restricted to each sector of a space and
/// renormalised there (the sector-conditioned form of a product measure).
class Measure {
 public:
  Measure(SectorsPtr sectors, std::map<long, std::vector<Rational>> weights);

  /// Product of per-slot weights w(slot, n), normalised on every sector.
  /// Sectors of zero total weight are left all-zero.
  static Measure product(SectorsPtr sectors, const std::function<Rational(int slot, long n)>& slot_weight);

  /// Counting measure normalised per sector.
  static Measure uniform(SectorsPtr sectors);

  const SectorsPtr& sectors() const noexcept { return sectors_; }
  const std::vector<Rational>& on(long total) const;
  Rational at(long total, const State& s) const;

 private:
  SectorsPtr sectors_;
  std::map<long, std::vector<Rational>> weights_;
};

}  // namespace exdyn
