#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exdyn/sector_operator.hpp"
#include "exdyn/statespace.hpp"

namespace exdyn {

/// Sum map from a fine space to a coarse one: coarse slot g is the sum of
/// the fine slots in groups[g]. The pocket-to-pair addition map uses
/// {{0,1},{2,3}}; the two-to-one lumping map uses {{0,1}}.
struct AdditionMap {
  std::vector<std::vector<int>> groups;

  static AdditionMap pockets_to_pairs() { return {{{0, 1}, {2, 3}}}; }
  static AdditionMap pair_to_single() { return {{{0, 1}}}; }

  State apply(const State& fine) const;
  int fine_arity() const;
};

/// (T f)(s) = f(phi(s)) for a function f on the coarse sector.
std::vector<Rational> lift_function(const std::function<Rational(const State&)>& f, const Sector& fine,
                                    const AdditionMap& map = AdditionMap::pockets_to_pairs());

/// Conditional expectation of g under mu given the fibres of phi, on the
/// coarse sector of the same total. Throws ConditioningError when a
/// non-empty fibre has zero mass.
std::vector<Rational> mu_canonical_inverse(const Measure& mu, long total, const std::vector<Rational>& g,
                                           const Sector& coarse,
                                           const AdditionMap& map = AdditionMap::pockets_to_pairs());

/// Matrix form of lift_function: rows on `fine`, columns on `coarse`.
SectorOperator lift_operator(SectorsPtr fine, SectorsPtr coarse,
                             const AdditionMap& map = AdditionMap::pockets_to_pairs());

/// Matrix form of mu_canonical_inverse: rows on `coarse`, columns on the
/// measure's (fine) sectors.
SectorOperator canonical_inverse_operator(const Measure& mu, SectorsPtr coarse,
                                          const AdditionMap& map = AdditionMap::pockets_to_pairs());

/// (E f)(s) = f(exchange(s)) on a four-pocket space. Throws CapacityError
/// when some swapped state leaves the space.
SectorOperator exchange_operator(SectorsPtr pockets);

/// Where lumpability fails: two fine states in the same fibre whose rows,
/// after lifting, differ on the indicator of `coarse_column`.
struct LumpWitness {
  long sector = 0;
  State fibre;
  State first;
  State second;
  State coarse_column;
  Rational first_value;
  Rational second_value;
};

struct LumpCertificate {
  bool lumpable = false;
  /// Row sectors actually examined.
  std::vector<long> sectors;
  std::optional<LumpWitness> witness;
};

struct LumpResult {
  /// T^{-1} B T; present only when B is lumpable.
  std::optional<SectorOperator> lumped;
  LumpCertificate certificate;
};

/// Lumps B (acting on the fine space) through the addition map: checks that
/// B maps lifted functions to lifted functions and returns T^{-1} B T with
/// T^{-1} canonical for `mu` (a measure on B's row sectors).
LumpResult lump_operator(const SectorOperator& b, const Measure& mu, SectorsPtr coarse_rows, SectorsPtr coarse_cols,
                         const AdditionMap& map = AdditionMap::pockets_to_pairs());

/// Same, with the counting measure (the lumped operator does not depend on
/// the measure when B is lumpable).
LumpResult lump_operator(const SectorOperator& b, SectorsPtr coarse_rows, SectorsPtr coarse_cols,
                         const AdditionMap& map = AdditionMap::pockets_to_pairs());

}  // namespace exdyn
