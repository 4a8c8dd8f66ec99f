#pragma once

#include <string>
#include <vector>

#include "exdyn/lumping.hpp"
#include "exdyn/sector_operator.hpp"

namespace exdyn {

enum class Algebra { su11, su2, heisenberg };

/// Raising (+), lowering (-) or diagonal (0) generator. For the Heisenberg
/// algebra raise is the creation operator a^dag and lower is a.
enum class Ladder { raise, lower, diagonal };

/// Which J^+ to build: `forward` reads f(n+1) and satisfies the SU(2)
/// relations; `verbatim` reads f(n-1) and is kept only for comparison.
enum class JVariant { forward, verbatim };

std::string to_string(Algebra algebra);
std::string to_string(Ladder alpha);

/// Sector shift of a generator: -1 for raising (reads n+1), +1 for lowering.
int ladder_shift(Ladder alpha);

/// K^{+,k} f(n) = (k+n) f(n+1), K^{-,k} f(n) = n f(n-1), K^{0,k} f(n) = (k/2+n) f(n),
/// acting on `slot` of every sector in `sectors`. Throws ParameterError for k <= 0.
SectorOperator k_operator(Ladder alpha, const Rational& kappa, int slot, SectorsPtr sectors);

/// J^{+,g} f(n) = (g-n) f(n+1), J^{-,g} f(n) = n f(n-1), J^{0,g} f(n) = (g/2-n) f(n).
/// The slot must be capped at no more than g (CapacityError otherwise).
SectorOperator j_operator(Ladder alpha, long gamma, int slot, SectorsPtr sectors,
                          JVariant variant = JVariant::forward);

/// c a^dag f(n) = c f(n+1) (raise) or c a f(n) = c n f(n-1) (lower).
SectorOperator ladder_operator(Ladder alpha, int slot, SectorsPtr sectors, const Rational& coefficient = 1);

/// Exact sum of operators on the same state space. ShapeError on mixed
/// spaces or shifts, or an empty list.
SectorOperator site_sum(const std::vector<SectorOperator>& terms);

/// A sum of single-slot generators of one algebra with a common alpha:
/// sum_i X^{alpha, params[i]} acting on slots[i]. For SU(1,1) the
/// parameters are the representation labels kappa, for SU(2) the integer
/// capacities, and for the Heisenberg algebra the per-slot coefficients.
struct SymmetryDescriptor {
  Algebra algebra = Algebra::su11;
  Ladder alpha = Ladder::raise;
  std::vector<Rational> params;
  std::vector<int> slots;

  std::string to_string() const;
};

/// Merges single-slot descriptors into one. DescriptorError when the
/// algebra or alpha differ between terms, or a slot repeats.
SymmetryDescriptor combine_terms(const std::vector<SymmetryDescriptor>& terms);

SectorOperator build_symmetry(const SymmetryDescriptor& descriptor, SectorsPtr sectors);

/// The generator a descriptor becomes on the summed variables: parameters
/// add within each group (kappa_1 + kappa_2, gamma_1 + gamma_2, and the
/// creation coefficients), while annihilation operators lump only with
/// equal coefficients. Every slot of each group must be covered.
SymmetryDescriptor lumped_symmetry(const SymmetryDescriptor& descriptor,
                                   const AdditionMap& map = AdditionMap::pair_to_single());

}  // namespace exdyn
