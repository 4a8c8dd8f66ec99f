#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exdyn/models.hpp"

namespace exdyn {

enum class Verdict { pass, fail, partial };

std::string to_string(Verdict verdict);

struct Arithmetic {
  enum class Mode { exact, floating };
  Mode mode = Mode::exact;
  double tolerance = 1e-12;

  static Arithmetic exact() { return {}; }
  static Arithmetic floating(double tol = 1e-12) { return {Mode::floating, tol}; }
  bool is_exact() const noexcept { return mode == Mode::exact; }
};

/// Where a check failed: the states involved and the two sides of the identity.
struct Witness {
  long sector = 0;
  std::string row;
  std::string col;
  std::string lhs;
  std::string rhs;
  std::string note;
};

struct CheckReport {
  std::string name;
  /// Stable identifier of the statement checked, e.g. "self-duality/iem".
  std::string theorem;
  std::string model;
  long nmin = 0;
  long nmax = 0;
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  Arithmetic arithmetic;
  /// Sectors inside [nmin, nmax] that could not be evaluated (truncation boundary).
  std::vector<long> excluded;
  /// Number of scalar identities compared.
  std::size_t checked = 0;
  std::vector<std::string> notes;

  bool ok() const noexcept { return verdict != Verdict::fail; }
};

using Kernel = std::function<Rational(const State& k, const State& n)>;
using FloatKernel = std::function<double(const State& k, const State& n)>;

/// sum_m Pi(n->m) D(k,m) = sum_l Pi(k->l) D(l,n) for all pair states with
/// totals <= nmax.
CheckReport check_self_duality(const SectorOperator& pi, const DualityFunction& d, long nmax,
                               Arithmetic arithmetic = Arithmetic::exact());
CheckReport check_self_duality(const SectorOperator& pi, const Kernel& d, long nmax, std::string theorem);
CheckReport check_self_duality(const FloatSectorOperator& pi, const FloatKernel& d, long nmax, double tolerance,
                               std::string theorem);

/// mu(x) op(x->y) = mu(y) op(y->x) on every sector of op. ConditioningError
/// for a zero-mass state.
CheckReport check_detailed_balance(const SectorOperator& op, const Measure& mu, std::string theorem);

/// Rows of every block sum to exactly 1.
CheckReport check_stochastic(const SectorOperator& op, std::string theorem);

/// lhs = rhs block by block; sectors missing from either side are reported
/// as excluded and give a partial verdict.
CheckReport check_operator_identity(const SectorOperator& lhs, const SectorOperator& rhs, std::string name,
                                    std::string theorem);
CheckReport check_operator_identity(const FloatSectorOperator& lhs, const FloatSectorOperator& rhs, double tolerance,
                                    std::string name, std::string theorem);

/// [A, B] = C.
CheckReport check_commutation(const SectorOperator& a, const SectorOperator& b, const SectorOperator& c,
                              std::string name, std::string theorem);

/// S op = op S, with S allowed to shift sectors.
CheckReport check_symmetry(const SectorOperator& op, const SectorOperator& s, std::string theorem);

/// P = T_phi T_phi^{-1} with the mu-canonical inverse.
CheckReport check_projection_identity(const SectorOperator& p, const Measure& mu, std::string theorem);

/// [S, E] = 0 on the pocket sectors of S.
CheckReport check_exchange_commutation(const SectorOperator& s, std::string theorem);

/// B preserves functions of the pair sums.
CheckReport check_lumpability(const SectorOperator& b, const Measure& mu, SectorsPtr coarse, std::string theorem);

/// exp(raising symmetry) applied to the cheap duality delta_{k,n}/w(n) in
/// the k variable equals the closed-form d up to a per-agent constant, for
/// k, n <= nmax. Both agents are checked.
CheckReport check_constructive_duality(const ModelSpec& spec, long nmax, DualityForm form = DualityForm::corrected);

/// The cheap duality delta_{k,n}/mu(n) of the product weights is a self-duality of Pi.
CheckReport check_cheap_duality(const ModelSpec& spec, const SectorOperator& pi, long nmax);

/// Stationary law of the thermalising generator equals the split law, sectors 0..nmax, both agents.
CheckReport check_thermalization(const ModelSpec& spec, long nmax);

/// Single-site algebra relations: SU(1,1) for kappa, SU(2) for gamma, or
/// Heisenberg (param ignored), on sectors 0..nmax.
std::vector<CheckReport> check_algebra_relations(Algebra algebra, const Rational& param, long nmax);

enum class Suite { algebra, duality, reversibility, all };

Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

/// Runs every check of a suite for one model. Checks run on up to `jobs`
/// threads; the report order does not depend on `jobs`.
std::vector<CheckReport> run_suite(const ModelSpec& spec, long nmax, Suite suite,
                                   Arithmetic arithmetic = Arithmetic::exact(), unsigned jobs = 1);

/// Runs independent tasks on up to `jobs` threads, results in task order.
std::vector<CheckReport> run_tasks(const std::vector<std::function<CheckReport()>>& tasks, unsigned jobs);

}  // namespace exdyn
