#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "exdyn/algebra.hpp"
#include "exdyn/dist.hpp"
#include "exdyn/lumping.hpp"
#include "exdyn/sector_operator.hpp"

namespace exdyn {

/// Beta-binomial splitting (thermalised SIP(s_i, t_i) per agent).
struct IemParams {
  Rational s1, t1, s2, t2;
};

/// Hypergeometric splitting into pockets of capacities gamma_i, delta_i
/// (thermalised SEP).
struct RiemParams {
  long gamma1, delta1, gamma2, delta2;
};

/// Binomial(n, 1/2) splitting (thermalised symmetric random walkers).
struct RwParams {};

/// Binomial(n, 1/(1+q_i)) splitting (thermalised asymmetric walkers).
struct PiemParams {
  Rational q1, q2;
};

enum class Family { iem, riem, rw, piem };

/// "iem", "riem", "rw", "piem".
std::string to_string(Family family);

class ModelSpec {
 public:
  using Params = std::variant<IemParams, RiemParams, RwParams, PiemParams>;

  explicit ModelSpec(Params params);

  static ModelSpec iem(Rational s1, Rational t1, Rational s2, Rational t2);
  static ModelSpec riem(long gamma1, long delta1, long gamma2, long delta2);
  static ModelSpec rw();
  static ModelSpec piem(Rational q1, Rational q2);

  Family family() const;
  const Params& params() const noexcept { return params_; }

  template <class P>
  const P& as() const {
    return std::get<P>(params_);
  }

  /// Both agents split with the same law.
  bool symmetric() const;

  /// The self-duality hypothesis: s1 = s2 for IEM, gamma1 = gamma2 for RIEM.
  bool exchange_symmetric() const;

  std::string to_string() const;

 private:
  Params params_;
};

/// Parses "IEM(s1,t1;s2,t2)", "IEM(s,t)" (both agents alike), "RIEM(g1,d1;g2,d2)",
/// "RW", "PIEM(q1,q2)". Numbers are exact ("3/2" or "1.5"). Throws ParameterError.
ModelSpec parse_model_spec(std::string_view text);

/// Law of the top part k given wealth n of agent 0 or 1.
Pmf split_law(const ModelSpec& spec, int agent, long n);

/// Four-pocket space (capped for RIEM).
StateSpace pocket_space(const ModelSpec& spec);
/// Two-agent space (capped at gamma_i + delta_i for RIEM).
StateSpace pair_space(const ModelSpec& spec);

/// Unnormalised stationary weight of `n` units in pocket `slot` (0..3):
/// discrete Gamma for IEM, C(cap, n) for RIEM, Poisson for RW/PIEM.
Rational pocket_weight(const ModelSpec& spec, int slot, long n);
/// Unnormalised weight of agent `agent` holding n units under the image
/// (summed) measure.
Rational pair_weight(const ModelSpec& spec, int agent, long n);

Measure pocket_stationary_measure(const ModelSpec& spec, SectorsPtr pockets);
Measure pair_stationary_measure(const ModelSpec& spec, SectorsPtr pairs);

/// P f(s) = E f(split(phi(s))), on the pocket sectors 0..nmax.
SectorOperator redistribution_operator(const ModelSpec& spec, long nmax);

/// Pi = T^{-1} P E T, assembled from the structural operators. Throws
/// CapacityError when an exchange leaves the pocket capacities.
SectorOperator transition_operator(const ModelSpec& spec, long nmax);

/// Pi by enumerating split, exchange and addition directly.
SectorOperator transition_operator_direct(const ModelSpec& spec, long nmax);

/// L = Pi - 1.
SectorOperator generator(const ModelSpec& spec, long nmax);

/// Two-site SIP(s,t): (n,m) -> (n-1,m+1) at rate n(t+m), -> (n+1,m-1) at rate m(s+n).
SectorOperator sip_generator(const Rational& s, const Rational& t, long nmax);

/// The same built from K operators: K1^+ K2^- + K1^- K2^+ - 2 K1^0 K2^0 + st/2.
SectorOperator sip_generator_abstract(const Rational& s, const Rational& t, long nmax);

/// The literal jump (n,m) -> (n-1,m-1) does not conserve mass; this returns
/// its two parts: the mass-conserving part and the part reading sector N-2.
std::pair<SectorOperator, SectorOperator> sip_generator_verbatim_parts(const Rational& s, const Rational& t,
                                                                       long nmax);

/// Two-site exclusion process with capacities gamma, delta:
/// (n,m) -> (n-1,m+1) at rate n(delta-m), -> (n+1,m-1) at rate m(gamma-n).
SectorOperator sep_generator(long gamma, long delta, long nmax);

/// Independent walkers, 1 -> 2 at rate q per walker, 2 -> 1 at rate 1.
SectorOperator rw_generator(const Rational& q, long nmax);

/// -(q a1 - a2)(a1^dag - a2^dag), equal to rw_generator(q).
SectorOperator rw_generator_factorized(const Rational& q, long nmax);

/// -(a1 - a2)(a1^dag - q a2^dag); only a generator when q = 1.
SectorOperator rw_generator_factorized_verbatim(const Rational& q, long nmax);

/// Stationary law on sector N of a mass-conserving two-site generator, as a
/// pmf of the first coordinate. Exact null-space solve of pi L = 0.
/// MultiplicityError when the sector is reducible.
Pmf thermalize(const SectorOperator& gen, long total);

/// The two-site generator whose thermalisation gives agent `agent`'s split law.
SectorOperator thermalizing_generator(const ModelSpec& spec, int agent, long nmax);

/// Generators commuting with P on the four pockets (one per alpha).
std::vector<SymmetryDescriptor> pocket_symmetries(const ModelSpec& spec);

/// The lumped generators commuting with Pi on the pair space.
std::vector<SymmetryDescriptor> pair_symmetries(const ModelSpec& spec);

/// Which PIEM one-site factor to use: `corrected` uses (1+q)^{-k}, the
/// form that satisfies self-duality for q1 != q2; `verbatim` uses (1+q)^{-n}.
enum class DualityForm { corrected, verbatim };

/// One-site duality factor d(k, n).
struct OneSiteDuality {
  Family family = Family::iem;
  /// Representation parameter r (IEM: s+t, RIEM: gamma+delta) or q (PIEM).
  Rational parameter{0};
  DualityForm form = DualityForm::corrected;

  Rational operator()(long k, long n) const;
  /// Floating-point value; for PIEM includes the constant e^{1+q}.
  double value_float(long k, long n) const;
};

/// D(k1,k2; n1,n2) = d_1(k1, n1) d_2(k2, n2).
struct DualityFunction {
  Family family = Family::iem;
  OneSiteDuality site[2];
  /// Set when the model violates the self-duality hypothesis.
  std::optional<std::string> warning;

  Rational operator()(const State& k, const State& n) const;
  double value_float(const State& k, const State& n) const;
};

DualityFunction duality_function(const ModelSpec& spec, DualityForm form = DualityForm::corrected);

/// Unnormalised reversible weight w(n) of one agent under Pi; the cheap
/// self-duality is delta_{k,n} / w(n).
Rational cheap_duality_weight(const ModelSpec& spec, int agent, long n);

/// The single-site raising symmetry whose exponential turns the cheap
/// duality into d for agent `agent`.
SymmetryDescriptor raising_symmetry(const ModelSpec& spec, int agent);

}  // namespace exdyn
