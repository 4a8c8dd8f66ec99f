#pragma once

#include <functional>
#include <vector>

#include "exdyn/random.hpp"
#include "exdyn/rational.hpp"

namespace exdyn {

/// Exact probability mass function on a finite integer support. `tail` is
/// the exact mass lost to truncation (zero for untruncated laws), so the
/// masses always sum to 1 - tail.
struct Pmf {
  std::vector<long> support;
  std::vector<Rational> mass;
  Rational tail{0};

  std::size_t size() const noexcept { return support.size(); }
  /// Mass at `state`, zero off the support.
  Rational operator()(long state) const;
  Rational total() const;
};

/// Floating-point counterpart, used for non-integer shape parameters.
struct FloatPmf {
  std::vector<long> support;
  std::vector<double> mass;
  double tail = 0.0;
};

/// C(n,k) (s)_k (t)_{n-k} / (s+t)_n on {0..n}.
Pmf beta_binomial_pmf(long n, const Rational& s, const Rational& t);

/// C(gamma,m) C(delta,n-m) / C(gamma+delta,n) on {0..min(n,gamma)}.
Pmf hypergeometric_pmf(long n, long gamma, long delta);

/// C(n,k) p^k (1-p)^{n-k} on {0..n}.
Pmf binomial_pmf(long n, const Rational& p);

/// Unnormalised discrete Gamma weight lambda^n (beta)_n / n!.
Rational discrete_gamma_weight(const Rational& beta, const Rational& lambda, long n);

/// Discrete Gamma(beta, lambda) truncated to {0..nmax}. Requires an integer
/// beta so that the normaliser (1-lambda)^beta stays rational; the returned
/// tail is the exact missing mass.
Pmf discrete_gamma_pmf(const Rational& beta, const Rational& lambda, long nmax);

/// Floating-point discrete Gamma for arbitrary beta > 0.
FloatPmf discrete_gamma_pmf_float(double beta, double lambda, long nmax);

/// Upper bound on the discrete Gamma(2, lambda) mass beyond nmax:
/// lambda^nmax (nmax+2) / (1-lambda)^2.
double discrete_gamma2_tail_bound(double lambda, long nmax);

/// Unnormalised Poisson weight lambda^n / n! (the e^{-lambda} factor is
/// irrational and cancels in every conditioning we perform).
Rational poisson_weight(const Rational& lambda, long n);

/// Law of X given X + Y = total, for independent X, Y with unnormalised
/// weights wx, wy. Throws ConditioningError when the event has zero mass.
Pmf condition_on_sum(const std::function<Rational(long)>& wx, const std::function<Rational(long)>& wy,
                     long total);

/// Inverse-CDF draw; deterministic for a given generator state.
long sample(const Pmf& pmf, CounterRng& rng);

/// Cumulative distribution in double precision, for repeated sampling.
std::vector<double> cumulative(const Pmf& pmf);
long sample_cumulative(const std::vector<long>& support, const std::vector<double>& cdf, CounterRng& rng);

}  // namespace exdyn
