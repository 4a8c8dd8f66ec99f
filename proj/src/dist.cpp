#include "exdyn/dist.hpp"

#include <algorithm>
#include <cmath>

#include "exdyn/errors.hpp"

namespace exdyn {

Rational Pmf::operator()(long state) const {
  auto it = std::find(support.begin(), support.end(), state);
  if (it == support.end()) return 0;
  return mass[static_cast<std::size_t>(it - support.begin())];
}

Rational Pmf::total() const {
  Rational s(0);
  for (const auto& m : mass) s += m;
  return s;
}

Pmf beta_binomial_pmf(long n, const Rational& s, const Rational& t) {
  if (n < 0) throw ParameterError("beta-binomial: negative n");
  if (sgn(s) <= 0 || sgn(t) <= 0) throw ParameterError("beta-binomial: shape parameters must be positive");
  Pmf pmf;
  const Rational denom = rising_factorial(s + t, n);
  for (long k = 0; k <= n; ++k) {
    pmf.support.push_back(k);
    pmf.mass.push_back(Rational(binomial(n, k)) * rising_factorial(s, k) * rising_factorial(t, n - k) / denom);
  }
  return pmf;
}

Pmf hypergeometric_pmf(long n, long gamma, long delta) {
  if (gamma < 0 || delta < 0) throw ParameterError("hypergeometric: negative capacity");
  if (n < 0) throw ParameterError("hypergeometric: negative n");
  if (n > gamma + delta) {
    throw CapacityError("hypergeometric: " + std::to_string(n) + " coins exceed capacities " +
                        std::to_string(gamma) + "+" + std::to_string(delta));
  }
  Pmf pmf;
  const Integer denom = binomial(gamma + delta, n);
  for (long m = 0; m <= std::min(n, gamma); ++m) {
    pmf.support.push_back(m);
    Rational p(binomial(gamma, m) * binomial(delta, n - m), denom);
    p.canonicalize();
    pmf.mass.push_back(p);
  }
  return pmf;
}

Pmf binomial_pmf(long n, const Rational& p) {
  if (n < 0) throw ParameterError("binomial: negative n");
  if (sgn(p) < 0 || p > 1) throw ParameterError("binomial: success probability outside [0,1]");
  Pmf pmf;
  const Rational q = 1 - p;
  for (long k = 0; k <= n; ++k) {
    pmf.support.push_back(k);
    pmf.mass.push_back(Rational(binomial(n, k)) * pow(p, k) * pow(q, n - k));
  }
  return pmf;
}

namespace {

void check_gamma_params(const Rational& beta, const Rational& lambda) {
  if (sgn(beta) <= 0) throw ParameterError("discrete Gamma: beta must be positive");
  if (sgn(lambda) <= 0 || lambda >= 1) throw ParameterError("discrete Gamma: lambda must lie in (0,1)");
}

}  // namespace

Rational discrete_gamma_weight(const Rational& beta, const Rational& lambda, long n) {
  return pow(lambda, n) * rising_factorial(beta, n) / Rational(factorial(n));
}

Pmf discrete_gamma_pmf(const Rational& beta, const Rational& lambda, long nmax) {
  check_gamma_params(beta, lambda);
  if (!is_integer(beta)) {
    throw ParameterError("discrete Gamma: exact normalisation needs an integer beta; use the float variant");
  }
  if (nmax < 0) throw ParameterError("discrete Gamma: negative truncation");
  const Rational norm = pow(1 - lambda, beta.get_num().get_si());
  Pmf pmf;
  Rational sum(0);
  for (long n = 0; n <= nmax; ++n) {
    pmf.support.push_back(n);
    pmf.mass.push_back(norm * discrete_gamma_weight(beta, lambda, n));
    sum += pmf.mass.back();
  }
  pmf.tail = 1 - sum;
  return pmf;
}

FloatPmf discrete_gamma_pmf_float(double beta, double lambda, long nmax) {
  if (!(beta > 0)) throw ParameterError("discrete Gamma: beta must be positive");
  if (!(lambda > 0 && lambda < 1)) throw ParameterError("discrete Gamma: lambda must lie in (0,1)");
  FloatPmf pmf;
  double sum = 0;
  // log-space keeps large n stable: log w(n) = n log(lambda) + lgamma(n+beta) - lgamma(beta) - lgamma(n+1)
  const double log_norm = beta * std::log1p(-lambda);
  for (long n = 0; n <= nmax; ++n) {
    const double dn = static_cast<double>(n);
    const double logw = dn * std::log(lambda) + std::lgamma(dn + beta) - std::lgamma(beta) - std::lgamma(dn + 1);
    pmf.support.push_back(n);
    pmf.mass.push_back(std::exp(log_norm + logw));
    sum += pmf.mass.back();
  }
  pmf.tail = std::max(0.0, 1 - sum);
  return pmf;
}

double discrete_gamma2_tail_bound(double lambda, long nmax) {
  return std::pow(lambda, static_cast<double>(nmax)) * static_cast<double>(nmax + 2) / ((1 - lambda) * (1 - lambda));
}

Rational poisson_weight(const Rational& lambda, long n) {
  if (sgn(lambda) <= 0) throw ParameterError("Poisson: rate must be positive");
  return pow(lambda, n) / Rational(factorial(n));
}

Pmf condition_on_sum(const std::function<Rational(long)>& wx, const std::function<Rational(long)>& wy, long total) {
  if (total < 0) throw ParameterError("condition_on_sum: negative total");
  Pmf pmf;
  Rational z(0);
  for (long k = 0; k <= total; ++k) {
    pmf.support.push_back(k);
    pmf.mass.push_back(wx(k) * wy(total - k));
    z += pmf.mass.back();
  }
  if (sgn(z) == 0) throw ConditioningError("condition_on_sum: the sum event has zero mass");
  for (auto& m : pmf.mass) m /= z;
  return pmf;
}

std::vector<double> cumulative(const Pmf& pmf) {
  std::vector<double> cdf;
  cdf.reserve(pmf.size());
  Rational acc(0);
  for (const auto& m : pmf.mass) {
    acc += m;
    cdf.push_back(acc.get_d());
  }
  return cdf;
}

long sample_cumulative(const std::vector<long>& support, const std::vector<double>& cdf, CounterRng& rng) {
  const double u = rng.uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  // upper_bound never lands on a zero-mass state: its cdf equals its predecessor's
  if (it == cdf.end()) --it;
  return support[static_cast<std::size_t>(it - cdf.begin())];
}

long sample(const Pmf& pmf, CounterRng& rng) {
  if (pmf.size() == 0) throw ParameterError("sample: empty pmf");
  return sample_cumulative(pmf.support, cumulative(pmf), rng);
}

}  // namespace exdyn
