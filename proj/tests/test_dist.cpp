#include "doctest.h"
#include "exdyn/dist.hpp"
#include "exdyn/errors.hpp"
#include "oracle.hpp"

using namespace exdyn;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/2") == make_rational(3, 2));
  CHECK(parse_rational("1.25") == make_rational(5, 4));
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK_THROWS_AS(make_rational(1, 0), ParameterError);
}

TEST_CASE("combinatorial helpers") {
  CHECK(rising_factorial(make_rational(3, 2), 0) == 1);
  CHECK(rising_factorial(make_rational(3, 2), 2) == make_rational(15, 4));
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(2, 3) == 0);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(3, 5) == 0);
  CHECK(factorial(0) == 1);
}

TEST_CASE("beta-binomial against hand values and the oracle") {
  const Pmf p = beta_binomial_pmf(2, 2, 2);
  CHECK(p(1) == make_rational(2, 5));
  CHECK(p(0) == make_rational(3, 10));
  CHECK(p.total() == 1);
  CHECK(p.tail == 0);
  for (long n = 0; n <= 9; ++n) {
    const Pmf q = beta_binomial_pmf(n, make_rational(3, 2), make_rational(1, 2));
    CHECK(q.total() == 1);
    for (long k = 0; k <= n; ++k) CHECK(q(k) == oracle::beta_binomial(n, make_rational(3, 2), make_rational(1, 2), k));
  }
  CHECK(p(5) == 0);
  CHECK(p(-1) == 0);
  CHECK_THROWS_AS(beta_binomial_pmf(2, 0, 1), ParameterError);
}

TEST_CASE("hypergeometric") {
  CHECK(hypergeometric_pmf(2, 2, 2)(1) == make_rational(2, 3));
  const Pmf p = hypergeometric_pmf(3, 2, 1);
  CHECK(p.total() == 1);
  CHECK(p(2) == Rational(1));
  for (long n = 0; n <= 5; ++n) {
    const Pmf q = hypergeometric_pmf(n, 3, 2);
    CHECK(q.total() == 1);
    for (long k = 0; k <= n; ++k) CHECK(q(k) == oracle::hypergeometric(n, 3, 2, k));
  }
}

TEST_CASE("binomial") {
  CHECK(binomial_pmf(3, make_rational(1, 3))(1) == make_rational(12, 27));
  CHECK(binomial_pmf(0, make_rational(1, 2))(0) == 1);
  CHECK_THROWS_AS(binomial_pmf(3, make_rational(3, 2)), ParameterError);
}

TEST_CASE("discrete gamma truncation keeps the exact tail") {
  const Rational lambda(1, 2);
  const Pmf p = discrete_gamma_pmf(2, lambda, 10);
  CHECK(p.total() + p.tail == 1);
  CHECK(p(0) == make_rational(1, 4));
  CHECK(sgn(p.tail) > 0);
  CHECK(p.tail.get_d() <= discrete_gamma2_tail_bound(0.5, 10));
  const FloatPmf f = discrete_gamma_pmf_float(2.0, 0.5, 10);
  for (std::size_t i = 0; i < f.support.size(); ++i) CHECK(f.mass[i] == doctest::Approx(p(f.support[i]).get_d()));
  CHECK_THROWS(discrete_gamma_pmf(make_rational(3, 2), lambda, 5));
}

TEST_CASE("conditioning independent laws on their sum") {
  // Two Poisson(1) walkers given a sum of 4: Bin(4, 1/2).
  const Pmf p = condition_on_sum([](long n) { return poisson_weight(1, n); },
                                 [](long n) { return poisson_weight(1, n); }, 4);
  for (long k = 0; k <= 4; ++k) CHECK(p(k) == oracle::binomial(4, make_rational(1, 2), k));
  CHECK_THROWS_AS(condition_on_sum([](long) { return Rational(0); }, [](long) { return Rational(1); }, 2),
                  ConditioningError);
}

TEST_CASE("sampling is deterministic and follows the law") {
  const Pmf p = beta_binomial_pmf(4, 1, 1);
  CounterRng a(42, 3);
  CounterRng b(42, 3);
  std::vector<long> counts(5, 0);
  for (int i = 0; i < 20000; ++i) {
    const long x = sample(p, a);
    CHECK(x == sample(p, b));
    ++counts[static_cast<std::size_t>(x)];
  }
  for (long k = 0; k <= 4; ++k) CHECK(counts[static_cast<std::size_t>(k)] / 20000.0 == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("counter generator streams") {
  CounterRng a(1, 0);
  CounterRng b(1, 1);
  CounterRng c(1, 0);
  const auto x = a.next_u64();
  CHECK(x != b.next_u64());
  CHECK(x == c.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) < 7);
  }
}
