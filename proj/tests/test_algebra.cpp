#include <algorithm>

#include "doctest.h"
#include "exdyn/algebra.hpp"
#include "exdyn/verify.hpp"

using namespace exdyn;

namespace {

SectorsPtr line(long nmax) { return make_sectors(StateSpace::unbounded(1), nmax); }

}  // namespace

TEST_CASE("K operators act as written") {
  const auto s = line(5);
  const Rational k(3, 2);
  const auto kp = k_operator(Ladder::raise, k, 0, s);
  const auto km = k_operator(Ladder::lower, k, 0, s);
  const auto k0 = k_operator(Ladder::diagonal, k, 0, s);
  CHECK(kp.shift() == -1);
  CHECK(km.shift() == 1);
  CHECK(kp.entry({2}, {3}) == k + 2);
  CHECK(km.entry({2}, {1}) == 2);
  CHECK(k0.entry({2}, {2}) == k / 2 + 2);
  CHECK_FALSE(kp.has_block(5));
  CHECK_THROWS_AS(k_operator(Ladder::raise, 0, 0, s), ParameterError);
}

TEST_CASE("SU(1,1) commutators by hand") {
  const auto s = line(6);
  const Rational k = 2;
  const auto kp = k_operator(Ladder::raise, k, 0, s);
  const auto km = k_operator(Ladder::lower, k, 0, s);
  const auto k0 = k_operator(Ladder::diagonal, k, 0, s);
  const auto c = commutator(kp, km);
  // K+K- f(n) = (k+n)(n+1) f(n) and K-K+ f(n) = n(k+n-1) f(n).
  for (long n = 0; n <= 5; ++n) {
    CHECK(c.value.entry({n}, {n}) == k + 2 * n);
    CHECK(c.value.entry({n}, {n}) == 2 * k0.entry({n}, {n}));
  }
  CHECK(std::find(c.excluded.begin(), c.excluded.end(), 6) != c.excluded.end());
}

TEST_CASE("algebra relation checks pass on interior sectors") {
  for (const Rational& k : {Rational(1), make_rational(5, 2)}) {
    for (const auto& r : check_algebra_relations(Algebra::su11, k, 8)) {
      CHECK_MESSAGE(r.ok(), r.name);
      CHECK(r.checked > 0);
    }
  }
  for (long g = 1; g <= 3; ++g) {
    for (const auto& r : check_algebra_relations(Algebra::su2, g, 8)) CHECK_MESSAGE(r.ok(), r.name);
  }
  for (const auto& r : check_algebra_relations(Algebra::heisenberg, 0, 8)) CHECK_MESSAGE(r.ok(), r.name);
}

TEST_CASE("J operators need a capped slot") {
  const auto capped = make_sectors(StateSpace::bounded({3}), 3);
  const auto jp = j_operator(Ladder::raise, 3, 0, capped);
  CHECK(jp.entry({1}, {2}) == 2);
  CHECK(j_operator(Ladder::diagonal, 3, 0, capped).entry({0}, {0}) == make_rational(3, 2));
  CHECK_THROWS_AS(j_operator(Ladder::raise, 3, 0, line(3)), CapacityError);
  const auto verbatim = j_operator(Ladder::raise, 3, 0, capped, JVariant::verbatim);
  CHECK(verbatim.shift() == 1);
}

TEST_CASE("Heisenberg ladder") {
  const auto s = line(4);
  const auto up = ladder_operator(Ladder::raise, 0, s, 3);
  const auto down = ladder_operator(Ladder::lower, 0, s);
  CHECK(up.entry({1}, {2}) == 3);
  CHECK(down.entry({3}, {2}) == 3);
}

TEST_CASE("descriptors combine and lump") {
  const SymmetryDescriptor a{Algebra::su11, Ladder::raise, {1}, {0}};
  const SymmetryDescriptor b{Algebra::su11, Ladder::raise, {2}, {1}};
  const auto ab = combine_terms({a, b});
  CHECK(ab.slots == std::vector<int>{0, 1});
  CHECK_THROWS_AS(combine_terms({a, a}), DescriptorError);
  const SymmetryDescriptor c{Algebra::su2, Ladder::raise, {2}, {1}};
  CHECK_THROWS_AS(combine_terms({a, c}), DescriptorError);

  const auto lumped = lumped_symmetry(ab);
  CHECK(lumped.params == std::vector<Rational>{3});
  CHECK(lumped.slots == std::vector<int>{0});

  // Annihilators only lump with equal coefficients.
  const SymmetryDescriptor uneven{Algebra::heisenberg, Ladder::lower, {1, 2}, {0, 1}};
  CHECK_THROWS_AS(lumped_symmetry(uneven), DescriptorError);
  const SymmetryDescriptor creation{Algebra::heisenberg, Ladder::raise, {1, 2}, {0, 1}};
  CHECK(lumped_symmetry(creation).params == std::vector<Rational>{3});

  // The lumped generator really is T^{-1} S T.
  const auto fine = make_sectors(StateSpace::unbounded(2), 5);
  const auto coarse = make_sectors(StateSpace::unbounded(1), 5);
  const auto s = build_symmetry(ab, fine);
  const auto lumped_op = lump_operator(s, coarse, coarse, AdditionMap::pair_to_single());
  REQUIRE(lumped_op.lumped.has_value());
  const auto direct = build_symmetry(lumped, coarse);
  CHECK(check_operator_identity(*lumped_op.lumped, direct, "lump", "test").ok());
}

TEST_CASE("SU(2) signs are opposite to the SU(1,1) pattern") {
  const auto capped = make_sectors(StateSpace::bounded({3}), 3);
  const auto jp = j_operator(Ladder::raise, 3, 0, capped);
  const auto j0 = j_operator(Ladder::diagonal, 3, 0, capped);
  const auto c = commutator(jp, j0);
  CHECK(check_operator_identity(c.value, Rational(-1) * jp, "[J+,J0] = -J+", "test").ok());
  CHECK_FALSE(check_operator_identity(c.value, jp, "[J+,J0] = J+", "test").ok());
}
