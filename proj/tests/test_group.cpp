#include "gasketpile/group.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace gasketpile;

TEST_SUITE("group") {

TEST_CASE("sandpile group order equals det Delta") {
  for (int n = 0; n <= 4; ++n) {
    const GasketGraph g = build_gasket(n);
    CHECK(sandpile_group(g).order() == determinant(reduced_laplacian<BigInt>(g)));
  }
  CHECK(sandpile_group(build_gasket(0)).str() == "[5, 10]");
  CHECK(sandpile_group(build_gasket(1)).str() == "[38, 38]");
}

TEST_CASE("tau by recursion and by the matrix-tree theorem") {
  CHECK(tau_recursion(0) == 3);
  CHECK(tau_recursion(1) == 54);
  CHECK(tau_recursion(2) == 524880);
  CHECK(tau_matrix_tree(0) == 3);
  CHECK(tau_matrix_tree(1) == 54);
  CHECK(tau_matrix_tree(2) == 524880);
  for (int n = 0; n <= 5; ++n) CHECK(tau_matrix_tree(n) == tau_recursion(n));
  for (int n = 0; n <= 4; ++n) CHECK(tau_fourth_power_identity(n, tau_recursion(n)));
  CHECK_FALSE(tau_fourth_power_identity(2, tau_recursion(2) + 1));
}

TEST_CASE("tau differs from the order of the normal-boundary group") {
  for (int n = 1; n <= 3; ++n) CHECK(tau_recursion(n) != sandpile_group(build_gasket(n)).order());
}

TEST_CASE("quotients") {
  const GasketGraph g = build_gasket(0);
  CHECK(quotient_invariants(g, {}) == sandpile_group(g));
  std::vector<BigVector> basis;
  for (Index v = 0; v < g.size(); ++v) {
    BigVector e = BigVector::Zero(g.size());
    e(v) = 1;
    basis.push_back(e);
  }
  CHECK(quotient_invariants(g, basis).is_trivial());

  // |Gamma / <delta_x>| = |Gamma| / ord([delta_x]); the order of a class is the
  // smallest k with k x in Delta Z^V, i.e. k * Delta^{-1} x integral.
  const BigMatrix lap = reduced_laplacian<BigInt>(g);
  const auto inv = solve_rational(lap, basis[0]);
  BigInt ord = 1;
  for (Index v = 0; v < inv.size(); ++v) {
    const BigInt den = boost::multiprecision::denominator(inv(v));
    ord = boost::multiprecision::lcm(ord, den);
  }
  CHECK(quotient_invariants(g, {basis[0]}).order() * ord == 50);
}

TEST_CASE("factorization and direct sums") {
  const auto f = factorize(BigInt(540));
  CHECK(f.at(2) == 2);
  CHECK(f.at(3) == 3);
  CHECK(f.at(5) == 1);
  CHECK_THROWS_AS(factorize(BigInt(0)), std::invalid_argument);
  const BigInt big_prime("999999999989");  // above the cap, below its square
  CHECK(factorize(big_prime).at(big_prime) == 1);
  CHECK_THROWS_AS(factorize(BigInt("1000000000039") * BigInt("1000000000039")), std::domain_error);

  InvariantFactors a{{2, 6}, 0}, b{{3}, 0}, c{{4}, 1};
  CHECK(direct_sum({a, b}).factors == std::vector<BigInt>{6, 6});
  CHECK(direct_sum({a, c}).factors == std::vector<BigInt>{2, 2, 12});
  CHECK(direct_sum({a, c}).free_rank == 1);
  CHECK(canonicalize(InvariantFactors{{6, 4}, 0}).factors == std::vector<BigInt>{2, 12});
  CHECK(direct_sum({}).is_trivial());
}

TEST_CASE("kernel generators are indicators of the right vertices") {
  const GasketGraph g = build_gasket(2);
  const auto gens = kernel_generators(g);
  REQUIRE(gens.size() == 6);
  auto support = [&](const BigVector& v) {
    std::set<GasketCoord> s;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) != 0) s.insert(g.coord(i));
    return s;
  };
  CHECK(support(gens[0]) == std::set<GasketCoord>{{1, 2}, {0, 3}});  // around a, top copy
  CHECK(support(gens[1]) == std::set<GasketCoord>{{1, 0}, {1, 1}});  // around c, lower-left copy
  CHECK(support(gens[2]) == std::set<GasketCoord>{{2, 1}, {3, 1}});  // around b, lower-right copy
  CHECK(support(gens[3]) == std::set<GasketCoord>{{0, 2}});
  CHECK(support(gens[4]) == std::set<GasketCoord>{{2, 2}});
  CHECK(support(gens[5]) == std::set<GasketCoord>{{2, 0}});
}

TEST_CASE("quotient isomorphism") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = check_group_theorem(n);
    CAPTURE(n);
    CHECK(r.orders_match);
    CHECK(r.pass);
    CHECK(r.convention == 0);
    CHECK(r.rhs_parts.size() == 3);
  }
  CHECK(check_group_theorem(1).lhs.is_trivial());
  CHECK(check_group_theorem(2).lhs.str() == "[2, 2, 2]");
}

}  // TEST_SUITE
