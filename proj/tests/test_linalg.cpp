#include "gasketpile/linalg.hpp"

#include "gasketpile/gasket.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gasketpile;

namespace {

BigMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  BigMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

bool is_smith_form(const BigMatrix& d) {
  BigInt prev = 1;
  bool zeros = false;
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
      if (i != j) continue;
      const BigInt& x = d(i, i);
      if (x < 0) return false;
      if (x == 0) {
        zeros = true;
        continue;
      }
      if (zeros || x % prev != 0) return false;
      prev = x;
    }
  return true;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("Bareiss determinant against cofactor expansion") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const Index n = 1 + k % 6;
    const BigMatrix m = random_matrix(rng, n, n, -5, 5);
    CHECK(determinant(m) == oracle::cofactor_det(m));
  }
  BigMatrix perm = BigMatrix::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = 1;
  CHECK(abs(determinant(perm)) == 1);
  CHECK(determinant(reduced_laplacian<BigInt>(build_gasket(0))) == 50);
  CHECK(determinant(BigMatrix(BigMatrix::Zero(3, 3))) == 0);
}

TEST_CASE("fraction-free solve") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 30; ++k) {
    const Index n = 1 + k % 7;
    BigMatrix a = random_matrix(rng, n, n);
    if (determinant(a) == 0) continue;
    const BigMatrix b = random_matrix(rng, n, 3);
    const auto sol = solve_fraction_free(a, b);
    CHECK(abs(sol.scale) == abs(determinant(a)));
    CHECK(BigMatrix(a * sol.x) == BigMatrix(b * sol.scale));
  }
  CHECK_THROWS_AS(solve_fraction_free(BigMatrix(BigMatrix::Zero(2, 2)), BigMatrix(BigMatrix::Identity(2, 2))),
                  std::domain_error);
}

TEST_CASE("Smith normal form examples") {
  BigMatrix a(2, 2);
  a << 2, 0, 0, 3;
  const auto s = smith_normal_form(a);
  CHECK(s.diagonal() == std::vector<BigInt>{1, 6});
  CHECK(s.invariants().factors == std::vector<BigInt>{6});

  const BigMatrix z = BigMatrix::Zero(3, 2);
  const auto sz = smith_normal_form(z);
  CHECK(sz.d == z);
  CHECK(sz.u == BigMatrix::Identity(3, 3));
  CHECK(sz.v == BigMatrix::Identity(2, 2));
  CHECK(sz.invariants().free_rank == 3);

  const auto g0 = smith_normal_form(reduced_laplacian<BigInt>(build_gasket(0))).invariants();
  CHECK(g0.order() == 50);
  CHECK(g0.str() == "[5, 10]");
}

TEST_CASE("Smith normal form properties on random matrices") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Index r = 1 + static_cast<Index>(rng() % 8), c = 1 + static_cast<Index>(rng() % 8);
    const BigMatrix a = random_matrix(rng, r, c);
    const auto s = smith_normal_form(a);
    CAPTURE(k);
    CHECK(is_smith_form(s.d));
    CHECK(BigMatrix(s.u * s.d * s.v) == a);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(cokernel_invariants(a) == s.invariants());
    if (r == c) CHECK(s.invariants().order() == abs(determinant(a)));
  }
}

}  // TEST_SUITE
