#pragma once

// Exact integer linear algebra: Bareiss determinants, fraction-free solves and
// the Smith normal form.

#include "gasketpile/numeric.hpp"

#include <string>
#include <vector>

namespace gasketpile {

/// Fraction-free (Bareiss) elimination with row pivoting. Independent of the SNF path.
BigInt determinant(BigMatrix a);

template <typename Derived>
BigInt determinant(const Eigen::MatrixBase<Derived>& a) {
  return determinant(BigMatrix(a.template cast<BigInt>()));
}

/// Solution of A X = scale * B with integer X. `scale` is +-det(A).
struct FractionFreeSolution {
  BigInt scale;
  BigMatrix x;
};

/// Throws std::domain_error for singular A.
FractionFreeSolution solve_fraction_free(const BigMatrix& a, const BigMatrix& b);

/// Exact rational solution of A x = b.
RationalVector solve_rational(const BigMatrix& a, const BigVector& b);

/// Finite abelian group Z^k / L described by d_1 | d_2 | ... (each > 1), plus
/// the rank of its free part.
struct InvariantFactors {
  std::vector<BigInt> factors;
  int free_rank = 0;

  /// Product of the factors; 0 when the group is infinite.
  BigInt order() const;
  bool is_trivial() const { return factors.empty() && free_rank == 0; }
  std::string str() const;

  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

/// A = U * D * V with U, V unimodular and D diagonal, d_1 | d_2 | ..., zeros last.
struct SmithDecomposition {
  BigMatrix d;
  BigMatrix u;
  BigMatrix v;

  std::vector<BigInt> diagonal() const;
  InvariantFactors invariants() const;
};

/// Pivots on the nonzero entry of minimal absolute value. With
/// `with_transforms == false` the U and V members are left empty.
SmithDecomposition smith_normal_form(const BigMatrix& a, bool with_transforms = true);

/// Invariant factors of the cokernel Z^rows / A Z^cols.
InvariantFactors cokernel_invariants(const BigMatrix& a);

}  // namespace gasketpile
