#pragma once

// Sandpile groups of gasket graphs as finite abelian groups.

#include "gasketpile/gasket.hpp"
#include "gasketpile/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gasketpile {

/// tau(G_0) = 3, tau(G_{n+1}) = tau(G_n) * 18 * 540^((3^n - 1)/2).
BigInt tau_recursion(int level);

/// Matrix-tree theorem on the bare gasket, deleting the lower-left corner.
BigInt tau_matrix_tree(int level);

/// 20 * 5^(2n) * tau^4 == 3 * 3^(2n) * 540^(3^n): the closed form raised to the
/// fourth power and cleared of denominators.
bool tau_fourth_power_identity(int level, const BigInt& tau);

/// Invariant factors of Z^V / (Delta Z^V + <generators>).
InvariantFactors quotient_invariants(const GasketGraph& graph, const std::vector<BigVector>& generators);

/// The sandpile group itself.
InvariantFactors sandpile_group(const GasketGraph& graph);

/// Largest prime tried by the factorization behind direct_sum().
inline constexpr std::uint64_t kTrialDivisionCap = 1'000'000;

/// prime -> exponent. Throws std::domain_error if a cofactor above the cap
/// squared survives trial division.
std::map<BigInt, unsigned> factorize(BigInt n);

/// Canonical invariant factors of a direct sum, via prime-power components.
InvariantFactors direct_sum(const std::vector<InvariantFactors>& parts);

/// Re-canonicalizes a single group (identity on well-formed input).
InvariantFactors canonicalize(const InvariantFactors& g);

struct GroupTheoremReport {
  int level = 0;
  InvariantFactors lhs;
  InvariantFactors rhs;
  /// rhs components, in the order up, left, right.
  std::vector<InvariantFactors> rhs_parts;
  /// 0: translation-only embedding; 1, 2: every copy's modded corner pair rotated.
  int convention = 0;
  bool orders_match = false;
  bool pass = false;
};

/// Compares Gamma_n / <u_up, u_left, u_right, a, b, c> with the direct sum of
/// the three corner quotients of Gamma_{n-1}. Tries rotated conventions only
/// when the translation-only one fails.
GroupTheoremReport check_group_theorem(int level);

/// The six kernel generators on G_n (Normal), in the order u_up, u_left,
/// u_right, delta_a, delta_b, delta_c.
std::vector<BigVector> kernel_generators(const GasketGraph& graph);

}  // namespace gasketpile
