#pragma once

// Characters of the sandpile group through multiplicative harmonic functions
// stored as exact rotation numbers, and the spectrum of the sandpile chain.

#include "gasketpile/gasket.hpp"
#include "gasketpile/linalg.hpp"
#include "gasketpile/numeric.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gasketpile {

/// h(v) = exp(2 pi i q(v)) with q(v) in [0, 1) over the non-sink vertices; q(s) = 0.
struct RotationNumberFunction {
  int level = 0;
  BoundaryCondition boundary;
  RationalVector q;

  /// (Delta q)(v) mod 1, which must vanish for a harmonic function.
  RationalVector harmonicity_residue(const GasketGraph& g) const;
  bool is_harmonic(const GasketGraph& g) const;

  /// Pointwise product of the functions (sum of rotation numbers).
  RotationNumberFunction operator*(const RotationNumberFunction& o) const;
  bool is_trivial() const;

  friend bool operator==(const RotationNumberFunction& l, const RotationNumberFunction& r) {
    return l.level == r.level && l.boundary == r.boundary && l.q == r.q;
  }
};

/// Rotation number of chi_h(eta) = prod h(v)^eta(v), in [0, 1).
Rational character_phase(const RotationNumberFunction& h, const ChipVector& eta);
Rational character_phase(const RotationNumberFunction& h, const BigVector& eta);
std::complex<double> character_value(const RotationNumberFunction& h, const ChipVector& eta);

/// Origins (a, b) of the 3^(n-1) level-1 cells, enumerated by the recursive
/// construction and sorted in canonical (b, a) order. Cell i (1-based) is entry i-1.
std::vector<GasketCoord> level1_cells(int level);

/// h_1 on cell i (1-based): q = 1/2 at the cell's three midpoints, 0 elsewhere.
/// Throws std::out_of_range for an invalid index.
RotationNumberFunction embed_h1(const GasketGraph& g, int cell);

struct Eigenvalue {
  std::complex<double> value;
  /// Present when every h(v) is +-1.
  std::optional<Rational> exact;
};

/// lambda_h = (sum_v h(v) + 1) / (|V| + 1). Rejects non-harmonic input.
Eigenvalue eigenvalue(const GasketGraph& g, const RotationNumberFunction& h);

inline constexpr std::uint64_t kCharacterCap = 1'000'000;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const BigInt& order, std::uint64_t cap);
  BigInt order;
};

struct CharacterTable {
  BigInt order;
  std::vector<RotationNumberFunction> characters;
  std::vector<Eigenvalue> eigenvalues;
};

/// All |Gamma| characters: theta = Delta^{-1} U c mod 1 for c over the Smith
/// box, where Delta = U D V. The trivial character comes first.
CharacterTable enumerate_characters(const GasketGraph& g, std::uint64_t cap = kCharacterCap);

struct Distance {
  std::uint64_t t = 0;
  /// Plain l2 norm of P^t_id - pi over the recurrent configurations.
  double l2 = 0;
  /// l2 / 2. Not a bound on the total variation distance in general (t = 0
  /// already violates it).
  double half_l2 = 0;
  /// Cauchy-Schwarz: TV <= (sqrt|Gamma| / 2) * l2.
  double tv_upper = 0;
};

/// ||P^t_id - pi||_2 by Plancherel: l2^2 = (1/|Gamma|) sum_{chi != 1} |lambda_chi|^(2t).
Distance exact_distance(const CharacterTable& table, std::uint64_t t);
Distance exact_distance(const GasketGraph& g, std::uint64_t t, std::uint64_t cap = kCharacterCap);

/// Average of the 3^(n-1) embedded +-1 characters.
class DistinguishingStatistic {
 public:
  explicit DistinguishingStatistic(const GasketGraph& g);

  std::size_t cells() const { return midpoints_.size(); }
  /// chi_n^i(eta) in {+1, -1} for cell i (0-based).
  int term(const ChipVector& eta, std::size_t i) const;
  double operator()(const ChipVector& eta) const;

 private:
  std::vector<std::array<Index, 3>> midpoints_;
};

double distinguishing_statistic(const GasketGraph& g, const ChipVector& eta);

/// Var_pi[chi] from orthogonality: E_pi[chi_i] = [chi_i trivial] and
/// E_pi[chi_i chi_j] = [chi_i chi_j trivial].
Rational chi_variance_analytic(const GasketGraph& g);

}  // namespace gasketpile
