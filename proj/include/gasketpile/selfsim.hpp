#pragma once

// Self-similar configurations M_n(x,y,z), the recursive identity element and
// the toppling identities that drive its proof.

#include "gasketpile/gasket.hpp"
#include "gasketpile/sandpile.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gasketpile {

/// M_n(x, y, z) on the Normal level-n gasket.
struct MnConfig {
  Configuration config;
  std::int64_t x = 0, y = 0, z = 0;
};

/// M_1 has bottom-middle 3, left-middle 3, right-middle 2. M_{n+1} puts
/// M_n(x,3,3), M_n(3,y,2), M_n(3,2,z) in the lower-left, lower-right and top copies.
MnConfig build_M(int level, std::int64_t x, std::int64_t y, std::int64_t z);

/// c'(rho(v)) = c(v) for the 120 degree rotation rho. Normal boundary only.
Configuration rotate_config(const GasketGraph& g, const Configuration& c, RotationDirection dir);

/// Level n+1 configuration with eta in the lower-left copy, its ccw rotation in
/// the lower-right copy and its cw rotation in the top copy. Requires
/// eta(y) = eta(z) = 2 so the three junctions agree.
Configuration match_rotated(const GasketGraph& g, const Configuration& eta);

/// id_n assembled from three rotated copies of M_{n-1}(2,2,2); n >= 2.
Configuration build_identity_theorem(int level);

/// Copies chip values between two gaskets of the same level by coordinate,
/// dropping vertices missing from `to` and zero-filling new ones.
Configuration transfer(const GasketGraph& from, const Configuration& c, const GasketGraph& to);

struct Mismatch {
  Index vertex = 0;
  GasketCoord coord;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  std::string str() const;
};

std::optional<Mismatch> first_mismatch(const GasketGraph& g, const Configuration& expected,
                                       const Configuration& actual);

struct DoublingReport {
  int level = 0;
  /// Chips that leave through the lower-left corner.
  std::int64_t gain = 0;
  std::int64_t expected_gain = 0;
  /// The interior pattern M_n(., 1, 1) comes back.
  bool pattern_restored = false;
  std::optional<Mismatch> mismatch;
  /// Same experiment on the Normal graph with the corner frozen instead.
  std::int64_t normal_frozen_gain = 0;
  bool normal_frozen_restored = false;
  bool pass = false;
};

/// Stabilizes 2 M_n(2,1,1) with the lower-left corner as sink and compares with
/// M_n(2 + 4*3^n, 1, 1): gain 4*3^n - 2, everything else unchanged.
DoublingReport verify_doubling(int level);

struct TransportReport {
  int level = 0;
  /// eta + 3^n (delta_y + delta_z) stabilizes back to eta.
  bool returned = false;
  /// The sink absorbs exactly 2*3^n chips, the neutral amount at the sunk corner.
  std::int64_t sink_chips = 0;
  std::int64_t expected_sink_chips = 0;
  std::optional<Mismatch> mismatch;
  bool pass = false;
};

/// `g` must be CornerSink(LowerLeft); rejects non-recurrent eta with PreconditionError.
TransportReport verify_corner_transport(const GasketGraph& g, const Configuration& eta);

struct JunctionReport {
  int level = 0;
  Configuration matched;
  /// Burning test on the matched level-(n+1) configuration.
  bool recurrent = false;
  Odometer burning;
  /// matched + 2*3^n at a, b, c stabilizes back to matched.
  bool invariant = false;
  std::optional<Mismatch> mismatch;
  bool pass = false;
};

/// eta on G_n Normal, recurrent, with eta(y) = eta(z) = 2 (PreconditionError otherwise).
JunctionReport verify_junction_invariance(const GasketGraph& g, const Configuration& eta);

}  // namespace gasketpile
