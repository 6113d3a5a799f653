#pragma once

// Chip-firing dynamics on a GasketGraph.

#include "gasketpile/gasket.hpp"
#include "gasketpile/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gasketpile {

#ifdef GASKETPILE_CHECK_INVARIANTS
inline constexpr bool kCheckInvariants = true;
#else
inline constexpr bool kCheckInvariants = false;
#endif

/// Raised when an operation's precondition on its input configuration fails.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Chip counts on the non-sink vertices, tagged with the graph they belong to.
struct Configuration {
  int level = 0;
  BoundaryCondition boundary;
  ChipVector chips;

  static Configuration zeros(const GasketGraph& g);
  static Configuration constant(const GasketGraph& g, std::int64_t value);
  /// sigma_max: d_v - 1 everywhere.
  static Configuration max_stable(const GasketGraph& g);
  static Configuration from_chips(const GasketGraph& g, ChipVector chips);

  Index size() const { return chips.size(); }
  std::int64_t operator[](Index v) const { return chips(v); }
  std::int64_t& operator[](Index v) { return chips(v); }

  bool is_stable(const GasketGraph& g) const;
  bool belongs_to(const GasketGraph& g) const;

  friend bool operator==(const Configuration& l, const Configuration& r) {
    return l.level == r.level && l.boundary == r.boundary && l.chips.size() == r.chips.size() &&
           l.chips == r.chips;
  }
};

Configuration operator+(const Configuration& l, const Configuration& r);

/// Per-vertex toppling counts of one stabilization.
struct Odometer {
  ChipVector fires;
  bool all_ones() const { return (fires.array() == 1).all(); }
  std::int64_t total() const { return fires.sum(); }
};

enum class FiringOrder {
  Fifo,    ///< work queue, batch toppling floor(chips/d) per visit
  Random,  ///< uniformly random unstable vertex, one toppling at a time
};

struct StabilizeOptions {
  std::span<const Index> frozen = {};
  FiringOrder order = FiringOrder::Fifo;
  std::uint64_t seed = 0;  ///< Random order only
};

struct Stabilization {
  Configuration config;
  Odometer odometer;
  /// Chips discarded along sink edges (sum of beta(v) * u(v)).
  std::int64_t sink_chips = 0;
};

/// Topple until every unfrozen vertex is stable. Frozen vertices never fire and
/// simply accumulate what they receive. Throws OverflowError on counter overflow.
Stabilization stabilize(const GasketGraph& g, const Configuration& c, const StabilizeOptions& opts = {});

/// a (+) b = (a + b) stabilized.
Configuration oplus(const GasketGraph& g, const Configuration& a, const Configuration& b);

/// Adds one chip at v and stabilizes.
Configuration add_chip(const GasketGraph& g, const Configuration& c, Index v);

struct BurningResult {
  bool recurrent = false;
  Odometer odometer;
};

/// Dhar's test: add beta(v) at every vertex; recurrent iff every vertex fires
/// exactly once and the configuration comes back. Rejects unstable input.
BurningResult is_recurrent_burning(const GasketGraph& g, const Configuration& c);

/// sigma_max plus up to `spread` random chips per vertex, stabilized. Always
/// recurrent; the distribution is not uniform.
Configuration random_recurrent(const GasketGraph& g, std::uint64_t seed, std::int64_t spread = 8);

/// (m + (m - (2m)°))° with m = sigma_max.
Configuration identity(const GasketGraph& g);

/// Maps class vectors of Z^V / Delta Z^V to their recurrent representatives.
/// Precomputes the lattice vectors it needs once per graph.
class RecurrentProjector {
 public:
  explicit RecurrentProjector(std::shared_ptr<const GasketGraph> g);
  explicit RecurrentProjector(const GasketGraph& g);

  const GasketGraph& graph() const { return *graph_; }
  const Configuration& identity() const { return identity_; }

  Configuration project(const BigVector& x) const;
  Configuration project(const ChipVector& x) const;

  /// x - Delta * floor(Delta^{-1} x); entries lie strictly between -d_max and d_max.
  ChipVector reduce(const BigVector& x) const;

 private:
  void ensure_adjugate() const;

  std::shared_ptr<const GasketGraph> graph_;
  Configuration identity_;
  ChipVector zero_class_pre_;  // m + (m - (2m)°): class zero, >= sigma_max
  ChipVector lift_;            // Delta * u with every entry > d_max
  mutable std::optional<BigMatrix> adjugate_;  // A with Delta * A = det * I
  mutable BigInt det_;
};

/// The unique recurrent configuration in the class of x.
Configuration recurrent_rep(const GasketGraph& g, const BigVector& x);

}  // namespace gasketpile
