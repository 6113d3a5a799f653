#pragma once

// The sandpile Markov chain: eta_t = eta_{t-1} (+) delta_{X_t} with X_t uniform
// over V and the sink (a sink draw leaves the state unchanged).

#include "gasketpile/gasket.hpp"
#include "gasketpile/linalg.hpp"
#include "gasketpile/sandpile.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace gasketpile {

/// Seed of trajectory i under a master seed (splitmix64 mixing).
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t i);

struct ChainState {
  Configuration config;
  std::uint64_t steps = 0;
  std::mt19937_64 rng;
  /// The last drawn site; g.size() stands for the sink.
  Index last_site = -1;
};

ChainState make_chain(Configuration start, std::uint64_t seed);

/// One step in place.
void advance(const GasketGraph& g, ChainState& state);
ChainState step(const GasketGraph& g, ChainState state);

struct Estimate {
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t trials = 0;
};

struct ChiDecayOptions {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Runs independent chains from id_n for t steps and averages the distinguishing
/// statistic. Results do not depend on the thread count.
Estimate estimate_chi_decay(const GasketGraph& g, std::uint64_t t, const ChiDecayOptions& opts = {});

/// Samples of the distinguishing statistic at each t in `times` from the same
/// trajectories.
std::vector<Estimate> estimate_chi_decay(const GasketGraph& g, const std::vector<std::uint64_t>& times,
                                         const ChiDecayOptions& opts = {});

/// Exact (1 - 6/(|V|+1))^t.
Rational chi_decay_exact(const GasketGraph& g, std::uint64_t t);

/// Uniform draws from the recurrent configurations: c uniform over the Smith
/// box, x = U c, then the recurrent representative of x.
class StationarySampler {
 public:
  explicit StationarySampler(const GasketGraph& g);

  const InvariantFactors& group() const { return group_; }
  Configuration operator()(std::mt19937_64& rng) const;
  Configuration sample(std::uint64_t seed) const;

 private:
  RecurrentProjector projector_;
  BigMatrix u_;
  std::vector<Index> coords_;
  std::vector<BigInt> moduli_;
  InvariantFactors group_;
};

Configuration sample_stationary(const GasketGraph& g, std::uint64_t seed);

/// Uniform integer in [0, bound).
BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng);

struct TvLowerBound {
  std::uint64_t t = 0;
  /// 1 - 4/(4 + R(t)).
  double value = 0;
  double r = 0;
  /// The bound as an exact rational, set when R(t) fits the bit budget.
  std::optional<Rational> exact;
};

/// R(t) = 3^(n-1) (1 - 6/(|V_n|+1))^(2t). Exact when the rational fits in
/// kExactBitBudget bits, log-domain otherwise.
TvLowerBound tv_lower_bound(int level, std::uint64_t t);
inline constexpr std::uint64_t kExactBitBudget = 1 << 16;

struct MixingOptions {
  std::size_t curve_points = 16;
  bool monte_carlo = false;
  std::vector<std::uint64_t> mc_times{1, 5, 10, 25};
  ChiDecayOptions mc;
};

struct MonteCarloPoint {
  std::uint64_t t = 0;
  Estimate estimate;
  double expected = 0;
};

struct MixingReport {
  int level = 0;
  std::int64_t vertices = 0;
  /// (|V|/12) log|V| - c |V| with c = log(10^6)/12, and the same clamped at 0.
  double lower_bound_raw = 0;
  double lower_bound_t = 0;
  /// (5/4)(|V|+1) log(34 |V|).
  double upper_bound_t = 0;
  std::vector<TvLowerBound> r_curve;
  std::vector<MonteCarloPoint> monte_carlo;
};

double mixing_lower_bound_raw(int level);
double mixing_upper_bound(int level);

/// Analytic bounds only unless opts.monte_carlo is set; requires level >= 2.
MixingReport mixing_report(int level, const MixingOptions& opts = {});

}  // namespace gasketpile
