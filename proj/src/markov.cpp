#include "gasketpile/markov.hpp"

#include "gasketpile/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace gasketpile {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t i) {
  return splitmix64(splitmix64(master) ^ splitmix64(i + 0x632be59bd9b4e019ULL));
}

ChainState make_chain(Configuration start, std::uint64_t seed) {
  return {std::move(start), 0, std::mt19937_64(seed), -1};
}

void advance(const GasketGraph& g, ChainState& state) {
  std::uniform_int_distribution<Index> site(0, g.size());
  const Index v = site(state.rng);
  state.last_site = v;
  ++state.steps;
  if (v == g.size()) return;
  state.config.chips(v) = checked_add(state.config.chips(v), 1);
  if (state.config.chips(v) >= g.degree(v)) state.config = stabilize(g, state.config).config;
}

ChainState step(const GasketGraph& g, ChainState state) {
  advance(g, state);
  return state;
}

std::vector<Estimate> estimate_chi_decay(const GasketGraph& g, const std::vector<std::uint64_t>& times,
                                         const ChiDecayOptions& opts) {
  if (opts.trials < 2) throw std::invalid_argument("need at least two trials");
  const std::uint64_t horizon = times.empty() ? 0 : *std::max_element(times.begin(), times.end());
  const Configuration start = identity(g);
  const DistinguishingStatistic chi(g);
  const std::size_t k = times.size();
  std::vector<double> samples(opts.trials * k);

  auto run = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      ChainState s = make_chain(start, trajectory_seed(opts.seed, i));
      for (std::uint64_t t = 0;; ++t) {
        for (std::size_t j = 0; j < k; ++j)
          if (times[j] == t) samples[i * k + j] = chi(s.config.chips);
        if (t == horizon) break;
        advance(g, s);
      }
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, opts.trials));
  if (threads <= 1) {
    run(0, opts.trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (opts.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t lo = w * chunk, hi = std::min(opts.trials, lo + chunk);
      if (lo < hi) pool.emplace_back(run, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Estimate> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    double sum = 0, sq = 0;
    for (std::uint64_t i = 0; i < opts.trials; ++i) sum += samples[i * k + j];
    const double mean = sum / static_cast<double>(opts.trials);
    for (std::uint64_t i = 0; i < opts.trials; ++i) {
      const double d = samples[i * k + j] - mean;
      sq += d * d;
    }
    const double var = sq / static_cast<double>(opts.trials - 1);
    out[j] = {mean, std::sqrt(var / static_cast<double>(opts.trials)), opts.trials};
  }
  return out;
}

Estimate estimate_chi_decay(const GasketGraph& g, std::uint64_t t, const ChiDecayOptions& opts) {
  return estimate_chi_decay(g, std::vector<std::uint64_t>{t}, opts).front();
}

Rational chi_decay_exact(const GasketGraph& g, std::uint64_t t) {
  const BigInt n = g.size() + 1;
  return Rational(boost::multiprecision::pow(n - 6, static_cast<unsigned>(t)),
                  boost::multiprecision::pow(n, static_cast<unsigned>(t)));
}

BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
  if (bound <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    std::uniform_int_distribution<std::uint64_t> d(0, (bound - 1).convert_to<std::uint64_t>());
    return BigInt(d(rng));
  }
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound - 1)) + 1;
  const BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    BigInt x = 0;
    for (unsigned got = 0; got < bits; got += 64) x = (x << 64) | BigInt(rng());
    x &= mask;
    if (x < bound) return x;
  }
}

StationarySampler::StationarySampler(const GasketGraph& g) : projector_(g) {
  const SmithDecomposition snf = smith_normal_form(reduced_laplacian<BigInt>(g));
  u_ = snf.u;
  const auto diag = snf.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (abs(diag[i]) > 1) {
      coords_.push_back(static_cast<Index>(i));
      moduli_.push_back(abs(diag[i]));
    }
  group_ = snf.invariants();
}

Configuration StationarySampler::operator()(std::mt19937_64& rng) const {
  BigVector x = BigVector::Zero(u_.rows());
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const BigInt c = uniform_below(moduli_[k], rng);
    if (c != 0) x += c * u_.col(coords_[k]);
  }
  return projector_.project(x);
}

Configuration StationarySampler::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return (*this)(rng);
}

Configuration sample_stationary(const GasketGraph& g, std::uint64_t seed) {
  return StationarySampler(g).sample(seed);
}

TvLowerBound tv_lower_bound(int level, std::uint64_t t) {
  if (level < 1) throw std::invalid_argument("the lower bound needs level >= 1");
  const std::int64_t n1 = vertex_count_formula(level) + 1;
  TvLowerBound out;
  out.t = t;
  const BigInt cells = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(level - 1));
  const double bits_per_power = std::log2(static_cast<double>(n1)) + 1;
  if (2.0 * static_cast<double>(t) * bits_per_power <= static_cast<double>(kExactBitBudget)) {
    const unsigned e = static_cast<unsigned>(2 * t);
    const Rational r(cells * boost::multiprecision::pow(BigInt(n1 - 6), e),
                     boost::multiprecision::pow(BigInt(n1), e));
    const Rational bound = r / (Rational(4) + r);
    out.exact = bound;
    out.r = r.convert_to<double>();
    out.value = bound.convert_to<double>();
    return out;
  }
  const double log_r = (level - 1) * std::log(3.0) +
                       2.0 * static_cast<double>(t) * std::log1p(-6.0 / static_cast<double>(n1));
  out.r = std::exp(log_r);
  out.value = 1.0 / (1.0 + 4.0 * std::exp(-log_r));
  return out;
}

double mixing_lower_bound_raw(int level) {
  const double v = static_cast<double>(vertex_count_formula(level));
  const double c = std::log(1e6) / 12.0;
  return v / 12.0 * std::log(v) - c * v;
}

double mixing_upper_bound(int level) {
  const double v = static_cast<double>(vertex_count_formula(level));
  return 1.25 * (v + 1) * std::log(34.0 * v);
}

MixingReport mixing_report(int level, const MixingOptions& opts) {
  if (level < 2) throw std::invalid_argument("the mixing report needs level >= 2");
  MixingReport rep;
  rep.level = level;
  rep.vertices = vertex_count_formula(level);
  rep.lower_bound_raw = mixing_lower_bound_raw(level);
  rep.lower_bound_t = std::max(0.0, rep.lower_bound_raw);
  rep.upper_bound_t = mixing_upper_bound(level);

  const auto horizon = static_cast<std::uint64_t>(std::ceil(rep.upper_bound_t));
  const std::size_t points = std::max<std::size_t>(opts.curve_points, 2);
  for (std::size_t i = 0; i < points; ++i) {
    const std::uint64_t t = horizon * i / (points - 1);
    rep.r_curve.push_back(tv_lower_bound(level, t));
  }

  if (opts.monte_carlo) {
    const GasketGraph g = build_gasket(level);
    const auto est = estimate_chi_decay(g, opts.mc_times, opts.mc);
    for (std::size_t j = 0; j < est.size(); ++j)
      rep.monte_carlo.push_back({opts.mc_times[j], est[j], chi_decay_exact(g, opts.mc_times[j]).convert_to<double>()});
  }
  return rep;
}

}  // namespace gasketpile
