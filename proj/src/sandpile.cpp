#include "gasketpile/sandpile.hpp"

#include "gasketpile/linalg.hpp"

#include <deque>
#include <random>
#include <stdexcept>
#include <string>

namespace gasketpile {

Configuration Configuration::zeros(const GasketGraph& g) {
  return {g.level(), g.boundary(), ChipVector::Zero(g.size())};
}

Configuration Configuration::constant(const GasketGraph& g, std::int64_t value) {
  return {g.level(), g.boundary(), ChipVector::Constant(g.size(), value)};
}

Configuration Configuration::max_stable(const GasketGraph& g) {
  Configuration c = zeros(g);
  for (Index v = 0; v < g.size(); ++v) c.chips(v) = g.degree(v) - 1;
  return c;
}

Configuration Configuration::from_chips(const GasketGraph& g, ChipVector chips) {
  if (chips.size() != g.size())
    throw std::invalid_argument("configuration has " + std::to_string(chips.size()) +
                                " entries, graph has " + std::to_string(g.size()) + " vertices");
  return {g.level(), g.boundary(), std::move(chips)};
}

bool Configuration::belongs_to(const GasketGraph& g) const {
  return level == g.level() && boundary == g.boundary() && chips.size() == g.size();
}

bool Configuration::is_stable(const GasketGraph& g) const {
  for (Index v = 0; v < g.size(); ++v)
    if (chips(v) >= g.degree(v)) return false;
  return true;
}

Configuration operator+(const Configuration& l, const Configuration& r) {
  if (l.level != r.level || !(l.boundary == r.boundary) || l.chips.size() != r.chips.size())
    throw std::invalid_argument("adding configurations of different graphs");
  Configuration out = l;
  for (Index v = 0; v < l.size(); ++v) out.chips(v) = checked_add(l.chips(v), r.chips(v));
  return out;
}

namespace {

void require_compatible(const GasketGraph& g, const Configuration& c) {
  if (!c.belongs_to(g))
    throw std::invalid_argument("configuration does not belong to the level-" +
                                std::to_string(g.level()) + " " + to_string(g.boundary()) + " graph");
}

// Fires v k times; returns the chips sent to the sink.
std::int64_t fire(const GasketGraph& g, ChipVector& chips, ChipVector& odo, Index v, std::int64_t k) {
  chips(v) -= checked_mul(k, g.degree(v));
  odo(v) = checked_add(odo(v), k);
  for (Index w : g.neighbors(v)) chips(w) = checked_add(chips(w), k);
  return checked_mul(k, g.beta(v));
}

}  // namespace

Stabilization stabilize(const GasketGraph& g, const Configuration& c, const StabilizeOptions& opts) {
  require_compatible(g, c);
  const Index n = g.size();
  for (Index v = 0; v < n; ++v)
    if (c.chips(v) < 0) throw std::invalid_argument("negative chip count at vertex " + std::to_string(v));

  std::vector<char> frozen(static_cast<std::size_t>(n), 0);
  for (Index v : opts.frozen) {
    if (v < 0 || v >= n) throw std::out_of_range("frozen vertex out of range");
    frozen[static_cast<std::size_t>(v)] = 1;
  }
  auto unstable = [&](const ChipVector& chips, Index v) {
    return !frozen[static_cast<std::size_t>(v)] && chips(v) >= g.degree(v);
  };

  Stabilization out{c, {ChipVector::Zero(n)}, 0};
  ChipVector& chips = out.config.chips;
  ChipVector& odo = out.odometer.fires;
  std::vector<char> queued(static_cast<std::size_t>(n), 0);

  if (opts.order == FiringOrder::Fifo) {
    std::deque<Index> queue;
    for (Index v = 0; v < n; ++v)
      if (unstable(chips, v)) {
        queue.push_back(v);
        queued[static_cast<std::size_t>(v)] = 1;
      }
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(v)] = 0;
      const std::int64_t k = chips(v) / g.degree(v);
      if (k == 0) continue;
      out.sink_chips = checked_add(out.sink_chips, fire(g, chips, odo, v, k));
      for (Index w : g.neighbors(v)) {
        if (!queued[static_cast<std::size_t>(w)] && unstable(chips, w)) {
          queue.push_back(w);
          queued[static_cast<std::size_t>(w)] = 1;
        }
      }
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::vector<Index> pool;
    for (Index v = 0; v < n; ++v)
      if (unstable(chips, v)) {
        pool.push_back(v);
        queued[static_cast<std::size_t>(v)] = 1;
      }
    while (!pool.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::size_t at = pick(rng);
      const Index v = pool[at];
      out.sink_chips = checked_add(out.sink_chips, fire(g, chips, odo, v, 1));
      if (!unstable(chips, v)) {
        pool[at] = pool.back();
        pool.pop_back();
        queued[static_cast<std::size_t>(v)] = 0;
      }
      for (Index w : g.neighbors(v)) {
        if (!queued[static_cast<std::size_t>(w)] && unstable(chips, w)) {
          pool.push_back(w);
          queued[static_cast<std::size_t>(w)] = 1;
        }
      }
    }
  }

  if constexpr (kCheckInvariants) {
    const ChipVector expected = c.chips - apply_laplacian(g, odo);
    if (expected != chips) throw std::logic_error("conservation identity violated");
    for (Index v : opts.frozen)
      if (odo(v) != 0) throw std::logic_error("frozen vertex fired");
    if ((chips.array() < 0).any()) throw std::logic_error("negative chips after stabilization");
  }
  return out;
}

Configuration oplus(const GasketGraph& g, const Configuration& a, const Configuration& b) {
  return stabilize(g, a + b).config;
}

Configuration add_chip(const GasketGraph& g, const Configuration& c, Index v) {
  Configuration next = c;
  next.chips(v) = checked_add(next.chips(v), 1);
  return stabilize(g, next).config;
}

BurningResult is_recurrent_burning(const GasketGraph& g, const Configuration& c) {
  require_compatible(g, c);
  if (!c.is_stable(g)) throw PreconditionError("burning test needs a stable configuration");
  Configuration burned = c;
  for (Index v = 0; v < g.size(); ++v) burned.chips(v) += g.beta(v);
  auto s = stabilize(g, burned);
  const bool rec = s.config == c && s.odometer.all_ones();
  return {rec, std::move(s.odometer)};
}

Configuration random_recurrent(const GasketGraph& g, std::uint64_t seed, std::int64_t spread) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> extra(0, spread);
  Configuration c = Configuration::max_stable(g);
  for (Index v = 0; v < g.size(); ++v) c.chips(v) += extra(rng);
  return stabilize(g, c).config;
}

Configuration identity(const GasketGraph& g) {
  const Configuration m = Configuration::max_stable(g);
  const Configuration m2 = stabilize(g, m + m).config;
  Configuration pre = m;
  pre.chips = 2 * m.chips - m2.chips;
  Configuration e = stabilize(g, pre).config;
  if constexpr (kCheckInvariants) {
    if (!is_recurrent_burning(g, e).recurrent) throw std::logic_error("identity is not recurrent");
    if (!(oplus(g, e, e) == e)) throw std::logic_error("identity is not idempotent");
  }
  return e;
}

RecurrentProjector::RecurrentProjector(const GasketGraph& g)
    : RecurrentProjector(std::make_shared<const GasketGraph>(g)) {}

RecurrentProjector::RecurrentProjector(std::shared_ptr<const GasketGraph> g) : graph_(std::move(g)) {
  const GasketGraph& gr = *graph_;
  const Configuration m = Configuration::max_stable(gr);
  const Configuration m2 = stabilize(gr, m + m).config;
  zero_class_pre_ = 2 * m.chips - m2.chips;
  identity_ = stabilize(gr, Configuration::from_chips(gr, zero_class_pre_)).config;

  // A pile of (2 d_max) chips everywhere minus its stabilization is Delta u for the
  // odometer u, and every entry exceeds d_max.
  const Configuration pile = Configuration::constant(gr, 2 * gr.max_degree());
  lift_ = pile.chips - stabilize(gr, pile).config.chips;
}

void RecurrentProjector::ensure_adjugate() const {
  if (adjugate_) return;
  const BigMatrix lap = reduced_laplacian<BigInt>(*graph_);
  auto sol = solve_fraction_free(lap, BigMatrix::Identity(lap.rows(), lap.cols()));
  det_ = sol.scale;
  adjugate_ = std::move(sol.x);
}

ChipVector RecurrentProjector::reduce(const BigVector& x) const {
  ensure_adjugate();
  // y = det * Delta^{-1} x; f = floor(y / det); x - Delta f
  const BigVector y = (*adjugate_) * x;
  BigVector f(y.size());
  for (Index i = 0; i < y.size(); ++i) f(i) = floor_div(y(i), det_);
  return to_chips(x - apply_laplacian(*graph_, f));
}

Configuration RecurrentProjector::project(const ChipVector& x) const {
  const GasketGraph& g = *graph_;
  if (x.size() != g.size()) throw std::invalid_argument("class vector has the wrong length");
  // Add k * lift so that every entry is non-negative.
  std::int64_t k = 0;
  for (Index v = 0; v < x.size(); ++v) {
    if (x(v) >= 0) continue;
    const std::int64_t need = (-x(v) + lift_(v) - 1) / lift_(v);
    k = std::max(k, need);
  }
  ChipVector chips(x.size());
  for (Index v = 0; v < x.size(); ++v)
    chips(v) = checked_add(checked_add(x(v), checked_mul(k, lift_(v))), zero_class_pre_(v));
  return stabilize(g, Configuration::from_chips(g, std::move(chips))).config;
}

Configuration RecurrentProjector::project(const BigVector& x) const {
  static const BigInt small = BigInt(1) << 40;
  for (Index v = 0; v < x.size(); ++v)
    if (abs(x(v)) > small) return project(reduce(x));
  return project(to_chips(x));
}

Configuration recurrent_rep(const GasketGraph& g, const BigVector& x) {
  return RecurrentProjector(g).project(x);
}

}  // namespace gasketpile
