#include "gasketpile/selfsim.hpp"

#include <sstream>
#include <stdexcept>

namespace gasketpile {

namespace {

std::int64_t pow3(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) p = checked_mul(p, 3);
  return p;
}

void fill_M(const GasketGraph& g, ChipVector& chips, int level, GasketCoord off, std::int64_t x,
            std::int64_t y, std::int64_t z) {
  auto set = [&](std::int64_t a, std::int64_t b, std::int64_t value) {
    chips(g.require_index({off.a + a, off.b + b})) = value;
  };
  if (level == 1) {
    set(0, 0, x);
    set(2, 0, y);
    set(0, 2, z);
    set(1, 0, 3);
    set(0, 1, 3);
    set(1, 1, 2);
    return;
  }
  const std::int64_t h = std::int64_t{1} << (level - 1);
  fill_M(g, chips, level - 1, off, x, 3, 3);
  fill_M(g, chips, level - 1, {off.a + h, off.b}, 3, y, 2);
  fill_M(g, chips, level - 1, {off.a, off.b + h}, 3, 2, z);
}

void require_normal(const GasketGraph& g) {
  if (!g.boundary().is_normal()) throw std::invalid_argument("expected a normal-boundary gasket");
}

}  // namespace

MnConfig build_M(int level, std::int64_t x, std::int64_t y, std::int64_t z) {
  if (level < 1) throw std::invalid_argument("M_n needs level >= 1");
  const GasketGraph g = build_gasket(level);
  Configuration c = Configuration::zeros(g);
  fill_M(g, c.chips, level, {0, 0}, x, y, z);
  return {std::move(c), x, y, z};
}

Configuration rotate_config(const GasketGraph& g, const Configuration& c, RotationDirection dir) {
  if (!c.belongs_to(g)) throw std::invalid_argument("configuration does not belong to the graph");
  const auto perm = rotation(g, dir);
  Configuration out = c;
  for (Index v = 0; v < g.size(); ++v) out.chips(perm[static_cast<std::size_t>(v)]) = c.chips(v);
  return out;
}

Configuration match_rotated(const GasketGraph& g, const Configuration& eta) {
  require_normal(g);
  if (!eta.belongs_to(g)) throw std::invalid_argument("configuration does not belong to the graph");
  const auto y = g.require_index(g.corner(Corner::LowerRight));
  const auto z = g.require_index(g.corner(Corner::Top));
  if (eta.chips(y) != eta.chips(z))
    throw PreconditionError("matching needs equal values at the lower-right and top corners");

  const GasketGraph big = build_gasket(g.level() + 1);
  const Configuration ccw = rotate_config(g, eta, RotationDirection::Ccw);
  const Configuration cw = rotate_config(g, eta, RotationDirection::Cw);
  Configuration out = Configuration::zeros(big);
  const std::pair<Corner, const Configuration*> pieces[] = {
      {Corner::LowerLeft, &eta}, {Corner::LowerRight, &ccw}, {Corner::Top, &cw}};
  for (const auto& [copy, piece] : pieces) {
    const GasketCoord off = subcopy_offset(big.level(), copy);
    for (Index v = 0; v < g.size(); ++v) {
      const auto& c = g.coord(v);
      out.chips(big.require_index({c.a + off.a, c.b + off.b})) = piece->chips(v);
    }
  }
  return out;
}

Configuration build_identity_theorem(int level) {
  if (level < 2) throw std::invalid_argument("the recursive identity needs level >= 2");
  const GasketGraph g = build_gasket(level - 1);
  return match_rotated(g, build_M(level - 1, 2, 2, 2).config);
}

Configuration transfer(const GasketGraph& from, const Configuration& c, const GasketGraph& to) {
  if (!c.belongs_to(from)) throw std::invalid_argument("configuration does not belong to the source graph");
  Configuration out = Configuration::zeros(to);
  for (Index v = 0; v < to.size(); ++v)
    if (auto i = from.index_of(to.coord(v))) out.chips(v) = c.chips(*i);
  return out;
}

std::string Mismatch::str() const {
  std::ostringstream os;
  os << "vertex " << vertex << " (" << coord.a << "," << coord.b << "): expected " << expected << ", got "
     << actual;
  return os.str();
}

std::optional<Mismatch> first_mismatch(const GasketGraph& g, const Configuration& expected,
                                       const Configuration& actual) {
  for (Index v = 0; v < g.size(); ++v)
    if (expected.chips(v) != actual.chips(v)) return Mismatch{v, g.coord(v), expected.chips(v), actual.chips(v)};
  return std::nullopt;
}

DoublingReport verify_doubling(int level) {
  if (level < 1) throw std::invalid_argument("doubling needs level >= 1");
  DoublingReport rep;
  rep.level = level;
  rep.expected_gain = checked_mul(4, pow3(level)) - 2;

  const GasketGraph normal = build_gasket(level);
  const Configuration m = build_M(level, 2, 1, 1).config;
  const Configuration doubled = m + m;

  const GasketGraph sunk = build_gasket(level, BoundaryCondition::corner_sink(Corner::LowerLeft));
  const auto s = stabilize(sunk, transfer(normal, doubled, sunk));
  rep.gain = s.sink_chips;
  const Configuration expected = transfer(normal, m, sunk);
  rep.mismatch = first_mismatch(sunk, expected, s.config);
  rep.pattern_restored = !rep.mismatch;
  rep.pass = rep.pattern_restored && rep.gain == rep.expected_gain;

  const Index x = normal.require_index(normal.corner(Corner::LowerLeft));
  const Index frozen[] = {x};
  const auto f = stabilize(normal, doubled, {.frozen = frozen});
  rep.normal_frozen_gain = f.config.chips(x) - doubled.chips(x);
  Configuration rest = f.config;
  rest.chips(x) = m.chips(x);
  rep.normal_frozen_restored = rest == m;
  return rep;
}

TransportReport verify_corner_transport(const GasketGraph& g, const Configuration& eta) {
  if (!(g.boundary() == BoundaryCondition::corner_sink(Corner::LowerLeft)))
    throw std::invalid_argument("corner transport runs on the gasket with the lower-left corner as sink");
  if (!eta.belongs_to(g) || !eta.is_stable(g) || !is_recurrent_burning(g, eta).recurrent)
    throw PreconditionError("corner transport needs a recurrent configuration");
  TransportReport rep;
  rep.level = g.level();
  const std::int64_t k = pow3(g.level());
  rep.expected_sink_chips = 2 * k;

  Configuration pushed = eta;
  pushed.chips(g.require_index(g.corner(Corner::LowerRight))) += k;
  pushed.chips(g.require_index(g.corner(Corner::Top))) += k;
  const auto s = stabilize(g, pushed);
  rep.sink_chips = s.sink_chips;
  rep.mismatch = first_mismatch(g, eta, s.config);
  rep.returned = !rep.mismatch;
  rep.pass = rep.returned && rep.sink_chips == rep.expected_sink_chips;
  return rep;
}

JunctionReport verify_junction_invariance(const GasketGraph& g, const Configuration& eta) {
  require_normal(g);
  if (!eta.belongs_to(g) || !eta.is_stable(g) || !is_recurrent_burning(g, eta).recurrent)
    throw PreconditionError("junction invariance needs a recurrent configuration");
  if (eta.chips(g.require_index(g.corner(Corner::LowerRight))) != 2 ||
      eta.chips(g.require_index(g.corner(Corner::Top))) != 2)
    throw PreconditionError("junction invariance needs 2 chips at the lower-right and top corners");

  JunctionReport rep;
  rep.level = g.level();
  const GasketGraph big = build_gasket(g.level() + 1);
  rep.matched = match_rotated(g, eta);
  auto burn = is_recurrent_burning(big, rep.matched);
  rep.recurrent = burn.recurrent;
  rep.burning = std::move(burn.odometer);

  const std::int64_t k = 2 * pow3(g.level());
  Configuration pushed = rep.matched;
  for (Junction j : kJunctions) pushed.chips(big.require_index(big.junction(j))) += k;
  const auto s = stabilize(big, pushed);
  rep.mismatch = first_mismatch(big, rep.matched, s.config);
  rep.invariant = !rep.mismatch;
  rep.pass = rep.recurrent && rep.invariant;
  return rep;
}

}  // namespace gasketpile
