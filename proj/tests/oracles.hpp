#pragma once

// Brute-force reference computations, kept independent of the library paths
// they check.

#include "gasketpile/gasket.hpp"
#include "gasketpile/sandpile.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using gasketpile::BigInt;
using gasketpile::BigMatrix;
using gasketpile::Configuration;
using gasketpile::GasketCoord;
using gasketpile::GasketGraph;
using gasketpile::Index;

/// Laplace expansion along the first row. Only for tiny matrices.
inline BigInt cofactor_det(const BigMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt det = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    BigMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const BigInt term = m(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : BigInt(-term);
  }
  return det;
}

/// Gasket edges straight from the definition: every level-0 triangle of the
/// recursive construction contributes its three sides.
inline std::set<std::pair<GasketCoord, GasketCoord>> gasket_edges(int level) {
  std::vector<GasketCoord> origins{{0, 0}};
  for (int k = 0; k < level; ++k) {
    const std::int64_t h = std::int64_t{1} << k;
    std::vector<GasketCoord> next;
    for (const auto& o : origins) {
      next.push_back(o);
      next.push_back({o.a + h, o.b});
      next.push_back({o.a, o.b + h});
    }
    origins = std::move(next);
  }
  std::set<std::pair<GasketCoord, GasketCoord>> edges;
  auto add = [&](GasketCoord p, GasketCoord q) { edges.insert(p < q ? std::make_pair(p, q) : std::make_pair(q, p)); };
  for (const auto& o : origins) {
    const GasketCoord p{o.a, o.b}, q{o.a + 1, o.b}, r{o.a, o.b + 1};
    add(p, q);
    add(q, r);
    add(r, p);
  }
  return edges;
}

using Key = std::vector<std::int64_t>;

inline Key key_of(const Configuration& c) { return Key(c.chips.data(), c.chips.data() + c.size()); }

/// The recurrent class: everything reachable from sigma_max by adding chips and
/// stabilizing. Also records the one-chip transitions.
struct RecurrentClosure {
  std::vector<Configuration> states;
  std::map<Key, std::size_t> index;
  /// next[i][v]: state reached from state i by adding a chip at v.
  std::vector<std::vector<std::size_t>> next;
};

inline RecurrentClosure recurrent_closure(const GasketGraph& g) {
  RecurrentClosure rc;
  auto intern = [&](const Configuration& c) {
    auto [it, fresh] = rc.index.emplace(key_of(c), rc.states.size());
    if (fresh) rc.states.push_back(c);
    return it->second;
  };
  intern(Configuration::max_stable(g));
  for (std::size_t i = 0; i < rc.states.size(); ++i) {
    std::vector<std::size_t> row;
    for (Index v = 0; v < g.size(); ++v) {
      Configuration c = rc.states[i];
      c.chips(v) += 1;
      row.push_back(intern(gasketpile::stabilize(g, c).config));
    }
    rc.next.push_back(std::move(row));
  }
  return rc;
}

/// Distribution of the lazy chain after t steps from `start`, by direct
/// evolution over the closure.
inline std::vector<long double> evolve(const GasketGraph& g, const RecurrentClosure& rc, std::size_t start,
                                       std::uint64_t t) {
  const std::size_t n = rc.states.size();
  const long double w = 1.0L / static_cast<long double>(g.size() + 1);
  std::vector<long double> p(n, 0), q(n);
  p[start] = 1;
  for (std::uint64_t s = 0; s < t; ++s) {
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * w;  // sink draw
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : rc.next[i]) q[j] += p[i] * w;
    std::swap(p, q);
  }
  return p;
}

inline long double l2_to_uniform(const std::vector<long double>& p) {
  const long double u = 1.0L / static_cast<long double>(p.size());
  long double s = 0;
  for (long double x : p) s += (x - u) * (x - u);
  return std::sqrt(s);
}

inline long double tv_to_uniform(const std::vector<long double>& p) {
  const long double u = 1.0L / static_cast<long double>(p.size());
  long double s = 0;
  for (long double x : p) s += std::fabs(x - u);
  return s / 2;
}

/// Harmonicity checked on unit-circle values in floating point.
inline bool harmonic_float(const GasketGraph& g, const std::vector<std::complex<double>>& h) {
  for (Index v = 0; v < g.size(); ++v) {
    std::complex<double> lhs = std::pow(h[static_cast<std::size_t>(v)], g.degree(v));
    std::complex<double> rhs = 1.0;
    for (Index w : g.neighbors(v)) rhs *= h[static_cast<std::size_t>(w)];
    if (std::abs(lhs - rhs) > 1e-9) return false;
  }
  return true;
}

}  // namespace oracle
