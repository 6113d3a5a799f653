#include "gasketpile/gasket.hpp"

#include <algorithm>
#include <stdexcept>

namespace gasketpile {

std::string to_string(Corner c) {
  switch (c) {
    case Corner::LowerLeft: return "lower_left";
    case Corner::LowerRight: return "lower_right";
    case Corner::Top: return "top";
  }
  return "?";
}

Corner parse_corner(const std::string& s) {
  if (s == "lower_left") return Corner::LowerLeft;
  if (s == "lower_right") return Corner::LowerRight;
  if (s == "top") return Corner::Top;
  throw std::invalid_argument("unknown corner '" + s + "'");
}

std::string to_string(const BoundaryCondition& bc) {
  if (bc.is_normal()) return "normal";
  return "corner_sink:" + to_string(bc.corner);
}

BoundaryCondition parse_boundary(const std::string& s) {
  if (s == "normal") return BoundaryCondition::normal();
  const std::string prefix = "corner_sink:";
  if (s.rfind(prefix, 0) == 0) return BoundaryCondition::corner_sink(parse_corner(s.substr(prefix.size())));
  throw std::invalid_argument("unknown boundary '" + s + "'");
}

std::int64_t vertex_count_formula(int level) {
  std::int64_t p = 1;
  for (int i = 0; i < level; ++i) p *= 3;
  return 3 * (p + 1) / 2;
}

std::int64_t edge_count_formula(int level) {
  std::int64_t p = 3;
  for (int i = 0; i < level; ++i) p *= 3;
  return p;
}

GasketCoord subcopy_offset(int level, Corner copy) {
  if (level < 1) throw std::invalid_argument("sub-copies need level >= 1");
  const std::int64_t h = std::int64_t{1} << (level - 1);
  switch (copy) {
    case Corner::LowerLeft: return {0, 0};
    case Corner::LowerRight: return {h, 0};
    case Corner::Top: return {0, h};
  }
  return {0, 0};
}

namespace {

GasketCoord corner_coord(int level, Corner c) {
  const std::int64_t s = std::int64_t{1} << level;
  switch (c) {
    case Corner::LowerLeft: return {0, 0};
    case Corner::LowerRight: return {s, 0};
    case Corner::Top: return {0, s};
  }
  return {0, 0};
}

using Edge = std::pair<GasketCoord, GasketCoord>;

// Vertex and edge sets of the bare gasket, both sorted and deduplicated.
void bare_gasket(int level, std::vector<GasketCoord>& verts, std::vector<Edge>& edges) {
  verts = {{0, 0}, {1, 0}, {0, 1}};
  edges = {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}, {{1, 0}, {0, 1}}};
  for (auto& e : edges)
    if (e.second < e.first) std::swap(e.first, e.second);
  for (int k = 0; k < level; ++k) {
    const std::int64_t s = std::int64_t{1} << k;
    std::vector<GasketCoord> nv;
    std::vector<Edge> ne;
    nv.reserve(verts.size() * 3);
    ne.reserve(edges.size() * 3);
    for (const GasketCoord off : {GasketCoord{0, 0}, GasketCoord{s, 0}, GasketCoord{0, s}}) {
      for (const auto& v : verts) nv.push_back({v.a + off.a, v.b + off.b});
      for (const auto& [p, q] : edges) {
        Edge e{{p.a + off.a, p.b + off.b}, {q.a + off.a, q.b + off.b}};
        if (e.second < e.first) std::swap(e.first, e.second);
        ne.push_back(e);
      }
    }
    std::sort(nv.begin(), nv.end());
    nv.erase(std::unique(nv.begin(), nv.end()), nv.end());
    std::sort(ne.begin(), ne.end());
    ne.erase(std::unique(ne.begin(), ne.end()), ne.end());
    verts = std::move(nv);
    edges = std::move(ne);
  }
}

}  // namespace

GasketGraph build_gasket(int level, BoundaryCondition boundary) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  if (level > 30) throw std::invalid_argument("level too large for 64-bit coordinates");

  std::vector<GasketCoord> all;
  std::vector<Edge> edges;
  bare_gasket(level, all, edges);

  GasketGraph g;
  g.level_ = level;
  g.boundary_ = boundary;
  g.gasket_vertices_ = static_cast<std::int64_t>(all.size());
  g.gasket_edges_ = static_cast<std::int64_t>(edges.size());

  std::optional<GasketCoord> sunk;
  if (!boundary.is_normal()) sunk = corner_coord(level, boundary.corner);

  for (const auto& v : all)
    if (!sunk || v != *sunk) g.vertices_.push_back(v);

  const std::size_t n = g.vertices_.size();
  auto idx = [&](const GasketCoord& c) {
    auto it = std::lower_bound(g.vertices_.begin(), g.vertices_.end(), c);
    return static_cast<Index>(it - g.vertices_.begin());
  };

  std::vector<std::vector<Index>> adj(n);
  g.beta_.assign(n, 0);
  for (const auto& [p, q] : edges) {
    if (sunk && (p == *sunk || q == *sunk)) {
      const auto& other = (p == *sunk) ? q : p;
      g.beta_[static_cast<std::size_t>(idx(other))] += 1;
      continue;
    }
    const Index i = idx(p), j = idx(q);
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  if (boundary.is_normal()) {
    for (Corner c : kCorners) g.beta_[static_cast<std::size_t>(idx(corner_coord(level, c)))] += 2;
  }

  g.offsets_.assign(n + 1, 0);
  g.degree_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& nb = adj[v];
    std::sort(nb.begin(), nb.end());
    g.offsets_[v + 1] = g.offsets_[v] + nb.size();
    g.degree_[v] = static_cast<int>(nb.size()) + g.beta_[v];
    g.max_degree_ = std::max(g.max_degree_, g.degree_[v]);
    g.adjacency_.insert(g.adjacency_.end(), nb.begin(), nb.end());
  }
  return g;
}

int GasketGraph::sink_degree() const {
  int s = 0;
  for (int b : beta_) s += b;
  return s;
}

std::optional<Index> GasketGraph::index_of(const GasketCoord& c) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), c);
  if (it == vertices_.end() || *it != c) return std::nullopt;
  return static_cast<Index>(it - vertices_.begin());
}

Index GasketGraph::require_index(const GasketCoord& c) const {
  if (auto i = index_of(c)) return *i;
  throw std::out_of_range("coordinate (" + std::to_string(c.a) + "," + std::to_string(c.b) +
                          ") is not a non-sink vertex");
}

GasketCoord GasketGraph::corner(Corner c) const { return corner_coord(level_, c); }

GasketCoord GasketGraph::junction(Junction j) const {
  if (level_ < 1) throw std::invalid_argument("junctions need level >= 1");
  const std::int64_t h = side() / 2;
  switch (j) {
    case Junction::A: return {0, h};
    case Junction::B: return {h, h};
    case Junction::C: return {h, 0};
  }
  return {0, 0};
}

std::vector<std::pair<Index, Index>> GasketGraph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index v = 0; v < size(); ++v)
    for (Index w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

GasketCoord rotate_ccw(const GasketCoord& c, int level) {
  return {(std::int64_t{1} << level) - c.a - c.b, c.a};
}

std::vector<Index> rotation_ccw(const GasketGraph& graph) {
  if (!graph.boundary().is_normal())
    throw std::invalid_argument("rotation requires a rotation-invariant (normal) boundary");
  std::vector<Index> perm(static_cast<std::size_t>(graph.size()));
  for (Index v = 0; v < graph.size(); ++v)
    perm[static_cast<std::size_t>(v)] = graph.require_index(rotate_ccw(graph.coord(v), graph.level()));
  return perm;
}

std::vector<Index> rotation(const GasketGraph& graph, RotationDirection dir) {
  auto perm = rotation_ccw(graph);
  if (dir == RotationDirection::Ccw) return perm;
  std::vector<Index> twice(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) twice[v] = perm[static_cast<std::size_t>(perm[v])];
  return twice;
}

std::vector<Index> subcopy_embedding(int level, Corner copy) {
  const GasketGraph small = build_gasket(level - 1);
  const GasketGraph big = build_gasket(level);
  const GasketCoord off = subcopy_offset(level, copy);
  std::vector<Index> map(static_cast<std::size_t>(small.size()));
  for (Index v = 0; v < small.size(); ++v) {
    const auto& c = small.coord(v);
    map[static_cast<std::size_t>(v)] = big.require_index({c.a + off.a, c.b + off.b});
  }
  return map;
}

SparseLaplacian sparse_laplacian(const GasketGraph& graph) {
  std::vector<Eigen::Triplet<std::int64_t>> trip;
  for (Index v = 0; v < graph.size(); ++v) {
    trip.emplace_back(v, v, graph.degree(v));
    for (Index w : graph.neighbors(v)) trip.emplace_back(v, w, -1);
  }
  SparseLaplacian lap(graph.size(), graph.size());
  lap.setFromTriplets(trip.begin(), trip.end());
  return lap;
}

ChipVector apply_laplacian(const GasketGraph& graph, const ChipVector& u) {
  ChipVector out(graph.size());
  for (Index v = 0; v < graph.size(); ++v) {
    std::int64_t acc = checked_mul(graph.degree(v), u(v));
    for (Index w : graph.neighbors(v)) acc = checked_add(acc, -u(w));
    out(v) = acc;
  }
  return out;
}

BigVector apply_laplacian(const GasketGraph& graph, const BigVector& u) {
  BigVector out(graph.size());
  for (Index v = 0; v < graph.size(); ++v) {
    BigInt acc = u(v) * graph.degree(v);
    for (Index w : graph.neighbors(v)) acc -= u(w);
    out(v) = acc;
  }
  return out;
}

}  // namespace gasketpile
