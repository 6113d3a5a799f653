#pragma once

// Level-n Sierpinski gasket graphs with a sink.
//
// Vertices live on the triangular lattice: (a, b) sits at a*(1,0) + b*(1/2, sqrt3/2).
// The canonical order of non-sink vertices is lexicographic on (b, a).

#include "gasketpile/numeric.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gasketpile {

struct GasketCoord {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const GasketCoord&, const GasketCoord&) = default;
  /// Canonical order: row b first, then a.
  friend std::strong_ordering operator<=>(const GasketCoord& l, const GasketCoord& r) {
    if (auto c = l.b <=> r.b; c != 0) return c;
    return l.a <=> r.a;
  }
};

enum class Corner { LowerLeft, LowerRight, Top };
inline constexpr std::array<Corner, 3> kCorners{Corner::LowerLeft, Corner::LowerRight, Corner::Top};

/// Junction points of G_n (n >= 1): a = left-middle, b = right-middle, c = bottom-middle.
enum class Junction { A, B, C };
inline constexpr std::array<Junction, 3> kJunctions{Junction::A, Junction::B, Junction::C};

enum class RotationDirection { Ccw, Cw };

std::string to_string(Corner c);
Corner parse_corner(const std::string& s);

struct BoundaryCondition {
  enum class Kind { Normal, CornerSink };
  Kind kind = Kind::Normal;
  Corner corner = Corner::LowerLeft;  // meaningful for CornerSink only

  static BoundaryCondition normal() { return {}; }
  static BoundaryCondition corner_sink(Corner c) { return {Kind::CornerSink, c}; }

  bool is_normal() const { return kind == Kind::Normal; }

  friend bool operator==(const BoundaryCondition& l, const BoundaryCondition& r) {
    return l.kind == r.kind && (l.kind == Kind::Normal || l.corner == r.corner);
  }
};

/// "normal" or "corner_sink:<corner>".
std::string to_string(const BoundaryCondition& bc);
BoundaryCondition parse_boundary(const std::string& s);

/// Immutable after construction. Holds only non-sink vertices; edges to the sink
/// are represented by beta().
class GasketGraph {
 public:
  int level() const { return level_; }
  const BoundaryCondition& boundary() const { return boundary_; }
  std::int64_t side() const { return std::int64_t{1} << level_; }

  /// Number of non-sink vertices.
  Index size() const { return static_cast<Index>(vertices_.size()); }
  std::span<const GasketCoord> vertices() const { return vertices_; }
  const GasketCoord& coord(Index v) const { return vertices_[static_cast<std::size_t>(v)]; }

  /// Non-sink neighbours of v in canonical order.
  std::span<const Index> neighbors(Index v) const {
    const auto lo = offsets_[static_cast<std::size_t>(v)];
    const auto hi = offsets_[static_cast<std::size_t>(v) + 1];
    return std::span<const Index>(adjacency_).subspan(lo, hi - lo);
  }
  /// Degree including edges to the sink.
  int degree(Index v) const { return degree_[static_cast<std::size_t>(v)]; }
  /// Number of edges from v to the sink.
  int beta(Index v) const { return beta_[static_cast<std::size_t>(v)]; }
  int max_degree() const { return max_degree_; }
  int sink_degree() const;

  std::optional<Index> index_of(const GasketCoord& c) const;
  Index require_index(const GasketCoord& c) const;

  GasketCoord corner(Corner c) const;
  /// Requires level >= 1.
  GasketCoord junction(Junction j) const;

  /// Edges among non-sink vertices as (i, j) with i < j, sorted.
  std::vector<std::pair<Index, Index>> edges() const;
  /// Edges of the bare gasket (3^(n+1)), counting those incident to a sunk corner.
  std::int64_t gasket_edge_count() const { return gasket_edges_; }
  /// |V_n| of the bare gasket, including a sunk corner.
  std::int64_t gasket_vertex_count() const { return gasket_vertices_; }

 private:
  friend GasketGraph build_gasket(int level, BoundaryCondition boundary);

  int level_ = 0;
  BoundaryCondition boundary_;
  std::vector<GasketCoord> vertices_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> adjacency_;
  std::vector<int> degree_;
  std::vector<int> beta_;
  int max_degree_ = 0;
  std::int64_t gasket_edges_ = 0;
  std::int64_t gasket_vertices_ = 0;
};

/// Recursive construction: level 0 is a triangle, level k+1 is the union of three
/// level-k copies translated by (0,0), (2^k,0), (0,2^k). No level cap here.
GasketGraph build_gasket(int level, BoundaryCondition boundary = BoundaryCondition::normal());

/// Closed forms for the bare gasket.
std::int64_t vertex_count_formula(int level);
std::int64_t edge_count_formula(int level);

/// 120 degree counter-clockwise rotation (a, b) -> (2^n - a - b, a).
GasketCoord rotate_ccw(const GasketCoord& c, int level);

/// perm[i] = canonical index of the image of vertex i. Requires a boundary
/// invariant under rotation (Normal).
std::vector<Index> rotation_ccw(const GasketGraph& graph);
std::vector<Index> rotation(const GasketGraph& graph, RotationDirection dir);

/// Canonical indices of the level-(n-1) Normal gasket mapped into level-n,
/// by translation to the given copy.
std::vector<Index> subcopy_embedding(int level, Corner copy);

/// Translation offset of a sub-copy inside level n.
GasketCoord subcopy_offset(int level, Corner copy);

/// Dense reduced Laplacian over the non-sink vertices.
template <typename Scalar>
Matrix<Scalar> reduced_laplacian(const GasketGraph& graph) {
  const Index n = graph.size();
  Matrix<Scalar> lap = Matrix<Scalar>::Zero(n, n);
  for (Index v = 0; v < n; ++v) {
    lap(v, v) = Scalar(graph.degree(v));
    for (Index w : graph.neighbors(v)) lap(v, w) = Scalar(-1);
  }
  return lap;
}

SparseLaplacian sparse_laplacian(const GasketGraph& graph);

/// Delta * u, with checked arithmetic.
ChipVector apply_laplacian(const GasketGraph& graph, const ChipVector& u);
BigVector apply_laplacian(const GasketGraph& graph, const BigVector& u);

}  // namespace gasketpile
