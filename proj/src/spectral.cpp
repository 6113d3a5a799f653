#include "gasketpile/spectral.hpp"

#include "gasketpile/sandpile.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace gasketpile {

namespace {

const Rational kHalf(1, 2);

void require_same_graph(const GasketGraph& g, const RotationNumberFunction& h) {
  if (h.level != g.level() || !(h.boundary == g.boundary()) || h.q.size() != g.size())
    throw std::invalid_argument("harmonic function does not belong to the graph");
}

std::complex<double> unit(const Rational& q) {
  const double angle = 2 * boost::math::constants::pi<double>() * q.convert_to<double>();
  return {std::cos(angle), std::sin(angle)};
}

template <typename Scalar>
Rational phase(const RotationNumberFunction& h, const Vector<Scalar>& eta) {
  if (eta.size() != h.q.size()) throw std::invalid_argument("configuration has the wrong length");
  Rational sum = 0;
  for (Index v = 0; v < eta.size(); ++v)
    if (h.q(v) != 0 && eta(v) != 0) sum += h.q(v) * Rational(BigInt(eta(v)));
  return frac(sum);
}

}  // namespace

RationalVector RotationNumberFunction::harmonicity_residue(const GasketGraph& g) const {
  require_same_graph(g, *this);
  RationalVector r(g.size());
  for (Index v = 0; v < g.size(); ++v) {
    Rational acc = q(v) * Rational(g.degree(v));
    for (Index w : g.neighbors(v)) acc -= q(w);
    r(v) = frac(acc);
  }
  return r;
}

bool RotationNumberFunction::is_harmonic(const GasketGraph& g) const {
  const RationalVector r = harmonicity_residue(g);
  for (Index v = 0; v < r.size(); ++v)
    if (r(v) != 0) return false;
  return true;
}

RotationNumberFunction RotationNumberFunction::operator*(const RotationNumberFunction& o) const {
  if (level != o.level || !(boundary == o.boundary) || q.size() != o.q.size())
    throw std::invalid_argument("multiplying harmonic functions of different graphs");
  RotationNumberFunction out{level, boundary, RationalVector(q.size())};
  for (Index v = 0; v < q.size(); ++v) out.q(v) = frac(q(v) + o.q(v));
  return out;
}

bool RotationNumberFunction::is_trivial() const {
  for (Index v = 0; v < q.size(); ++v)
    if (q(v) != 0) return false;
  return true;
}

Rational character_phase(const RotationNumberFunction& h, const ChipVector& eta) { return phase(h, eta); }
Rational character_phase(const RotationNumberFunction& h, const BigVector& eta) { return phase(h, eta); }

std::complex<double> character_value(const RotationNumberFunction& h, const ChipVector& eta) {
  return unit(character_phase(h, eta));
}

std::vector<GasketCoord> level1_cells(int level) {
  if (level < 1) throw std::invalid_argument("level-1 cells need level >= 1");
  std::vector<GasketCoord> cells{{0, 0}};
  for (int k = 1; k < level; ++k) {
    const std::int64_t h = std::int64_t{1} << k;
    std::vector<GasketCoord> next;
    next.reserve(cells.size() * 3);
    for (const GasketCoord off : {GasketCoord{0, 0}, GasketCoord{h, 0}, GasketCoord{0, h}})
      for (const auto& c : cells) next.push_back({c.a + off.a, c.b + off.b});
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

RotationNumberFunction embed_h1(const GasketGraph& g, int cell) {
  const auto cells = level1_cells(g.level());
  if (cell < 1 || static_cast<std::size_t>(cell) > cells.size())
    throw std::out_of_range("cell index " + std::to_string(cell) + " outside 1.." + std::to_string(cells.size()));
  const GasketCoord o = cells[static_cast<std::size_t>(cell - 1)];
  RotationNumberFunction h{g.level(), g.boundary(), RationalVector::Zero(g.size())};
  for (const GasketCoord m : {GasketCoord{o.a + 1, o.b}, GasketCoord{o.a, o.b + 1}, GasketCoord{o.a + 1, o.b + 1}})
    h.q(g.require_index(m)) = kHalf;
  if constexpr (kCheckInvariants) {
    if (!h.is_harmonic(g)) throw std::logic_error("embedded h_1 is not harmonic");
  }
  return h;
}

Eigenvalue eigenvalue(const GasketGraph& g, const RotationNumberFunction& h) {
  if (!h.is_harmonic(g)) throw std::invalid_argument("eigenvalue of a non-harmonic function");
  const double denom = static_cast<double>(g.size() + 1);
  std::complex<double> sum = 1.0;
  bool signs = true;
  std::int64_t signed_sum = 1;
  for (Index v = 0; v < g.size(); ++v) {
    const Rational& q = h.q(v);
    if (q == 0) {
      sum += 1.0;
      ++signed_sum;
    } else if (q == kHalf) {
      sum -= 1.0;
      --signed_sum;
    } else {
      signs = false;
      sum += unit(q);
    }
  }
  Eigenvalue ev{sum / denom, std::nullopt};
  if (signs) ev.exact = Rational(signed_sum, g.size() + 1);
  return ev;
}

CapExceeded::CapExceeded(const BigInt& ord, std::uint64_t cap)
    : std::runtime_error("group order " + ord.str() + " exceeds the character cap " + std::to_string(cap)),
      order(ord) {}

CharacterTable enumerate_characters(const GasketGraph& g, std::uint64_t cap) {
  const BigMatrix lap = reduced_laplacian<BigInt>(g);
  CharacterTable table;
  table.order = abs(determinant(lap));
  if (table.order > cap) throw CapExceeded(table.order, cap);

  const SmithDecomposition snf = smith_normal_form(lap);
  const auto diag = snf.diagonal();
  std::vector<Index> gens;
  std::vector<std::uint64_t> radix;
  for (Index i = 0; i < static_cast<Index>(diag.size()); ++i)
    if (abs(diag[static_cast<std::size_t>(i)]) > 1) {
      gens.push_back(i);
      radix.push_back(abs(diag[static_cast<std::size_t>(i)]).convert_to<std::uint64_t>());
    }

  // Columns of Delta^{-1} U for the nontrivial Smith coordinates, over a common
  // denominator `scale`.
  BigMatrix rhs(g.size(), static_cast<Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) rhs.col(static_cast<Index>(k)) = snf.u.col(gens[k]);
  const FractionFreeSolution sol = solve_fraction_free(lap, rhs);
  const BigInt scale = abs(sol.scale);
  const BigMatrix basis = sol.scale < 0 ? BigMatrix(-sol.x) : sol.x;

  const std::uint64_t total = table.order.convert_to<std::uint64_t>();
  table.characters.reserve(total);
  table.eigenvalues.reserve(total);
  std::vector<std::uint64_t> c(gens.size(), 0);
  BigVector num = BigVector::Zero(g.size());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    RotationNumberFunction h{g.level(), g.boundary(), RationalVector(g.size())};
    for (Index v = 0; v < g.size(); ++v) {
      BigInt r = num(v) % scale;
      if (r < 0) r += scale;
      h.q(v) = Rational(r, scale);
    }
    table.eigenvalues.push_back(eigenvalue(g, h));
    table.characters.push_back(std::move(h));
    // mixed-radix increment of c, updating num = basis * c incrementally
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (++c[k] < radix[k]) {
        num += basis.col(static_cast<Index>(k));
        break;
      }
      num -= BigInt(radix[k] - 1) * basis.col(static_cast<Index>(k));
      c[k] = 0;
    }
  }
  return table;
}

Distance exact_distance(const CharacterTable& table, std::uint64_t t) {
  long double acc = 0;
  for (std::size_t i = 0; i < table.characters.size(); ++i) {
    if (table.characters[i].is_trivial()) continue;
    const long double m2 = std::norm(std::complex<long double>(table.eigenvalues[i].value));
    acc += std::pow(m2, static_cast<long double>(t));
  }
  const long double order = table.order.convert_to<long double>();
  const long double l2 = std::sqrt(acc / order);
  return {t, static_cast<double>(l2), static_cast<double>(l2 / 2), static_cast<double>(std::sqrt(acc) / 2)};
}

Distance exact_distance(const GasketGraph& g, std::uint64_t t, std::uint64_t cap) {
  return exact_distance(enumerate_characters(g, cap), t);
}

DistinguishingStatistic::DistinguishingStatistic(const GasketGraph& g) {
  for (const auto& o : level1_cells(g.level()))
    midpoints_.push_back({g.require_index({o.a + 1, o.b}), g.require_index({o.a, o.b + 1}),
                          g.require_index({o.a + 1, o.b + 1})});
}

int DistinguishingStatistic::term(const ChipVector& eta, std::size_t i) const {
  const auto& m = midpoints_[i];
  return ((eta(m[0]) + eta(m[1]) + eta(m[2])) & 1) ? -1 : 1;
}

double DistinguishingStatistic::operator()(const ChipVector& eta) const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < midpoints_.size(); ++i) sum += term(eta, i);
  return static_cast<double>(sum) / static_cast<double>(midpoints_.size());
}

double distinguishing_statistic(const GasketGraph& g, const ChipVector& eta) {
  return DistinguishingStatistic(g)(eta);
}

Rational chi_variance_analytic(const GasketGraph& g) {
  const int cells = static_cast<int>(level1_cells(g.level()).size());
  std::map<std::vector<Rational>, std::int64_t> multiplicity;
  std::vector<std::vector<Rational>> inverses;
  std::int64_t trivial = 0;
  for (int i = 1; i <= cells; ++i) {
    const RotationNumberFunction h = embed_h1(g, i);
    if (h.is_trivial()) ++trivial;
    std::vector<Rational> q(h.q.data(), h.q.data() + h.q.size());
    std::vector<Rational> inv(q.size());
    for (std::size_t v = 0; v < q.size(); ++v) inv[v] = frac(-q[v]);
    ++multiplicity[std::move(q)];
    inverses.push_back(std::move(inv));
  }
  // chi_i chi_j is trivial exactly when q_j = -q_i mod 1
  std::int64_t trivial_pairs = 0;
  for (const auto& inv : inverses)
    if (auto it = multiplicity.find(inv); it != multiplicity.end()) trivial_pairs += it->second;
  const Rational n(cells);
  const Rational mean = Rational(trivial) / n;
  return Rational(trivial_pairs) / (n * n) - mean * mean;
}

}  // namespace gasketpile
