#include "gasketpile/spectral.hpp"

#include "gasketpile/sandpile.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace gasketpile;

namespace {

std::vector<std::complex<double>> values(const RotationNumberFunction& h) {
  std::vector<std::complex<double>> out;
  for (Index v = 0; v < h.q.size(); ++v) out.push_back(std::polar(1.0, 2 * M_PI * h.q(v).convert_to<double>()));
  return out;
}

Rational vcount_rational(int n, int k) {
  return Rational(1) - Rational(k, vertex_count_formula(n) + 1);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("h_1 on G_1 matches the +-1 diagram") {
  const GasketGraph g = build_gasket(1);
  const auto h = embed_h1(g, 1);
  const std::vector<double> expected{1, -1, 1, -1, -1, 1};
  const auto vals = values(h);
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(vals[i].real() == doctest::Approx(expected[i]));
  CHECK(h.is_harmonic(g));
  CHECK(oracle::harmonic_float(g, vals));
  CHECK(*eigenvalue(g, h).exact == Rational(1, 7));
  CHECK_THROWS_AS(embed_h1(g, 0), std::out_of_range);
  CHECK_THROWS_AS(embed_h1(g, 2), std::out_of_range);
}

TEST_CASE("level-1 cells") {
  CHECK(level1_cells(1) == std::vector<GasketCoord>{{0, 0}});
  CHECK(level1_cells(2) == std::vector<GasketCoord>{{0, 0}, {2, 0}, {0, 2}});
  CHECK(level1_cells(4).size() == 27);
}

TEST_CASE("eigenvalues of h_1 and pairwise products") {
  const GasketGraph g2 = build_gasket(2);
  CHECK(*eigenvalue(g2, embed_h1(g2, 2)).exact == Rational(5, 8));
  for (int n = 1; n <= 4; ++n) {
    const GasketGraph g = build_gasket(n);
    const int cells = static_cast<int>(level1_cells(n).size());
    std::vector<RotationNumberFunction> hs;
    for (int i = 1; i <= cells; ++i) hs.push_back(embed_h1(g, i));
    for (int i = 0; i < cells; ++i) {
      CHECK(hs[i].is_harmonic(g));
      CHECK(oracle::harmonic_float(g, values(hs[i])));
      CHECK(*eigenvalue(g, hs[i]).exact == vcount_rational(n, 6));
      CHECK((hs[i] * hs[i]).is_trivial());
      for (int j = i + 1; j < cells; ++j) {
        const auto p = hs[i] * hs[j];
        CHECK(p.is_harmonic(g));
        CHECK(*eigenvalue(g, p).exact == vcount_rational(n, 12));
      }
    }
  }
}

TEST_CASE("trivial function has eigenvalue one; non-harmonic input is rejected") {
  const GasketGraph g = build_gasket(2);
  RotationNumberFunction one{2, {}, RationalVector::Zero(g.size())};
  CHECK(*eigenvalue(g, one).exact == 1);
  RotationNumberFunction bad = one;
  bad.q(0) = Rational(1, 3);
  CHECK_FALSE(bad.is_harmonic(g));
  CHECK_THROWS_AS(eigenvalue(g, bad), std::invalid_argument);
}

TEST_CASE("character enumeration") {
  for (int n = 0; n <= 1; ++n) {
    const GasketGraph g = build_gasket(n);
    const CharacterTable t = enumerate_characters(g);
    CHECK(t.order == determinant(reduced_laplacian<BigInt>(g)));
    CHECK(static_cast<std::int64_t>(t.characters.size()) == t.order);
    CHECK(t.characters.front().is_trivial());
    std::set<std::vector<Rational>> seen;
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      const auto& h = t.characters[i];
      CHECK(h.is_harmonic(g));
      seen.insert(std::vector<Rational>(h.q.data(), h.q.data() + h.q.size()));
      // eigenvalue formula evaluated independently
      std::complex<double> s = 1.0;
      for (const auto& z : values(h)) s += z;
      CHECK(std::abs(s / static_cast<double>(g.size() + 1) - t.eigenvalues[i].value) < 1e-12);
    }
    CHECK(seen.size() == t.characters.size());
    if (n == 1) {
      const auto h1 = embed_h1(g, 1);
      CHECK(seen.count(std::vector<Rational>(h1.q.data(), h1.q.data() + h1.q.size())) == 1);
    }
  }
  CHECK_THROWS_AS(enumerate_characters(build_gasket(2)), CapExceeded);
  try {
    enumerate_characters(build_gasket(1), 100);
  } catch (const CapExceeded& e) {
    CHECK(e.order == 1444);
  }
}

TEST_CASE("characters kill the lattice and separate classes on G0") {
  const GasketGraph g = build_gasket(0);
  const CharacterTable t = enumerate_characters(g);
  const auto closure = oracle::recurrent_closure(g);
  std::mt19937_64 rng(4);
  for (const auto& h : t.characters) {
    ChipVector y(3);
    y << static_cast<std::int64_t>(rng() % 7), static_cast<std::int64_t>(rng() % 7), static_cast<std::int64_t>(rng() % 7);
    CHECK(character_phase(h, apply_laplacian(g, y)) == 0);
  }
  // Orthogonality: the sum of a nontrivial character over the group vanishes.
  for (std::size_t i = 1; i < t.characters.size(); ++i) {
    std::complex<double> s = 0;
    for (const auto& c : closure.states) s += character_value(t.characters[i], c.chips);
    CHECK(std::abs(s) < 1e-9);
  }
}

TEST_CASE("Plancherel distance agrees with direct evolution on G0") {
  const GasketGraph g = build_gasket(0);
  const CharacterTable t = enumerate_characters(g);
  const auto closure = oracle::recurrent_closure(g);
  const std::size_t start = closure.index.at(oracle::key_of(identity(g)));
  CHECK(exact_distance(t, 0).l2 * exact_distance(t, 0).l2 == doctest::Approx(49.0 / 50.0).epsilon(1e-14));
  for (std::uint64_t s = 0; s <= 20; ++s) {
    const auto p = oracle::evolve(g, closure, start, s);
    const Distance d = exact_distance(t, s);
    CHECK(std::fabs(d.l2 - static_cast<double>(oracle::l2_to_uniform(p))) < 1e-12);
    CHECK(static_cast<double>(oracle::tv_to_uniform(p)) <= d.tv_upper + 1e-12);
  }
}

TEST_CASE("half the l2 distance is not a total-variation bound") {
  const GasketGraph g = build_gasket(0);
  const auto closure = oracle::recurrent_closure(g);
  const auto p = oracle::evolve(g, closure, 0, 0);
  CHECK(static_cast<double>(oracle::tv_to_uniform(p)) > exact_distance(g, 0).half_l2);
}

TEST_CASE("the l2 bound at the upper mixing threshold") {
  for (int n = 0; n <= 1; ++n) {
    const GasketGraph g = build_gasket(n);
    const double v = static_cast<double>(g.size());
    const auto t = static_cast<std::uint64_t>(std::ceil(1.25 * (v + 1) * std::log(34 * v)));
    if (n == 1) CHECK(t == 47);
    CHECK(exact_distance(g, t).l2 <= 0.25);
  }
}

TEST_CASE("distinguishing statistic") {
  for (int n = 1; n <= 4; ++n) {
    const GasketGraph g = build_gasket(n);
    const DistinguishingStatistic chi(g);
    const Configuration e = identity(g);
    CHECK(chi(e.chips) == 1.0);
    // agrees with the product of character values
    std::mt19937_64 rng(n);
    const Configuration eta = random_recurrent(g, rng());
    double avg = 0;
    for (std::size_t i = 0; i < chi.cells(); ++i) {
      const auto v = character_value(embed_h1(g, static_cast<int>(i) + 1), eta.chips);
      CHECK(std::abs(v - std::complex<double>(chi.term(eta.chips, i), 0)) < 1e-12);
      avg += v.real();
    }
    CHECK(chi(eta.chips) == doctest::Approx(avg / static_cast<double>(chi.cells())));
    // invariant under the lattice
    ChipVector y(g.size());
    for (Index v = 0; v < g.size(); ++v) y(v) = static_cast<std::int64_t>(rng() % 5);
    const ChipVector shifted = eta.chips + apply_laplacian(g, y);
    CHECK(chi(shifted) == chi(eta.chips));
    // one chip at a midpoint of cell 1 flips exactly that summand
    Configuration bumped = e;
    const auto o = level1_cells(n)[0];
    bumped.chips(g.require_index({o.a + 1, o.b})) += 1;
    const double nc = static_cast<double>(chi.cells());
    CHECK(chi(bumped.chips) == doctest::Approx((nc - 2) / nc));
  }
}

TEST_CASE("analytic variance of the distinguishing statistic") {
  for (int n = 1; n <= 5; ++n) {
    Rational expected = 1;
    for (int i = 1; i < n; ++i) expected /= 3;
    CHECK(chi_variance_analytic(build_gasket(n)) == expected);
  }
}

}  // TEST_SUITE
