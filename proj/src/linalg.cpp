#include "gasketpile/linalg.hpp"

#include <gmp.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gasketpile {

namespace {

mpz_ptr raw(BigInt& x) { return x.backend().data(); }
mpz_srcptr raw(const BigInt& x) { return x.backend().data(); }

// Forward Bareiss elimination over all columns of `m`, pivoting on the first
// `pivot_cols` columns. Returns the row-swap sign, or 0 if singular.
int bareiss_forward(BigMatrix& m, Index pivot_cols) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  int sign = 1;
  BigInt prev = 1;
  BigInt tmp;
  for (Index k = 0; k < pivot_cols; ++k) {
    if (m(k, k) == 0) {
      Index p = k + 1;
      while (p < rows && m(p, k) == 0) ++p;
      if (p == rows) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Index j = k + 1; j < cols; ++j) {
      const mpz_srcptr akk = raw(m(k, k));
      const mpz_srcptr akj = raw(m(k, j));
      for (Index i = k + 1; i < rows; ++i) {
        mpz_mul(raw(tmp), raw(m(i, j)), akk);
        mpz_submul(raw(tmp), raw(m(i, k)), akj);
        mpz_divexact(raw(m(i, j)), raw(tmp), raw(prev));
      }
    }
    for (Index i = k + 1; i < rows; ++i) m(i, k) = 0;
    prev = m(k, k);
  }
  return sign;
}

}  // namespace

BigInt determinant(BigMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Index n = a.rows();
  if (n == 0) return BigInt(1);
  const int sign = bareiss_forward(a, n);
  if (sign == 0) return BigInt(0);
  return sign > 0 ? a(n - 1, n - 1) : BigInt(-a(n - 1, n - 1));
}

FractionFreeSolution solve_fraction_free(const BigMatrix& a, const BigMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw std::invalid_argument("solve_fraction_free: shape mismatch");
  const Index n = a.rows();
  const Index k = b.cols();
  BigMatrix m(n, n + k);
  m << a, b;
  if (n == 0) return {BigInt(1), BigMatrix(0, k)};
  if (bareiss_forward(m, n) == 0) throw std::domain_error("solve_fraction_free: singular matrix");

  FractionFreeSolution sol;
  sol.scale = m(n - 1, n - 1);
  sol.x.resize(n, k);
  BigInt acc;
  for (Index c = 0; c < k; ++c) {
    for (Index i = n - 1; i >= 0; --i) {
      mpz_mul(raw(acc), raw(sol.scale), raw(m(i, n + c)));
      for (Index j = i + 1; j < n; ++j) mpz_submul(raw(acc), raw(m(i, j)), raw(sol.x(j, c)));
      mpz_divexact(raw(sol.x(i, c)), raw(acc), raw(m(i, i)));
    }
  }
  return sol;
}

RationalVector solve_rational(const BigMatrix& a, const BigVector& b) {
  const auto sol = solve_fraction_free(a, BigMatrix(b));
  RationalVector x(a.rows());
  for (Index i = 0; i < a.rows(); ++i) x(i) = Rational(sol.x(i, 0), sol.scale);
  return x;
}

BigInt InvariantFactors::order() const {
  if (free_rank > 0) return BigInt(0);
  BigInt p = 1;
  for (const auto& d : factors) p *= d;
  return p;
}

std::string InvariantFactors::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? ", " : "") << factors[i];
  os << ']';
  if (free_rank > 0) os << " + Z^" << free_rank;
  return os.str();
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
  std::vector<BigInt> out;
  for (Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

InvariantFactors SmithDecomposition::invariants() const {
  InvariantFactors inv;
  Index rank = 0;
  for (const auto& x : diagonal()) {
    if (x == 0) continue;
    ++rank;
    if (abs(x) != 1) inv.factors.push_back(abs(x));
  }
  inv.free_rank = static_cast<int>(d.rows() - rank);
  return inv;
}

namespace {

class SmithReducer {
 public:
  SmithReducer(const BigMatrix& a, bool transforms)
      : d_(a), transforms_(transforms) {
    if (transforms_) {
      u_ = BigMatrix::Identity(a.rows(), a.rows());
      v_ = BigMatrix::Identity(a.cols(), a.cols());
    }
  }

  SmithDecomposition run() {
    const Index rows = d_.rows(), cols = d_.cols();
    for (Index t = 0; t < std::min(rows, cols); ++t) {
      if (!place_min_pivot(t, t, rows, t, cols)) break;
      for (;;) {
        bool clean = eliminate_column(t) & eliminate_row(t);
        if (!clean) {
          // A nonzero remainder is now smaller than the pivot; bring the smallest
          // entry of row/column t into the pivot position.
          place_min_in_cross(t);
          continue;
        }
        const auto bad = find_nondivisible(t);
        if (!bad) break;
        add_row(t, *bad, 1);
      }
      if (d_(t, t) < 0) negate_row(t);
    }
    return {std::move(d_), std::move(u_), std::move(v_)};
  }

 private:
  bool place_min_pivot(Index t, Index r0, Index r1, Index c0, Index c1) {
    Index bi = -1, bj = -1;
    BigInt best;
    for (Index j = c0; j < c1; ++j)
      for (Index i = r0; i < r1; ++i) {
        const auto& x = d_(i, j);
        if (x == 0) continue;
        if (bi < 0 || abs(x) < best) {
          best = abs(x);
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
  found:
    if (bi < 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void place_min_in_cross(Index t) {
    Index bi = t, bj = t;
    BigInt best = abs(d_(t, t));
    for (Index i = t + 1; i < d_.rows(); ++i)
      if (d_(i, t) != 0 && abs(d_(i, t)) < best) { best = abs(d_(i, t)); bi = i; bj = t; }
    for (Index j = t + 1; j < d_.cols(); ++j)
      if (d_(t, j) != 0 && abs(d_(t, j)) < best) { best = abs(d_(t, j)); bi = t; bj = j; }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  // Returns true when column t below the pivot is entirely zero afterwards.
  bool eliminate_column(Index t) {
    bool clean = true;
    for (Index i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) == 0) continue;
      const BigInt q = d_(i, t) / d_(t, t);
      if (q != 0) add_row(i, t, -q);
      if (d_(i, t) != 0) clean = false;
    }
    return clean;
  }

  bool eliminate_row(Index t) {
    bool clean = true;
    for (Index j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) == 0) continue;
      const BigInt q = d_(t, j) / d_(t, t);
      if (q != 0) add_col(j, t, -q);
      if (d_(t, j) != 0) clean = false;
    }
    return clean;
  }

  std::optional<Index> find_nondivisible(Index t) const {
    const auto& p = d_(t, t);
    for (Index j = t + 1; j < d_.cols(); ++j)
      for (Index i = t + 1; i < d_.rows(); ++i)
        if (d_(i, j) != 0 && d_(i, j) % p != 0) return i;
    return std::nullopt;
  }

  // row_dst += k * row_src
  void add_row(Index dst, Index src, const BigInt& k) {
    for (Index j = 0; j < d_.cols(); ++j)
      if (d_(src, j) != 0) mpz_addmul(raw(d_(dst, j)), raw(k), raw(d_(src, j)));
    if (transforms_) {
      // U <- U * E^{-1}: column src -= k * column dst
      for (Index i = 0; i < u_.rows(); ++i)
        if (u_(i, dst) != 0) mpz_submul(raw(u_(i, src)), raw(k), raw(u_(i, dst)));
    }
  }

  // col_dst += k * col_src
  void add_col(Index dst, Index src, const BigInt& k) {
    for (Index i = 0; i < d_.rows(); ++i)
      if (d_(i, src) != 0) mpz_addmul(raw(d_(i, dst)), raw(k), raw(d_(i, src)));
    if (transforms_) {
      // V <- F^{-1} * V: row src -= k * row dst
      for (Index j = 0; j < v_.cols(); ++j)
        if (v_(dst, j) != 0) mpz_submul(raw(v_(src, j)), raw(k), raw(v_(dst, j)));
    }
  }

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    d_.row(a).swap(d_.row(b));
    if (transforms_) u_.col(a).swap(u_.col(b));
  }

  void swap_cols(Index a, Index b) {
    if (a == b) return;
    d_.col(a).swap(d_.col(b));
    if (transforms_) v_.row(a).swap(v_.row(b));
  }

  void negate_row(Index t) {
    for (Index j = 0; j < d_.cols(); ++j) d_(t, j) = -d_(t, j);
    if (transforms_)
      for (Index i = 0; i < u_.rows(); ++i) u_(i, t) = -u_(i, t);
  }

  BigMatrix d_, u_, v_;
  bool transforms_;
};

}  // namespace

SmithDecomposition smith_normal_form(const BigMatrix& a, bool with_transforms) {
  return SmithReducer(a, with_transforms).run();
}

InvariantFactors cokernel_invariants(const BigMatrix& a) {
  return smith_normal_form(a, false).invariants();
}

}  // namespace gasketpile
