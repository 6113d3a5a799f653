#pragma once

// Scalar and matrix vocabulary shared by every module.
//
// Dynamics run on machine integers (ChipVector); lattice algebra runs on
// arbitrary-precision integers and rationals. Both are stored in Eigen
// containers so the same free functions accept either scalar.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gasketpile {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using BigMatrix = Matrix<BigInt>;
using BigVector = Vector<BigInt>;
using RationalVector = Vector<Rational>;

/// Chip counts and toppling counts.
using ChipVector = Vector<std::int64_t>;
using SparseLaplacian = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

/// Raised whenever a machine-width chip counter would wrap.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("chip counter overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("chip counter overflow");
  return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

/// Floor division for big integers (boost truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  return Rational(num - floor_div(num, den) * den, den);
}

template <typename Scalar>
BigVector to_big(const Vector<Scalar>& v) {
  BigVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = BigInt(v(i));
  return out;
}

/// Narrowing conversion; throws when a value does not fit in 64 bits.
inline ChipVector to_chips(const BigVector& v) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  ChipVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) < lo || v(i) > hi) throw OverflowError("class vector entry exceeds 64 bits");
    out(i) = v(i).convert_to<std::int64_t>();
  }
  return out;
}

}  // namespace gasketpile
