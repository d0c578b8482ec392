#pragma once

// Exact scalars over the Gaussian rationals Q(i) and the dense Eigen types
// built on them.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hkt {

using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (whitespace tolerant). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
/// Canonical "p" or "p/q" form.
std::string format_rational(const Rational& r);

/// An element re + i*im of Q(i). Arithmetic is exact; purely real operands
/// take a short path.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}
  Scalar(long v) : re_(v) {}
  Scalar(Rational re) : re_(std::move(re)) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, exact.
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "p/q", "p/q*i" or "p/q+r/s*i"; used in text output and diagnostics.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Inverse of Scalar::to_string; also takes "i", "-i", "2i", "1/2 - i".
/// Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

// ADL hooks used by Eigen (adjoint(), abs2()).
inline Scalar conj(const Scalar& s) { return s.conj(); }
inline Rational real(const Scalar& s) { return s.re(); }
inline Rational imag(const Scalar& s) { return s.im(); }
inline Rational abs2(const Scalar& s) { return s.norm2(); }

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using ExactMatrix = Matrix<Scalar>;
using ExactVector = Vector<Scalar>;

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) return false;
  return true;
}

/// n x n identity / zero with exact entries.
ExactMatrix identity(Eigen::Index n);
ExactMatrix zeros(Eigen::Index rows, Eigen::Index cols);
ExactVector zero_vector(Eigen::Index n);
ExactVector unit_vector(Eigen::Index n, Eigen::Index k);

/// Entrywise complex conjugate.
template <class Derived>
auto conjugate(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const Scalar& s) { return s.conj(); });
}

std::string to_string(const ExactVector& v);

}  // namespace hkt

namespace Eigen {

template <>
struct NumTraits<hkt::Rational> : GenericNumTraits<hkt::Rational> {
  using Real = hkt::Rational;
  using NonInteger = hkt::Rational;
  using Nested = hkt::Rational;
  using Literal = hkt::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hkt::Scalar> : GenericNumTraits<hkt::Scalar> {
  using Real = hkt::Rational;
  using NonInteger = hkt::Scalar;
  using Nested = hkt::Scalar;
  using Literal = hkt::Scalar;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 80,
    MulCost = 320
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
