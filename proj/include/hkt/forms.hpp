#pragma once

// Sparse exterior forms over a finite set of letters (a coframe), with the
// wedge product, contraction, linear substitution of letters and the
// Leibniz extension of a differential given on letters.
//
// A monomial e^{i_1} ^ ... ^ e^{i_k} (i_1 < ... < i_k) is stored as a bit mask.
// Evaluation follows the determinant convention:
//   (e^{i_1} ^ ... ^ e^{i_k})(e_{i_1}, ..., e_{i_k}) = 1.

#include "hkt/exact.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hkt {

using Mask = std::uint32_t;
inline constexpr int kMaxLetters = 32;

inline Mask bit(int letter) { return Mask{1} << letter; }
inline int popcount(Mask m) { return std::popcount(m); }

/// Lexicographic order of the sorted index lists of two masks of equal size.
struct LexLess {
  bool operator()(Mask a, Mask b) const {
    const Mask d = a ^ b;
    if (d == 0) return false;
    return (a & (d & (~d + 1))) != 0;
  }
};

/// Sign relating e^A ^ e^B to e^{A|B}; 0 when A and B share a letter.
int merge_sign(Mask a, Mask b);

/// Sorted letters of a mask.
std::vector<int> letters(Mask m);

/// All k-subsets of {0..dim-1}, lexicographically ordered.
std::vector<Mask> basis_masks(int dim, int k);

/// "e1^e3^e4" (1-based letters) with the given symbol prefix.
std::string monomial_name(Mask m, const std::string& symbol = "e");

Rational factorial(int n);

/// A homogeneous form of fixed degree on `dim` letters.
class Form {
 public:
  using Terms = std::map<Mask, Scalar, LexLess>;

  Form() = default;
  Form(int dim, int degree);

  static Form monomial(int dim, Mask m, const Scalar& c = Scalar(1));
  static Form constant(int dim, const Scalar& c);
  /// Coefficients of `coeffs` against the listed basis monomials.
  static Form from_coefficients(int dim, int degree, const std::vector<Mask>& basis,
                                const ExactVector& coeffs);
  /// 1-form sum_j v(j) e^j.
  static Form one_form(const ExactVector& v);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coeff(Mask m) const;
  /// Adds c to the coefficient of m; the mask must have `degree` letters.
  void add(Mask m, const Scalar& c);

  /// Coefficient vector against `basis`. Throws std::logic_error if the
  /// form has support outside the basis.
  ExactVector coefficients(const std::vector<Mask>& basis) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  Form operator-() const;
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  /// Entrywise conjugation of the coefficients (the conjugate form for a real
  /// coframe).
  Form conj_coefficients() const;

  std::string to_string(const std::string& symbol = "e") const;

 private:
  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

/// a ^ b. If deg a + deg b exceeds dim the result is the zero form of degree
/// dim.
Form wedge(const Form& a, const Form& b);
/// p-th wedge power, p >= 0 (p = 0 gives the constant 1).
Form power(const Form& a, int p);

/// Contraction iota_X a, X given by its components on the dual frame. A
/// degree-0 input gives the zero form of degree 0.
Form interior(const ExactVector& x, const Form& a);

/// Multilinear evaluation a(X_1, ..., X_k).
Scalar evaluate(const Form& a, const std::vector<ExactVector>& vectors);

/// Algebra homomorphism sending letter j to the 1-form sum_k M(k, j) e^k.
Form substitute(const Form& a, const ExactMatrix& m);

/// Degree-0 derivation extending letter j -> sum_k A(k, j) e^k.
Form derive(const Form& a, const ExactMatrix& action);

/// An exterior algebra with a differential prescribed on its letters and
/// extended by the graded Leibniz rule.
class Coframe {
 public:
  Coframe() = default;
  explicit Coframe(std::vector<Form> d_letters);

  int dim() const { return static_cast<int>(d_letters_.size()); }
  const Form& d_letter(int j) const { return d_letters_[static_cast<std::size_t>(j)]; }
  Form d(const Form& a) const;

 private:
  std::vector<Form> d_letters_;
};

}  // namespace hkt
