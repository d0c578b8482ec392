#pragma once

#include "hkt/report.hpp"
#include "oracle/oracle.hpp"

#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace hkt;

inline std::filesystem::path corpus_dir() { return HKT_CORPUS_DIR; }
inline Scene corpus(const std::string& name) { return load_scene(corpus_dir() / (name + ".scene")); }

inline Scalar S(const char* text) { return parse_scalar(text); }

inline ExactVector vec(std::initializer_list<Scalar> xs) {
  ExactVector v(static_cast<Index>(xs.size()));
  Index k = 0;
  for (const auto& x : xs) v(k++) = x;
  return v;
}

inline ExactVector e(int n, int i) { return unit_vector(n, i - 1); }  // 1-based

inline ExactMatrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.begin()->size());
  ExactMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

/// 1-form sum c_k e^{i_k} from 1-based (index, coefficient) pairs.
inline Form one_form(int n, std::initializer_list<std::pair<int, Scalar>> terms) {
  ExactVector v = zero_vector(n);
  for (const auto& [i, c] : terms) v(i - 1) += c;
  return Form::one_form(v);
}

/// (1,0) part X - i IX of a real vector.
inline ExactVector part10(const HypercomplexTriple& h, const ExactVector& x) { return type10_part(h, x); }

// -- conversions to the oracle ------------------------------------------------

inline oracle::G to_oracle(const Scalar& s) { return oracle::parse(s.to_string()); }
inline Scalar from_oracle(const oracle::G& g) { return parse_scalar(oracle::str(g)); }

inline oracle::Mat to_oracle(const ExactMatrix& m) {
  oracle::Mat out = oracle::zeros(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_oracle(m(i, j));
  return out;
}

inline oracle::Vec to_oracle(const ExactVector& v) {
  oracle::Vec out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_oracle(v(i)));
  return out;
}

inline oracle::Dense to_oracle(const Form& f) {
  oracle::Dense d;
  d.dim = f.dim();
  d.k = f.degree();
  for (const auto& [m, c] : f.terms()) d.c[letters(m)] = to_oracle(c);
  return d;
}

inline bool same(const oracle::Dense& a, const Form& f) {
  const oracle::Dense b = to_oracle(f);
  if (a.k > a.dim) return f.is_zero();  // the library keeps such zeros in top degree
  if (a.k != b.k) return false;
  for (const auto& [idx, c] : a.c)
    if (b.at(idx) != c) return false;
  for (const auto& [idx, c] : b.c)
    if (a.at(idx) != c) return false;
  return true;
}

// -- random exact data --------------------------------------------------------

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  Rational rational(int span = 4) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 3);
    Rational r(num(gen_), den(gen_));
    r.canonicalize();
    return r;
  }
  /// Gaussian rational; `zero_bias` in [0,1) is the chance of an exact zero.
  Scalar scalar(double zero_bias = 0.3) {
    if (std::bernoulli_distribution(zero_bias)(gen_)) return Scalar(0);
    Rational re = rational();
    Rational im = std::bernoulli_distribution(0.5)(gen_) ? rational() : Rational(0);
    Scalar s(re, im);
    return s.is_zero() ? Scalar(1) : s;
  }
  ExactMatrix matrix(Index r, Index c, double zero_bias = 0.3) {
    ExactMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = scalar(zero_bias);
    return m;
  }
  /// Random matrix of rank at most `rank`.
  ExactMatrix low_rank(Index r, Index c, Index rank) {
    return matrix(r, rank, 0.2) * matrix(rank, c, 0.2);
  }
  ExactVector vector(Index n, double zero_bias = 0.3) { return matrix(n, 1, zero_bias).col(0); }
  Form form(int dim, int degree, double zero_bias = 0.5) {
    Form f(dim, degree);
    for (Mask m : basis_masks(dim, degree)) {
      Scalar s = scalar(zero_bias);
      if (!s.is_zero()) f.add(m, s);
    }
    return f;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937 gen_;
};

}  // namespace testing
