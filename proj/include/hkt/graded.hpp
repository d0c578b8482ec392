#pragma once

#include "hkt/forms.hpp"
#include "hkt/linalg.hpp"

#include <string>
#include <vector>

namespace hkt {

/// A total degree k, or a bidegree (p, q).
struct Grading {
  int p = 0;
  int q = 0;
  bool bigraded = false;

  static Grading total(int k) { return {k, 0, false}; }
  static Grading bi(int p, int q) { return {p, q, true}; }
  int degree() const { return bigraded ? p + q : p; }
  std::string label() const {
    return bigraded ? "(" + std::to_string(p) + "," + std::to_string(q) + ")" : std::to_string(p);
  }
  friend bool operator==(const Grading&, const Grading&) = default;
};

/// An exact matrix between two graded form spaces, in their fixed
/// lexicographic monomial bases.
struct GradedOperator {
  Grading source;
  Grading target;
  ExactMatrix matrix;
};

/// Matrix of a linear map on forms: column j is f(basis_src[j]) expanded on
/// basis_tgt.
template <class F>
ExactMatrix operator_matrix(F&& f, int dim, const std::vector<Mask>& src, const std::vector<Mask>& tgt) {
  ExactMatrix m = zeros(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Form image = f(Form::monomial(dim, src[j]));
    if (!image.is_zero()) m.col(static_cast<Index>(j)) = image.coefficients(tgt);
  }
  return m;
}

}  // namespace hkt
