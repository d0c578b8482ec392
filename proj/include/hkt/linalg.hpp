#pragma once

// Dense exact linear algebra over Q(i): echelon forms, kernels, spans,
// solving, Sylvester positivity.

#include "hkt/exact.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hkt {


/// Reduced row echelon form. Pivot choice is deterministic: columns are
/// scanned left to right and the pivot is the smallest row index holding a
/// nonzero entry.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<Index> pivots;  // pivot column of each nonzero row
};

template <class T>
Echelon<T> rref(Matrix<T> m) {
  Echelon<T> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const T inv = T(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (Index c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

Index rank(const ExactMatrix& m);

/// Basis of {v : M v = 0}, returned in canonical reduced column echelon form
/// (each vector has leading coordinate 1 at a distinct position, and the other
/// basis vectors vanish there).
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

/// Canonical basis of span(vectors) in the same reduced echelon form; two
/// families span the same subspace iff their canonical bases are equal.
std::vector<ExactVector> canonical_span(const std::vector<ExactVector>& vectors, Index dim);

bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b, Index dim);
/// span(a) is a subspace of span(b).
bool span_contains(const std::vector<ExactVector>& b, const std::vector<ExactVector>& a, Index dim);
bool in_span(const ExactVector& v, const std::vector<ExactVector>& basis);

/// Intersection of two subspaces of Q(i)^dim, canonical basis.
std::vector<ExactVector> span_intersection(const std::vector<ExactVector>& a,
                                           const std::vector<ExactVector>& b, Index dim);

/// Matrix whose columns are the given vectors.
ExactMatrix as_columns(const std::vector<ExactVector>& vectors, Index dim);
/// Vertical concatenation; every block must have `cols` columns.
ExactMatrix vstack(const std::vector<ExactMatrix>& blocks, Index cols);

/// Some x with A x = b, or nothing if inconsistent.
std::optional<ExactVector> solve(const ExactMatrix& a, const ExactVector& b);
std::optional<ExactMatrix> inverse(const ExactMatrix& a);
Scalar determinant(ExactMatrix a);

bool is_hermitian(const ExactMatrix& s);

/// Sylvester criterion on a Hermitian matrix. Throws std::invalid_argument on
/// non-Hermitian input.
bool is_positive_definite(const ExactMatrix& s);

/// The unique lambda with A = lambda * B, if any. Throws std::invalid_argument
/// when B = 0 or the shapes differ.
std::optional<Scalar> solve_proportionality(const ExactMatrix& a, const ExactMatrix& b);

/// Convenience overloads for vectors.
std::optional<Scalar> solve_proportionality(const ExactVector& a, const ExactVector& b);

}  // namespace hkt
