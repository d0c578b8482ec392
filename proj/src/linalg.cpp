#include "hkt/linalg.hpp"

namespace hkt {

Index rank(const ExactMatrix& m) { return static_cast<Index>(rref<Scalar>(m).pivots.size()); }

std::vector<ExactVector> canonical_span(const std::vector<ExactVector>& vectors, Index dim) {
  if (vectors.empty()) return {};
  ExactMatrix rows(static_cast<Index>(vectors.size()), dim);
  for (Index r = 0; r < rows.rows(); ++r) rows.row(r) = vectors[static_cast<std::size_t>(r)].transpose();
  auto e = rref<Scalar>(std::move(rows));
  std::vector<ExactVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    out.emplace_back(e.reduced.row(static_cast<Index>(r)).transpose());
  return out;
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  auto e = rref<Scalar>(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<ExactVector> basis;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    ExactVector v = zero_vector(n);
    v(free) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v(e.pivots[r]) = -e.reduced(static_cast<Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b, Index dim) {
  return canonical_span(a, dim) == canonical_span(b, dim);
}

bool span_contains(const std::vector<ExactVector>& b, const std::vector<ExactVector>& a, Index dim) {
  auto both = b;
  both.insert(both.end(), a.begin(), a.end());
  return canonical_span(both, dim).size() == canonical_span(b, dim).size();
}

bool in_span(const ExactVector& v, const std::vector<ExactVector>& basis) {
  return span_contains(basis, {v}, v.size());
}

std::vector<ExactVector> span_intersection(const std::vector<ExactVector>& a,
                                           const std::vector<ExactVector>& b, Index dim) {
  if (a.empty() || b.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0 and map x back.
  const Index na = static_cast<Index>(a.size());
  const Index nb = static_cast<Index>(b.size());
  ExactMatrix m(dim, na + nb);
  for (Index i = 0; i < na; ++i) m.col(i) = a[static_cast<std::size_t>(i)];
  for (Index j = 0; j < nb; ++j) m.col(na + j) = -b[static_cast<std::size_t>(j)];
  std::vector<ExactVector> out;
  for (const auto& k : kernel_basis(m)) {
    ExactVector v = zero_vector(dim);
    for (Index i = 0; i < na; ++i)
      if (!k(i).is_zero()) v += k(i) * a[static_cast<std::size_t>(i)];
    out.push_back(std::move(v));
  }
  return canonical_span(out, dim);
}

ExactMatrix as_columns(const std::vector<ExactVector>& vectors, Index dim) {
  ExactMatrix m(dim, static_cast<Index>(vectors.size()));
  for (Index c = 0; c < m.cols(); ++c) m.col(c) = vectors[static_cast<std::size_t>(c)];
  return m;
}

ExactMatrix vstack(const std::vector<ExactMatrix>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  ExactMatrix out(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

std::optional<ExactVector> solve(const ExactMatrix& a, const ExactVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  ExactMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto e = rref<Scalar>(std::move(aug));
  ExactVector x = zero_vector(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(static_cast<Index>(r), a.cols());
  }
  return x;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: non-square matrix");
  const Index n = a.rows();
  ExactMatrix aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity(n);
  auto e = rref<Scalar>(std::move(aug));
  if (static_cast<Index>(e.pivots.size()) < n || (n > 0 && e.pivots[static_cast<std::size_t>(n - 1)] >= n))
    return std::nullopt;
  return ExactMatrix(e.reduced.rightCols(n));
}

Scalar determinant(ExactMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const Index n = a.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index r = col; r < n; ++r)
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    const Scalar inv = Scalar(1) / a(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Scalar f = a(r, col) * inv;
      for (Index c = col; c < n; ++c)
        if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

bool is_hermitian(const ExactMatrix& s) {
  if (s.rows() != s.cols()) return false;
  for (Index r = 0; r < s.rows(); ++r)
    for (Index c = r; c < s.cols(); ++c)
      if (s(r, c) != s(c, r).conj()) return false;
  return true;
}

bool is_positive_definite(const ExactMatrix& s) {
  if (!is_hermitian(s)) throw std::invalid_argument("is_positive_definite: matrix is not Hermitian");
  for (Index k = 1; k <= s.rows(); ++k) {
    Scalar minor = determinant(s.topLeftCorner(k, k));
    // Leading minors of a Hermitian matrix are real.
    if (sgn(minor.re()) <= 0) return false;
  }
  return true;
}

std::optional<Scalar> solve_proportionality(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("solve_proportionality: shape mismatch");
  Index pr = -1, pc = -1;
  for (Index c = 0; c < b.cols() && pr < 0; ++c)
    for (Index r = 0; r < b.rows(); ++r)
      if (!b(r, c).is_zero()) {
        pr = r;
        pc = c;
        break;
      }
  if (pr < 0) throw std::invalid_argument("solve_proportionality: B is zero");
  const Scalar lambda = a(pr, pc) / b(pr, pc);
  for (Index c = 0; c < b.cols(); ++c)
    for (Index r = 0; r < b.rows(); ++r)
      if (a(r, c) != lambda * b(r, c)) return std::nullopt;
  return lambda;
}

std::optional<Scalar> solve_proportionality(const ExactVector& a, const ExactVector& b) {
  return solve_proportionality(ExactMatrix(a), ExactMatrix(b));
}

}  // namespace hkt
