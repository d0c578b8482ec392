#include "hkt/lie_algebra.hpp"

#include <stdexcept>

namespace hkt {

namespace {

void check_index(int dim, int v) {
  if (v < 0 || v >= dim) throw std::invalid_argument("structure entry index out of range: " + std::to_string(v + 1));
}

std::vector<ExactVector> span_of_brackets(const LieAlgebra& lie, const std::vector<ExactVector>& a,
                                          const std::vector<ExactVector>& b) {
  std::vector<ExactVector> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      ExactVector v = lie.bracket(x, y);
      if (!is_zero(v)) out.push_back(std::move(v));
    }
  return canonical_span(out, lie.dim());
}

}  // namespace

LieAlgebra::LieAlgebra(int dim) : dim_(dim) {
  if (dim <= 0 || dim > kMaxLetters) throw std::invalid_argument("LieAlgebra: unsupported dimension");
  table_.assign(static_cast<std::size_t>(dim * dim), zero_vector(dim));
}

LieAlgebra LieAlgebra::from_brackets(int dim, const std::vector<StructureEntry>& entries) {
  LieAlgebra lie(dim);
  for (const auto& e : entries) {
    check_index(dim, e.i);
    check_index(dim, e.j);
    check_index(dim, e.k);
    if (e.i == e.j) throw std::invalid_argument("bracket [e_i, e_i] must vanish");
    lie.table_[static_cast<std::size_t>(e.i * dim + e.j)](e.k) += Scalar(e.c);
    lie.table_[static_cast<std::size_t>(e.j * dim + e.i)](e.k) -= Scalar(e.c);
  }
  lie.finalize();
  return lie;
}

LieAlgebra LieAlgebra::from_maurer_cartan(int dim, const std::vector<StructureEntry>& entries) {
  std::vector<StructureEntry> brackets;
  brackets.reserve(entries.size());
  for (const auto& e : entries) brackets.push_back({e.i, e.j, e.k, -e.c});
  return from_brackets(dim, brackets);
}

LieAlgebra LieAlgebra::abelian(int dim) { return from_brackets(dim, {}); }

void LieAlgebra::finalize() {
  ad_.clear();
  for (int i = 0; i < dim_; ++i) {
    ExactMatrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) m.col(j) = bracket(i, j);
    ad_.push_back(std::move(m));
  }
  std::vector<Form> d_letters;
  for (int k = 0; k < dim_; ++k) {
    Form f(dim_, 2);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) f.add(bit(i) | bit(j), -bracket(i, j)(k));
    d_letters.push_back(std::move(f));
  }
  coframe_ = Coframe(std::move(d_letters));
}

ExactVector LieAlgebra::bracket(const ExactVector& x, const ExactVector& y) const {
  ExactVector out = zero_vector(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j).is_zero() || i == j) continue;
      const Scalar c = x(i) * y(j);
      const auto& b = bracket(i, j);
      for (int k = 0; k < dim_; ++k)
        if (!b(k).is_zero()) out(k) += c * b(k);
    }
  }
  return out;
}

ExactMatrix LieAlgebra::ad(const ExactVector& x) const {
  ExactMatrix m = zeros(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (!x(i).is_zero()) m += x(i) * ad_[static_cast<std::size_t>(i)];
  return m;
}

LieValidation validate_lie_algebra(const LieAlgebra& lie) {
  LieValidation v;
  const int n = lie.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const ExactVector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        ExactVector r = lie.bracket(lie.bracket(ei, ej), ek) + lie.bracket(lie.bracket(ej, ek), ei) +
                        lie.bracket(lie.bracket(ek, ei), ej);
        if (!is_zero(r)) v.jacobi_failures.push_back({i, j, k, std::move(r)});
      }

  v.unimodular = true;
  for (int i = 0; i < n; ++i)
    if (!lie.ad(i).trace().is_zero()) v.unimodular = false;

  std::vector<ExactVector> full;
  for (int i = 0; i < n; ++i) full.push_back(unit_vector(n, i));

  auto derived = full;
  v.derived_series.push_back(n);
  while (!derived.empty()) {
    auto next = span_of_brackets(lie, derived, derived);
    if (next.size() == derived.size()) break;
    derived = std::move(next);
    v.derived_series.push_back(static_cast<int>(derived.size()));
  }
  v.solvable = derived.empty();

  auto central = full;
  v.lower_central_series.push_back(n);
  while (!central.empty()) {
    auto next = span_of_brackets(lie, full, central);
    if (next.size() == central.size()) break;
    central = std::move(next);
    v.lower_central_series.push_back(static_cast<int>(central.size()));
  }
  v.nilpotent = central.empty();
  return v;
}

GradedOperator ce_differential(const LieAlgebra& lie, int k) {
  const int n = lie.dim();
  if (k < 0 || k > n) throw std::invalid_argument("ce_differential: degree out of range");
  const auto src = basis_masks(n, k);
  const auto tgt = basis_masks(n, k + 1);
  ExactMatrix m = operator_matrix([&](const Form& f) { return lie.d(f); }, n, src, tgt);
  return {Grading::total(k), Grading::total(k + 1), std::move(m)};
}

Form lie_derivative(const LieAlgebra& lie, const ExactVector& x, const Form& a) {
  return derive(a, ExactMatrix(-lie.ad(x).transpose()));
}

ExactMatrix lie_derivative_endomorphism(const LieAlgebra& lie, const ExactVector& x, const ExactMatrix& l) {
  const ExactMatrix ad = lie.ad(x);
  return ad * l - l * ad;
}

ExactMatrix lie_derivative_bilinear(const LieAlgebra& lie, const ExactVector& x, const ExactMatrix& g) {
  const ExactMatrix ad = lie.ad(x);
  return -(ad.transpose() * g + g * ad);
}

std::vector<ExactVector> center(const LieAlgebra& lie) {
  std::vector<ExactMatrix> blocks;
  for (int j = 0; j < lie.dim(); ++j) blocks.push_back(lie.ad(j));
  return kernel_basis(vstack(blocks, lie.dim()));
}

}  // namespace hkt
