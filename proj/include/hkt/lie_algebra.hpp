#pragma once

// Real Lie algebras given by exact structure constants, and the
// Chevalley-Eilenberg calculus on their invariant forms.
//
// Sign convention: d alpha(X, Y) = -alpha([X, Y]) on 1-forms, so a
// Maurer-Cartan table  de^k = sum c e^i ^ e^j  corresponds to
// [e_i, e_j] = -sum_k c e_k.

#include "hkt/forms.hpp"
#include "hkt/graded.hpp"
#include "hkt/linalg.hpp"

#include <string>
#include <vector>

namespace hkt {

/// One structure-constant record with 0-based indices: either
/// [e_i, e_j] += c e_k, or de^k += c e^i ^ e^j.
struct StructureEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  Rational c;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;

  static LieAlgebra from_brackets(int dim, const std::vector<StructureEntry>& entries);
  static LieAlgebra from_maurer_cartan(int dim, const std::vector<StructureEntry>& entries);
  static LieAlgebra abelian(int dim);

  int dim() const { return dim_; }
  /// [e_i, e_j].
  const ExactVector& bracket(int i, int j) const {
    return table_[static_cast<std::size_t>(i * dim_ + j)];
  }
  ExactVector bracket(const ExactVector& x, const ExactVector& y) const;
  /// Matrix of Y -> [X, Y].
  ExactMatrix ad(const ExactVector& x) const;
  ExactMatrix ad(int i) const { return ad_[static_cast<std::size_t>(i)]; }

  /// The real coframe e^1..e^dim with its structure equations.
  const Coframe& coframe() const { return coframe_; }
  Form d(const Form& a) const { return coframe_.d(a); }

 private:
  explicit LieAlgebra(int dim);
  void finalize();

  int dim_ = 0;
  std::vector<ExactVector> table_;
  std::vector<ExactMatrix> ad_;
  Coframe coframe_;
};

struct JacobiFailure {
  int i, j, k;  // 0-based triple
  ExactVector residual;
};

struct LieValidation {
  std::vector<JacobiFailure> jacobi_failures;
  bool unimodular = false;
  bool nilpotent = false;
  bool solvable = false;
  std::vector<int> derived_series;        // dimensions g, [g,g], ...
  std::vector<int> lower_central_series;  // dimensions g, [g,g], [g,[g,g]], ...

  bool valid() const { return jacobi_failures.empty(); }
};

LieValidation validate_lie_algebra(const LieAlgebra& lie);

/// d : Lambda^k -> Lambda^{k+1} on the lexicographic real basis.
GradedOperator ce_differential(const LieAlgebra& lie, int k);

/// L_X on invariant forms, endomorphisms (Y -> [X, LY] - L[X, Y]) and
/// bilinear forms ((L_X g)(Y, Z) = -g([X, Y], Z) - g(Y, [X, Z])).
Form lie_derivative(const LieAlgebra& lie, const ExactVector& x, const Form& a);
ExactMatrix lie_derivative_endomorphism(const LieAlgebra& lie, const ExactVector& x, const ExactMatrix& l);
ExactMatrix lie_derivative_bilinear(const LieAlgebra& lie, const ExactVector& x, const ExactMatrix& g);

/// Basis of the center {X : [X, Y] = 0 for all Y}. The basis is real; over C
/// it spans the complexified center.
std::vector<ExactVector> center(const LieAlgebra& lie);

}  // namespace hkt
