#pragma once

// Hypercomplex triples on a Lie algebra: validation, the action on forms,
// the (p,q) splitting with respect to I, invariant connections (Obata,
// Levi-Civita, Bismut) and linear solvers for special vector fields.

#include "hkt/errors.hpp"
#include "hkt/forms.hpp"
#include "hkt/graded.hpp"
#include "hkt/lie_algebra.hpp"
#include "hkt/linalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkt {

enum class Structure { I = 0, J = 1, K = 2 };
const char* structure_name(Structure s);
inline constexpr std::array<Structure, 3> kStructures{Structure::I, Structure::J, Structure::K};

/// (I, J, K) acting on vectors (column convention) with K = IJ.
class HypercomplexTriple {
 public:
  HypercomplexTriple() = default;

  static HypercomplexTriple from_vector_action(ExactMatrix i, ExactMatrix j);
  /// Endomorphisms given by their action A on 1-forms, alpha -> A alpha, in
  /// the convention (L alpha)(X) = -alpha(LX); the vector action is -A^T.
  static HypercomplexTriple from_coframe_action(const ExactMatrix& ai, const ExactMatrix& aj);

  int dim() const { return static_cast<int>(i_.rows()); }
  const ExactMatrix& I() const { return i_; }
  const ExactMatrix& J() const { return j_; }
  const ExactMatrix& K() const { return k_; }
  const ExactMatrix& operator[](Structure s) const;

 private:
  ExactMatrix i_, j_, k_;
};

struct MatrixResidual {
  std::string identity;  // e.g. "I^2 = -Id"
  int row, col;          // first offending entry, 0-based
  Scalar value;
};

struct PairResidual {
  int i, j;  // 0-based basis pair
  ExactVector residual;
};

struct HypercomplexValidation {
  std::vector<MatrixResidual> quaternion_failures;
  std::array<std::vector<PairResidual>, 3> nijenhuis;  // by Structure
  std::vector<PairResidual> abelian_failures;          // [LX,LY] - [X,Y], L in {I,J}

  bool quaternion_ok() const { return quaternion_failures.empty(); }
  bool integrable() const {
    return nijenhuis[0].empty() && nijenhuis[1].empty() && nijenhuis[2].empty();
  }
  bool valid() const { return quaternion_ok() && integrable(); }
  bool abelian() const { return valid() && abelian_failures.empty(); }
};

HypercomplexValidation validate_hypercomplex(const LieAlgebra& lie, const HypercomplexTriple& h);

/// Raw Nijenhuis tensor N_L(X, Y) = [LX,LY] - L[LX,Y] - L[X,LY] - [X,Y].
ExactVector nijenhuis(const LieAlgebra& lie, const ExactMatrix& l, const ExactVector& x, const ExactVector& y);

/// Action of an invertible endomorphism on forms of the real coframe:
/// (L a)(X_1, ..., X_k) = a(L^{-1} X_1, ..., L^{-1} X_k). Throws
/// std::invalid_argument for singular L.
Form endo_action(const ExactMatrix& l, const Form& a);
GradedOperator endo_action_on_forms(const ExactMatrix& l, int k);

/// (1,0)-part of a vector with respect to I, without the factor 1/2:
/// X - i IX.
ExactVector type10_part(const HypercomplexTriple& h, const ExactVector& x);

/// Complex coframe adapted to I. Letters 0..2n-1 span Lambda^{1,0} (the +i
/// eigenspace of the I-action on 1-forms), letters 2n..4n-1 are their
/// conjugates; a monomial with p letters below 2n and q above has type (p,q).
class BigradedFrame {
 public:
  BigradedFrame() = default;
  BigradedFrame(const LieAlgebra& lie, const HypercomplexTriple& h);

  int dim() const { return dim_; }
  int half() const { return dim_ / 2; }  // 2n
  int quaternionic_dim() const { return dim_ / 4; }  // n

  /// Columns: adapted letters in real-coframe coordinates.
  const ExactMatrix& adapted_in_real() const { return p_; }
  const ExactMatrix& real_in_adapted() const { return q_; }

  Form to_adapted(const Form& real) const { return substitute(real, q_); }
  Form to_real(const Form& adapted) const { return substitute(adapted, p_); }
  /// Components eps^a(X) of a (complex) vector.
  ExactVector vector_components(const ExactVector& x) const { return p_.transpose() * x; }

  std::pair<int, int> bidegree(Mask m) const;
  std::vector<Mask> basis(int p, int q) const;
  Form project(const Form& adapted, int p, int q) const;
  bool is_pure(const Form& adapted, int p, int q) const;

  Form conj(const Form& adapted) const;
  /// Action of I, J, K (or their inverses) on adapted forms.
  Form act(Structure s, const Form& adapted) const { return substitute(adapted, act_[static_cast<int>(s)]); }
  Form act_inverse(Structure s, const Form& adapted) const {
    return substitute(adapted, act_inv_[static_cast<int>(s)]);
  }

  Form d(const Form& adapted) const { return coframe_.d(adapted); }
  /// Dolbeault-type operators on a form of pure type (p,q).
  Form del(const Form& adapted) const;
  Form del_bar(const Form& adapted) const;
  /// J del_bar J^{-1} : (p,q) -> (p+1,q).
  Form del_j(const Form& adapted) const;

  /// Degree-0 derivation of adapted forms induced by a real letter map
  /// (letter j -> sum_k A(k,j) e^k).
  Form derive_real(const Form& adapted, const ExactMatrix& real_action) const;

 private:
  std::pair<int, int> checked_bidegree(const Form& adapted) const;

  int dim_ = 0;
  ExactMatrix p_, q_;
  ExactMatrix conj_perm_;
  std::array<ExactMatrix, 3> act_, act_inv_;
  Coframe coframe_;
};

/// Projectors onto Lambda^{p,q}, p + q = k, as matrices on the real
/// lexicographic basis of Lambda^k (complexified).
std::map<std::pair<int, int>, GradedOperator> bigrade_projectors(const BigradedFrame& frame, int k);

/// An invariant connection: the table of nabla_{e_i} e_j.
class Connection {
 public:
  Connection() = default;
  Connection(int dim, std::vector<ExactVector> table);

  int dim() const { return dim_; }
  const ExactVector& at(int i, int j) const { return table_[static_cast<std::size_t>(i * dim_ + j)]; }
  /// nabla_X Y, complex bilinear.
  ExactVector apply(const ExactVector& x, const ExactVector& y) const;
  /// Matrix of Y -> nabla_X Y.
  ExactMatrix along(const ExactVector& x) const;
  /// Matrix of X -> nabla_X Y (the endomorphism nabla Y).
  ExactMatrix derivative_of(const ExactVector& y) const;

  ExactVector torsion(const LieAlgebra& lie, const ExactVector& x, const ExactVector& y) const;
  bool torsion_free(const LieAlgebra& lie) const;
  bool preserves(const ExactMatrix& endomorphism) const;
  bool is_metric(const ExactMatrix& g) const;
  /// nabla_X on forms of the real coframe.
  Form on_form(const ExactVector& x, const Form& a) const;

  friend bool operator==(const Connection& a, const Connection& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  int dim_ = 0;
  std::vector<ExactVector> table_;
  std::vector<ExactMatrix> along_basis_;
};

/// nabla_X Y = 1/2([X,Y] + I[IX,Y] - J[X,JY] + K[IX,JY]). Throws
/// ValidationError when the triple is not integrable.
Connection obata_connection(const LieAlgebra& lie, const HypercomplexTriple& h);
/// The reduced expression 1/2([X,Y] - I[X,IY] - J[X,JY] - K[X,KY]), valid for
/// abelian structures.
Connection abelian_obata_connection(const LieAlgebra& lie, const HypercomplexTriple& h);
/// Koszul formula on invariant fields. Throws ValidationError unless g is
/// symmetric positive definite.
Connection levi_civita(const LieAlgebra& lie, const ExactMatrix& g);

struct BismutData {
  Connection connection;
  Form torsion;  // totally skew torsion 3-form T(X,Y,Z) = g(T(X,Y),Z)
  int sign = 1;  // T = -sign * (L0 acting on dF)
};

/// Bismut connection of (g, L0), D = LC + 1/2 g^{-1} T with T the skew 3-form
/// +-dF(L0., L0., L0.), the sign chosen so that D L0 = 0.
BismutData bismut_connection(const LieAlgebra& lie, const HypercomplexTriple& h, const ExactMatrix& g,
                             Structure l0);

/// Fundamental 2-form F_L(X, Y) = g(LX, Y) on the real coframe.
Form fundamental_form(const ExactMatrix& g, const ExactMatrix& l);

/// Throws ValidationError unless g is an n x n real symmetric positive
/// definite matrix.
void validate_metric(const ExactMatrix& g, Index n);

/// Metric bilinear form on vectors.
Scalar metric_pair(const ExactMatrix& g, const ExactVector& x, const ExactVector& y);

enum class FieldKind {
  HyperholomorphicReal,
  Hyperholomorphic10,
  ObataParallelReal,
  ObataParallel10,
  KillingReal,
  Killing10,
  BismutParallel10,
  HolomorphicRealI,
  Center10,
};
const char* field_kind_name(FieldKind kind);

/// Basis (canonical echelon form) of the solution space of the linear system
/// defining the requested kind of invariant vector field. Kinds involving a
/// metric require `g`.
std::vector<ExactVector> field_solver(FieldKind kind, const LieAlgebra& lie, const HypercomplexTriple& h,
                                      const ExactMatrix* g = nullptr);

/// Z hyperholomorphic, i.e. L_Z I = L_Z J = 0 (complex-linear in Z).
bool is_hyperholomorphic(const LieAlgebra& lie, const HypercomplexTriple& h, const ExactVector& z);
bool is_parallel(const Connection& nabla, const ExactVector& z);

struct ParallelObataCheck {
  bool hyperholomorphic = false;         // Z
  bool real_pair_hyperholomorphic = false;  // X and IX
  bool conjugate_hyperholomorphic = false;  // J Zbar
  bool z_parallel = false;
  bool x_parallel = false;

  bool agree() const {
    return hyperholomorphic == real_pair_hyperholomorphic && hyperholomorphic == conjugate_hyperholomorphic &&
           hyperholomorphic == z_parallel && hyperholomorphic == x_parallel;
  }
};

/// Evaluates the five conditions independently for a (1,0) vector Z. Throws
/// std::invalid_argument when Z is not of type (1,0).
ParallelObataCheck check_parallel_obata_equivalences(const LieAlgebra& lie, const HypercomplexTriple& h,
                                                     const Connection& obata, const ExactVector& z);

}  // namespace hkt
