#pragma once

// Hyperhermitian structures and the operators built from them. Forms are
// handled in the complex coframe adapted to I (see BigradedFrame) unless a
// function says "real".
//
// Hermitian products conjugate the second argument. On a bidegree block with
// lexicographic basis b_A, <x, y> = y^H H x where H(B, A) = <b_A, b_B>.

#include "hkt/hypercomplex.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkt {

using Bidegree = std::pair<int, int>;

/// Gram matrix H(B, A) = det h[A, B] of the monomials `basis`, where
/// h(a, b) = <eps^a, eps^b> on letters.
ExactMatrix gram_matrix(const ExactMatrix& h, const std::vector<Mask>& basis);

enum class Op { Del, DelBar, DelJ, Lefschetz };
const char* op_name(Op op);
Bidegree op_target(Op op, Bidegree source);
/// The source bidegree of `op` whose image lies in `target`.
Bidegree op_source(Op op, Bidegree target);

enum class LaplacianKind { Del, DelJ, DelPhi, BottChern };
const char* laplacian_name(LaplacianKind kind);

struct LeeReport {
  Form theta;                  // real coframe
  std::array<Form, 3> per_structure;  // theta computed from (g,I), (g,J), (g,K)
  bool coincide = false;
  Form lee_residual;           // del(Omega-bar^n) - theta^{1,0} ^ Omega-bar^n, adapted
  Form del_star_residual;      // del^* Omega + J theta^{0,1}, adapted
  bool lee_identity() const { return lee_residual.is_zero(); }
  bool del_star_identity() const { return del_star_residual.is_zero(); }
};

struct Classification {
  bool hkt = false;
  bool balanced = false;
  Form theta;                     // real coframe
  std::optional<Scalar> lambda;   // del_J(theta^{1,0}) = lambda Omega
  bool einstein = false;          // HKT with real lambda
  Scalar s_chern;                 // 2 Lambda(del_J theta^{1,0})
  Scalar s_chern_wedge;           // 2n del_J(theta^{1,0}) ^ Omega^{n-1} / Omega^n
  Form sl_form;                   // c with nabla Phi_0 = c Phi_0, real coframe
  bool sl_certified = false;
};

struct BochnerReport {
  Scalar del_star_alpha;     // |del^* alpha|^2
  Scalar del_star_j_alpha;   // |del^* J alpha-bar|^2
  Scalar pairing;            // (rho - J rho)(Z, I Z-bar)
  Scalar residual;           // sum of the three
  Form alpha;                // adapted
};

/// Terms of delta X^flat = -tr(nabla X) + 2 theta7(X) at one vector X, where
/// theta7 = -J delta F is the Lee form in the sign convention of the Bismut
/// torsion identity sum_i T(KX, e_i, K e_i) = 2 theta7(X).
struct CodifferentialRecord {
  Scalar codifferential;    // delta X^flat
  Scalar trace;             // tr(Y -> nabla_Y X)
  Scalar theta;             // theta(X), theta = J delta F
  Scalar torsion_trace;     // sum g^{ij} T(KX, e_i, K e_j), T the Bismut torsion of I
  Scalar residual;          // delta X^flat + tr(nabla X) + 2 theta(X)
  Scalar literal_residual;  // delta X^flat + tr(nabla X) - 2 theta(X)
};

struct BcTraceReport {
  std::vector<Form> closed_basis;  // {del a = 0, del_J a = 0} in Lambda^{2,0}
  std::vector<Form> violations;    // closed forms with del_J^* del^* a != 0
  std::vector<Form> harmonic;      // kernel of Delta_BC
  bool harmonic_equals_closed = false;
};

/// Connection form c of an invariant top (2n,0)-form under the Obata
/// connection: nabla_X Phi_0 = c(X) Phi_0, Phi_0 the product of the (1,0)
/// letters of the adapted frame. Real coframe.
Form sl_connection_form(const LieAlgebra& lie, const HypercomplexTriple& h);

class Hyperhermitian {
 public:
  /// From a metric compatible with I, J, K. Throws ValidationError.
  static Hyperhermitian from_metric(const LieAlgebra& lie, const HypercomplexTriple& h, const ExactMatrix& g);
  /// From a (2,0)-form on the real coframe, through g(X, Y) = Re 2 Omega(X, JY).
  /// Throws ValidationError unless Omega is (2,0), q-real and q-positive.
  static Hyperhermitian from_qform(const LieAlgebra& lie, const HypercomplexTriple& h, const Form& omega_real);

  const LieAlgebra& lie() const { return *lie_; }
  const HypercomplexTriple& triple() const { return *h_; }
  const BigradedFrame& frame() const { return *frame_; }
  const ExactMatrix& metric() const { return g_; }
  int n() const { return frame_->quaternionic_dim(); }
  int dim() const { return frame_->dim(); }
  bool unimodular() const { return unimodular_; }

  const Form& omega() const { return omega_; }  // adapted
  /// <eps^a, eps^b> for the adapted letters.
  const ExactMatrix& letter_products() const { return h_adapted_; }
  Form omega_real() const { return frame_->to_real(omega_); }
  const Form& volume() const { return vol_; }   // adapted, Omega^n ^ Omega-bar^n / (n!)^2
  Form fundamental(Structure s) const { return fundamental_form(g_, triple()[s]); }

  // -- Hermitian products ---------------------------------------------------
  const ExactMatrix& gram(Bidegree b) const;
  Scalar inner(const Form& a, const Form& b) const;
  Scalar norm2(const Form& a) const { return inner(a, a); }
  /// Real inner product on the real coframe, degree k.
  const ExactMatrix& real_gram(int k) const;

  // -- Hodge stars (conjugate-linear) ------------------------------------------
  Form hodge_star(const Form& beta) const;
  /// (p,0) -> (2n-p,0), defined by a ^ star(b) = <a,b> Omega^n/n!.
  Form star_phi(const Form& beta) const;

  // -- Operators on bidegree blocks -----------------------------------------
  ExactVector coords(const Form& a, Bidegree b) const;
  Form form_from(const ExactVector& v, Bidegree b) const;
  Form apply_op(Op op, const Form& a) const;
  ExactMatrix op_matrix(Op op, Bidegree source) const;
  /// Matrix adjoint of `op` restricted to the block mapping into `target`;
  /// maps target -> op_source(op, target). Refuses non-unimodular algebras.
  ExactMatrix adjoint_matrix(Op op, Bidegree target) const;
  Form apply_adjoint(Op op, const Form& a) const;
  /// Lambda, the adjoint of Omega ^ -, applied blockwise.
  Form lefschetz_dual(const Form& a) const;

  /// del^{star_Phi} = -star_Phi del star_Phi on (p,0).
  Form del_star_phi(const Form& a) const;
  /// -* del * on any block.
  Form del_star_hodge(const Form& a) const;

  ExactMatrix laplacian(LaplacianKind kind, Bidegree b) const;
  std::vector<Form> harmonic_space(LaplacianKind kind, Bidegree b) const;
  /// Kernel of {del, del_J, del_J^* del^*} on (2,0).
  std::vector<Form> bc_alternative_space() const;

  // -- Lee form and classification ------------------------------------------
  LeeReport lee_form() const;
  Classification classify() const;

  /// (rho - J rho)(Z, I Z-bar) := -2i (del t^{0,1} - J del t^{0,1})(Z, I Z-bar)
  /// with t = theta7 = -theta (see CodifferentialRecord).
  Scalar q_ricci_pairing(const ExactVector& z) const;
  /// Obata connection. Throws PreconditionError on non-HKT structures.
  CodifferentialRecord codifferential_identity(const ExactVector& x) const;
  /// delta X^flat on the real coframe.
  Scalar codifferential_of_dual(const ExactVector& x) const;
  /// alpha = Omega(Z-bar, .) = g(J Z-bar, .), adapted.
  Form dual_form(const ExactVector& z) const;
  BochnerReport bochner_report(const ExactVector& z) const;
  BcTraceReport bc_trace_check() const;

  bool is_hkt() const { return frame_->del(omega_).is_zero(); }

 private:
  Hyperhermitian() = default;
  void require_unimodular(const char* what) const;
  const ExactMatrix& gram_inverse(Bidegree b) const;
  Form real_codifferential(const Form& a) const;
  Form lee_from(Structure s) const;

  std::shared_ptr<const LieAlgebra> lie_;
  std::shared_ptr<const HypercomplexTriple> h_;
  std::shared_ptr<const BigradedFrame> frame_;
  ExactMatrix g_;
  ExactMatrix h_adapted_;  // <eps^a, eps^b> for the adapted letters
  Form omega_;
  Form vol_;
  Scalar vol_coeff_;       // vol = vol_coeff * eps^{all}
  Scalar top_coeff_;       // Omega^n / n! = top_coeff * eps^{0..2n-1}
  bool unimodular_ = false;

  struct Cache {
    std::mutex mutex;
    std::map<Bidegree, ExactMatrix> gram, gram_inv;
    std::map<int, ExactMatrix> real_gram;
    std::optional<Connection> obata;
    std::optional<LeeReport> lee;
    std::optional<Classification> cls;
    std::optional<Form> torsion_i;
  };
  // Computed outside the lock; a racing duplicate is discarded.
  template <class T, class F>
  const T& memo(std::optional<T> Cache::*slot, F compute) const {
    {
      std::lock_guard lock(cache_->mutex);
      if (auto& v = (*cache_).*slot) return *v;
    }
    T value = compute();
    std::lock_guard lock(cache_->mutex);
    auto& v = (*cache_).*slot;
    if (!v) v = std::move(value);
    return *v;
  }
  const Connection& obata() const;
  const Form& bismut_torsion_i() const;
  LeeReport compute_lee() const;
  Classification compute_classification() const;
  std::shared_ptr<Cache> cache_;
};

}  // namespace hkt
