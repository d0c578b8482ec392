#include "hkt/hermitian.hpp"

#include <stdexcept>

namespace hkt {

namespace {

Mask full_mask(int letters) { return letters >= 32 ? ~Mask{0} : (Mask{1} << letters) - 1; }

ExactMatrix submatrix(const ExactMatrix& h, Mask rows, Mask cols) {
  const auto r = letters(rows), c = letters(cols);
  ExactMatrix m(static_cast<Index>(r.size()), static_cast<Index>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = h(r[i], c[j]);
  return m;
}

ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw std::logic_error("operator shape mismatch");
  if (a.cols() == 0 || a.rows() == 0 || b.cols() == 0) return zeros(a.rows(), b.cols());
  return a * b;
}

template <class... Rest>
ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b, const Rest&... rest) {
  return mul(mul(a, b), rest...);
}

int op_shift(Op op) { return op == Op::Lefschetz ? 2 : 1; }

Scalar top_coefficient(const Form& a, Mask top) { return a.coeff(top); }

}  // namespace

ExactMatrix gram_matrix(const ExactMatrix& h, const std::vector<Mask>& basis) {
  const Index n = static_cast<Index>(basis.size());
  ExactMatrix out(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      out(b, a) = basis[static_cast<std::size_t>(a)] == 0 ? Scalar(1)
                                                         : determinant(submatrix(h, basis[static_cast<std::size_t>(a)],
                                                                                 basis[static_cast<std::size_t>(b)]));
  return out;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Del: return "del";
    case Op::DelBar: return "delbar";
    case Op::DelJ: return "delJ";
    case Op::Lefschetz: return "L";
  }
  return "?";
}

Bidegree op_target(Op op, Bidegree s) {
  switch (op) {
    case Op::Del:
    case Op::DelJ: return {s.first + 1, s.second};
    case Op::DelBar: return {s.first, s.second + 1};
    case Op::Lefschetz: return {s.first + 2, s.second};
  }
  return s;
}

Bidegree op_source(Op op, Bidegree t) {
  switch (op) {
    case Op::Del:
    case Op::DelJ: return {t.first - 1, t.second};
    case Op::DelBar: return {t.first, t.second - 1};
    case Op::Lefschetz: return {t.first - 2, t.second};
  }
  return t;
}

const char* laplacian_name(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::Del: return "del";
    case LaplacianKind::DelJ: return "delJ";
    case LaplacianKind::DelPhi: return "delPhi";
    case LaplacianKind::BottChern: return "BC";
  }
  return "?";
}

Form sl_connection_form(const LieAlgebra& lie, const HypercomplexTriple& h) {
  const Connection obata = obata_connection(lie, h);
  const BigradedFrame frame(lie, h);
  const int n = lie.dim();
  const Mask top = full_mask(frame.half());
  const Form phi0 = Form::monomial(n, top);
  ExactVector c(n);
  for (int i = 0; i < n; ++i) {
    const Form moved = frame.derive_real(phi0, ExactMatrix(-obata.along(unit_vector(n, i)).transpose()));
    c(i) = moved.coeff(top);
    if (moved != c(i) * phi0) throw ConsistencyError("Obata connection does not preserve the canonical bundle");
  }
  return Form::one_form(c);
}

// ---------------------------------------------------------------------------

Hyperhermitian Hyperhermitian::from_metric(const LieAlgebra& lie, const HypercomplexTriple& h,
                                           const ExactMatrix& g) {
  const int n = lie.dim();
  validate_metric(g, n);
  for (Structure s : kStructures)
    if (!is_zero(ExactMatrix(h[s].transpose() * g * h[s] - g)))
      throw ValidationError(std::string("metric is not compatible with ") + structure_name(s));

  Hyperhermitian out;
  out.lie_ = std::make_shared<const LieAlgebra>(lie);
  out.h_ = std::make_shared<const HypercomplexTriple>(h);
  out.frame_ = std::make_shared<const BigradedFrame>(lie, h);
  out.g_ = g;
  out.cache_ = std::make_shared<Cache>();
  const BigradedFrame& frame = *out.frame_;

  const Scalar half = Scalar(Rational(1, 2));
  const Form omega_real = half * fundamental_form(g, h.J()) - (half * Scalar::i()) * fundamental_form(g, h.K());
  out.omega_ = frame.to_adapted(omega_real);
  if (!frame.is_pure(out.omega_, 2, 0)) throw ConsistencyError("Omega built from g is not of type (2,0)");
  if (frame.act(Structure::J, out.omega_) != frame.conj(out.omega_))
    throw ConsistencyError("Omega built from g is not q-real");

  const int qn = out.n();
  const Rational nf = factorial(qn);
  const Form on = power(out.omega_, qn);
  out.vol_ = Scalar(Rational(1) / (nf * nf)) * wedge(on, power(frame.conj(out.omega_), qn));
  out.vol_coeff_ = top_coefficient(out.vol_, full_mask(n));
  out.top_coeff_ = top_coefficient(on, full_mask(frame.half())) / Scalar(nf);

  const ExactMatrix& p = frame.adapted_in_real();
  out.h_adapted_ = p.transpose() * (*inverse(g)) * conjugate(p);

  out.unimodular_ = true;
  for (int i = 0; i < n; ++i)
    if (!lie.ad(i).trace().is_zero()) out.unimodular_ = false;
  return out;
}

Hyperhermitian Hyperhermitian::from_qform(const LieAlgebra& lie, const HypercomplexTriple& h,
                                          const Form& omega_real) {
  const int n = lie.dim();
  if (omega_real.dim() != n || omega_real.degree() != 2) throw ValidationError("Omega must be a 2-form");
  const BigradedFrame frame(lie, h);
  const Form om = frame.to_adapted(omega_real);
  if (!frame.is_pure(om, 2, 0)) throw ValidationError("Omega is not of type (2,0)");
  if (frame.act(Structure::J, om) != frame.conj(om)) throw ValidationError("Omega is not q-real");

  ExactMatrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s(i, j) = evaluate(omega_real, {unit_vector(n, i), ExactVector(h.J() * unit_vector(n, j))});
  ExactMatrix sym(n, n), g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sym(i, j) = Scalar((s(i, j).re() + s(j, i).re()) / 2);
      g(i, j) = Scalar(2 * s(i, j).re());
    }
  if (!is_positive_definite(sym)) throw ValidationError("Omega is not q-positive");
  Hyperhermitian out = from_metric(lie, h, g);
  if (out.omega_ != om) throw ConsistencyError("Omega -> g -> Omega round trip failed");
  return out;
}

void Hyperhermitian::require_unimodular(const char* what) const {
  if (!unimodular_)
    throw PreconditionError(std::string(what) + ": adjoints need a unimodular Lie algebra");
}

// ---------------------------------------------------------------------------

const ExactMatrix& Hyperhermitian::gram(Bidegree b) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->gram.find(b);
  if (it != cache_->gram.end()) return it->second;
  return cache_->gram.emplace(b, gram_matrix(h_adapted_, frame_->basis(b.first, b.second))).first->second;
}

const ExactMatrix& Hyperhermitian::gram_inverse(Bidegree b) const {
  const ExactMatrix& g = gram(b);
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->gram_inv.find(b);
  if (it != cache_->gram_inv.end()) return it->second;
  auto inv = g.rows() == 0 ? std::optional<ExactMatrix>(g) : inverse(g);
  if (!inv) throw ConsistencyError("degenerate Gram matrix");
  return cache_->gram_inv.emplace(b, std::move(*inv)).first->second;
}

const ExactMatrix& Hyperhermitian::real_gram(int k) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->real_gram.find(k);
    if (it != cache_->real_gram.end()) return it->second;
  }
  ExactMatrix m = gram_matrix(*inverse(g_), basis_masks(dim(), k));
  std::lock_guard lock(cache_->mutex);
  return cache_->real_gram.emplace(k, std::move(m)).first->second;
}

ExactVector Hyperhermitian::coords(const Form& a, Bidegree b) const {
  const auto basis = frame_->basis(b.first, b.second);
  if (a.is_zero()) return zero_vector(static_cast<Index>(basis.size()));
  return a.coefficients(basis);
}

Form Hyperhermitian::form_from(const ExactVector& v, Bidegree b) const {
  return Form::from_coefficients(dim(), b.first + b.second, frame_->basis(b.first, b.second), v);
}

Scalar Hyperhermitian::inner(const Form& a, const Form& b) const {
  if (a.degree() != b.degree()) return Scalar(0);
  const int k = a.degree();
  Scalar out;
  for (int p = 0; p <= k; ++p) {
    const Bidegree bd{p, k - p};
    const Form ap = frame_->project(a, p, k - p), bp = frame_->project(b, p, k - p);
    if (ap.is_zero() || bp.is_zero()) continue;
    const ExactVector x = coords(ap, bd), y = coords(bp, bd);
    out += (y.adjoint() * gram(bd) * x)(0, 0);
  }
  return out;
}

Form Hyperhermitian::hodge_star(const Form& beta) const {
  const int k = beta.degree();
  const Mask full = full_mask(dim());
  Form out(dim(), dim() - k);
  for (int p = 0; p <= k; ++p) {
    const Bidegree bd{p, k - p};
    const Form part = frame_->project(beta, p, k - p);
    if (part.is_zero()) continue;
    const auto basis = frame_->basis(p, k - p);
    const ExactVector y = coords(part, bd);
    const ExactMatrix row = y.adjoint() * gram(bd);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Scalar& c = row(0, static_cast<Index>(a));
      if (c.is_zero()) continue;
      const Mask comp = full ^ basis[a];
      out.add(comp, c * vol_coeff_ * Scalar(merge_sign(basis[a], comp)));
    }
  }
  return out;
}

Form Hyperhermitian::star_phi(const Form& beta) const {
  const int p = beta.degree();
  if (!frame_->is_pure(beta, p, 0) && !beta.is_zero()) throw std::invalid_argument("star_Phi needs a (p,0)-form");
  const Mask hol = full_mask(frame_->half());
  Form out(dim(), frame_->half() - p);
  if (beta.is_zero()) return out;
  const Bidegree bd{p, 0};
  const auto basis = frame_->basis(p, 0);
  const ExactMatrix row = coords(beta, bd).adjoint() * gram(bd);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Scalar& c = row(0, static_cast<Index>(a));
    if (c.is_zero()) continue;
    const Mask comp = hol ^ basis[a];
    out.add(comp, c * top_coeff_ * Scalar(merge_sign(basis[a], comp)));
  }
  return out;
}

Form Hyperhermitian::apply_op(Op op, const Form& a) const {
  switch (op) {
    case Op::Del: return frame_->del(a);
    case Op::DelBar: return frame_->del_bar(a);
    case Op::DelJ: return frame_->del_j(a);
    case Op::Lefschetz: return wedge(omega_, a);
  }
  throw std::invalid_argument("bad operator");
}

ExactMatrix Hyperhermitian::op_matrix(Op op, Bidegree source) const {
  const Bidegree target = op_target(op, source);
  const auto src = frame_->basis(source.first, source.second);
  const auto tgt = frame_->basis(target.first, target.second);
  if (src.empty() || tgt.empty()) return zeros(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
  return operator_matrix([&](const Form& f) { return apply_op(op, f); }, dim(), src, tgt);
}

ExactMatrix Hyperhermitian::adjoint_matrix(Op op, Bidegree target) const {
  require_unimodular("adjoint");
  const Bidegree source = op_source(op, target);
  const ExactMatrix t = op_matrix(op, source);
  if (t.rows() == 0 || t.cols() == 0) return zeros(t.cols(), t.rows());
  return gram_inverse(source) * t.adjoint() * gram(target);
}

Form Hyperhermitian::apply_adjoint(Op op, const Form& a) const {
  const int k = a.degree();
  const int shift = op_shift(op);
  if (k < shift) return Form(dim(), 0);
  Form out(dim(), k - shift);
  for (int p = 0; p <= k; ++p) {
    const Bidegree t{p, k - p};
    const Form part = frame_->project(a, p, k - p);
    if (part.is_zero()) continue;
    const Bidegree s = op_source(op, t);
    if (s.first < 0 || s.second < 0) continue;
    out += form_from(adjoint_matrix(op, t) * coords(part, t), s);
  }
  return out;
}

Form Hyperhermitian::lefschetz_dual(const Form& a) const { return apply_adjoint(Op::Lefschetz, a); }

Form Hyperhermitian::del_star_phi(const Form& a) const { return -star_phi(frame_->del(star_phi(a))); }

Form Hyperhermitian::del_star_hodge(const Form& a) const { return -hodge_star(frame_->del(hodge_star(a))); }

ExactMatrix Hyperhermitian::laplacian(LaplacianKind kind, Bidegree b) const {
  const auto [p, q] = b;
  const int m = frame_->half();
  if (p < 0 || q < 0 || p > m || q > m) throw std::invalid_argument("grading out of range");
  switch (kind) {
    case LaplacianKind::Del:
    case LaplacianKind::DelJ: {
      const Op op = kind == LaplacianKind::Del ? Op::Del : Op::DelJ;
      const Bidegree up{p + 1, q}, down{p - 1, q};
      return mul(adjoint_matrix(op, up), op_matrix(op, b)) + mul(op_matrix(op, down), adjoint_matrix(op, b));
    }
    case LaplacianKind::DelPhi: {
      if (q != 0) throw std::invalid_argument("the (del, Phi)-Laplacian acts on (p,0)-forms");
      require_unimodular("Laplacian");
      const auto star_block = [&](int top) {
        const auto src = frame_->basis(top, 0), tgt = frame_->basis(top - 1, 0);
        if (src.empty() || tgt.empty()) return zeros(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
        return operator_matrix([&](const Form& f) { return del_star_phi(f); }, dim(), src, tgt);
      };
      return mul(star_block(p + 1), op_matrix(Op::Del, b)) + mul(op_matrix(Op::Del, {p - 1, 0}), star_block(p));
    }
    case LaplacianKind::BottChern: {
      if (b != Bidegree{2, 0}) throw std::invalid_argument("the Bott-Chern Laplacian is defined on (2,0)-forms");
      const ExactMatrix d2 = op_matrix(Op::Del, {2, 0}), dj2 = op_matrix(Op::DelJ, {2, 0});
      const ExactMatrix d3 = op_matrix(Op::Del, {3, 0});
      const ExactMatrix d1 = op_matrix(Op::Del, {1, 0}), dj0 = op_matrix(Op::DelJ, {0, 0});
      const ExactMatrix ds3 = adjoint_matrix(Op::Del, {3, 0}), djs3 = adjoint_matrix(Op::DelJ, {3, 0});
      const ExactMatrix ds2 = adjoint_matrix(Op::Del, {2, 0}), djs1 = adjoint_matrix(Op::DelJ, {1, 0});
      const ExactMatrix ds4 = adjoint_matrix(Op::Del, {4, 0});
      return mul(ds3, d2) + mul(djs3, dj2) + mul(d1, dj0, djs1, ds2) + mul(djs3, ds4, d3, dj2) +
             mul(djs3, d2, ds3, dj2) + mul(ds3, dj2, djs3, d2);
    }
  }
  throw std::invalid_argument("bad Laplacian kind");
}

std::vector<Form> Hyperhermitian::harmonic_space(LaplacianKind kind, Bidegree b) const {
  std::vector<Form> out;
  const ExactMatrix lap = laplacian(kind, b);
  if (lap.cols() == 0) return out;
  for (const auto& v : kernel_basis(lap)) out.push_back(form_from(v, b));
  return out;
}

std::vector<Form> Hyperhermitian::bc_alternative_space() const {
  const ExactMatrix d2 = op_matrix(Op::Del, {2, 0}), dj2 = op_matrix(Op::DelJ, {2, 0});
  const ExactMatrix third = mul(adjoint_matrix(Op::DelJ, {1, 0}), adjoint_matrix(Op::Del, {2, 0}));
  const ExactMatrix stacked = vstack({d2, dj2, third}, d2.cols());
  std::vector<Form> out;
  for (const auto& v : kernel_basis(stacked)) out.push_back(form_from(v, {2, 0}));
  return out;
}

// ---------------------------------------------------------------------------

Form Hyperhermitian::real_codifferential(const Form& a) const {
  require_unimodular("codifferential");
  const int k = a.degree();
  if (k == 0) return Form(dim(), 0);
  const ExactMatrix t = ce_differential(*lie_, k - 1).matrix;
  const ExactMatrix delta = *inverse(real_gram(k - 1)) * t.transpose() * real_gram(k);
  const auto basis = basis_masks(dim(), k);
  return Form::from_coefficients(dim(), k - 1, basis_masks(dim(), k - 1), delta * a.coefficients(basis));
}

Form Hyperhermitian::lee_from(Structure s) const {
  const Form df = real_codifferential(fundamental(s));
  ExactVector v = zero_vector(dim());
  for (const auto& [m, c] : df.terms()) v(letters(m).front()) = c;
  return endo_action(triple()[s], Form::one_form(v));
}

const Connection& Hyperhermitian::obata() const {
  return memo(&Cache::obata, [&] { return obata_connection(*lie_, *h_); });
}

const Form& Hyperhermitian::bismut_torsion_i() const {
  return memo(&Cache::torsion_i, [&] { return bismut_connection(*lie_, *h_, g_, Structure::I).torsion; });
}

LeeReport Hyperhermitian::lee_form() const {
  return memo(&Cache::lee, [&] { return compute_lee(); });
}

Classification Hyperhermitian::classify() const {
  return memo(&Cache::cls, [&] { return compute_classification(); });
}

LeeReport Hyperhermitian::compute_lee() const {
  LeeReport r;
  for (Structure s : kStructures) r.per_structure[static_cast<std::size_t>(s)] = lee_from(s);
  r.theta = r.per_structure[0];
  r.coincide = r.per_structure[0] == r.per_structure[1] && r.per_structure[0] == r.per_structure[2];
  const Form theta = frame_->to_adapted(r.theta);
  const Form t10 = frame_->project(theta, 1, 0), t01 = frame_->project(theta, 0, 1);
  const Form obar_n = power(frame_->conj(omega_), n());
  r.lee_residual = frame_->del(obar_n) - wedge(t10, obar_n);
  r.del_star_residual = apply_adjoint(Op::Del, omega_) + frame_->act(Structure::J, t01);
  return r;
}

Classification Hyperhermitian::compute_classification() const {
  Classification c;
  c.hkt = is_hkt();
  const LeeReport lee = lee_form();
  c.theta = lee.theta;
  c.balanced = lee.theta.is_zero();
  const Form t10 = frame_->project(frame_->to_adapted(lee.theta), 1, 0);
  const Form x = frame_->del_j(t10);
  c.lambda = solve_proportionality(coords(x, {2, 0}), coords(omega_, {2, 0}));
  c.einstein = c.hkt && c.lambda && c.lambda->is_real();
  c.s_chern = Scalar(2) * lefschetz_dual(x).coeff(0);
  const Mask hol = full_mask(frame_->half());
  const Scalar num = wedge(x, power(omega_, n() - 1)).coeff(hol);
  const Scalar den = power(omega_, n()).coeff(hol);
  c.s_chern_wedge = Scalar(2 * n()) * num / den;
  c.sl_form = sl_connection_form(*lie_, *h_);
  c.sl_certified = c.sl_form.is_zero();
  return c;
}

Scalar Hyperhermitian::q_ricci_pairing(const ExactVector& z) const {
  const Form theta = frame_->to_adapted(-lee_form().theta);
  const Form w = frame_->del(frame_->project(theta, 0, 1));
  const Form f = Scalar(0, -2) * (w - frame_->act(Structure::J, w));
  const ExactVector izbar = triple().I() * conjugate(z);
  return evaluate(f, {frame_->vector_components(z), frame_->vector_components(izbar)});
}

Scalar Hyperhermitian::codifferential_of_dual(const ExactVector& x) const {
  return real_codifferential(Form::one_form(ExactVector(g_ * x))).coeff(0);
}

CodifferentialRecord Hyperhermitian::codifferential_identity(const ExactVector& x) const {
  if (!is_hkt()) throw PreconditionError("needs an HKT structure");
  const Connection& obata = this->obata();
  const Form theta = lee_form().theta;
  CodifferentialRecord r;
  for (int i = 0; i < dim(); ++i) r.theta += theta.coeff(bit(i)) * x(i);
  r.codifferential = codifferential_of_dual(x);
  r.trace = obata.derivative_of(x).trace();
  const Form& t = bismut_torsion_i();
  const ExactMatrix ginv = *inverse(g_);
  const ExactVector kx = triple().K() * x;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (!ginv(i, j).is_zero())
        r.torsion_trace += ginv(i, j) * evaluate(t, {kx, unit_vector(dim(), i), ExactVector(triple().K() * unit_vector(dim(), j))});
  r.residual = r.codifferential + r.trace + Scalar(2) * r.theta;
  r.literal_residual = r.codifferential + r.trace - Scalar(2) * r.theta;
  return r;
}

Form Hyperhermitian::dual_form(const ExactVector& z) const {
  return interior(frame_->vector_components(conjugate(z)), omega_);
}

BochnerReport Hyperhermitian::bochner_report(const ExactVector& z) const {
  if (!is_hkt()) throw PreconditionError("the Bochner formula assumes an HKT structure");
  if (!is_zero(ExactVector(triple().I() * z - Scalar::i() * z))) throw std::invalid_argument("Z is not of type (1,0)");
  if (!is_hyperholomorphic(*lie_, *h_, z)) throw std::invalid_argument("Z is not hyperholomorphic");
  BochnerReport r;
  r.alpha = dual_form(z);
  const Form j_alpha = frame_->act(Structure::J, frame_->conj(r.alpha));
  r.del_star_alpha = norm2(apply_adjoint(Op::Del, r.alpha));
  r.del_star_j_alpha = norm2(apply_adjoint(Op::Del, j_alpha));
  r.pairing = q_ricci_pairing(z);
  r.residual = r.del_star_alpha + r.del_star_j_alpha + r.pairing;
  return r;
}

BcTraceReport Hyperhermitian::bc_trace_check() const {
  if (!is_hkt() || !lee_form().theta.is_zero()) throw PreconditionError("needs a balanced HKT structure");
  BcTraceReport r;
  const ExactMatrix d2 = op_matrix(Op::Del, {2, 0}), dj2 = op_matrix(Op::DelJ, {2, 0});
  const ExactMatrix trace_op = mul(adjoint_matrix(Op::DelJ, {1, 0}), adjoint_matrix(Op::Del, {2, 0}));
  for (const auto& v : kernel_basis(vstack({d2, dj2}, d2.cols()))) {
    r.closed_basis.push_back(form_from(v, {2, 0}));
    if (!is_zero(ExactVector(trace_op * v))) r.violations.push_back(r.closed_basis.back());
  }
  r.harmonic = harmonic_space(LaplacianKind::BottChern, {2, 0});
  std::vector<ExactVector> a, b;
  for (const auto& f : r.closed_basis) a.push_back(coords(f, {2, 0}));
  for (const auto& f : r.harmonic) b.push_back(coords(f, {2, 0}));
  r.harmonic_equals_closed = same_span(a, b, static_cast<Index>(frame_->basis(2, 0).size()));
  return r;
}

}  // namespace hkt
