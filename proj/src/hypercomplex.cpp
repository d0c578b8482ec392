#include "hkt/hypercomplex.hpp"

#include <stdexcept>

namespace hkt {

namespace {

std::size_t idx(Structure s) { return static_cast<std::size_t>(s); }

void check_square(const ExactMatrix& m, Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw ValidationError(std::string(what) + ": wrong shape");
}

std::optional<MatrixResidual> first_nonzero(const std::string& name, const ExactMatrix& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) return MatrixResidual{name, static_cast<int>(r), static_cast<int>(c), m(r, c)};
  return std::nullopt;
}

ExactVector real_part(const ExactVector& v) {
  ExactVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = Scalar(v(i).re());
  return out;
}

ExactMatrix inverse_or_throw(const ExactMatrix& l) {
  auto inv = inverse(l);
  if (!inv) throw std::invalid_argument("endomorphism is singular");
  return *inv;
}

void append_flat(std::vector<Scalar>& out, const ExactMatrix& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
}

bool is_type10(const HypercomplexTriple& h, const ExactVector& z) {
  return is_zero(ExactVector(h.I() * z - Scalar::i() * z));
}

}  // namespace

const char* structure_name(Structure s) {
  switch (s) {
    case Structure::I: return "I";
    case Structure::J: return "J";
    case Structure::K: return "K";
  }
  return "?";
}

HypercomplexTriple HypercomplexTriple::from_vector_action(ExactMatrix i, ExactMatrix j) {
  if (i.rows() != i.cols() || j.rows() != i.rows() || j.cols() != i.cols())
    throw ValidationError("hypercomplex triple: I and J must be square of the same size");
  HypercomplexTriple h;
  h.k_ = i * j;
  h.i_ = std::move(i);
  h.j_ = std::move(j);
  return h;
}

HypercomplexTriple HypercomplexTriple::from_coframe_action(const ExactMatrix& ai, const ExactMatrix& aj) {
  return from_vector_action(ExactMatrix(-ai.transpose()), ExactMatrix(-aj.transpose()));
}

const ExactMatrix& HypercomplexTriple::operator[](Structure s) const {
  switch (s) {
    case Structure::I: return i_;
    case Structure::J: return j_;
    case Structure::K: return k_;
  }
  throw std::invalid_argument("bad structure");
}

ExactVector nijenhuis(const LieAlgebra& lie, const ExactMatrix& l, const ExactVector& x, const ExactVector& y) {
  const ExactVector lx = l * x, ly = l * y;
  return lie.bracket(lx, ly) - l * lie.bracket(lx, y) - l * lie.bracket(x, ly) - lie.bracket(x, y);
}

HypercomplexValidation validate_hypercomplex(const LieAlgebra& lie, const HypercomplexTriple& h) {
  const Index n = lie.dim();
  check_square(h.I(), n, "I");
  check_square(h.J(), n, "J");
  HypercomplexValidation v;
  const ExactMatrix id = identity(n);
  const std::pair<const char*, ExactMatrix> identities[] = {
      {"I^2 = -Id", h.I() * h.I() + id},
      {"J^2 = -Id", h.J() * h.J() + id},
      {"K^2 = -Id", h.K() * h.K() + id},
      {"IJ = -JI", h.I() * h.J() + h.J() * h.I()},
  };
  for (const auto& [name, residual] : identities)
    if (auto r = first_nonzero(name, residual)) v.quaternion_failures.push_back(*r);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ExactVector ei = unit_vector(n, i), ej = unit_vector(n, j);
      for (Structure s : kStructures) {
        ExactVector r = nijenhuis(lie, h[s], ei, ej);
        if (!is_zero(r)) v.nijenhuis[idx(s)].push_back({i, j, std::move(r)});
      }
      for (Structure s : {Structure::I, Structure::J}) {
        ExactVector r = lie.bracket(ExactVector(h[s] * ei), ExactVector(h[s] * ej)) - lie.bracket(ei, ej);
        if (!is_zero(r)) v.abelian_failures.push_back({i, j, std::move(r)});
      }
    }
  return v;
}

Form endo_action(const ExactMatrix& l, const Form& a) {
  if (l.rows() != a.dim() || l.cols() != a.dim()) throw std::invalid_argument("endo_action: shape mismatch");
  return substitute(a, ExactMatrix(inverse_or_throw(l).transpose()));
}

GradedOperator endo_action_on_forms(const ExactMatrix& l, int k) {
  const int n = static_cast<int>(l.rows());
  const ExactMatrix m = inverse_or_throw(l).transpose();
  const auto basis = basis_masks(n, k);
  return {Grading::total(k), Grading::total(k),
          operator_matrix([&](const Form& f) { return substitute(f, m); }, n, basis, basis)};
}

ExactVector type10_part(const HypercomplexTriple& h, const ExactVector& x) {
  return x - Scalar::i() * (h.I() * x);
}

// ---------------------------------------------------------------------------

BigradedFrame::BigradedFrame(const LieAlgebra& lie, const HypercomplexTriple& h) : dim_(lie.dim()) {
  if (dim_ % 4 != 0) throw ValidationError("hypercomplex dimension must be a multiple of 4");
  check_square(h.I(), dim_, "I");
  const int m = dim_ / 2;
  const ExactMatrix on_one_forms = -h.I().transpose();
  const auto holo = kernel_basis(ExactMatrix(on_one_forms - Scalar::i() * identity(dim_)));
  if (static_cast<int>(holo.size()) != m) throw ValidationError("I has no splitting into +-i eigenspaces");

  p_ = zeros(dim_, dim_);
  for (int a = 0; a < m; ++a) {
    p_.col(a) = holo[static_cast<std::size_t>(a)];
    p_.col(a + m) = conjugate(holo[static_cast<std::size_t>(a)]);
  }
  q_ = inverse_or_throw(p_);

  conj_perm_ = zeros(dim_, dim_);
  for (int a = 0; a < m; ++a) {
    conj_perm_(a + m, a) = Scalar(1);
    conj_perm_(a, a + m) = Scalar(1);
  }

  for (Structure s : kStructures) {
    const ExactMatrix& l = h[s];
    act_[idx(s)] = q_ * inverse_or_throw(l).transpose() * p_;
    act_inv_[idx(s)] = q_ * l.transpose() * p_;
  }

  std::vector<Form> d_letters;
  for (int a = 0; a < dim_; ++a)
    d_letters.push_back(to_adapted(lie.d(to_real(Form::monomial(dim_, bit(a))))));
  coframe_ = Coframe(std::move(d_letters));
}

std::pair<int, int> BigradedFrame::bidegree(Mask m) const {
  const Mask low = (Mask{1} << half()) - 1;
  return {popcount(m & low), popcount(m & ~low)};
}

std::vector<Mask> BigradedFrame::basis(int p, int q) const {
  std::vector<Mask> out;
  if (p < 0 || q < 0 || p > half() || q > half()) return out;
  for (Mask m : basis_masks(dim_, p + q))
    if (bidegree(m) == std::pair{p, q}) out.push_back(m);
  return out;
}

Form BigradedFrame::project(const Form& adapted, int p, int q) const {
  Form out(dim_, adapted.degree());
  for (const auto& [m, c] : adapted.terms())
    if (bidegree(m) == std::pair{p, q}) out.add(m, c);
  return out;
}

bool BigradedFrame::is_pure(const Form& adapted, int p, int q) const {
  if (adapted.degree() != p + q) return false;
  for (const auto& [m, c] : adapted.terms())
    if (bidegree(m) != std::pair{p, q}) return false;
  return true;
}

Form BigradedFrame::conj(const Form& adapted) const { return substitute(adapted.conj_coefficients(), conj_perm_); }

Form BigradedFrame::del(const Form& adapted) const {
  const int k = adapted.degree();
  if (k >= dim_) return Form(dim_, dim_);
  Form out(dim_, k + 1);
  for (int p = 0; p <= k; ++p) {
    const Form part = project(adapted, p, k - p);
    if (!part.is_zero()) out += project(d(part), p + 1, k - p);
  }
  return out;
}

Form BigradedFrame::del_bar(const Form& adapted) const {
  const int k = adapted.degree();
  if (k >= dim_) return Form(dim_, dim_);
  Form out(dim_, k + 1);
  for (int p = 0; p <= k; ++p) {
    const Form part = project(adapted, p, k - p);
    if (!part.is_zero()) out += project(d(part), p, k - p + 1);
  }
  return out;
}

Form BigradedFrame::del_j(const Form& adapted) const {
  return act(Structure::J, del_bar(act_inverse(Structure::J, adapted)));
}

Form BigradedFrame::derive_real(const Form& adapted, const ExactMatrix& real_action) const {
  return derive(adapted, ExactMatrix(q_ * real_action * p_));
}

std::map<std::pair<int, int>, GradedOperator> bigrade_projectors(const BigradedFrame& frame, int k) {
  std::map<std::pair<int, int>, GradedOperator> out;
  const auto basis = basis_masks(frame.dim(), k);
  for (int p = 0; p <= k; ++p) {
    const int q = k - p;
    if (p > frame.half() || q > frame.half()) continue;
    ExactMatrix m = operator_matrix(
        [&](const Form& f) { return frame.to_real(frame.project(frame.to_adapted(f), p, q)); }, frame.dim(),
        basis, basis);
    out.emplace(std::pair{p, q}, GradedOperator{Grading::total(k), Grading::total(k), std::move(m)});
  }
  return out;
}

// ---------------------------------------------------------------------------

Connection::Connection(int dim, std::vector<ExactVector> table) : dim_(dim), table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(dim * dim)) throw std::invalid_argument("connection table size");
  for (int i = 0; i < dim_; ++i) {
    ExactMatrix a(dim_, dim_);
    for (int j = 0; j < dim_; ++j) a.col(j) = at(i, j);
    along_basis_.push_back(std::move(a));
  }
}

ExactMatrix Connection::along(const ExactVector& x) const {
  ExactMatrix m = zeros(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (!x(i).is_zero()) m += x(i) * along_basis_[static_cast<std::size_t>(i)];
  return m;
}

ExactVector Connection::apply(const ExactVector& x, const ExactVector& y) const { return along(x) * y; }

ExactMatrix Connection::derivative_of(const ExactVector& y) const {
  ExactMatrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) m.col(i) = along_basis_[static_cast<std::size_t>(i)] * y;
  return m;
}

ExactVector Connection::torsion(const LieAlgebra& lie, const ExactVector& x, const ExactVector& y) const {
  return apply(x, y) - apply(y, x) - lie.bracket(x, y);
}

bool Connection::torsion_free(const LieAlgebra& lie) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (!is_zero(ExactVector(at(i, j) - at(j, i) - lie.bracket(i, j)))) return false;
  return true;
}

bool Connection::preserves(const ExactMatrix& l) const {
  for (const auto& a : along_basis_)
    if (!is_zero(ExactMatrix(a * l - l * a))) return false;
  return true;
}

bool Connection::is_metric(const ExactMatrix& g) const {
  for (const auto& a : along_basis_)
    if (!is_zero(ExactMatrix(a.transpose() * g + g * a))) return false;
  return true;
}

Form Connection::on_form(const ExactVector& x, const Form& a) const {
  return derive(a, ExactMatrix(-along(x).transpose()));
}

Connection obata_connection(const LieAlgebra& lie, const HypercomplexTriple& h) {
  if (!validate_hypercomplex(lie, h).valid()) throw ValidationError("Obata connection needs a hypercomplex structure");
  const int n = lie.dim();
  std::vector<ExactVector> table;
  const Scalar half = Scalar(Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    const ExactVector x = unit_vector(n, i);
    const ExactVector ix = h.I() * x;
    for (int j = 0; j < n; ++j) {
      const ExactVector y = unit_vector(n, j);
      const ExactVector jy = h.J() * y;
      table.push_back(half * (lie.bracket(x, y) + h.I() * lie.bracket(ix, y) - h.J() * lie.bracket(x, jy) +
                              h.K() * lie.bracket(ix, jy)));
    }
  }
  return Connection(n, std::move(table));
}

Connection abelian_obata_connection(const LieAlgebra& lie, const HypercomplexTriple& h) {
  const int n = lie.dim();
  std::vector<ExactVector> table;
  const Scalar half = Scalar(Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    const ExactVector x = unit_vector(n, i);
    for (int j = 0; j < n; ++j) {
      const ExactVector y = unit_vector(n, j);
      ExactVector v = lie.bracket(x, y);
      for (Structure s : kStructures) v -= h[s] * lie.bracket(x, ExactVector(h[s] * y));
      table.push_back(half * v);
    }
  }
  return Connection(n, std::move(table));
}

Scalar metric_pair(const ExactMatrix& g, const ExactVector& x, const ExactVector& y) {
  return (x.transpose() * g * y)(0, 0);
}

void validate_metric(const ExactMatrix& g, Index n) {
  if (g.rows() != n || g.cols() != n) throw ValidationError("metric: wrong shape");
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      if (!g(r, c).is_real() || g(r, c) != g(c, r)) throw ValidationError("metric must be real symmetric");
  if (!is_positive_definite(g)) throw ValidationError("metric is not positive definite");
}

Connection levi_civita(const LieAlgebra& lie, const ExactMatrix& g) {
  const int n = lie.dim();
  validate_metric(g, n);
  const ExactMatrix ginv = *inverse(g);
  const Scalar half = Scalar(Rational(1, 2));
  std::vector<ExactVector> table;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExactVector w(n);
      for (int k = 0; k < n; ++k) {
        const ExactVector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        w(k) = half * (metric_pair(g, lie.bracket(i, j), ek) - metric_pair(g, lie.bracket(j, k), ei) +
                       metric_pair(g, lie.bracket(k, i), ej));
      }
      table.push_back(ginv * w);
    }
  return Connection(n, std::move(table));
}

Form fundamental_form(const ExactMatrix& g, const ExactMatrix& l) {
  const int n = static_cast<int>(g.rows());
  const ExactMatrix f = l.transpose() * g;
  Form out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.add(bit(i) | bit(j), f(i, j));
  return out;
}

BismutData bismut_connection(const LieAlgebra& lie, const HypercomplexTriple& h, const ExactMatrix& g,
                             Structure l0) {
  const int n = lie.dim();
  validate_metric(g, n);
  const ExactMatrix& l = h[l0];
  if (!is_zero(ExactMatrix(l.transpose() * g * l - g)))
    throw ValidationError(std::string("metric is not compatible with ") + structure_name(l0));
  const Connection lc = levi_civita(lie, g);
  const ExactMatrix ginv = *inverse(g);
  const Form dual = endo_action(l, lie.d(fundamental_form(g, l)));
  for (int sign : {1, -1}) {
    const Form t = Scalar(-sign) * dual;
    std::vector<ExactVector> table;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExactVector w(n);
        const Form tij = interior(unit_vector(n, j), interior(unit_vector(n, i), t));
        for (int k = 0; k < n; ++k) w(k) = Scalar(Rational(1, 2)) * tij.coeff(bit(k));
        table.push_back(lc.at(i, j) + ginv * w);
      }
    Connection c(n, std::move(table));
    if (c.preserves(l)) return {std::move(c), t, sign};
  }
  throw ConsistencyError(std::string("no Bismut connection found for ") + structure_name(l0));
}

// ---------------------------------------------------------------------------

const char* field_kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::HyperholomorphicReal: return "hyperholomorphic";
    case FieldKind::Hyperholomorphic10: return "hyperholomorphic-(1,0)";
    case FieldKind::ObataParallelReal: return "obata-parallel";
    case FieldKind::ObataParallel10: return "obata-parallel-(1,0)";
    case FieldKind::KillingReal: return "killing";
    case FieldKind::Killing10: return "killing-(1,0)";
    case FieldKind::BismutParallel10: return "bismut-parallel-(1,0)";
    case FieldKind::HolomorphicRealI: return "holomorphic-I";
    case FieldKind::Center10: return "center-(1,0)";
  }
  return "?";
}

std::vector<ExactVector> field_solver(FieldKind kind, const LieAlgebra& lie, const HypercomplexTriple& h,
                                      const ExactMatrix* g) {
  const int n = lie.dim();
  const bool type10 = kind == FieldKind::Hyperholomorphic10 || kind == FieldKind::ObataParallel10 ||
                      kind == FieldKind::Killing10 || kind == FieldKind::BismutParallel10 ||
                      kind == FieldKind::Center10;
  const bool needs_metric =
      kind == FieldKind::KillingReal || kind == FieldKind::Killing10 || kind == FieldKind::BismutParallel10;
  if (needs_metric && g == nullptr) throw std::invalid_argument(std::string(field_kind_name(kind)) + " needs a metric");

  std::optional<Connection> nabla;
  if (kind == FieldKind::ObataParallelReal || kind == FieldKind::ObataParallel10) nabla = obata_connection(lie, h);
  if (kind == FieldKind::BismutParallel10) nabla = bismut_connection(lie, h, *g, Structure::I).connection;

  std::vector<std::vector<Scalar>> columns;
  for (int i = 0; i < n; ++i) {
    const ExactVector x = unit_vector(n, i);
    std::vector<Scalar> c;
    switch (kind) {
      case FieldKind::HyperholomorphicReal:
      case FieldKind::Hyperholomorphic10:
        append_flat(c, lie_derivative_endomorphism(lie, x, h.I()));
        append_flat(c, lie_derivative_endomorphism(lie, x, h.J()));
        break;
      case FieldKind::HolomorphicRealI:
        append_flat(c, lie_derivative_endomorphism(lie, x, h.I()));
        break;
      case FieldKind::ObataParallelReal:
      case FieldKind::ObataParallel10:
      case FieldKind::BismutParallel10:
        append_flat(c, nabla->derivative_of(x));
        break;
      case FieldKind::KillingReal:
      case FieldKind::Killing10:
        append_flat(c, lie_derivative_bilinear(lie, x, *g));
        break;
      case FieldKind::Center10:
        append_flat(c, lie.ad(x));
        break;
    }
    if (type10) append_flat(c, ExactMatrix(h.I() * x - Scalar::i() * x));
    columns.push_back(std::move(c));
  }
  ExactMatrix m(static_cast<Index>(columns.front().size()), n);
  for (int i = 0; i < n; ++i)
    for (std::size_t r = 0; r < columns[static_cast<std::size_t>(i)].size(); ++r)
      m(static_cast<Index>(r), i) = columns[static_cast<std::size_t>(i)][r];
  return kernel_basis(m);
}

bool is_hyperholomorphic(const LieAlgebra& lie, const HypercomplexTriple& h, const ExactVector& z) {
  return is_zero(lie_derivative_endomorphism(lie, z, h.I())) && is_zero(lie_derivative_endomorphism(lie, z, h.J()));
}

bool is_parallel(const Connection& nabla, const ExactVector& z) { return is_zero(nabla.derivative_of(z)); }

ParallelObataCheck check_parallel_obata_equivalences(const LieAlgebra& lie, const HypercomplexTriple& h,
                                                     const Connection& obata, const ExactVector& z) {
  if (z.size() != lie.dim() || !is_type10(h, z)) throw std::invalid_argument("vector is not of type (1,0)");
  ParallelObataCheck out;
  const ExactVector x = real_part(z);
  out.hyperholomorphic = is_hyperholomorphic(lie, h, z);
  out.real_pair_hyperholomorphic =
      is_hyperholomorphic(lie, h, x) && is_hyperholomorphic(lie, h, ExactVector(h.I() * x));
  out.conjugate_hyperholomorphic = is_hyperholomorphic(lie, h, ExactVector(h.J() * conjugate(z)));
  out.z_parallel = is_parallel(obata, z);
  out.x_parallel = is_parallel(obata, x);
  return out;
}

}  // namespace hkt
