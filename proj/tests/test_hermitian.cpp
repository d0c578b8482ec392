#include "helpers.hpp"

#include <doctest.h>

using namespace testing;

namespace {

std::vector<Scene> hermitian_corpus() {
  std::vector<Scene> out;
  for (const auto& path : corpus_scenes(corpus_dir())) {
    Scene s = load_scene(path);
    if (s.structure) out.push_back(std::move(s));
  }
  return out;
}

// phi^k = e^{2k-1} - i e^{2k}, adapted to the nonhkt entry.
Form phi_nonhkt(int k) { return one_form(12, {{2 * k - 1, 1}, {2 * k, -Scalar::i()}}); }

std::vector<Form> basis_forms(const Hyperhermitian& h, Bidegree b) {
  std::vector<Form> out;
  for (Mask m : h.frame().basis(b.first, b.second)) out.push_back(Form::monomial(h.dim(), m));
  return out;
}

Scalar factorial_scalar(int n) { return Scalar(factorial(n)); }

}  // namespace

TEST_CASE("qform and metric correspondence") {
  const Scene nil8 = corpus("balanced_hkt_nil8");
  REQUIRE(nil8.structure);
  const ExactMatrix& g = nil8.structure->metric();
  CHECK(is_positive_definite(g));
  // g(X,Y) = Re 2 Omega(X, JY), evaluated directly on the real frame.
  const Form om = nil8.structure->omega_real();
  for (int a = 1; a <= 8; ++a)
    for (int b = 1; b <= 8; ++b)
      CHECK(g(a - 1, b - 1) == Scalar((Scalar(2) * evaluate(om, {e(8, a), ExactVector(nil8.triple.J() * e(8, b))})).re()));

  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian back = Hyperhermitian::from_metric(s.algebra, s.triple, s.structure->metric());
    CHECK(back.omega() == s.structure->omega());
    const Hyperhermitian again = Hyperhermitian::from_qform(s.algebra, s.triple, back.omega_real());
    CHECK(again.metric() == s.structure->metric());
    for (Structure l : kStructures) {
      const ExactMatrix& m = s.triple[l];
      CHECK(ExactMatrix(m.transpose() * s.structure->metric() * m) == s.structure->metric());
    }
  }

  const Scene a12 = corpus("abelian_nil12");
  const Form om12 = a12.structure->omega_real();
  CHECK(sgn(evaluate(om12, {e(12, 1), ExactVector(a12.triple.J() * e(12, 1))}).re()) > 0);

  const Scene flat = corpus("flat_abelian4");
  CHECK_THROWS_AS(Hyperhermitian::from_qform(flat.algebra, flat.triple, -flat.structure->omega_real()), ValidationError);
  // Not of type (2,0).
  CHECK_THROWS_AS(Hyperhermitian::from_qform(flat.algebra, flat.triple, Form::monomial(4, bit(0) | bit(2))),
                  ValidationError);
  // Incompatible metric.
  ExactMatrix bad = identity(4);
  bad(0, 0) = Scalar(2);
  CHECK_THROWS_AS(Hyperhermitian::from_metric(flat.algebra, flat.triple, bad), ValidationError);
}

TEST_CASE("Dolbeault operators") {
  const Scene nil8 = corpus("balanced_hkt_nil8");
  const BigradedFrame& f = nil8.structure->frame();
  const std::vector<Form> phis = {one_form(8, {{1, 1}, {2, Scalar::i()}}), one_form(8, {{3, 1}, {4, -Scalar::i()}}),
                                  one_form(8, {{5, 1}, {6, Scalar(0, -2)}}), one_form(8, {{7, 1}, {8, -Scalar::i()}})};
  for (const auto& p : phis) {
    const Form a = f.to_adapted(p);
    CHECK(f.del(a).is_zero());
    CHECK(f.del_j(a).is_zero());
  }

  const Scene hopf = corpus("hopf");
  const BigradedFrame& fh = hopf.structure->frame();
  // (e^4)^{1,0} = (i/2) phi2 and d phi2 = -2 e^12 is of type (1,1): del-closed, not del-bar-closed.
  // The form that fails to be del-closed is alpha = Omega(Z-bar) for Z = (e_4)^{1,0}, a multiple of phi1.
  const Form e4_10 = fh.project(fh.to_adapted(Form::monomial(4, bit(3))), 1, 0);
  CHECK(e4_10 == fh.to_adapted(S("1/2*i") * one_form(4, {{3, 1}, {4, -Scalar::i()}})));
  CHECK(fh.del(e4_10).is_zero());
  CHECK_FALSE(fh.del_bar(e4_10).is_zero());
  const Form alpha = hopf.structure->dual_form(part10(hopf.triple, e(4, 4)));
  const Form phi1 = fh.to_adapted(one_form(4, {{1, 1}, {2, -Scalar::i()}}));
  CHECK(fh.project(alpha, 1, 0) == alpha);
  CHECK_FALSE(alpha.is_zero());
  CHECK(wedge(alpha, phi1).is_zero());
  CHECK_FALSE(fh.del(alpha).is_zero());

  const Scene flat = corpus("flat_abelian4");
  const BigradedFrame& ff = flat.structure->frame();
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q)
      for (Mask m : ff.basis(p, q)) {
        const Form a = Form::monomial(4, m);
        CHECK(ff.del(a).is_zero());
        CHECK(ff.del_bar(a).is_zero());
        CHECK(ff.del_j(a).is_zero());
      }
}

TEST_CASE("Dolbeault identities on the corpus") {
  Random rng(41);
  for (const auto& s : hermitian_corpus()) {
    const BigradedFrame& f = s.structure->frame();
    const int m = f.half();
    for (int p = 0; p <= std::min(m, 3); ++p)
      for (int q = 0; q <= std::min(m, 2); ++q) {
        const auto basis = f.basis(p, q);
        if (basis.empty()) continue;
        Form a(s.dim(), p + q);
        for (int t = 0; t < 4; ++t) {
          const Mask mask = basis[static_cast<std::size_t>(rng.integer(0, static_cast<int>(basis.size()) - 1))];
          a.add(mask, rng.scalar(0));
        }
        CHECK(f.d(a) == f.del(a) + f.del_bar(a));
        CHECK(f.del(f.del(a)).is_zero());
        CHECK(f.del_bar(f.del_bar(a)).is_zero());
        CHECK(f.del_j(f.del_j(a)).is_zero());
        CHECK(f.del(f.del_j(a)) == -f.del_j(f.del(a)));
      }
  }
}

TEST_CASE("Hodge stars and the Lefschetz dual") {
  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian& h = *s.structure;
    const BigradedFrame& f = h.frame();
    const int n = h.n();
    CHECK(h.hodge_star(Form::constant(s.dim(), Scalar(1))) == h.volume());
    CHECK(h.lefschetz_dual(h.omega()) == Form::constant(s.dim(), Scalar(n)));

    // vol^2 = det g on the real coframe.
    const Form vol_real = f.to_real(h.volume());
    const Scalar top = vol_real.coeff(static_cast<Mask>((Mask{1} << s.dim()) - 1));
    CHECK(top * top == determinant(h.metric()));

    // *alpha = J alpha-bar ^ Omega^{n-1} ^ Omega-bar^n / ((n-1)! n!) on (1,0).
    const Form omega_bar = f.conj(h.omega());
    const Form tail = Scalar(1) / (factorial_scalar(n - 1) * factorial_scalar(n)) *
                      wedge(power(h.omega(), n - 1), power(omega_bar, n));
    for (const Form& a : basis_forms(h, {1, 0})) {
      const Form ja = f.act(Structure::J, f.conj(a));
      CHECK(h.hodge_star(a) == wedge(ja, tail));
    }

    // a ^ *b = <a,b> vol, conjugate-linear in b.
    if (s.dim() <= 8) {
      Random rng(43);
      for (Bidegree b : {Bidegree{1, 0}, Bidegree{1, 1}, Bidegree{2, 0}}) {
        const auto forms = basis_forms(h, b);
        for (const Form& x : forms)
          for (const Form& y : forms) CHECK(wedge(x, h.hodge_star(y)) == h.inner(x, y) * h.volume());
        const Scalar c = rng.scalar(0);
        CHECK(h.hodge_star(c * forms.front()) == c.conj() * h.hodge_star(forms.front()));
      }
    }
  }
}

TEST_CASE("Lee form examples") {
  CHECK(corpus("balanced_hkt_nil8").structure->lee_form().theta.is_zero());
  CHECK(corpus("flat_abelian4").structure->lee_form().theta.is_zero());
  CHECK(corpus("nonhkt_nil12").structure->lee_form().theta.is_zero());

  const Scene hopf = corpus("hopf");
  const LeeReport lee = hopf.structure->lee_form();
  CHECK_FALSE(lee.theta.is_zero());
  CHECK(lee.theta.terms().size() == 1);
  CHECK_FALSE(lee.theta.coeff(bit(3)).is_zero());

  for (const auto& s : hermitian_corpus()) {
    const LeeReport r = s.structure->lee_form();
    CHECK(r.coincide);
    CHECK(r.per_structure[0] == r.theta);
    CHECK(r.per_structure[1] == r.theta);
    CHECK(r.per_structure[2] == r.theta);
    CHECK(r.lee_identity());
    CHECK(r.del_star_identity());
    // dF^{2n-1} = 0 exactly when balanced.
    const Form f = s.structure->fundamental(Structure::I);
    const Form dfp = s.algebra.d(power(f, s.dim() / 2 - 1));
    CHECK(dfp.is_zero() == r.theta.is_zero());
  }
}

TEST_CASE("classification examples") {
  const auto nil8 = corpus("balanced_hkt_nil8").structure->classify();
  CHECK(nil8.hkt);
  CHECK(nil8.balanced);
  REQUIRE(nil8.lambda.has_value());
  CHECK(*nil8.lambda == Scalar(0));
  CHECK(nil8.s_chern == Scalar(0));
  CHECK(nil8.sl_certified);

  const auto n12 = corpus("nonhkt_nil12").structure->classify();
  CHECK_FALSE(n12.hkt);
  CHECK(n12.balanced);
  CHECK_FALSE(n12.einstein);

  const auto a12 = corpus("abelian_nil12").structure->classify();
  CHECK(a12.hkt);
  CHECK(a12.balanced);

  const Scene hopf = corpus("hopf");
  const Hyperhermitian& hh = *hopf.structure;
  const auto c = hh.classify();
  CHECK(c.hkt);
  CHECK_FALSE(c.balanced);
  CHECK(c.einstein);
  REQUIRE(c.lambda.has_value());
  CHECK_FALSE(c.lambda->is_zero());
  CHECK(c.lambda->is_real());
  CHECK(c.s_chern == Scalar(2) * *c.lambda);
  CHECK(c.s_chern == c.s_chern_wedge);
  CHECK_FALSE(c.sl_certified);
  CHECK_FALSE(c.sl_form.is_zero());
  // Oracle for lambda: ratio of one nonzero coefficient.
  const BigradedFrame& f = hh.frame();
  const Form theta10 = f.project(f.to_adapted(c.theta), 1, 0);
  const Form djt = f.del_j(theta10);
  const Mask top = bit(0) | bit(1);
  REQUIRE_FALSE(hh.omega().coeff(top).is_zero());
  CHECK(djt.coeff(top) / hh.omega().coeff(top) == *c.lambda);

  const auto flat = corpus("flat_abelian4").structure->classify();
  CHECK(flat.sl_certified);
  CHECK(flat.sl_form.is_zero());

  for (const auto& s : hermitian_corpus()) {
    const auto k = s.structure->classify();
    CHECK(k.s_chern == k.s_chern_wedge);
    if (k.balanced) CHECK(k.s_chern == Scalar(0));
    if (k.einstein) CHECK(k.s_chern == Scalar(2 * s.structure->n()) * *k.lambda);
  }
}

TEST_CASE("harmonic spaces examples") {
  const Scene nil8 = corpus("balanced_hkt_nil8");
  const Hyperhermitian& h8 = *nil8.structure;
  const auto harm = h8.harmonic_space(LaplacianKind::Del, {1, 0});
  CHECK(harm.size() == 4);
  const Form phi3 = one_form(8, {{5, 1}, {6, Scalar(0, -2)}});
  const Form phi3a = h8.frame().to_adapted(phi3);
  std::vector<ExactVector> hv;
  for (const auto& x : harm) hv.push_back(h8.coords(x, {1, 0}));
  CHECK(in_span(h8.coords(phi3a, {1, 0}), hv));
  CHECK_FALSE(nil8.algebra.d(phi3).is_zero());

  const Scene n12 = corpus("nonhkt_nil12");
  const Hyperhermitian& h12 = *n12.structure;
  const auto harm12 = h12.harmonic_space(LaplacianKind::Del, {1, 0});
  std::vector<ExactVector> got, want;
  for (const auto& x : harm12) got.push_back(h12.coords(x, {1, 0}));
  for (int k = 1; k <= 4; ++k) want.push_back(h12.coords(h12.frame().to_adapted(phi_nonhkt(k)), {1, 0}));
  const Index dim10 = static_cast<Index>(h12.frame().basis(1, 0).size());
  CHECK(same_span(got, want, dim10));
  for (int k = 5; k <= 6; ++k) CHECK_FALSE(in_span(h12.coords(h12.frame().to_adapted(phi_nonhkt(k)), {1, 0}), got));

  // Omega^p is del-harmonic on balanced HKT entries; on nonhkt_nil12 del Omega != 0 already.
  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian& h = *s.structure;
    if (!h.classify().balanced || !h.is_hkt()) continue;
    for (int p = 0; p <= h.n(); ++p) {
      const Form op = power(h.omega(), p);
      const ExactVector v = h.coords(op, {2 * p, 0});
      CHECK(is_zero(ExactVector(h.laplacian(LaplacianKind::Del, {2 * p, 0}) * v)));
    }
  }
}

TEST_CASE("HKT identities and coinciding Laplacians") {
  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian& h = *s.structure;
    if (!h.is_hkt()) continue;
    const int m = h.frame().half();
    // Hopf is HKT but not balanced: handled below
    for (int p = 1; p <= m && h.classify().balanced; ++p) {
      for (const Form& a : basis_forms(h, {p, 0})) {
        // [Lambda, del] = -del_J^*, [del_J, Lambda] = -del^*; Lambda a is absent for p = 1
        Form l1 = h.lefschetz_dual(h.apply_op(Op::Del, a));
        Form l2 = -h.lefschetz_dual(h.apply_op(Op::DelJ, a));
        if (p >= 2) {
          l1 -= h.apply_op(Op::Del, h.lefschetz_dual(a));
          l2 += h.apply_op(Op::DelJ, h.lefschetz_dual(a));
        }
        CHECK(l1 == -h.apply_adjoint(Op::DelJ, a));
        CHECK(l2 == -h.apply_adjoint(Op::Del, a));
      }
    }
    if (!h.classify().balanced) continue;
    for (int p = 0; p <= m; ++p) {
      CHECK(h.laplacian(LaplacianKind::Del, {p, 0}) == h.laplacian(LaplacianKind::DelJ, {p, 0}));
      if (p == 0) continue;
      for (const Form& a : basis_forms(h, {p, 0})) {
        const Form adj = h.apply_adjoint(Op::Del, a);
        CHECK(h.del_star_hodge(a) == adj);
        CHECK(h.del_star_phi(a) == adj);
      }
    }
  }
}

TEST_CASE("bracket identities break on the unbalanced Hopf entry") {
  // del phi1 = -i phi1^phi2 = -i Omega, so Lambda del phi1 = -i, while del_J^* vanishes on
  // invariant (1,0)-forms (del_J kills constants)
  const Scene s = corpus("hopf");
  const Hyperhermitian& h = *s.structure;
  REQUIRE(h.is_hkt());
  const Form phi1 = h.frame().to_adapted(one_form(4, {{1, 1}, {2, -Scalar::i()}}));
  CHECK(h.apply_op(Op::Del, phi1) == S("-i") * h.omega());
  CHECK(h.lefschetz_dual(h.apply_op(Op::Del, phi1)) == Form::constant(h.dim(), S("-i")));
  CHECK(h.apply_adjoint(Op::DelJ, phi1).is_zero());
}

TEST_CASE("harmonic (p,0) spaces are closed under J conjugation on balanced HKT entries") {
  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian& h = *s.structure;
    const auto c = h.classify();
    if (!(c.hkt && c.balanced)) continue;
    for (int p = 0; p <= h.frame().half(); ++p) {
      const auto harm = h.harmonic_space(LaplacianKind::Del, {p, 0});
      std::vector<ExactVector> hv;
      for (const auto& x : harm) hv.push_back(h.coords(x, {p, 0}));
      for (const auto& x : harm) {
        const Form jx = h.frame().act(Structure::J, h.frame().conj(x));
        CHECK(in_span(h.coords(jx, {p, 0}), hv));
      }
      if (p % 2 == 1) CHECK(harm.size() % 2 == 0);
    }
  }
}

TEST_CASE("codifferential identity on a basis") {
  for (const auto& s : hermitian_corpus()) {
    const Hyperhermitian& h = *s.structure;
    if (!h.is_hkt()) {
      CHECK_THROWS_AS(h.codifferential_identity(e(s.dim(), 1)), PreconditionError);
      continue;
    }
    for (int i = 1; i <= s.dim(); ++i) {
      const CodifferentialRecord r = h.codifferential_identity(e(s.dim(), i));
      CHECK(r.residual.is_zero());
      CHECK(r.torsion_trace == Scalar(-2) * r.theta);
      CHECK(r.codifferential == Scalar(0));  // unimodular: X^flat is coclosed
    }
    const CodifferentialRecord zero = h.codifferential_identity(zero_vector(s.dim()));
    CHECK(zero.residual.is_zero());
    CHECK(zero.literal_residual.is_zero());
  }
  // The literally printed sign leaves 4 theta(X) behind on Hopf.
  const Scene hopf = corpus("hopf");
  const CodifferentialRecord r = hopf.structure->codifferential_identity(e(4, 4));
  CHECK_FALSE(r.theta.is_zero());
  CHECK(r.literal_residual == Scalar(-4) * r.theta);
}

TEST_CASE("Chern-Ricci pairing") {
  const Scene hopf = corpus("hopf");
  const Hyperhermitian& h = *hopf.structure;
  const Scalar lambda = *h.classify().lambda;
  const ExactVector z = part10(hopf.triple, e(4, 1));
  const Scalar pairing = h.q_ricci_pairing(z);
  const Scalar ratio = pairing / lambda;
  CHECK(ratio.is_real());
  CHECK(sgn(ratio.re()) > 0);
  CHECK(h.q_ricci_pairing(zero_vector(4)).is_zero());

  const Scene nil8 = corpus("balanced_hkt_nil8");
  for (int i = 1; i <= 8; ++i) CHECK(nil8.structure->q_ricci_pairing(part10(nil8.triple, e(8, i))).is_zero());
}

TEST_CASE("Bochner identity for hyperholomorphic fields") {
  const Scene nil8 = corpus("balanced_hkt_nil8");
  const Hyperhermitian& h = *nil8.structure;
  const BochnerReport r = h.bochner_report(part10(nil8.triple, e(8, 5)));
  CHECK(r.del_star_alpha.is_zero());
  CHECK(r.del_star_j_alpha.is_zero());
  CHECK(r.pairing.is_zero());
  CHECK(r.residual.is_zero());
  CHECK_FALSE(r.alpha.is_zero());
  // alpha is del-harmonic.
  CHECK(is_zero(ExactVector(h.laplacian(LaplacianKind::Del, {1, 0}) * h.coords(r.alpha, {1, 0}))));

  const BochnerReport z = h.bochner_report(zero_vector(8));
  CHECK(z.residual.is_zero());
  CHECK_THROWS(h.bochner_report(part10(nil8.triple, e(8, 1))));

  const Scene hopf = corpus("hopf");
  CHECK(field_solver(FieldKind::Hyperholomorphic10, hopf.algebra, hopf.triple).empty());
}

TEST_CASE("Bott-Chern harmonic (2,0)-forms") {
  const Scene nil8 = corpus("balanced_hkt_nil8");
  const Hyperhermitian& h = *nil8.structure;
  const BcTraceReport r = h.bc_trace_check();
  CHECK(r.violations.empty());
  CHECK(r.harmonic_equals_closed);
  std::vector<ExactVector> hv;
  for (const auto& x : r.harmonic) hv.push_back(h.coords(x, {2, 0}));
  CHECK(in_span(h.coords(h.omega(), {2, 0}), hv));
  // Same kernel from the alternative characterization.
  std::vector<ExactVector> alt;
  for (const auto& x : h.bc_alternative_space()) alt.push_back(h.coords(x, {2, 0}));
  CHECK(same_span(hv, alt, static_cast<Index>(h.frame().basis(2, 0).size())));

  CHECK_THROWS_AS(corpus("hopf").structure->bc_trace_check(), PreconditionError);
}
