// Randomized invariants over random compatible metrics on the small corpus algebras.

#include "helpers.hpp"

#include <doctest.h>

using namespace testing;

namespace {

// sum over L in {1, I, J, K} of L^T B L, with B symmetric positive definite.
ExactMatrix random_compatible_metric(Random& rng, const HypercomplexTriple& h) {
  const Index n = h.I().rows();
  ExactMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = rng.integer(0, 2) == 0 ? Scalar(0) : Scalar(rng.rational(2));
  const ExactMatrix b = ExactMatrix(m.transpose() * m) + identity(n);
  ExactMatrix g = b;
  for (Structure s : kStructures) g += ExactMatrix(h[s].transpose() * b * h[s]);
  return g;
}

Form random_block(Random& rng, const Hyperhermitian& h, Bidegree b) {
  Form f(h.dim(), b.first + b.second);
  for (Mask m : h.frame().basis(b.first, b.second)) {
    const Scalar c = rng.scalar(0.4);
    if (!c.is_zero()) f.add(m, c);
  }
  return f;
}

struct Sample {
  std::string scene;
  Hyperhermitian h;
};

std::vector<Sample> samples() {
  std::vector<Sample> out;
  Random rng(101);
  for (const char* name : {"flat_abelian4", "hopf", "balanced_hkt_nil8"}) {
    const Scene s = corpus(name);
    for (int k = 0; k < 3; ++k)
      out.push_back({name, Hyperhermitian::from_metric(s.algebra, s.triple, random_compatible_metric(rng, s.triple))});
  }
  return out;
}

}  // namespace

TEST_CASE("metric and (2,0)-form determine each other") {
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    const Hyperhermitian back = Hyperhermitian::from_qform(h.lie(), h.triple(), h.omega_real());
    CHECK(back.metric() == h.metric());
    CHECK(h.frame().is_pure(h.omega(), 2, 0));
    CHECK(h.frame().act(Structure::J, h.frame().conj(h.omega())) == h.omega());
  }
}

TEST_CASE("Gram matrices are Hermitian and positive definite") {
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    for (int p = 0; p <= h.frame().half(); ++p)
      for (int q = 0; q <= 1; ++q) {
        const ExactMatrix& g = h.gram({p, q});
        if (g.rows() == 0) continue;
        CHECK(ExactMatrix(g.adjoint()) == g);
        CHECK(is_positive_definite(g));
      }
  }
}

TEST_CASE("differentials square to zero and anticommute") {
  Random rng(7);
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    const BigradedFrame& f = h.frame();
    for (int p = 0; p + 2 <= f.half(); ++p) {
      const Form a = random_block(rng, h, {p, 0});
      CHECK(f.del(f.del(a)).is_zero());
      CHECK(f.del_j(f.del_j(a)).is_zero());
      CHECK((f.del(f.del_j(a)) + f.del_j(f.del(a))).is_zero());
    }
    const Form x = random_block(rng, h, {1, 1});
    CHECK(f.d(f.d(x)).is_zero());
    CHECK(f.d(x) == f.del(x) + f.del_bar(x));
  }
}

TEST_CASE("adjoints and the Lefschetz dual satisfy their defining identities") {
  Random rng(19);
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    const int m = h.frame().half();
    for (int p = 0; p < m; ++p) {
      const Form a = random_block(rng, h, {p, 0});
      const Form b = random_block(rng, h, {p + 1, 0});
      CHECK(h.inner(h.apply_op(Op::Del, a), b) == h.inner(a, h.apply_adjoint(Op::Del, b)));
      CHECK(h.inner(h.apply_op(Op::DelJ, a), b) == h.inner(a, h.apply_adjoint(Op::DelJ, b)));
    }
    for (int p = 0; p + 2 <= m; ++p) {
      const Form a = random_block(rng, h, {p, 0});
      const Form b = random_block(rng, h, {p + 2, 0});
      CHECK(h.inner(wedge(h.omega(), a), b) == h.inner(a, h.lefschetz_dual(b)));
    }
  }
}

TEST_CASE("Hodge stars: pairing, conjugate-linearity, inner product symmetry") {
  Random rng(23);
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    for (Bidegree bd : {Bidegree{1, 0}, Bidegree{1, 1}, Bidegree{2, 0}}) {
      const Form a = random_block(rng, h, bd), b = random_block(rng, h, bd);
      const Scalar c = rng.scalar(0);
      CHECK(wedge(a, h.hodge_star(b)) == h.inner(a, b) * h.volume());
      CHECK(h.hodge_star(c * b) == c.conj() * h.hodge_star(b));
      CHECK(h.inner(a, b) == h.inner(b, a).conj());
      CHECK(h.inner(c * a, b) == c * h.inner(a, b));
    }
    const Form a = random_block(rng, h, {1, 0});
    const Scalar c = rng.scalar(0);
    CHECK(h.star_phi(c * a) == c.conj() * h.star_phi(a));
  }
}

TEST_CASE("Lee form identities hold for every compatible metric") {
  for (const auto& [name, h] : samples()) {
    CAPTURE(name);
    const LeeReport r = h.lee_form();
    CHECK(r.coincide);
    CHECK(r.lee_residual.is_zero());
    CHECK(r.del_star_residual.is_zero());
    const Classification c = h.classify();
    CHECK(c.s_chern == c.s_chern_wedge);
    CHECK(c.balanced == r.theta.is_zero());
  }
}

TEST_CASE("dimension 4 structures are always HKT") {
  for (const auto& [name, h] : samples())
    if (h.dim() == 4) CHECK(h.is_hkt());
}
