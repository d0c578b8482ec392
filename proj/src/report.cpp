#include "hkt/report.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

namespace hkt {

namespace {

Json matrix_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(ExactVector(m.row(i).transpose())));
  return rows;
}

Json bool_list(const std::vector<bool>& v) {
  Json out = Json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

std::string vector_name(int i) { return "e" + std::to_string(i + 1); }

struct Outcome {
  bool ok = false;
  Json residual;
  std::string detail;
};

class Suite {
 public:
  void run(const std::string& name, const std::string& gate, const std::function<Outcome()>& body) {
    CheckResult r;
    r.name = name;
    if (!gate.empty()) {
      r.status = CheckStatus::Skipped;
      r.detail = gate;
      checks_.push_back(std::move(r));
      return;
    }
    try {
      Outcome o = body();
      r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
      r.residual = std::move(o.residual);
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.status = CheckStatus::Fail;
      r.detail = std::string("error: ") + e.what();
    }
    checks_.push_back(std::move(r));
  }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  std::vector<CheckResult> checks_;
};

std::vector<Form> block_basis(const Hyperhermitian& h, Bidegree b) {
  std::vector<Form> out;
  for (Mask m : h.frame().basis(b.first, b.second)) out.push_back(Form::monomial(h.dim(), m));
  return out;
}

std::vector<ExactVector> coords_of(const Hyperhermitian& h, const std::vector<Form>& forms, Bidegree b) {
  std::vector<ExactVector> out;
  for (const auto& f : forms) out.push_back(h.coords(f, b));
  return out;
}

bool harmonic(const Hyperhermitian& h, LaplacianKind kind, const Form& a, Bidegree b) {
  return is_zero(ExactVector(h.laplacian(kind, b) * h.coords(a, b)));
}

// Obata-parallel (1,0)-forms: kernel of a -> (nabla_{e_i} a)_i.
std::vector<Form> parallel_10_forms(const Hyperhermitian& h, const Connection& nabla) {
  const BigradedFrame& f = h.frame();
  const int n = h.dim();
  const auto basis = f.basis(1, 0);
  const auto real1 = basis_masks(n, 1);
  ExactMatrix m = zeros(static_cast<Index>(n) * n, static_cast<Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Form real = f.to_real(Form::monomial(n, basis[a]));
    for (int i = 0; i < n; ++i)
      m.block(static_cast<Index>(i) * n, static_cast<Index>(a), n, 1) =
          nabla.on_form(unit_vector(n, i), real).coefficients(real1);
  }
  std::vector<Form> out;
  for (const auto& v : kernel_basis(m)) out.push_back(h.form_from(v, {1, 0}));
  return out;
}

Json classification_json(const Scene& s) {
  Json c = Json::object();
  const LieValidation& lie = s.lie_check;
  c["lie"] = {{"valid", lie.valid()},
              {"unimodular", lie.unimodular},
              {"nilpotent", lie.nilpotent},
              {"solvable", lie.solvable},
              {"derived_series", lie.derived_series},
              {"lower_central_series", lie.lower_central_series}};
  const HypercomplexValidation& hv = s.hypercomplex_check;
  Json hc = {{"quaternion_relations", hv.quaternion_ok()},
             {"integrable",
              bool_list({hv.nijenhuis[0].empty(), hv.nijenhuis[1].empty(), hv.nijenhuis[2].empty()})},
             {"abelian", hv.abelian()}};
  if (s.hypercomplex()) {
    const Form sl = sl_connection_form(s.algebra, s.triple);
    hc["sl_form"] = to_json(sl);
    hc["sl_certified"] = sl.is_zero();
  }
  c["hypercomplex"] = hc;
  if (!s.structure) {
    c["hyperhermitian"] = "skipped: " + s.metric_skip_reason;
    return c;
  }
  const Classification k = s.structure->classify();
  c["hyperhermitian"] = {{"hkt", k.hkt},
                         {"balanced", k.balanced},
                         {"theta", to_json(k.theta)},
                         {"lambda", k.lambda ? to_json(*k.lambda) : Json()},
                         {"einstein", k.einstein},
                         {"s_chern", to_json(k.s_chern)},
                         {"s_chern_wedge", to_json(k.s_chern_wedge)}};
  return c;
}

Json dimensions_json(const Scene& s, bool sl_certified) {
  Json d = Json::object();
  if (!s.structure) return d;
  const Hyperhermitian& h = *s.structure;
  const int m = h.frame().half();
  auto block = [&](LaplacianKind kind) {
    Json out = Json::object();
    for (int p = 0; p <= m; ++p)
      out["(" + std::to_string(p) + ",0)"] = h.harmonic_space(kind, {p, 0}).size();
    return out;
  };
  d["del"] = block(LaplacianKind::Del);
  d["delJ"] = block(LaplacianKind::DelJ);
  if (sl_certified) d["delPhi"] = block(LaplacianKind::DelPhi);
  d["BC"] = {{"(2,0)", h.harmonic_space(LaplacianKind::BottChern, {2, 0}).size()}};
  return d;
}

Json fields_json(const Scene& s) {
  Json f = Json::object();
  if (!s.hypercomplex()) return f;
  const ExactMatrix* g = s.structure ? &s.structure->metric() : nullptr;
  std::vector<FieldKind> kinds = {FieldKind::HyperholomorphicReal, FieldKind::Hyperholomorphic10,
                                  FieldKind::ObataParallel10,      FieldKind::HolomorphicRealI,
                                  FieldKind::Center10};
  if (g) {
    kinds.push_back(FieldKind::KillingReal);
    kinds.push_back(FieldKind::Killing10);
    kinds.push_back(FieldKind::BismutParallel10);
  }
  f["center"] = to_json(center(s.algebra));
  for (FieldKind k : kinds) f[field_kind_name(k)] = to_json(field_solver(k, s.algebra, s.triple, g));
  return f;
}

std::vector<CheckResult> run_checks(const Scene& s) {
  Suite suite;
  const int n = s.dim();
  const bool hc = s.hypercomplex();
  const Hyperhermitian* h = s.structure ? &*s.structure : nullptr;
  std::optional<Classification> cls;
  if (h) cls = h->classify();
  const bool hkt = h && cls->hkt;
  const bool balanced_hkt = hkt && cls->balanced;
  const bool sl = hc && sl_connection_form(s.algebra, s.triple).is_zero();
  const bool einstein_nonzero = hkt && cls->einstein && cls->lambda && !cls->lambda->is_zero();

  const std::string no_frame = hc ? "" : "hypothesis unmet: hypercomplex structure not integrable";
  const std::string no_metric = h ? "" : "skipped: " + s.metric_skip_reason;
  auto gate = [&](bool hypothesis, const char* what) -> std::string {
    if (!no_metric.empty()) return no_metric;
    return hypothesis ? "" : std::string("hypothesis unmet: ") + what;
  };
  const ExactMatrix* g = h ? &h->metric() : nullptr;

  suite.run("lie_valid", "", [&] {
    Outcome o;
    o.ok = s.lie_check.valid();
    return o;
  });

  suite.run("hypercomplex_valid", "", [&] {
    Outcome o;
    const auto& v = s.hypercomplex_check;
    o.ok = v.valid();
    if (!o.ok) {
      Json res = Json::object();
      for (Structure l : kStructures) {
        const auto& list = v.nijenhuis[static_cast<std::size_t>(l)];
        if (list.empty()) continue;
        res[std::string("N_") + structure_name(l)] = {{"pair", {vector_name(list.front().i), vector_name(list.front().j)}},
                                                      {"value", to_json(list.front().residual)}};
      }
      o.residual = res;
      o.detail = "Nijenhuis tensor does not vanish";
    }
    return o;
  });

  suite.run("d_squared_zero", "", [&] {
    Outcome o;
    o.ok = true;
    for (int k = 0; k + 2 <= n && k <= 2; ++k) {
      const ExactMatrix dd = ce_differential(s.algebra, k + 1).matrix * ce_differential(s.algebra, k).matrix;
      if (!is_zero(dd)) {
        o.ok = false;
        o.detail = "d^2 != 0 on degree " + std::to_string(k);
      }
    }
    return o;
  });

  suite.run("parallel_obata_agreement", no_frame, [&] {
    Outcome o;
    const Connection nabla = obata_connection(s.algebra, s.triple);
    std::vector<ExactVector> family;
    for (int i = 0; i < n; ++i) family.push_back(type10_part(s.triple, unit_vector(n, i)));
    for (const auto& z : field_solver(FieldKind::Hyperholomorphic10, s.algebra, s.triple)) family.push_back(z);
    int hyper = 0;
    o.ok = true;
    for (const auto& z : family) {
      const ParallelObataCheck c = check_parallel_obata_equivalences(s.algebra, s.triple, nabla, z);
      hyper += c.hyperholomorphic;
      if (!c.agree() && o.ok) {
        o.ok = false;
        o.detail = "the five conditions disagree on a test vector";
        o.residual = {{"z", to_json(z)},
                      {"conditions", bool_list({c.hyperholomorphic, c.real_pair_hyperholomorphic,
                                                c.conjugate_hyperholomorphic, c.z_parallel, c.x_parallel})}};
      }
    }
    if (o.ok) o.residual = {{"tested", family.size()}, {"hyperholomorphic", hyper}};
    return o;
  });

  suite.run("abeliancenter_equality", hc && s.hypercomplex_check.abelian() ? "" : "hypothesis unmet: not abelian",
            [&] {
              Outcome o;
              const auto hh = field_solver(FieldKind::Hyperholomorphic10, s.algebra, s.triple);
              const auto c10 = field_solver(FieldKind::Center10, s.algebra, s.triple);
              o.ok = same_span(hh, c10, n);
              o.residual = {{"hyperholomorphic_10", to_json(hh)}, {"center_10", to_json(c10)}};
              return o;
            });

  suite.run("omega_qform", no_metric, [&] {
    Outcome o;
    const BigradedFrame& f = h->frame();
    const bool type20 = f.is_pure(h->omega(), 2, 0);
    const bool qreal = f.act(Structure::J, h->omega()) == f.conj(h->omega());
    const bool positive = is_positive_definite(*g);
    o.ok = type20 && qreal && positive;
    o.residual = {{"type_20", type20}, {"q_real", qreal}, {"positive", positive}};
    return o;
  });

  suite.run("hodge_star_consistency", no_metric, [&] {
    Outcome o;
    const BigradedFrame& f = h->frame();
    const int q = h->n();
    const bool star_one = h->hodge_star(Form::constant(n, Scalar(1))) == h->volume();
    const Form top = f.to_real(h->volume());
    const Scalar c = top.coeff(static_cast<Mask>((Mask{1} << n) - 1));
    const bool volume = c * c == determinant(*g);
    const Form tail = Scalar(1) / Scalar(factorial(q - 1) * factorial(q)) *
                      wedge(power(h->omega(), q - 1), power(f.conj(h->omega()), q));
    bool formula = true;
    for (const Form& a : block_basis(*h, {1, 0}))
      formula = formula && h->hodge_star(a) == wedge(f.act(Structure::J, f.conj(a)), tail);
    const bool trace = h->lefschetz_dual(h->omega()) == Form::constant(n, Scalar(q));
    o.ok = star_one && volume && formula && trace;
    o.residual = {{"star_one_is_volume", star_one},
                  {"volume_squared_is_det_g", volume},
                  {"star_on_10_forms", formula},
                  {"lambda_omega_is_n", trace}};
    return o;
  });

  suite.run("lee_forms_coincide", no_metric, [&] {
    Outcome o;
    const LeeReport r = h->lee_form();
    o.ok = r.coincide;
    o.residual = {{"I", to_json(r.per_structure[0])}, {"J", to_json(r.per_structure[1])}, {"K", to_json(r.per_structure[2])}};
    return o;
  });

  suite.run("lee_identity", no_metric, [&] {
    Outcome o;
    const LeeReport r = h->lee_form();
    o.ok = r.lee_identity();
    o.residual = to_json(r.lee_residual, "eps");
    return o;
  });

  suite.run("del_star_omega", no_metric, [&] {
    Outcome o;
    const LeeReport r = h->lee_form();
    o.ok = r.del_star_identity();
    o.residual = to_json(r.del_star_residual, "eps");
    return o;
  });

  suite.run("chern_scalar_consistency", no_metric, [&] {
    Outcome o;
    const Classification& k = *cls;
    const bool wedge_form = k.s_chern == k.s_chern_wedge;
    const bool balanced = !k.balanced || k.s_chern.is_zero();
    const bool einstein = !k.einstein || k.s_chern == Scalar(2 * h->n()) * *k.lambda;
    o.ok = wedge_form && balanced && einstein;
    o.residual = {{"s_chern", to_json(k.s_chern)}, {"s_chern_wedge", to_json(k.s_chern_wedge)}};
    return o;
  });

  suite.run("bismut_connection", no_metric, [&] {
    Outcome o;
    o.ok = true;
    std::array<Form, 3> torsion;
    Json signs = Json::object();
    for (Structure l : kStructures) {
      const BismutData b = bismut_connection(s.algebra, s.triple, *g, l);
      o.ok = o.ok && b.connection.is_metric(*g) && b.connection.preserves(s.triple[l]);
      torsion[static_cast<std::size_t>(l)] = b.torsion;
      signs[structure_name(l)] = b.sign;
    }
    const bool common = torsion[0] == torsion[1] && torsion[0] == torsion[2];
    if (hkt) o.ok = o.ok && common;
    o.residual = {{"sign", signs}, {"common_torsion", common}};
    return o;
  });

  suite.run("hkt_identities", gate(hkt, "not HKT"), [&] {
    Outcome o;
    o.ok = true;
    Json bad = Json::array();
    // Both sides vanish for degree reasons on (0,0); Lambda a is absent for p = 1.
    for (int p = 1; p <= h->frame().half(); ++p)
      for (const Form& a : block_basis(*h, {p, 0})) {
        Form l1 = h->lefschetz_dual(h->apply_op(Op::Del, a)) + h->apply_adjoint(Op::DelJ, a);
        Form l2 = h->apply_adjoint(Op::Del, a) - h->lefschetz_dual(h->apply_op(Op::DelJ, a));
        if (p >= 2) {
          l1 -= h->apply_op(Op::Del, h->lefschetz_dual(a));
          l2 += h->apply_op(Op::DelJ, h->lefschetz_dual(a));
        }
        if (!l1.is_zero() || !l2.is_zero()) {
          o.ok = false;
          bad.push_back({{"form", to_json(a, "eps")}, {"lambda_del", to_json(l1, "eps")}, {"delJ_lambda", to_json(l2, "eps")}});
        }
      }
    o.residual = bad.empty() ? Json{{"bidegrees", h->frame().half()}} : bad;
    return o;
  });

  suite.run("laplacians_coincide", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    o.ok = true;
    for (int p = 0; p <= h->frame().half(); ++p)
      if (h->laplacian(LaplacianKind::Del, {p, 0}) != h->laplacian(LaplacianKind::DelJ, {p, 0})) {
        o.ok = false;
        o.detail = "differ on (" + std::to_string(p) + ",0)";
        break;
      }
    return o;
  });

  suite.run("star_adjoints_coincide", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    o.ok = true;
    for (int p = 1; p <= h->frame().half() && o.ok; ++p)
      for (const Form& a : block_basis(*h, {p, 0})) {
        const Form adj = h->apply_adjoint(Op::Del, a);
        if (h->del_star_hodge(a) != adj || h->del_star_phi(a) != adj) {
          o.ok = false;
          o.detail = "adjoints differ on (" + std::to_string(p) + ",0)";
          o.residual = to_json(a, "eps");
          break;
        }
      }
    return o;
  });

  suite.run("codifferential_identity", gate(hkt, "not HKT"), [&] {
    Outcome o;
    o.ok = true;
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
      const CodifferentialRecord r = h->codifferential_identity(unit_vector(n, i));
      const bool torsion = r.torsion_trace == Scalar(-2) * r.theta;
      o.ok = o.ok && r.residual.is_zero() && torsion;
      rows.push_back({{"x", vector_name(i)},
                      {"codifferential", to_json(r.codifferential)},
                      {"trace", to_json(r.trace)},
                      {"theta", to_json(r.theta)},
                      {"torsion_trace", to_json(r.torsion_trace)},
                      {"residual", to_json(r.residual)},
                      {"residual_opposite_sign", to_json(r.literal_residual)}});
    }
    o.residual = rows;
    o.detail = "delta X^flat + tr(nabla X) - 2 theta7(X), theta7 = -J delta F";
    return o;
  });

  suite.run("harmonic_conjugation_closure", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    o.ok = true;
    Json dims = Json::object();
    const BigradedFrame& f = h->frame();
    for (int p = 0; p <= f.half(); ++p) {
      const auto harm = h->harmonic_space(LaplacianKind::Del, {p, 0});
      const auto hv = coords_of(*h, harm, {p, 0});
      for (const auto& a : harm)
        if (!in_span(h->coords(f.act(Structure::J, f.conj(a)), {p, 0}), hv)) o.ok = false;
      if (p % 2 == 1 && harm.size() % 2 != 0) o.ok = false;
      dims["(" + std::to_string(p) + ",0)"] = harm.size();
    }
    o.residual = dims;
    return o;
  });

  suite.run("omega_powers_harmonic", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    o.ok = true;
    for (int p = 0; p <= h->n(); ++p)
      if (!harmonic(*h, LaplacianKind::Del, power(h->omega(), p), {2 * p, 0})) {
        o.ok = false;
        o.detail = "Omega^" + std::to_string(p) + " is not harmonic";
      }
    return o;
  });

  suite.run("parallel_forms_harmonic", gate(hkt && sl, "not HKT with an Obata-parallel (2n,0)-form"), [&] {
    Outcome o;
    const Connection nabla = obata_connection(s.algebra, s.triple);
    const auto parallel = parallel_10_forms(*h, nabla);
    o.ok = true;
    for (const auto& a : parallel) o.ok = o.ok && harmonic(*h, LaplacianKind::DelPhi, a, {1, 0});
    int harmonic_not_closed = 0;
    for (const auto& a : h->harmonic_space(LaplacianKind::Del, {1, 0}))
      harmonic_not_closed += !h->frame().d(a).is_zero();
    o.residual = {{"parallel", to_json(parallel, "eps")}, {"harmonic_not_closed", harmonic_not_closed}};
    return o;
  });

  suite.run("bott_chern_closed_forms", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    const BcTraceReport r = h->bc_trace_check();
    const bool omega = in_span(h->coords(h->omega(), {2, 0}), coords_of(*h, r.harmonic, {2, 0}));
    o.ok = r.violations.empty() && r.harmonic_equals_closed && omega;
    o.residual = {{"closed", r.closed_basis.size()},
                  {"harmonic", r.harmonic.size()},
                  {"violations", to_json(r.violations, "eps")},
                  {"omega_harmonic", omega}};
    return o;
  });

  suite.run("holomorphic_fields_coclosed", gate(sl, "no Obata-parallel (2n,0)-form"), [&] {
    Outcome o;
    o.ok = true;
    const auto fields = field_solver(FieldKind::HolomorphicRealI, s.algebra, s.triple);
    const Form om = h->omega_real();
    for (const auto& x : fields) {
      const Form lam = h->lefschetz_dual(h->frame().to_adapted(lie_derivative(s.algebra, x, om)));
      const Scalar delta = h->codifferential_of_dual(x);
      if (!lam.is_zero() || !delta.is_zero()) {
        o.ok = false;
        o.residual = {{"x", to_json(x)}, {"lambda_lie_omega", to_json(lam, "eps")}, {"delta", to_json(delta)}};
        break;
      }
    }
    if (o.ok) o.residual = {{"fields", fields.size()}};
    return o;
  });

  suite.run("bochner_terms_vanish", gate(hkt, "not HKT"), [&] {
    Outcome o;
    o.ok = true;
    Json rows = Json::array();
    for (const auto& z : field_solver(FieldKind::Hyperholomorphic10, s.algebra, s.triple)) {
      const BochnerReport r = h->bochner_report(z);
      bool ok = r.residual.is_zero();
      if (cls->balanced) {
        const BigradedFrame& f = h->frame();
        ok = ok && r.del_star_alpha.is_zero() && r.del_star_j_alpha.is_zero() && r.pairing.is_zero() &&
             harmonic(*h, LaplacianKind::Del, r.alpha, {1, 0}) &&
             harmonic(*h, LaplacianKind::Del, f.act(Structure::J, f.conj(r.alpha)), {1, 0});
      }
      o.ok = o.ok && ok;
      rows.push_back({{"z", to_json(z)},
                      {"del_star_alpha", to_json(r.del_star_alpha)},
                      {"del_star_j_alpha", to_json(r.del_star_j_alpha)},
                      {"pairing", to_json(r.pairing)},
                      {"norm2", to_json(metric_pair(*g, z, ExactVector(z.conjugate())))}});
    }
    o.residual = rows;
    return o;
  });

  suite.run("hyperholomorphic_killing_bismut", gate(balanced_hkt, "not balanced HKT"), [&] {
    Outcome o;
    const auto hh = field_solver(FieldKind::Hyperholomorphic10, s.algebra, s.triple, g);
    const auto kill = field_solver(FieldKind::Killing10, s.algebra, s.triple, g);
    const auto bis = field_solver(FieldKind::BismutParallel10, s.algebra, s.triple, g);
    o.ok = same_span(hh, kill, n) && same_span(hh, bis, n);
    o.residual = {{"dimensions", {hh.size(), kill.size(), bis.size()}}};
    return o;
  });

  suite.run("einstein_no_hyperholomorphic", gate(einstein_nonzero, "not HKT-Einstein with lambda != 0"), [&] {
    Outcome o;
    const auto hh = field_solver(FieldKind::Hyperholomorphic10, s.algebra, s.triple);
    o.ok = hh.empty();
    o.residual = {{"lambda", to_json(*cls->lambda)}, {"hyperholomorphic_10", to_json(hh)}};
    return o;
  });

  suite.run("einstein_pairing_positive", gate(einstein_nonzero, "not HKT-Einstein with lambda != 0"), [&] {
    Outcome o;
    o.ok = true;
    Json rows = Json::array();
    const Scalar& lambda = *cls->lambda;
    for (int i = 0; i < n; ++i) {
      const ExactVector z = type10_part(s.triple, unit_vector(n, i));
      const Scalar ratio = h->q_ricci_pairing(z) / lambda;
      o.ok = o.ok && ratio.is_real() && sgn(ratio.re()) > 0;
      rows.push_back({{"z", vector_name(i) + "^(1,0)"}, {"pairing_over_lambda", to_json(ratio)}});
    }
    o.residual = rows;
    return o;
  });

  // Expectations recorded in the scene metadata.
  const bool has_expectations =
      s.metadata.contains("hyperholomorphic_real") || s.metadata.contains("harmonic_10_dimension");
  suite.run("recorded_expectations", has_expectations ? "" : "no expectations recorded", [&] {
    Outcome o;
    o.ok = true;
    Json res = Json::object();
    if (s.metadata.contains("hyperholomorphic_real")) {
      std::vector<ExactVector> want;
      for (const auto& name : s.metadata.at("hyperholomorphic_real"))
        want.push_back(unit_vector(n, std::stoi(name.get<std::string>().substr(1)) - 1));
      const bool same = same_span(field_solver(FieldKind::HyperholomorphicReal, s.algebra, s.triple), want, n);
      o.ok = o.ok && same;
      res["hyperholomorphic_real"] = same;
    }
    if (s.metadata.contains("harmonic_10_dimension")) {
      if (!h) throw std::invalid_argument("harmonic dimension recorded for a scene without metric");
      const auto dim = h->harmonic_space(LaplacianKind::Del, {1, 0}).size();
      const bool same = dim == s.metadata.at("harmonic_10_dimension").get<std::size_t>();
      o.ok = o.ok && same;
      res["harmonic_10_dimension"] = dim;
    }
    o.residual = res;
    return o;
  });

  return suite.take();
}

CheckStatus status_from(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skipped") return CheckStatus::Skipped;
  throw std::invalid_argument("unknown check status \"" + s + "\"");
}

void render_value(std::ostringstream& out, const Json& v, int indent);

void render_object(std::ostringstream& out, const Json& obj, int indent) {
  for (const auto& [key, value] : obj.items()) {
    out << std::string(static_cast<std::size_t>(indent), ' ') << key << ":";
    render_value(out, value, indent);
  }
}

void render_value(std::ostringstream& out, const Json& v, int indent) {
  const bool scalar_like = !v.is_object() || v.empty() || (v.size() == 2 && v.contains("re") && v.contains("im"));
  if (scalar_like) {
    out << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return;
  }
  out << "\n";
  render_object(out, v, indent + 2);
}

}  // namespace

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

Json to_json(const Scalar& s) {
  if (s.is_real()) return Scalar(s.re()).to_string();
  return {{"re", Scalar(s.re()).to_string()}, {"im", Scalar(s.im()).to_string()}};
}

Json to_json(const ExactVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Form& f, const std::string& symbol) {
  Json out = Json::object();
  for (const auto& [m, c] : f.terms()) out[monomial_name(m, symbol)] = to_json(c);
  return out;
}

Json to_json(const std::vector<ExactVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json to_json(const std::vector<Form>& fs, const std::string& symbol) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_json(f, symbol));
  return out;
}

Report run_report(const Scene& scene) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scene = scene.name;
  try {
    r.classification = classification_json(scene);
    const bool sl = scene.hypercomplex() && sl_connection_form(scene.algebra, scene.triple).is_zero();
    r.dimensions = dimensions_json(scene, sl);
    r.fields = fields_json(scene);
  } catch (const std::exception& e) {
    r.checks.push_back({"report_sections", CheckStatus::Fail, Json(), std::string("error: ") + e.what()});
  }
  for (auto& c : run_checks(scene)) r.checks.push_back(std::move(c));
  r.meta = {{"dim", scene.dim()},
            {"metric_source", scene.phi ? "phi" : scene.metric ? "metric" : "none"},
            {"metric_sections", scene.structure ? "enabled" : "skipped: " + scene.metric_skip_reason}};
  if (scene.structure) r.meta["metric"] = matrix_json(scene.structure->metric());
  r.meta["metadata"] = scene.metadata;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Report> run_reports(const std::vector<Scene>& scenes, bool concurrent) {
  std::vector<Report> out;
  if (!concurrent) {
    for (const auto& s : scenes) out.push_back(run_report(s));
    return out;
  }
  std::vector<std::future<Report>> jobs;
  for (const auto& s : scenes) jobs.push_back(std::async(std::launch::async, [&s] { return run_report(s); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Json to_json(const Report& r, bool with_timing) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j = {{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.residual.is_null()) j["residual"] = c.residual;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  Json out = {{"scene", r.scene},
              {"classification", r.classification},
              {"dimensions", r.dimensions},
              {"fields", r.fields},
              {"checks", checks},
              {"meta", r.meta}};
  if (with_timing) out["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  return out;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.scene = j.at("scene").get<std::string>();
    r.classification = j.at("classification");
    r.dimensions = j.at("dimensions");
    r.fields = j.at("fields");
    for (const Json& c : j.at("checks")) {
      CheckResult cr;
      cr.name = c.at("name").get<std::string>();
      cr.status = status_from(c.at("status").get<std::string>());
      if (c.contains("residual")) cr.residual = c.at("residual");
      if (c.contains("detail")) cr.detail = c.at("detail").get<std::string>();
      r.checks.push_back(std::move(cr));
    }
    r.meta = j.at("meta");
    if (j.contains("timing")) r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "scene: " << r.scene << "\n";
  out << "classification:\n";
  render_object(out, r.classification, 2);
  out << "dimensions:\n";
  render_object(out, r.dimensions, 2);
  out << "fields:\n";
  render_object(out, r.fields, 2);
  out << "checks:\n";
  for (const auto& c : r.checks) {
    static const char* const tag[] = {"PASS", "FAIL", "SKIP"};
    out << "  " << tag[static_cast<int>(c.status)] << "  " << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
    if (c.status == CheckStatus::Fail && !c.residual.is_null()) out << "        residual: " << c.residual.dump() << "\n";
  }
  out << "meta:\n";
  render_object(out, r.meta, 2);
  return out.str();
}

int exit_status(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (!r.all_passed()) return 1;
  return 0;
}

}  // namespace hkt
