// hkt: command line front end of the workbench.
//
//   hkt check <scene>                      full report of one scene
//   hkt suite [<scene>] [--corpus [dir]]   pass/fail list of the named checks
//   hkt harmonic <scene> --kind del|delJ|BC|delPhi --bidegree p,q
//   hkt fields <scene> --kind hyperholo|killing|parallel
//
// Global flags: --format json|text, --out <path>, --timing.
// Exit status: 0 all checks pass, 1 a check failed, 2 bad input.

#include "hkt/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#ifndef HKT_DEFAULT_CORPUS
#define HKT_DEFAULT_CORPUS "corpus"
#endif

using namespace hkt;

namespace {

struct Options {
  std::string format = "text";
  std::string out;
  bool timing = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + opt.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const Hyperhermitian& require_metric(const Scene& s) {
  if (!s.structure) throw InputError(s.name + ": metric sections skipped: " + s.metric_skip_reason);
  return *s.structure;
}

int cmd_check(const Options& opt, const std::string& path) {
  const Scene s = load_scene(path);
  const Report r = run_report(s);
  emit(opt, opt.format == "json" ? dump(to_json(r, opt.timing)) : render_text(r));
  return exit_status({r});
}

int cmd_suite(const Options& opt, const std::string& path, const std::string& corpus, bool sequential) {
  std::vector<Scene> scenes;
  if (!path.empty()) scenes.push_back(load_scene(path));
  if (!corpus.empty())
    for (const auto& p : corpus_scenes(corpus)) scenes.push_back(load_scene(p));
  if (scenes.empty()) throw InputError("suite: give a scene file or --corpus");
  const auto reports = run_reports(scenes, !sequential);
  if (opt.format == "json") {
    Json all = Json::array();
    for (const auto& r : reports) {
      Json j = to_json(r, opt.timing);
      all.push_back({{"scene", j["scene"]}, {"checks", j["checks"]}});
      if (opt.timing) all.back()["timing"] = j["timing"];
    }
    emit(opt, dump(all));
  } else {
    std::ostringstream out;
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : reports) {
      out << r.scene << "\n";
      for (const auto& c : r.checks) {
        out << "  " << (c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIP")
            << "  " << c.name;
        if (!c.detail.empty() && c.status != CheckStatus::Pass) out << "  (" << c.detail << ")";
        out << "\n";
        pass += c.status == CheckStatus::Pass;
        fail += c.status == CheckStatus::Fail;
        skip += c.status == CheckStatus::Skipped;
      }
      if (opt.timing) out << "  time " << r.elapsed_ms << " ms\n";
    }
    out << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
    emit(opt, out.str());
  }
  return exit_status(reports);
}

LaplacianKind laplacian_kind(const std::string& k) {
  static const std::map<std::string, LaplacianKind> kinds = {
      {"del", LaplacianKind::Del},       {"∂", LaplacianKind::Del},
      {"delJ", LaplacianKind::DelJ},     {"∂J", LaplacianKind::DelJ},
      {"BC", LaplacianKind::BottChern},  {"delPhi", LaplacianKind::DelPhi},
      {"∂Φ", LaplacianKind::DelPhi}};
  const auto it = kinds.find(k);
  if (it == kinds.end()) throw InputError("unknown Laplacian kind \"" + k + "\"");
  return it->second;
}

Bidegree parse_bidegree(const std::string& text) {
  int p = 0, q = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> p >> comma >> q) || comma != ',' || !in.eof()) throw InputError("bidegree must look like p,q");
  return {p, q};
}

int cmd_harmonic(const Options& opt, const std::string& path, const std::string& kind_name, const std::string& bideg) {
  const Scene s = load_scene(path);
  const Hyperhermitian& h = require_metric(s);
  const LaplacianKind kind = laplacian_kind(kind_name);
  const Bidegree b = parse_bidegree(bideg);
  std::vector<Form> basis;
  try {
    basis = h.harmonic_space(kind, b);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const std::string label = "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
  if (opt.format == "json") {
    emit(opt, dump({{"scene", s.name},
                    {"kind", laplacian_name(kind)},
                    {"bidegree", label},
                    {"dimension", basis.size()},
                    {"basis", to_json(basis, "eps")}}));
  } else {
    std::ostringstream out;
    out << s.name << ": harmonic " << laplacian_name(kind) << " " << label << " dimension " << basis.size() << "\n";
    for (const auto& f : basis) out << "  " << f.to_string("eps") << "\n";
    emit(opt, out.str());
  }
  return 0;
}

int cmd_fields(const Options& opt, const std::string& path, const std::string& kind) {
  const Scene s = load_scene(path);
  if (!s.hypercomplex()) throw InputError(s.name + ": hypercomplex structure not integrable");
  std::vector<FieldKind> kinds;
  const ExactMatrix* g = nullptr;
  if (kind == "hyperholo") {
    kinds = {FieldKind::HyperholomorphicReal, FieldKind::Hyperholomorphic10};
  } else if (kind == "killing") {
    g = &require_metric(s).metric();
    kinds = {FieldKind::KillingReal, FieldKind::Killing10};
  } else if (kind == "parallel") {
    kinds = {FieldKind::ObataParallelReal, FieldKind::ObataParallel10};
    if (s.structure) {
      g = &s.structure->metric();
      kinds.push_back(FieldKind::BismutParallel10);
    }
  } else {
    throw InputError("unknown field kind \"" + kind + "\"");
  }
  Json spaces = Json::object();
  std::ostringstream text;
  text << s.name << "\n";
  for (FieldKind k : kinds) {
    const auto basis = field_solver(k, s.algebra, s.triple, g);
    spaces[field_kind_name(k)] = to_json(basis);
    text << "  " << field_kind_name(k) << " (dimension " << basis.size() << ")\n";
    for (const auto& v : basis) text << "    " << to_json(v).dump() << "\n";
  }
  emit(opt, opt.format == "json" ? dump({{"scene", s.name}, {"kind", kind}, {"spaces", spaces}}) : text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariant hyperhermitian geometry on Lie algebras"};
  app.require_subcommand(1);
  Options opt;
  auto add_globals = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", opt.out, "Write output to this file");
    cmd->add_flag("--timing", opt.timing, "Include timings");
  };
  add_globals(&app);

  std::string scene, corpus, kind, bidegree;
  bool sequential = false;

  auto* check = app.add_subcommand("check", "Full report of one scene");
  check->add_option("scene", scene, "Scene file")->required();
  add_globals(check);

  auto* suite = app.add_subcommand("suite", "Named checks for a scene or the corpus");
  suite->add_option("scene", scene, "Scene file");
  suite->add_option("--corpus", corpus, "Corpus directory")->expected(0, 1)->default_str(HKT_DEFAULT_CORPUS);
  suite->add_flag("--sequential", sequential, "Evaluate scenes one after another");
  add_globals(suite);

  auto* harm = app.add_subcommand("harmonic", "Harmonic space of one Laplacian");
  harm->add_option("scene", scene, "Scene file")->required();
  harm->add_option("--kind", kind, "del, delJ, BC or delPhi")->required();
  harm->add_option("--bidegree", bidegree, "p,q")->required();
  add_globals(harm);

  auto* fields = app.add_subcommand("fields", "Special invariant vector fields");
  fields->add_option("scene", scene, "Scene file")->required();
  fields->add_option("--kind", kind, "hyperholo, killing or parallel")->required();
  add_globals(fields);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(opt, scene);
    if (suite->parsed()) {
      if (suite->count("--corpus") && corpus.empty()) corpus = HKT_DEFAULT_CORPUS;
      return cmd_suite(opt, scene, corpus, sequential);
    }
    if (harm->parsed()) return cmd_harmonic(opt, scene, kind, bidegree);
    if (fields->parsed()) return cmd_fields(opt, scene, kind);
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
