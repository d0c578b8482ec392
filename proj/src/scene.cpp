#include "hkt/scene.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace hkt {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw SceneError(SceneError::Kind::Parse, what); }
[[noreturn]] void invalid(const std::string& what) { throw SceneError(SceneError::Kind::Validation, what); }

const Json& require(const Json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

Scalar scalar_of(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(Rational(v.get<long>()));
  } catch (const std::invalid_argument& e) {
    parse_fail(where + ": " + e.what());
  }
  parse_fail(where + ": expected a scalar string or an integer");
}

Rational real_of(const Json& v, const std::string& where) {
  const Scalar s = scalar_of(v, where);
  if (!s.is_real()) invalid(where + ": expected a real value, got " + s.to_string());
  return s.re();
}

int index_of(const Json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) parse_fail(where + ": expected an integer index");
  const int i = v.get<int>();
  if (i < 1 || i > dim) parse_fail(where + ": index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
  return i - 1;
}

std::vector<StructureEntry> structure_entries(const Json& list, int dim, const char* key) {
  if (!list.is_array()) parse_fail(std::string(key) + ": expected a list");
  std::vector<StructureEntry> out;
  for (std::size_t n = 0; n < list.size(); ++n) {
    const std::string where = std::string(key) + "[" + std::to_string(n) + "]";
    const Json& row = list[n];
    if (!row.is_array() || row.size() != 4) parse_fail(where + ": expected [i, j, k, c]");
    out.push_back({index_of(row[0], dim, where), index_of(row[1], dim, where), index_of(row[2], dim, where),
                   real_of(row[3], where)});
  }
  return out;
}

ExactMatrix real_matrix(const Json& rows, int dim, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) parse_fail(where + ": expected " + std::to_string(dim) + " rows");
  ExactMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      parse_fail(where + ": row " + std::to_string(i + 1) + " must have " + std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) m(i, j) = Scalar(real_of(row[static_cast<std::size_t>(j)], where));
  }
  return m;
}

// Either a full matrix or pairs [i, j, c]: L e_i = c e_j, L e_j = -e_i / c.
ExactMatrix endomorphism(const Json& v, int dim, const char* key) {
  if (!v.is_array()) parse_fail(std::string(key) + ": expected a list");
  const bool full = static_cast<int>(v.size()) == dim && !v.empty() && v[0].is_array() &&
                    static_cast<int>(v[0].size()) == dim;
  if (full) return real_matrix(v, dim, key);
  ExactMatrix m = zeros(dim, dim);
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (std::size_t n = 0; n < v.size(); ++n) {
    const std::string where = std::string(key) + "[" + std::to_string(n) + "]";
    const Json& row = v[n];
    if (!row.is_array() || row.size() != 3) parse_fail(where + ": expected [i, j, c]");
    const int i = index_of(row[0], dim, where), j = index_of(row[1], dim, where);
    const Rational c = real_of(row[2], where);
    if (i == j || sgn(c) == 0) invalid(where + ": pair must join distinct indices with c != 0");
    if (seen[static_cast<std::size_t>(i)] || seen[static_cast<std::size_t>(j)])
      invalid(where + ": index already used by another pair");
    seen[static_cast<std::size_t>(i)] = seen[static_cast<std::size_t>(j)] = true;
    m(j, i) = Scalar(c);
    m(i, j) = Scalar(-1 / c);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    invalid(std::string(key) + ": pairs do not cover every basis index");
  return m;
}

Form phi_form(const Json& doc, int dim) {
  std::map<std::string, Form> letters;
  const Json& one = require(doc, "one_forms");
  if (!one.is_object()) parse_fail("one_forms: expected an object");
  for (const auto& [name, terms] : one.items()) {
    const std::string where = "one_forms." + name;
    if (!terms.is_array()) parse_fail(where + ": expected a list of [index, coefficient]");
    ExactVector v = zero_vector(dim);
    for (const Json& t : terms) {
      if (!t.is_array() || t.size() != 2) parse_fail(where + ": expected [index, coefficient]");
      v(index_of(t[0], dim, where)) += scalar_of(t[1], where);
    }
    letters.emplace(name, Form::one_form(v));
  }
  const Json& list = doc.at("phi");
  if (!list.is_array() || list.empty()) parse_fail("phi: expected a non-empty list of [a, b, c]");
  Form out(dim, 2);
  for (std::size_t n = 0; n < list.size(); ++n) {
    const std::string where = "phi[" + std::to_string(n) + "]";
    const Json& row = list[n];
    if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_string())
      parse_fail(where + ": expected [name, name, coefficient]");
    const auto a = letters.find(row[0].get<std::string>()), b = letters.find(row[1].get<std::string>());
    if (a == letters.end() || b == letters.end()) parse_fail(where + ": unknown one-form name");
    out = out + scalar_of(row[2], where) * wedge(a->second, b->second);
  }
  return out;
}

std::optional<ExactMatrix> metric_of(const Json& doc, int dim) {
  if (!doc.contains("metric")) return std::nullopt;
  const Json& m = doc.at("metric");
  if (m.is_string()) {
    if (m.get<std::string>() != "identity") parse_fail("metric: unknown keyword \"" + m.get<std::string>() + "\"");
    return identity(dim);
  }
  if (m.is_object()) {
    const Json& diag = require(m, "diagonal");
    if (!diag.is_array() || static_cast<int>(diag.size()) != dim)
      parse_fail("metric.diagonal: expected " + std::to_string(dim) + " entries");
    ExactMatrix g = zeros(dim, dim);
    for (int i = 0; i < dim; ++i) g(i, i) = Scalar(real_of(diag[static_cast<std::size_t>(i)], "metric.diagonal"));
    return g;
  }
  return real_matrix(m, dim, "metric");
}

std::string describe(const HypercomplexValidation& v) {
  std::ostringstream out;
  const MatrixResidual& r = v.quaternion_failures.front();
  out << "quaternion relation " << r.identity << " fails at entry (" << r.row + 1 << "," << r.col + 1
      << "), residual " << r.value.to_string();
  return out.str();
}

}  // namespace

Scene parse_scene(const Json& doc) {
  if (!doc.is_object()) parse_fail("scene must be a JSON object");
  Scene s;
  const Json& name = require(doc, "name");
  if (!name.is_string()) parse_fail("name: expected a string");
  s.name = name.get<std::string>();
  const Json& dim_json = require(doc, "dim");
  if (!dim_json.is_number_integer() || dim_json.get<int>() < 1 || dim_json.get<int>() > kMaxLetters / 2)
    parse_fail("dim: expected an integer in 1.." + std::to_string(kMaxLetters / 2));
  const int dim = dim_json.get<int>();

  const std::string mode = doc.value("mode", "brackets");
  if (mode == "brackets") {
    s.algebra = LieAlgebra::from_brackets(dim, structure_entries(require(doc, "brackets"), dim, "brackets"));
  } else if (mode == "maurer_cartan") {
    s.algebra =
        LieAlgebra::from_maurer_cartan(dim, structure_entries(require(doc, "maurer_cartan"), dim, "maurer_cartan"));
  } else {
    parse_fail("mode: expected \"brackets\" or \"maurer_cartan\"");
  }
  s.lie_check = validate_lie_algebra(s.algebra);
  if (!s.lie_check.valid()) {
    const JacobiFailure& f = s.lie_check.jacobi_failures.front();
    invalid("Jacobi identity fails on (e" + std::to_string(f.i + 1) + ", e" + std::to_string(f.j + 1) + ", e" +
            std::to_string(f.k + 1) + ")");
  }

  if (dim % 4 != 0) invalid("dimension " + std::to_string(dim) + " is not a multiple of 4");
  const std::string given_on = doc.value("endo_given_on", "vectors");
  const ExactMatrix i = endomorphism(require(doc, "I"), dim, "I");
  const ExactMatrix j = endomorphism(require(doc, "J"), dim, "J");
  if (given_on == "vectors")
    s.triple = HypercomplexTriple::from_vector_action(i, j);
  else if (given_on == "coframe")
    s.triple = HypercomplexTriple::from_coframe_action(i, j);
  else
    parse_fail("endo_given_on: expected \"vectors\" or \"coframe\"");
  s.hypercomplex_check = validate_hypercomplex(s.algebra, s.triple);
  if (!s.hypercomplex_check.quaternion_ok()) invalid(describe(s.hypercomplex_check));

  if (doc.contains("metadata")) s.metadata = doc.at("metadata");

  if (doc.contains("metric") && doc.contains("phi")) parse_fail("\"metric\" and \"phi\" are exclusive");
  s.metric = metric_of(doc, dim);
  if (doc.contains("phi")) s.phi = phi_form(doc, dim);

  if (s.metric) {
    try {
      validate_metric(*s.metric, dim);
    } catch (const ValidationError& e) {
      invalid(std::string("metric: ") + e.what());
    }
    for (Structure l : kStructures) {
      const ExactMatrix& m = s.triple[l];
      if (!is_zero(ExactMatrix(m.transpose() * *s.metric * m - *s.metric)))
        invalid(std::string("metric is not compatible with ") + structure_name(l));
    }
  }

  if (!s.metric && !s.phi) {
    s.metric_skip_reason = "no metric";
  } else if (!s.hypercomplex_check.integrable()) {
    s.metric_skip_reason = "not integrable";
  } else if (!s.lie_check.unimodular) {
    s.metric_skip_reason = "not unimodular";
  } else {
    try {
      s.structure = s.phi ? Hyperhermitian::from_qform(s.algebra, s.triple, *s.phi)
                          : Hyperhermitian::from_metric(s.algebra, s.triple, *s.metric);
    } catch (const ValidationError& e) {
      invalid(std::string(s.phi ? "phi: " : "metric: ") + e.what());
    }
    if (!s.metric) s.metric = s.structure->metric();
  }
  return s;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
  try {
    return parse_scene(doc);
  } catch (const SceneError& e) {
    throw SceneError(e.kind(), path.filename().string() + ": " + e.what());
  } catch (const Json::exception& e) {
    parse_fail(path.filename().string() + ": " + e.what());
  }
}

std::vector<std::filesystem::path> corpus_scenes(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".scene") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hkt
