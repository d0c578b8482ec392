#pragma once

// Scene files: one JSON document describing a Lie algebra, a hypercomplex
// triple and optionally a hyperhermitian metric.
//
//   {
//     "name": "hopf", "dim": 4,
//     "mode": "maurer_cartan",                      // or "brackets"
//     "maurer_cartan": [[2, 3, 1, "-2"], ...],      // de^k += c e^i ^ e^j as [i, j, k, c]
//     "brackets": [[1, 5, 9, "1"], ...],            // [e_i, e_j] += c e_k as [i, j, k, c]
//     "endo_given_on": "vectors",                   // or "coframe"
//     "I": [[1, 2, "1"], ...],                      // L e_i = c e_j, L e_j = -e_i / c
//     "J": [[1, 3, "1"], ...],                      //   (or a full matrix, row-major)
//     "metric": "identity",                         // or a matrix, or {"diagonal": [...]}
//     "one_forms": {"phi1": [[1, "1"], [2, "-i"]]},
//     "phi": [["phi1", "phi2", "1"]],               // Omega = sum c a ^ b
//     "metadata": {...}
//   }
//
// Indices are 1-based, scalars are strings in the notation of Scalar::to_string.
// "metric" and "phi" are exclusive; "phi" is converted to the metric through
// g(X, Y) = Re 2 Omega(X, JY).

#include "hkt/hermitian.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkt {

using Json = nlohmann::ordered_json;

class SceneError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };
  SceneError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Scene {
  std::string name;
  LieAlgebra algebra;
  HypercomplexTriple triple;
  std::optional<ExactMatrix> metric;
  std::optional<Form> phi;  // real coframe, as given
  Json metadata = Json::object();

  LieValidation lie_check;
  HypercomplexValidation hypercomplex_check;
  /// Present when the triple is integrable, the algebra unimodular and a
  /// metric (or phi) was supplied.
  std::optional<Hyperhermitian> structure;
  /// Why metric sections are disabled, empty when `structure` is set.
  std::string metric_skip_reason;

  int dim() const { return algebra.dim(); }
  bool hypercomplex() const { return hypercomplex_check.valid(); }
};

/// Throws SceneError. Jacobi and quaternion failures, incompatible or
/// non-positive metrics and malformed phi reject the scene; non-integrable
/// triples and non-unimodular algebras only disable the metric sections.
Scene parse_scene(const Json& doc);
Scene load_scene(const std::filesystem::path& path);

/// The scene files of a corpus directory in name order.
std::vector<std::filesystem::path> corpus_scenes(const std::filesystem::path& dir);

}  // namespace hkt
