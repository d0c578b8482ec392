#pragma once

// Per-scene reports: classification, harmonic dimensions, special vector
// fields and the named identity checks, with a JSON form and a text form.

#include "hkt/scene.hpp"

#include <string>
#include <vector>

namespace hkt {

enum class CheckStatus { Pass, Fail, Skipped };
const char* status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  Json residual;       // null when there is nothing to show
  std::string detail;  // reason for a skip, or a short summary

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Report {
  std::string scene;
  Json classification = Json::object();
  Json dimensions = Json::object();
  Json fields = Json::object();
  std::vector<CheckResult> checks;
  Json meta = Json::object();
  double elapsed_ms = 0;  // not part of the payload

  bool all_passed() const;
  friend bool operator==(const Report& a, const Report& b) {
    return a.scene == b.scene && a.classification == b.classification && a.dimensions == b.dimensions &&
           a.fields == b.fields && a.checks == b.checks && a.meta == b.meta;
  }
};

/// Every check of the suite, in a fixed order. Sections that need a metric
/// are marked skipped when the scene has none.
Report run_report(const Scene& scene);

/// Reports for several scenes, optionally evaluated concurrently; the
/// result order follows the input order.
std::vector<Report> run_reports(const std::vector<Scene>& scenes, bool concurrent);

/// The deterministic payload; `with_timing` adds a "timing" member.
Json to_json(const Report& r, bool with_timing = false);
/// Inverse of to_json; ignores "timing". Throws std::invalid_argument.
Report report_from_json(const Json& j);
/// Fixed-order rendering of the payload.
std::string render_text(const Report& r);

/// 0 if every check passes or is skipped, 1 otherwise.
int exit_status(const std::vector<Report>& reports);

// JSON helpers shared with the command line tool.
Json to_json(const Scalar& s);
Json to_json(const ExactVector& v);
Json to_json(const Form& f, const std::string& symbol = "e");
Json to_json(const std::vector<ExactVector>& vs);
Json to_json(const std::vector<Form>& fs, const std::string& symbol = "e");

}  // namespace hkt
