#pragma once

// Reporting layer behind the ivcalc CLI: configuration, the worked-example
// gallery, problem files and SVM model files. Reports are JSON documents
// carrying `schema_version`; they hold no timings so equal inputs and seed
// give byte-identical output.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivcalc/calculus.hpp"
#include "ivcalc/optimality.hpp"
#include "ivcalc/svm.hpp"

namespace ivc::harness {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Text };

struct HarnessConfig {
  double tau_cmp = kCompareTol;
  double tau_conv = 1e-6;
  double tau_feas = 1e-9;
  double tau_slack = 1e-9;
  double lambda0 = 0.1;
  double rho = 0.5;
  int steps = 30;
  int seeds = 4;
  int directions = 64;
  int grid_points = 401;
  std::uint64_t seed = 20240607;
  Format format = Format::Json;

  /// Throws PreconditionFailed on out-of-range values.
  void validate() const;
  ProbeConfig probe() const;
  OptimalityConfig optimality() const;
  SVMConfig svm() const;
  json to_json() const;
};

/// Keys mirror the field names; unknown keys are rejected. Throws ParseError.
HarnessConfig config_from_json(const json& j, HarnessConfig base = {});
HarnessConfig load_config(const std::string& path, HarnessConfig base = {});

/// Where an expected value comes from: the source text of the method, a
/// derivation from it, or a guard case.
enum class Provenance { Reference, Derived, Trivial };
std::string_view to_string(Provenance p);

struct CaseResult {
  std::string id;
  Provenance provenance = Provenance::Derived;
  std::string title;
  bool pass = false;
  json expected;
  json measured;
  std::string note;
};

struct GalleryCase {
  std::string id;
  Provenance provenance = Provenance::Derived;
  std::string title;
  std::function<CaseResult(const HarnessConfig&)> run;
};

/// Registered cases, ordered by id.
const std::vector<GalleryCase>& gallery_cases();

struct GalleryReport {
  std::vector<CaseResult> cases;
  std::size_t passed() const;
  bool all_pass() const { return passed() == cases.size(); }
};

/// Runs every case whose id contains `filter` (all when empty). Throws
/// UnknownCaseId when nothing matches.
GalleryReport run_gallery(const std::string& filter, const HarnessConfig& cfg);
json to_json(const GalleryReport& r, const HarnessConfig& cfg);
std::string to_text(const GalleryReport& r);

/// Problem file: objective and constraints given as gallery ids or
/// polynomial endpoint functions, region as box, subspace or whole space.
/// Throws ParseError (with location) or UnknownCaseId.
IOPInstance parse_problem(const json& j);
IOPInstance load_problem(const std::string& path);
/// Comma-separated coordinates. Throws ParseError.
Vec parse_point(const std::string& text);

/// Runs every efficiency and multiplier check at x; failures of individual
/// checks are recorded in the report. Throws InfeasiblePoint.
json check_problem(const IOPInstance& iop, std::span<const double> x, const HarnessConfig& cfg);

json model_to_json(const SVMSolution& sol);
/// Throws ParseError.
SVMSolution model_from_json(const json& j);
json train_report(const SVMSolution& sol, const SVMDataset& data);
json classify_report(const SVMSolution& sol, const IntervalTable& table);

json interval_json(const Interval& a);
/// Text rendering of any report: a flattened key = value listing.
std::string render_text(const json& j);

}  // namespace ivc::harness
