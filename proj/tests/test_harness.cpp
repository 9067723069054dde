#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/gallery.hpp"
#include "ivcalc/harness.hpp"

using namespace ivc;
using namespace ivc::harness;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ivcalc_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("config parsing") {
  const HarnessConfig c = config_from_json(json::parse(R"({"tau_conv": 1e-7, "seed": 5})"));
  CHECK(c.tau_conv == 1e-7);
  CHECK(c.seed == 5);
  CHECK(c.probe().tau_conv == 1e-7);
  CHECK(c.optimality().probe.seed == 5);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bogus": 1})")), ParseError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"steps": "many"})")), ParseError);
  CHECK_THROWS_AS(config_from_json(json::parse("[1]")), ParseError);
  HarnessConfig bad;
  bad.rho = 2.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionFailed);
  // The config echoed into reports parses back to itself.
  CHECK(config_from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("gallery runs and filters") {
  const HarnessConfig cfg;
  // Filters match substrings: "ee1" also selects "nee1".
  const GalleryReport ee1 = run_gallery("ee1", cfg);
  REQUIRE(ee1.cases.size() == 2);
  CHECK(ee1.all_pass());
  const GalleryReport mono = run_gallery("x2_3x2_monotonicity", cfg);
  REQUIRE(mono.cases.size() == 1);
  CHECK(mono.cases[0].pass);
  CHECK(mono.cases[0].measured["closed_form"] == json::array({-10.0, 2.0}));
  CHECK_THROWS_AS(run_gallery("no_such", cfg), UnknownCaseId);
}

TEST_CASE("gallery ids are sorted and cover the reference labels") {
  std::vector<std::string> ids;
  for (const GalleryCase& c : gallery_cases()) ids.push_back(c.id);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  for (const char* id : {"ee1", "remark_r2", "norm_counterexample", "nee1", "x2_3x2_monotonicity",
                         "ex31", "thm36_max_family", "ne1", "remark_in", "svm_degenerate",
                         "svm_interval_1d"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
}

TEST_CASE("gallery report shape") {
  const HarnessConfig cfg;
  const json j = to_json(run_gallery("svm", cfg), cfg);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["summary"]["total"] == j["cases"].size());
  for (const json& c : j["cases"]) {
    CHECK(c.contains("expected"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("provenance"));
  }
}

TEST_CASE("problem files") {
  const IOPInstance ne1 = parse_problem(json::parse(R"({"gallery": "ne1"})"));
  CHECK(ne1.objective.eval(Vec{0}) == Interval(1, 75));

  const IOPInstance poly = parse_problem(json::parse(R"({
    "name": "convex", "dim": 1,
    "objective": {"lower": [0, 0, 1], "upper": [0, 0, 3]},
    "region": {"box": {"lo": [-2], "hi": [2]}}})"));
  CHECK(poly.objective.eval(Vec{2}) == Interval(4, 12));
  CHECK(poly.region.bounded());

  const IOPInstance multi = parse_problem(json::parse(R"({
    "dim": 2,
    "objective": {"value": {"terms": [{"coef": 1, "powers": [2, 0]}, {"coef": 1, "powers": [0, 2]}]},
                  "scale": [1, 2]},
    "constraints": [{"lower": {"terms": [{"coef": -1, "powers": [1, 0]}]},
                     "upper": {"terms": [{"coef": -1, "powers": [1, 0]}]}}],
    "region": "whole_space"})"));
  CHECK(multi.objective.eval(Vec{1, 1}) == Interval(2, 4));
  CHECK(multi.constraints.size() == 1);

  const IOPInstance sub = parse_problem(json::parse(R"({
    "dim": 2, "objective": {"gallery": "squared_norm"},
    "region": {"subspace": [[1, 1]]}})"));
  CHECK(sub.region.is_linear_subspace());

  try {
    parse_problem(json::parse(R"({"dim": 1, "objective": {"lower": [0, "x"]}})"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/objective") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"gallery": "nope"})")), UnknownCaseId);
}

TEST_CASE("malformed problem JSON reports a location") {
  const std::string path = write_temp("broken.json", "{\"dim\": 1,\n  \"objective\": }");
  try {
    load_problem(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("points") {
  CHECK(parse_point("1, -2.5,3e-1") == Vec{1, -2.5, 0.3});
  CHECK_THROWS_AS(parse_point("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_point("abc"), ParseError);
  CHECK_THROWS_AS(parse_point(""), ParseError);
}

TEST_CASE("problem checks") {
  const HarnessConfig cfg;
  const json ne1 = check_problem(gallery::ne1(), Vec{0}, cfg);
  CHECK(ne1["efficiency"]["verdict"] == "Efficient");
  CHECK(ne1["sufficient"]["status"] == "Fail");

  const json conv = check_problem(gallery::x2_3x2_problem(), Vec{0}, cfg);
  CHECK(conv["efficiency"]["verdict"] == "Efficient");
  CHECK(conv["sufficient"]["status"] == "Pass");
  CHECK(conv["necessary"]["not_strict_descent"]["status"] == "Pass");
  CHECK(conv["necessary"]["no_better_strict_descent"]["status"] == "Pass");
  CHECK(conv["necessary"]["zero_containment"]["status"] == "Pass");
  CHECK(conv["fritz_john"]["found"] == true);
  CHECK(conv["kkt_necessary"]["found"] == true);

  CHECK_THROWS_AS(check_problem(gallery::ne1(), Vec{5}, cfg), InfeasiblePoint);
}

TEST_CASE("model files round trip") {
  const SVMSolution s = train(gallery::svm_points_2d(0.2));
  const json j = model_to_json(s);
  const SVMSolution back = model_from_json(json::parse(j.dump()));
  CHECK(back.w == s.w);
  CHECK(back.b == s.b);
  CHECK(back.u == s.u);
  CHECK(back.support_indices == s.support_indices);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"w": []})")), ParseError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"b": 1})")), ParseError);
}

TEST_CASE("text rendering flattens nested reports") {
  const json j = json::parse(R"({"a": {"b": [1, 2]}, "c": "x"})");
  const std::string t = render_text(j);
  CHECK(t.find("a.b") != std::string::npos);
  CHECK(t.find("c = \"x\"") != std::string::npos);
}
