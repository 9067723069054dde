// ivcalc: worked-example gallery, problem checks and interval SVM from the
// command line. Exit codes: 0 success, 1 a check or expectation failed,
// 2 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ivcalc/errors.hpp"
#include "ivcalc/harness.hpp"

namespace {

using ivc::harness::json;

void emit(const json& j, ivc::harness::Format f) {
  if (f == ivc::harness::Format::Json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << ivc::harness::render_text(j);
  }
}

int emit_error(const std::string& kind, const std::string& message, ivc::harness::Format f,
               int code) {
  emit(json{{"schema_version", ivc::harness::kSchemaVersion},
            {"error", kind},
            {"message", message}},
       f);
  return code;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ivc::ParseError("cannot open " + path);
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculus and optimality checks for interval-valued functions"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string config_path;
  app.add_option("--seed", seed, "RNG seed for every sampled check");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);

  auto* gallery = app.add_subcommand("gallery", "run the worked-example gallery");
  std::string filter;
  gallery->add_option("--filter", filter, "run cases whose id contains this text");

  auto* check = app.add_subcommand("check", "certify a point of a problem file");
  std::string problem_path, point_text;
  check->add_option("problem", problem_path, "problem JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--point", point_text, "comma-separated coordinates")->required();

  auto* svm_train = app.add_subcommand("svm-train", "train an interval hard-margin SVM");
  std::string train_csv, model_out;
  svm_train->add_option("data", train_csv, "dataset CSV")->required()->check(CLI::ExistingFile);
  svm_train->add_option("--out", model_out, "model JSON to write")->required();

  auto* svm_classify = app.add_subcommand("svm-classify", "classify interval samples");
  std::string model_path, classify_csv;
  svm_classify->add_option("model", model_path, "model JSON")->required()->check(CLI::ExistingFile);
  svm_classify->add_option("data", classify_csv, "feature CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  ivc::harness::HarnessConfig cfg;
  try {
    if (!config_path.empty()) cfg = ivc::harness::load_config(config_path, cfg);
    if (seed) cfg.seed = *seed;
    if (app.get_option("--format")->count() > 0 || config_path.empty()) {
      cfg.format = format == "text" ? ivc::harness::Format::Text : ivc::harness::Format::Json;
    }
    cfg.validate();
  } catch (const ivc::Error& e) {
    std::cerr << "ivcalc: " << e.what() << '\n';
    return 2;
  }
  const auto fmt = cfg.format;

  try {
    if (gallery->parsed()) {
      const auto report = ivc::harness::run_gallery(filter, cfg);
      if (fmt == ivc::harness::Format::Json) {
        std::cout << ivc::harness::to_json(report, cfg).dump(2) << '\n';
      } else {
        std::cout << ivc::harness::to_text(report);
      }
      return report.all_pass() ? 0 : 1;
    }
    if (check->parsed()) {
      const auto iop = ivc::harness::load_problem(problem_path);
      const auto x = ivc::harness::parse_point(point_text);
      if (x.size() != iop.dim()) throw ivc::ParseError("point dimension does not match problem");
      emit(ivc::harness::check_problem(iop, x, cfg), fmt);
      return 0;
    }
    if (svm_train->parsed()) {
      auto in = open_input(train_csv);
      const auto data = ivc::read_dataset_csv(in);
      const auto sol = ivc::train(data, cfg.svm());
      std::ofstream out(model_out);
      if (!out) throw ivc::ParseError("cannot write " + model_out);
      out << ivc::harness::model_to_json(sol).dump(2) << '\n';
      emit(ivc::harness::train_report(sol, data), fmt);
      return sol.kkt_report.pass ? 0 : 1;
    }
    if (svm_classify->parsed()) {
      std::ifstream mj = open_input(model_path);
      ivc::harness::json model;
      try {
        model = ivc::harness::json::parse(mj);
      } catch (const ivc::harness::json::parse_error& e) {
        throw ivc::ParseError(model_path + ": " + e.what());
      }
      const auto sol = ivc::harness::model_from_json(model);
      auto in = open_input(classify_csv);
      const auto table = ivc::read_interval_csv(in);
      if (table.dim != sol.w.size()) throw ivc::ParseError("feature dimension does not match model");
      emit(ivc::harness::classify_report(sol, table), fmt);
      return 0;
    }
  } catch (const ivc::ParseError& e) {
    return emit_error("ParseError", e.what(), fmt, 2);
  } catch (const ivc::UnknownCaseId& e) {
    return emit_error("UnknownCaseId", e.what(), fmt, 2);
  } catch (const ivc::InfeasiblePoint& e) {
    return emit_error("InfeasiblePoint", e.what(), fmt, 2);
  } catch (const ivc::NotSeparable& e) {
    return emit_error("NotSeparable", e.what(), fmt, 1);
  } catch (const ivc::Error& e) {
    return emit_error("Error", e.what(), fmt, 1);
  }
  return 2;
}
