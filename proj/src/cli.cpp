#include "holosym/cli.hpp"

#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holosym/classification.hpp"
#include "holosym/errors.hpp"
#include "holosym/report.hpp"
#include "holosym/rng.hpp"
#include "holosym/verification.hpp"

namespace holosym {

namespace {

struct AnalyzeArgs {
  std::string manifold;
  std::string manifold_opt;
  int points = 0;
  std::vector<std::string> explicit_points;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int samples = 500;
  std::string format = "text";
};

struct VerifyArgs {
  std::string suite = "all";
  std::vector<int> dims;
  std::vector<std::string> manifolds;
  int points = 5;
  int samples = 500;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string expect = "auto";
  std::string format = "text";
  bool details = false;
};

Vector parse_point(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ArgumentError("malformed point coordinate '" + item + "'");
    }
    if (used != item.size()) throw ArgumentError("malformed point coordinate '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ArgumentError("empty point");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_list(const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json list = Json::array();
    for (const CatalogEntry& e : catalog_entries()) list.push_back(to_json(e));
    out << Json{{"command", "list"}, {"catalog", list}}.dump(2) << "\n";
    return 0;
  }
  for (const CatalogEntry& e : catalog_entries()) {
    out << e.id << "  (" << e.params << ")" << (e.kahler ? "" : "  [not Kaehler]") << "\n"
        << "    " << e.description << "\n"
        << "    known: " << e.ground_truth << "\n";
  }
  return 0;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const std::string id = a.manifold.empty() ? a.manifold_opt : a.manifold;
  if (id.empty()) throw ArgumentError("analyze needs a manifold id (see 'holosym list')");
  if (!a.manifold.empty() && !a.manifold_opt.empty() && a.manifold != a.manifold_opt) {
    throw ArgumentError("manifold given twice with different ids");
  }
  if (a.points < 0) throw ArgumentError("--points must be non-negative");
  if (a.samples < 1) throw ArgumentError("--samples must be at least 1");
  if (!(a.tol > 0.0)) throw ArgumentError("--tol must be positive");
  const Chart chart = make_chart(id);

  std::vector<Vector> points;
  for (const std::string& p : a.explicit_points) points.push_back(parse_point(p));
  int random = a.points;
  if (random == 0 && points.empty()) random = 1;
  Rng rng(Rng::derive(a.seed, 0));
  for (int i = 0; i < random; ++i) points.push_back(chart.sample_point(rng));

  std::vector<ClassificationReport> reports;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PlaneSampler sampler{a.samples, Rng::derive(a.seed, i + 1)};
    ClassificationReport r = classify_point(chart, points[i], sampler, a.tol);
    r.seed = a.seed;
    reports.push_back(std::move(r));
  }

  if (a.format == "json") {
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    Json doc;
    doc["command"] = "analyze";
    doc["manifold"] = chart.name();
    doc["tol"] = a.tol;
    doc["seed"] = a.seed;
    doc["samples"] = a.samples;
    doc["reports"] = list;
    out << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out << "\n";
      write_text(out, reports[i], static_cast<int>(i));
    }
  }
  return 0;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<std::string> ids;
  if (a.suite == "all") {
    ids = suite_ids();
  } else {
    suite_tolerance(a.suite);  // validates the id
    ids = {a.suite};
  }
  SuiteOptions opts;
  opts.manifolds = a.manifolds;
  opts.dims = a.dims;
  opts.config.points = a.points;
  opts.config.samples = a.samples;
  opts.config.seed = a.seed;
  if (a.tol > 0.0) opts.config.tol = a.tol;
  if (a.points < 1) throw ArgumentError("--points must be at least 1");
  if (a.samples < 1) throw ArgumentError("--samples must be at least 1");
  if (a.expect == "holds") {
    opts.config.expect = Expectation::Holds;
  } else if (a.expect == "fails") {
    opts.config.expect = Expectation::Fails;
  } else if (a.expect != "auto") {
    throw ArgumentError("--expect must be auto, holds or fails");
  }
  for (const std::string& m : opts.manifolds) make_chart(m);  // fail early on bad ids

  std::vector<SuiteResult> results;
  for (const std::string& id : ids) results.push_back(run_suite(id, opts));
  bool all = true;
  for (const auto& r : results) all = all && r.pass;

  if (a.format == "json") {
    Json list = Json::array();
    for (const auto& r : results) list.push_back(to_json(r));
    Json doc;
    doc["command"] = "verify";
    doc["suite"] = a.suite;
    doc["seed"] = a.seed;
    doc["tol"] = a.tol > 0.0 ? Json(a.tol) : Json(nullptr);
    doc["samples"] = a.samples;
    doc["points"] = a.points;
    doc["pass"] = all;
    doc["suites"] = list;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : results) write_text(out, r, a.details);
    out << (all ? "all suites passed" : "some suites FAILED") << " (seed " << a.seed << ")\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature symmetries of Kaehler manifolds: classification and verification suites", "holosym"};
  app.require_subcommand(1);

  std::string list_format = "text";
  auto* list = app.add_subcommand("list", "Catalog manifolds, parameters and known classifications");
  list->add_option("--format", list_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Classify points of a catalog manifold");
  analyze->add_option("id", aa.manifold, "Catalog id, e.g. cpn:n=2,c=4");
  analyze->add_option("--manifold", aa.manifold_opt, "Catalog id (alternative to the positional form)");
  analyze->add_option("--points,--random-points", aa.points, "Number of random points");
  analyze->add_option("--point", aa.explicit_points, "Explicit point as comma-separated coordinates (repeatable)")
      ->allow_extra_args(false);
  analyze->add_option("--seed", aa.seed, "Random seed");
  analyze->add_option("--tol", aa.tol, "Relative tolerance");
  analyze->add_option("--samples", aa.samples, "Plane pairs sampled per fit");
  analyze->add_option("--format", aa.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", va.suite, "Suite id or 'all'");
  verify->add_option("--dim", va.dims, "Dimension for prop-auxalg suites (4 or 6, repeatable)")
      ->allow_extra_args(false);
  verify->add_option("--manifold", va.manifolds, "Catalog id instead of the built-in battery (repeatable)")
      ->allow_extra_args(false);
  verify->add_option("--points", va.points, "Points per chart");
  verify->add_option("--samples", va.samples, "Random samples per point");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--tol", va.tol, "Override the suite tolerance");
  verify->add_option("--expect", va.expect, "Claim about the manifold: auto, holds or fails");
  verify->add_option("--format", va.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--details", va.details, "Print every case in text output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*list) return cmd_list(list_format, out);
    if (*analyze) return cmd_analyze(aa, out);
    if (*verify) return cmd_verify(va, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace holosym
