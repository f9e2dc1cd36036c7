#include "holosym/report.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace holosym {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// JSON has no infinities; they only arise as "certainly failed" residuals.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

Json to_json(const ClassificationReport& r) {
  Json point = Json::array();
  for (Eigen::Index i = 0; i < r.point.size(); ++i) point.push_back(r.point(i));
  const auto& f = r.flags;
  const auto& res = r.residuals;
  Json j;
  j["manifold"] = r.manifold;
  j["point"] = point;
  j["flags"] = {{"flat", to_string(f.flat)},
                {"csc", to_string(f.csc)},
                {"chsc", to_string(f.chsc)},
                {"locally_symmetric", to_string(f.locally_symmetric)},
                {"semisymmetric", to_string(f.semisymmetric)},
                {"deszcz_pseudosymmetric", to_string(f.deszcz_pseudosymmetric)},
                {"holomorphically_pseudosymmetric", to_string(f.holomorphically_pseudosymmetric)}};
  j["fitted"] = {{"c", optional_number(r.fitted.c)},
                 {"c_tilde", optional_number(r.fitted.c_tilde)},
                 {"L", optional_number(r.fitted.L)},
                 {"f", optional_number(r.fitted.f)}};
  j["residuals"] = {{"flat", number(res.flat)},
                    {"csc", number(res.csc)},
                    {"chsc", number(res.chsc)},
                    {"locally_symmetric", number(res.locally_symmetric)},
                    {"semisymmetric", number(res.semisymmetric)},
                    {"deszcz_pseudosymmetric", number(res.deszcz_pseudosymmetric)},
                    {"holomorphically_pseudosymmetric", number(res.holomorphically_pseudosymmetric)}};
  j["in_U"] = r.in_U;
  j["curvature_scale"] = number(r.curvature_scale);
  j["samples_used"] = r.samples_used;
  j["tol"] = r.tolerance;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  return j;
}

Json to_json(const SuiteResult& r) {
  Json details = Json::array();
  for (const CaseRecord& c : r.details) {
    details.push_back({{"label", c.label}, {"value", number(c.value)}, {"residual", number(c.residual)}});
  }
  Json j;
  j["suite_id"] = r.suite_id;
  j["cases_run"] = r.cases_run;
  j["max_residual"] = number(r.max_residual);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["details"] = details;
  return j;
}

Json to_json(const CatalogEntry& e) {
  return {{"id", e.id},
          {"params", e.params},
          {"description", e.description},
          {"ground_truth", e.ground_truth},
          {"kahler", e.kahler}};
}

void write_text(std::ostream& out, const ClassificationReport& r, int index) {
  out << "point " << index << " of " << r.manifold << ": (";
  for (Eigen::Index i = 0; i < r.point.size(); ++i) out << (i ? ", " : "") << fixed(r.point(i));
  out << ")\n";
  char line[160];
  auto row = [&](const char* name, Verdict v, double residual, const char* sym, const std::optional<double>& fit) {
    std::string fitted = fit ? std::string(sym) + " = " + fixed(*fit) : "";
    std::snprintf(line, sizeof line, "  %-34s %-13s %-11s %s\n", name, to_string(v), sci(residual).c_str(),
                  fitted.c_str());
    out << line;
  };
  std::snprintf(line, sizeof line, "  %-34s %-13s %-11s %s\n", "property", "verdict", "residual", "fitted");
  out << line;
  const auto& f = r.flags;
  const auto& res = r.residuals;
  row("flat", f.flat, res.flat, "", std::nullopt);
  row("constant sectional curvature", f.csc, res.csc, "c", r.fitted.c);
  row("constant holomorphic sect. curv.", f.chsc, res.chsc, "c~", r.fitted.c_tilde);
  row("locally symmetric", f.locally_symmetric, res.locally_symmetric, "", std::nullopt);
  row("semisymmetric", f.semisymmetric, res.semisymmetric, "", std::nullopt);
  row("pseudosymmetric (Deszcz)", f.deszcz_pseudosymmetric, res.deszcz_pseudosymmetric, "L", r.fitted.L);
  row("holomorphically pseudosymmetric", f.holomorphically_pseudosymmetric, res.holomorphically_pseudosymmetric,
      "f", r.fitted.f);
  out << "  in U: " << (r.in_U ? "yes" : "no") << ", samples used: " << r.samples_used << ", tol "
      << sci(r.tolerance) << ", seed " << r.seed << "\n";
}

void write_text(std::ostream& out, const SuiteResult& r, bool with_details) {
  char line[200];
  std::snprintf(line, sizeof line, "%-16s %-4s cases %-5d max residual %-11s tolerance %s\n", r.suite_id.c_str(),
                r.pass ? "PASS" : "FAIL", r.cases_run, sci(r.max_residual).c_str(), sci(r.tolerance).c_str());
  out << line;
  if (!with_details) return;
  for (const CaseRecord& c : r.details) {
    std::snprintf(line, sizeof line, "    %-58s value %-11s residual %s%s\n", c.label.c_str(), sci(c.value).c_str(),
                  sci(c.residual).c_str(), c.residual < r.tolerance ? "" : "  <--");
    out << line;
  }
}

}  // namespace holosym
