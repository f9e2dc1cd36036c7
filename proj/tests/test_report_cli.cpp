#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "holosym/cli.hpp"
#include "holosym/report.hpp"

using namespace holosym;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "holosym");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Every "required" list in the schema names keys the document actually has.
void check_required(const Json& schema, const Json& doc, const Json& defs) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"];
    check_required(defs[ref.substr(ref.rfind('/') + 1)], doc, defs);
    return;
  }
  if (schema.contains("required") && doc.is_object()) {
    for (const auto& key : schema["required"]) {
      CAPTURE(key.get<std::string>());
      CHECK(doc.contains(key.get<std::string>()));
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items())
      if (doc.contains(key)) check_required(sub, doc[key], defs);
  }
  if (schema.contains("items") && doc.is_array()) {
    for (const auto& item : doc) check_required(schema["items"], item, defs);
  }
}

Json schema_for(const std::string& command) {
  std::ifstream in(HOLOSYM_SCHEMA_PATH);
  REQUIRE(in.good());
  const Json schema = Json::parse(in);
  for (const auto& alt : schema["oneOf"]) {
    const std::string ref = alt["$ref"];
    const Json& def = schema["$defs"][ref.substr(ref.rfind('/') + 1)];
    if (def["properties"]["command"]["const"] == command) return def;
  }
  FAIL("no schema for " << command);
  return {};
}

Json defs() {
  std::ifstream in(HOLOSYM_SCHEMA_PATH);
  return Json::parse(in)["$defs"];
}

}  // namespace

TEST_CASE("list") {
  const Run text = cli({"list"});
  CHECK(text.code == 0);
  CHECK(text.out.find("cpn") != std::string::npos);
  CHECK(text.out.find("twisted") != std::string::npos);
  const Run json = cli({"list", "--format", "json"});
  CHECK(json.code == 0);
  const Json doc = Json::parse(json.out);
  CHECK(doc["command"] == "list");
  CHECK(doc["catalog"].size() == catalog_entries().size());
  check_required(schema_for("list"), doc, defs());
}

TEST_CASE("analyze") {
  const Run r = cli({"analyze", "cpn:n=2,c=4", "--point", "0.1,0.2,-0.3,0", "--format", "json", "--samples", "50"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  check_required(schema_for("analyze"), doc, defs());
  const Json& rep = doc["reports"][0];
  CHECK(rep["flags"]["chsc"] == "holds");
  CHECK(rep["flags"]["csc"] == "fails");
  CHECK(rep["fitted"]["c_tilde"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(rep["fitted"]["f"].is_null());
  CHECK(rep["point"].size() == 4);

  const Run text = cli({"analyze", "--manifold", "s2xs2:r1=1,r2=2", "--points", "2", "--seed", "3"});
  CHECK(text.code == 0);
  CHECK(text.out.find("point 1 of s2xs2") != std::string::npos);
  CHECK(text.out.find("locally symmetric") != std::string::npos);
}

TEST_CASE("analyze is byte-for-byte reproducible") {
  const std::vector<std::string> args = {"analyze", "fsbump:n=2,c=4,eps=0.1", "--points", "2",
                                         "--seed", "17", "--format", "json", "--samples", "60"};
  CHECK(cli(args).out == cli(args).out);
}

TEST_CASE("verify") {
  const Run r = cli({"verify", "--suite", "ogiue", "--manifold", "cpn:n=2,c=4", "--points", "2", "--format", "json"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  check_required(schema_for("verify"), doc, defs());
  CHECK(doc["pass"] == true);
  CHECK(doc["suites"][0]["suite_id"] == "ogiue");
  CHECK(doc["tol"].is_null());

  // a failing claim exits with 1
  const Run neg = cli({"verify", "--suite", "ogiue", "--manifold", "s2xs2:r1=1,r2=1", "--points", "2", "--expect",
                       "holds"});
  CHECK(neg.code == 1);
  CHECK(neg.out.find("FAIL") != std::string::npos);

  const Run twisted = cli({"verify", "--suite", "j-symmetries", "--manifold", "twisted:r1=1,r2=2", "--points", "1"});
  CHECK(twisted.code == 1);

  const Run det = cli({"verify", "--suite", "pi-dot-pi", "--manifold", "flat:n=2", "--details"});
  CHECK(det.code == 0);
  CHECK(det.out.find("p4 max|Pi.Pi|") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  const Run bad = cli({"analyze", "nosuch:n=2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(cli({"analyze"}).code == 2);
  CHECK(cli({"analyze", "chn:n=1,c=-4", "--point", "0.9,0.9"}).code == 2);
  CHECK(cli({"analyze", "cpn:n=2,c=4", "--point", "1,2"}).code == 2);
  CHECK(cli({"analyze", "cpn:n=2,c=4", "--point", "1,x,0,0"}).code == 2);
  CHECK(cli({"analyze", "cpn", "--format", "yaml"}).code == 2);
  CHECK(cli({"verify", "--suite", "nope"}).code == 2);
  CHECK(cli({"verify", "--suite", "prop-auxalg", "--dim", "8"}).code == 2);
  CHECK(cli({"verify", "--suite", "ogiue", "--expect", "maybe"}).code == 2);
  CHECK(cli({"verify", "--suite", "ogiue", "--manifold", "bogus"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("non-finite numbers become null") {
  SuiteResult r;
  r.suite_id = "x";
  r.tolerance = 1.0;
  r.add("case", 1.0, std::nan(""));
  const Json j = to_json(r);
  CHECK(j["details"][0]["residual"].is_null());
  CHECK(j["max_residual"].is_null());
  CHECK(j["pass"] == false);
}
