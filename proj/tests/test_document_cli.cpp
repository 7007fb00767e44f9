#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "logalg/cli.hpp"
#include "logalg/document.hpp"
#include "support.hpp"

using namespace logalg;
using namespace logalg::testing;

namespace {

const std::string kData = LOGALG_TEST_DATA;

struct CliResult {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliResult runCli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse: minimal passport") {
  const auto doc = parseDocument(R"({"version": 1, "kind": "passport",
    "body": {"sLine": {"prefix": []}, "uLine": {"prefix": [0]}, "uMeasures": {"prefix": ["1/3"]}}})");
  CHECK(doc.kind == DocumentKind::Passport);
  CHECK(doc.passport().uMeasures.prefix.at(0) == Rational(1, 3));
}

TEST_CASE("parse: exact rationals in cell models") {
  const auto doc = parseDocument(R"({"version": 1, "kind": "cell-model",
    "body": {"prefixCells": [{"mass": "1/3", "h": "0.1"}]}})");
  CHECK(doc.cellModel().model.prefixCells[0].mass == Rational(1, 3));
  CHECK(doc.cellModel().model.prefixCells[0].h == Rational(1, 10));
}

TEST_CASE("parse: semantic errors carry JSON pointers") {
  try {
    parseDocument(slurp(kData + "/bad_length.json"));
    FAIL("expected a DocumentError");
  } catch (const DocumentError& e) {
    REQUIRE_FALSE(e.issues().empty());
    CHECK(e.issues()[0].path == "/body/uMeasures");
  }
  try {
    parseDocument(R"({"version": 2, "kind": "passport", "body": {}})");
    FAIL("expected a DocumentError");
  } catch (const DocumentError& e) {
    CHECK(e.issues()[0].path == "/version");
  }
}

TEST_CASE("parse: syntax errors carry line and column") {
  try {
    parseDocument("{\n  \"version\": 1,\n  \"kind\": ]\n}");
    FAIL("expected a DocumentError");
  } catch (const DocumentError& e) {
    REQUIRE(e.issues()[0].line);
    CHECK(*e.issues()[0].line == 3);
    CHECK(*e.issues()[0].column == 11);
  }
}

TEST_CASE("round trip: parse(serialize(doc)) == doc") {
  for (const char* name : {"harmonic_model.json", "two_block_a.json", "two_block_b.json", "passport.json"}) {
    CAPTURE(name);
    const auto doc = parseDocument(slurp(kData + "/" + name));
    const auto again = parseDocument(serializeDocument(doc));
    CHECK(again == doc);
    CHECK(serializeDocument(again) == serializeDocument(doc));
  }
  SplitMix64 rng(5);
  for (int i = 0; i < 50; ++i) {
    ModelDocument doc;
    doc.kind = DocumentKind::Algebra;
    doc.body = randomDescriptor(rng);
    CHECK(parseDocument(serializeDocument(doc)) == doc);
  }
}

TEST_CASE("writeJson is deterministic and uses 17 significant digits") {
  Json j{{"b", 0.1}, {"a", 1.0 / 3.0}, {"inf", HUGE_VAL}};
  const auto text = writeJson(j);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"Infinity\"") != std::string::npos);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
}

TEST_CASE("cli: isomorphic on identical passports") {
  const auto r = runCli({"isomorphic", kData + "/passport.json", kData + "/passport.json"});
  CHECK(r.code == 0);
  CHECK(r.json()["verdict"] == "isomorphic");
}

TEST_CASE("cli: inclusion with unbounded h") {
  const auto r = runCli({"inclusion", kData + "/harmonic_model.json", "--direction", "mu-in-nu"});
  CHECK(r.code == 1);
  CHECK(r.json()["obstruction"] == "h unbounded");
  const auto back = runCli({"inclusion", kData + "/harmonic_model.json", "--direction", "nu-in-mu"});
  CHECK(back.code == 0);
}

TEST_CASE("cli: counterexample certificate") {
  const auto r = runCli({"counterexample", kData + "/harmonic_model.json", "--terms", "10000"});
  CHECK(r.code == 0);
  const auto cert = r.json()["certificate"];
  CHECK(cert["muPartial"].get<double>() <= 1.64494);
  CHECK(cert["nuPartialLower"].get<double>() >= 9.78);
}

TEST_CASE("cli: counterexample with too few groups is an input error") {
  const std::string doc = R"({"version": 1, "kind": "cell-model",
    "body": {"prefixCells": [{"mass": 1, "h": 1}, {"mass": 1, "h": "5/2"}]}})";
  const auto r = runCli({"counterexample", "-", "--terms", "3"}, doc);
  CHECK(r.code == 2);
  CHECK(r.json()["error"]["message"].get<std::string>().find("insufficient groups") != std::string::npos);
}

TEST_CASE("cli: norm and rearrange read from stdin") {
  const std::string doc = slurp(kData + "/harmonic_model.json");
  const auto n = runCli({"norm", "-", "--element", "f"}, doc);
  CHECK(n.code == 0);
  const double oracle = 0.5 * std::log(6.0) + 1.0 * std::log(4.0) + 2.0 * std::log(2.0);
  CHECK(n.json()["value"].get<double>() == doctest::Approx(oracle).epsilon(1e-15));
  const auto finite = runCli({"norm", "-", "--element", "f", "--mode", "finite"}, doc);
  CHECK(finite.json()["value"].get<double>() == doctest::Approx(0.5 * std::log(6.0) + 0.5 * std::log(4.0)));
  const auto r = runCli({"rearrange", "-", "--element", "m"}, doc);
  CHECK(r.code == 0);
  CHECK(r.json()["segments"].size() == 3);
}

TEST_CASE("cli: exit-code discipline") {
  CHECK(runCli({}).code == 2);
  CHECK(runCli({"bogus"}).code == 2);
  CHECK(runCli({"axioms"}).code == 2);  // --seed is mandatory
  CHECK(runCli({"norm", kData + "/missing.json", "--element", "f"}).code == 2);
  CHECK(runCli({"norm", kData + "/harmonic_model.json", "--element", "nope"}).code == 2);
  CHECK(runCli({"validate", "-"}, "{ not json").code == 2);
  const auto invalid = runCli({"validate", kData + "/bad_length.json"});
  CHECK(invalid.code == 1);
  CHECK(invalid.json()["issues"][0]["path"] == "/body/uMeasures");
  CHECK(runCli({"validate", kData + "/passport.json"}).code == 0);
  CHECK(runCli({"coincide", kData + "/harmonic_model.json"}).code == 1);
  CHECK_FALSE(runCli({"norm", kData + "/missing.json", "--element", "f"}).err.empty());
}

TEST_CASE("cli: numeric errors exit 3") {
  // coalesced mass 2e308 overflows
  const std::string mass = R"({"version": 1, "kind": "cell-model", "body": {"prefixCells": [],
    "elements": {"x": {"type": "scalar-step", "cells": [{"mass": 1e308, "value": [2, 0]}, {"mass": 1e308, "value": [2, 0]}]}}}})";
  const auto r = runCli({"norm", "-", "--element", "x"}, mass);
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["kind"] == "numeric");
  // largest singular value 2e308 overflows
  const std::string matrix = R"({"version": 1, "kind": "cell-model", "body": {"prefixCells": [],
    "elements": {"x": {"type": "matrix-step", "n": 2, "cells": [{"mass": 1,
      "value": [[[1e308, 0], [1e308, 0]], [[1e308, 0], [1e308, 0]]]}]}}}})";
  CHECK(runCli({"rearrange", "-", "--element", "x"}, matrix).code == 3);
}

TEST_CASE("cli: two-block instance at both levels") {
  const auto center = runCli({"isomorphic", kData + "/two_block_a.json", kData + "/two_block_b.json", "--level", "center"});
  CHECK(center.code == 0);
  const auto algebra = runCli({"isomorphic", kData + "/two_block_a.json", kData + "/two_block_b.json", "--level", "algebra"});
  CHECK(algebra.code == 1);
  CHECK(algebra.json()["obstruction"]["kind"] == "ratio unbounded");
}

TEST_CASE("cli: axioms report is reproducible") {
  const auto a = runCli({"axioms", "--seed", "7", "--trials", "50"});
  const auto b = runCli({"axioms", "--seed", "7", "--trials", "50"});
  CHECK(a.out == b.out);
  CHECK(a.json()["violationCounts"]["d-subadditivity"] == 0);
}
