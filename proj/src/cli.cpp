#include "logalg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "logalg/axioms.hpp"
#include "logalg/document.hpp"
#include "logalg/errors.hpp"
#include "logalg/isomorphism.hpp"
#include "logalg/rearrangement.hpp"
#include "logalg/trace_comparison.hpp"

namespace logalg::cli {

namespace {

struct Outcome {
  Json report;
  int code = kOk;
};

class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  ModelDocument load(const std::string& path) {
    std::string text;
    if (path == "-") {
      if (stdinUsed_) throw InputError("standard input can be read only once");
      stdinUsed_ = true;
      text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else {
      std::ifstream file(path, std::ios::binary);
      if (!file) throw InputError("cannot open '" + path + "'");
      text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return parseDocument(text);
  }

 private:
  std::istream& in_;
  bool stdinUsed_ = false;
};

TraceMode parseMode(const std::string& mode) { return mode == "finite" ? TraceMode::Finite : TraceMode::Semifinite; }

const CellModelBody& requireCellModel(const ModelDocument& doc) {
  if (doc.kind != DocumentKind::CellModel) throw InputError("expected a cell-model document, got " + kindName(doc.kind));
  return doc.cellModel();
}

const Element& requireElement(const ModelDocument& doc, const std::string& name) {
  const auto& body = requireCellModel(doc);
  auto it = body.elements.find(name);
  if (it == body.elements.end()) throw InputError("no element named '" + name + "' in the document");
  return it->second;
}

RearrangementProfile profileOf(const Element& e) {
  if (const auto* f = std::get_if<StepFunction>(&e)) return rearrange(*f);
  return rearrangeMatrix(std::get<MatrixStepFunction>(e));
}

Json boundJson(const BoundDecision& d) {
  Json out{{"bounded", d.bounded}};
  if (d.bound) out["sup"] = *d.bound;
  if (d.witnessCell) out["witnessCell"] = *d.witnessCell;
  return out;
}

Json verdictJson(const Verdict& v, const std::string& direction) {
  Json out{{"direction", direction}, {"holds", v.holds}, {"reason", v.reason}, {"evidence", boundJson(v.evidence)}};
  if (!v.holds) out["obstruction"] = direction == "mu-in-nu" ? "h unbounded" : "h^-1 unbounded";
  return out;
}

Json obstructionJson(const Obstruction& o) {
  Json out{{"kind", obstructionLabel(o.kind)}, {"detail", o.detail}};
  if (o.direction) out["direction"] = *o.direction;
  if (o.witnessIndex) out["witnessIndex"] = *o.witnessIndex;
  if (o.blocks) out["blocks"] = Json::array({o.blocks->first, o.blocks->second});
  return out;
}

Json stepFunctionJson(const StepFunction& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells) cells.push_back(Json{{"mass", c.mass}, {"value", Json::array({c.value.real(), c.value.imag()})}});
  return cells;
}

AlgebraDescriptor asAlgebra(const ModelDocument& doc) {
  if (doc.kind == DocumentKind::Algebra) return doc.algebra();
  if (doc.kind == DocumentKind::Passport) return AlgebraDescriptor{{Block{1, doc.passport()}}};
  throw InputError("isomorphic expects passport or algebra documents, got " + kindName(doc.kind));
}

Outcome cmdValidate(Inputs& inputs, const std::string& path) {
  try {
    ModelDocument doc = inputs.load(path);
    return {Json{{"command", "validate"}, {"kind", kindName(doc.kind)}, {"valid", true}, {"issues", Json::array()}}, kOk};
  } catch (const DocumentError& e) {
    // Syntax errors are usage errors; semantic ones are a "no" from the validator.
    const bool syntax = !e.issues().empty() && e.issues().front().line.has_value();
    if (syntax) throw;
    Json issues = Json::array();
    for (const auto& issue : e.issues()) issues.push_back(Json{{"path", issue.path}, {"message", issue.message}});
    return {Json{{"command", "validate"}, {"valid", false}, {"issues", issues}}, kNegative};
  }
}

Outcome cmdNorm(Inputs& inputs, const std::string& path, const std::string& element, const std::string& mode) {
  ModelDocument doc = inputs.load(path);
  const double value = logNorm(profileOf(requireElement(doc, element)), parseMode(mode));
  return {Json{{"command", "norm"}, {"element", element}, {"mode", mode}, {"value", value}}, kOk};
}

Outcome cmdRearrange(Inputs& inputs, const std::string& path, const std::string& element) {
  ModelDocument doc = inputs.load(path);
  const auto profile = profileOf(requireElement(doc, element));
  Json segments = Json::array();
  for (const auto& s : profile.segments) segments.push_back(Json{{"length", s.length}, {"level", s.level}});
  return {Json{{"command", "rearrange"}, {"element", element}, {"segments", segments}, {"totalLength", profile.totalLength()}},
          kOk};
}

Outcome cmdInclusion(Inputs& inputs, const std::string& path, const std::string& direction) {
  ModelDocument doc = inputs.load(path);
  TracePair tp{requireCellModel(doc).model};
  const auto dir = direction == "nu-in-mu" ? InclusionDirection::NuInMu : InclusionDirection::MuInNu;
  const Verdict v = decideInclusion(tp, dir);
  Json report = verdictJson(v, direction);
  report["command"] = "inclusion";
  report["verdict"] = v.holds ? "included" : "not included";
  return {report, v.holds ? kOk : kNegative};
}

Outcome cmdCoincide(Inputs& inputs, const std::string& path) {
  ModelDocument doc = inputs.load(path);
  TracePair tp{requireCellModel(doc).model};
  const Verdict forward = decideInclusion(tp, InclusionDirection::MuInNu);
  const Verdict inverse = decideInclusion(tp, InclusionDirection::NuInMu);
  const bool holds = decideCoincidence(tp).holds;
  Json report{{"command", "coincide"},
              {"holds", holds},
              {"verdict", holds ? "coincide" : "do not coincide"},
              {"directions", Json::array({verdictJson(forward, "mu-in-nu"), verdictJson(inverse, "nu-in-mu")})}};
  return {report, holds ? kOk : kNegative};
}

Outcome cmdCounterexample(Inputs& inputs, const std::string& path, std::int64_t terms) {
  ModelDocument doc = inputs.load(path);
  TracePair tp{requireCellModel(doc).model};
  // Too few groups, or bounded h, violates the construction's precondition: an input error.
  const Counterexample ce = buildCounterexample(tp, terms);
  const DivergenceCertificate cert = certifyDivergence(ce, tp);
  Json groups = Json::array();
  for (std::size_t i = 0; i < ce.groups.size() && i < 10; ++i) {
    const auto& g = ce.groups[i];
    groups.push_back(Json{{"k", i + 1},
                          {"n", g.n},
                          {"cellCount", g.cells.size()},
                          {"firstCell", g.cells.front()},
                          {"log10GroupMass", g.groupMass.log() / std::numbers::ln10},
                          {"log10G", g.g.log() / std::numbers::ln10}});
  }
  Json certificate{{"terms", cert.terms},
                   {"muPartial", cert.muPartial},
                   {"muPartialClosedForm", cert.muPartialClosedForm},
                   {"muDiscrepancy", std::abs(cert.muPartial - cert.muPartialClosedForm)},
                   {"muLimit", std::numbers::pi * std::numbers::pi / 6.0},
                   {"nuPartialLower", cert.nuPartialLower},
                   {"nuPartialUpper", cert.nuPartialUpper},
                   {"nuPartial", cert.nuPartial},
                   {"harmonicLower", cert.harmonicLower}};
  return {Json{{"command", "counterexample"},
               {"terms", terms},
               {"constructed", true},
               {"certificate", certificate},
               {"groupCount", ce.groups.size()},
               {"firstGroups", groups}},
          kOk};
}

Outcome cmdIsomorphic(Inputs& inputs, const std::string& first, const std::string& second, const std::string& level) {
  ModelDocument a = inputs.load(first);
  ModelDocument b = inputs.load(second);
  IsoVerdict v;
  if (a.kind == DocumentKind::Passport && b.kind == DocumentKind::Passport) {
    v = decideCommutative(a.passport(), b.passport());
  } else if (level == "center") {
    v = decideCenter(asAlgebra(a), asAlgebra(b));
  } else {
    v = decideDirectSum(asAlgebra(a), asAlgebra(b));
  }
  Json report{{"command", "isomorphic"},
              {"level", level},
              {"isomorphic", v.isomorphic},
              {"verdict", v.isomorphic ? "isomorphic" : "not isomorphic"}};
  if (v.matching) {
    Json matching = Json::array();
    for (const auto& [i, j] : *v.matching) matching.push_back(Json::array({i, j}));
    report["matching"] = matching;
  }
  if (v.obstruction) report["obstruction"] = obstructionJson(*v.obstruction);
  return {report, v.isomorphic ? kOk : kNegative};
}

Outcome cmdAxioms(std::uint64_t seed, std::int64_t trials, const std::string& mode, bool withInputs) {
  if (trials < 1) throw InputError("--trials must be >= 1");
  const AxiomSettings settings;
  const AxiomReport report = checkAxioms(seed, trials, parseMode(mode), settings);
  Json counts = Json::object();
  for (auto p : {AxiomProperty::Positivity, AxiomProperty::ScalingMonotone, AxiomProperty::ContinuityAtZero,
                 AxiomProperty::Subadditive, AxiomProperty::Submultiplicative})
    counts[propertyLabel(p)] = report.count(p);
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json entry{{"trial", v.trial}, {"property", propertyLabel(v.property)}, {"lhs", v.lhs}, {"rhs", v.rhs}};
    if (withInputs) {
      entry["s"] = stepFunctionJson(v.s);
      entry["t"] = stepFunctionJson(v.t);
      entry["alpha"] = Json::array({v.alpha.real(), v.alpha.imag()});
    }
    violations.push_back(entry);
  }
  const bool passed = report.violations.empty();
  return {Json{{"command", "axioms"},
               {"seed", seed},
               {"trials", trials},
               {"mode", mode},
               {"tolerance", settings.tolerance},
               {"tinyScale", settings.tinyScale},
               {"tinyBound", settings.tinyBound},
               {"maxTinyNorm", report.maxTinyNorm},
               {"passed", passed},
               {"violationCounts", counts},
               {"violations", violations}},
          passed ? kOk : kNegative};
}

Json errorReport(const std::string& command, const std::string& kind, const std::string& message,
                 const std::vector<DocumentIssue>& issues = {}) {
  Json error{{"kind", kind}, {"message", message}};
  if (!issues.empty()) {
    Json list = Json::array();
    for (const auto& issue : issues) {
      Json entry{{"path", issue.path}, {"message", issue.message}};
      if (issue.line) {
        entry["line"] = *issue.line;
        entry["column"] = *issue.column;
      }
      list.push_back(entry);
    }
    error["issues"] = list;
  }
  return Json{{"command", command}, {"error", error}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-algebra toolkit: log F-norms, trace inclusion, counterexamples and isomorphism decisions"};
  app.name("logalg");
  app.require_subcommand(1);

  std::string document, second, element, mode = "semifinite", direction = "mu-in-nu", level = "algebra";
  std::int64_t terms = 0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  bool withInputs = false;
  const auto modes = CLI::IsMember({"finite", "semifinite"});

  auto* validateCmd = app.add_subcommand("validate", "Parse and validate a model document");
  validateCmd->add_option("document", document, "Document path or -")->required();

  auto* normCmd = app.add_subcommand("norm", "Log F-norm of a named element");
  normCmd->add_option("document", document, "Cell-model document path or -")->required();
  normCmd->add_option("--element", element, "Element name")->required();
  normCmd->add_option("--mode", mode, "finite | semifinite")->check(modes);

  auto* rearrangeCmd = app.add_subcommand("rearrange", "Decreasing rearrangement of a named element");
  rearrangeCmd->add_option("document", document, "Cell-model document path or -")->required();
  rearrangeCmd->add_option("--element", element, "Element name")->required();

  auto* inclusionCmd = app.add_subcommand("inclusion", "Decide L_log(mu) in L_log(nu) or the reverse");
  inclusionCmd->add_option("document", document, "Cell-model document path or -")->required();
  inclusionCmd->add_option("--direction", direction, "mu-in-nu | nu-in-mu")
      ->check(CLI::IsMember({"mu-in-nu", "nu-in-mu"}));

  auto* coincideCmd = app.add_subcommand("coincide", "Decide L_log(mu) = L_log(nu)");
  coincideCmd->add_option("document", document, "Cell-model document path or -")->required();

  auto* counterCmd = app.add_subcommand("counterexample", "Build and certify f in L_log(mu) but not L_log(nu)");
  counterCmd->add_option("document", document, "Cell-model document path or -")->required();
  counterCmd->add_option("--terms", terms, "Number of groups K")->required()->check(CLI::PositiveNumber);

  auto* isoCmd = app.add_subcommand("isomorphic", "Decide isomorphism of two log-algebras");
  isoCmd->add_option("first", document, "Passport or algebra document")->required();
  isoCmd->add_option("second", second, "Passport or algebra document")->required();
  isoCmd->add_option("--level", level, "algebra | center")->check(CLI::IsMember({"algebra", "center"}));

  auto* axiomsCmd = app.add_subcommand("axioms", "Randomised F-norm property check");
  axiomsCmd->add_option("--seed", seed, "64-bit seed")->required();
  axiomsCmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  axiomsCmd->add_option("--mode", mode, "finite | semifinite")->check(modes);
  axiomsCmd->add_flag("--with-inputs", withInputs, "Include the step functions of each violation");

  std::string command = "logalg";
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    out << writeJson(errorReport(command, "usage", e.what()));
    return kInputError;
  }

  Inputs inputs(in);
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    Outcome outcome;
    if (command == "validate") outcome = cmdValidate(inputs, document);
    else if (command == "norm") outcome = cmdNorm(inputs, document, element, mode);
    else if (command == "rearrange") outcome = cmdRearrange(inputs, document, element);
    else if (command == "inclusion") outcome = cmdInclusion(inputs, document, direction);
    else if (command == "coincide") outcome = cmdCoincide(inputs, document);
    else if (command == "counterexample") outcome = cmdCounterexample(inputs, document, terms);
    else if (command == "isomorphic") outcome = cmdIsomorphic(inputs, document, second, level);
    else outcome = cmdAxioms(seed, trials, mode, withInputs);
    out << writeJson(outcome.report);
    return outcome.code;
  } catch (const DocumentError& e) {
    err << command << ": " << e.what() << "\n";
    out << writeJson(errorReport(command, "input", e.what(), e.issues()));
    return kInputError;
  } catch (const InputError& e) {
    err << command << ": " << e.what() << "\n";
    out << writeJson(errorReport(command, "input", e.what()));
    return kInputError;
  } catch (const NumericError& e) {
    err << command << ": numeric error: " << e.what() << "\n";
    out << writeJson(errorReport(command, "numeric", e.what()));
    return kNumericError;
  }
}

}  // namespace logalg::cli
