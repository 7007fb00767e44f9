// Acceptance runner: one PASS/FAIL line per criterion. Exit status is
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logalg/axioms.hpp"
#include "logalg/cli.hpp"
#include "logalg/document.hpp"
#include "logalg/isomorphism.hpp"
#include "logalg/jacobi_svd.hpp"
#include "logalg/rearrangement.hpp"
#include "support.hpp"

using namespace logalg;
using namespace logalg::testing;

namespace {

const std::string kData = LOGALG_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string summary;  // shown on the PASS/FAIL line
  std::string report;   // full deterministic output, compared across runs
};

struct CliRun {
  int code;
  std::string out;
  double seconds;
};

CliRun runCli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  const auto start = std::chrono::steady_clock::now();
  const int code = cli::run(args, in, out, err);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {code, out.str(), elapsed.count()};
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

Outcome criterion1() {
  const auto run = runCli({"counterexample", kData + "/harmonic_model.json", "--terms", "10000"});
  Outcome o;
  o.report = run.out;
  if (run.code != 0) return {false, "exit code " + std::to_string(run.code), run.out};
  const auto cert = Json::parse(run.out)["certificate"];
  const double mu = cert["muPartial"], muClosed = cert["muPartialClosedForm"], nu = cert["nuPartialLower"];
  o.pass = mu >= 1.64483 && mu <= 1.64494 && nu >= 9.78 && std::abs(mu - muClosed) <= 1e-9 && run.seconds < 2.0;
  o.summary = "muPartial=" + fmt("%.10f", mu) + " nuPartialLower=" + fmt("%.6f", nu) +
              " |mu-sum 1/k^2|=" + fmt("%.1e", std::abs(mu - muClosed)) + " time=" + fmt("%.3fs", run.seconds);
  return o;
}

Outcome criterion2() {
  const auto run = runCli({"axioms", "--seed", "42", "--trials", "10000", "--mode", "semifinite"});
  Outcome o;
  o.report = run.out;
  const auto j = Json::parse(run.out);
  const auto& counts = j["violationCounts"];
  const long a = counts["a-positivity"], b = counts["b-scaling"], c = counts["c-continuity-at-zero"],
             d = counts["d-subadditivity"], e = counts["e-submultiplicativity"];
  const double maxTiny = j["maxTinyNorm"];
  o.pass = a == 0 && b == 0 && c == 0 && d == 0 && e == 0 && run.seconds < 5.0;
  o.summary = "violations a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c) +
              " d=" + std::to_string(d) + " e=" + std::to_string(e) + " max||1e-8 T||=" + fmt("%.3e", maxTiny) +
              " time=" + fmt("%.3fs", run.seconds);
  return o;
}

Outcome criterion3() {
  SplitMix64 rng(2024);
  double worst = 0.0;
  std::ostringstream report;
  report.precision(17);
  for (int i = 0; i < 500; ++i) {
    ComplexMatrix a(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(r, c) = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    const auto s = singularValues(a);
    const auto [big, small] = singularValues2x2(a);
    worst = std::max({worst, std::abs(s[0] - static_cast<double>(big)), std::abs(s[1] - static_cast<double>(small))});
    report << s[0] << ' ' << s[1] << '\n';
  }
  ComplexMatrix g(2, 2);
  g << 1, 1, 0, 1;
  const auto s = singularValues(g);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double golden = std::max(std::abs(s[0] - phi), std::abs(s[1] - (phi - 1.0)));
  report << s[0] << ' ' << s[1] << '\n';
  return {worst <= 1e-10 && golden <= 1e-10,
          "max deviation (500 random)=" + fmt("%.2e", worst) + " golden-ratio deviation=" + fmt("%.2e", golden), report.str()};
}

Outcome criterion4() {
  SplitMix64 rng(4044);
  double worst = 0.0;
  std::ostringstream report;
  report.precision(17);
  std::vector<StepFunction> scalarCases;
  for (int i = 0; i < 200; ++i) {
    const auto f = randomMatrixStep(rng, 8, 16);
    const auto expansion = scalarExpansion(f);
    const double direct = logNorm(rearrangeMatrix(f), TraceMode::Semifinite);
    const double viaScalar = logNorm(rearrange(expansion), TraceMode::Semifinite);
    worst = std::max(worst, std::abs(direct - viaScalar));
    report << direct << '\n';
    scalarCases.push_back(expansion);
    scalarCases.push_back(randomStep(rng, 16, 1e3));
  }
  long equimeasurabilityFailures = 0;
  for (const auto& f : scalarCases) {
    const auto p = rearrange(f);
    std::vector<double> grid{0.0};
    for (const auto& s : p.segments)
      for (double t : {s.level, s.level + 1e-12, s.level - 1e-12}) grid.push_back(t);
    for (double t : grid) {
      if (t < 0) continue;
      double lhs = 0.0, rhs = 0.0;
      for (const auto& s : p.segments)
        if (s.level > t) lhs += s.length;
      for (const auto& c : f.cells)
        if (modulus(c.value) > t) rhs += c.mass;
      if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, rhs)) ++equimeasurabilityFailures;
    }
  }
  return {worst <= 1e-12 && equimeasurabilityFailures == 0,
          "max |matrix - expansion|=" + fmt("%.2e", worst) + " equimeasurability failures=" +
              std::to_string(equimeasurabilityFailures) + " over " + std::to_string(scalarCases.size()) + " cases",
          report.str()};
}

Outcome criterion5() {
  Outcome o;
  int correct = 0;
  const auto table = commutativeTable();
  for (const auto& c : table) {
    const auto v = decideCommutative(c.x, c.y);
    bool ok = v.isomorphic == c.isomorphic && v.matching.has_value() == c.isomorphic &&
              v.obstruction.has_value() == !c.isomorphic;
    if (ok && c.kind) ok = v.obstruction->kind == *c.kind && v.obstruction->direction == c.direction;
    correct += ok ? 1 : 0;
    o.report += c.name + ": " + (v.isomorphic ? "isomorphic" : obstructionLabel(v.obstruction->kind)) + "\n";
  }
  o.pass = correct == static_cast<int>(table.size());
  o.summary = std::to_string(correct) + "/" + std::to_string(table.size()) + " cases as expected";
  return o;
}

Outcome criterion6() {
  const auto center = runCli({"isomorphic", kData + "/two_block_a.json", kData + "/two_block_b.json", "--level", "center"});
  const auto algebra = runCli({"isomorphic", kData + "/two_block_a.json", kData + "/two_block_b.json", "--level", "algebra"});
  std::string kind;
  if (algebra.code == 1) kind = Json::parse(algebra.out)["obstruction"]["kind"];
  return {center.code == 0 && algebra.code == 1 && kind == "ratio unbounded",
          "center exit=" + std::to_string(center.code) + " algebra exit=" + std::to_string(algebra.code) +
              " obstruction=\"" + kind + "\"",
          center.out + algebra.out};
}

Outcome criterion7() {
  SplitMix64 rng(7007);
  long necessityFailures = 0, typeInDisagreements = 0, typeInChecks = 0, directIso = 0;
  std::string report;
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = randomDescriptorPair(rng);
    const auto direct = decideDirectSum(a, b);
    const auto center = decideCenter(a, b);
    if (direct.isomorphic) {
      ++directIso;
      if (!center.isomorphic) ++necessityFailures;
    }
    for (const auto& x : a.blocks)
      for (const auto& y : b.blocks) {
        if (x.n != y.n) continue;
        ++typeInChecks;
        const bool typeIn = decideTypeIn(AlgebraDescriptor{{x}}, AlgebraDescriptor{{y}}).isomorphic;
        if (typeIn != decideCommutative(x.center, y.center).isomorphic) ++typeInDisagreements;
      }
    report += std::string(direct.isomorphic ? "1" : "0") + (center.isomorphic ? "1" : "0") + "\n";
  }
  return {necessityFailures == 0 && typeInDisagreements == 0,
          "300 pairs, " + std::to_string(directIso) + " direct-sum isomorphic, necessity counterexamples=" +
              std::to_string(necessityFailures) + ", typeIn/commutative disagreements=" +
              std::to_string(typeInDisagreements) + "/" + std::to_string(typeInChecks),
          report};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
  std::vector<Outcome> first;
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), ""};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << o.summary << std::endl;
    first.push_back(o);
  }

  // Determinism: the whole suite again, byte for byte.
  std::size_t identical = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string again;
    try {
      again = criteria[i]().report;
    } catch (const std::exception& e) {
      again = e.what();
    }
    if (again == first[i].report && !again.empty()) ++identical;
  }
  const bool deterministic = identical == criteria.size();
  all = all && deterministic;
  std::cout << (deterministic ? "PASS" : "FAIL") << " criterion 8: " << identical << "/" << criteria.size()
            << " criterion reports byte-identical on repeat" << std::endl;
  return all ? 0 : 1;
}
