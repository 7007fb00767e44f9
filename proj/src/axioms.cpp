#include "logalg/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "logalg/random.hpp"

namespace logalg {

std::string propertyLabel(AxiomProperty p) {
  switch (p) {
    case AxiomProperty::Positivity: return "a-positivity";
    case AxiomProperty::ScalingMonotone: return "b-scaling";
    case AxiomProperty::ContinuityAtZero: return "c-continuity-at-zero";
    case AxiomProperty::Subadditive: return "d-subadditivity";
    case AxiomProperty::Submultiplicative: return "e-submultiplicativity";
  }
  return "unknown";
}

std::int64_t AxiomReport::count(AxiomProperty p) const {
  return std::count_if(violations.begin(), violations.end(), [p](const AxiomViolation& v) { return v.property == p; });
}

namespace {

Complex polar(SplitMix64& rng, double maxModulus) {
  const double r = maxModulus * rng.uniform();
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, theta);
}

bool isZero(const StepFunction& f) {
  return std::all_of(f.cells.begin(), f.cells.end(), [](const StepCell& c) { return c.value == Complex(0.0); });
}

double norm(const StepFunction& f, TraceMode mode) { return logNorm(rearrange(f), mode); }

}  // namespace

TrialInput sampleTrial(std::uint64_t seed, std::int64_t index, const AxiomSettings& settings) {
  auto rng = SplitMix64::forStream(seed, static_cast<std::uint64_t>(index));
  const auto cells = rng.uniformInt(settings.minCells, settings.maxCells);
  TrialInput in;
  for (std::int64_t i = 0; i < cells; ++i) {
    const double mass = settings.maxMass * (1.0 - rng.uniform());  // (0, maxMass]
    in.s.cells.push_back({mass, polar(rng, settings.maxModulus)});
    in.t.cells.push_back({mass, polar(rng, settings.maxModulus)});
  }
  if (isZero(in.t)) in.t.cells.front().value = Complex(1.0);
  in.alpha = polar(rng, 1.0);
  return in;
}

TrialOutcome evaluateTrial(const StepFunction& s, const StepFunction& t, Complex alpha, TraceMode mode,
                           const AxiomSettings& settings) {
  TrialOutcome out;
  out.s = s;
  out.t = t;
  out.alpha = alpha;
  out.normZero = norm(scale(t, Complex(0.0)), mode);
  out.normS = norm(s, mode);
  out.normT = norm(t, mode);
  out.normScaled = norm(scale(t, alpha), mode);
  out.normTiny = norm(scale(t, Complex(settings.tinyScale)), mode);
  out.normSum = norm(addSamePartition(s, t), mode);
  out.normProduct = norm(mulSamePartition(s, t), mode);
  return out;
}

std::vector<AxiomViolation> checkTrial(const TrialOutcome& o, const AxiomSettings& settings) {
  std::vector<AxiomViolation> found;
  auto flag = [&](AxiomProperty p, double lhs, double rhs) {
    found.push_back({o.trial, p, lhs, rhs, o.s, o.t, o.alpha});
  };
  const double tol = settings.tolerance;
  if (o.normZero != 0.0) flag(AxiomProperty::Positivity, o.normZero, 0.0);
  if (!isZero(o.t) && !(o.normT > 0.0)) flag(AxiomProperty::Positivity, o.normT, 0.0);
  if (isZero(o.t) && o.normT != 0.0) flag(AxiomProperty::Positivity, o.normT, 0.0);
  if (o.normScaled > o.normT + tol) flag(AxiomProperty::ScalingMonotone, o.normScaled, o.normT);
  if (!(o.normTiny < settings.tinyBound)) flag(AxiomProperty::ContinuityAtZero, o.normTiny, settings.tinyBound);
  if (o.normSum > o.normS + o.normT + tol) flag(AxiomProperty::Subadditive, o.normSum, o.normS + o.normT);
  if (o.normProduct > o.normS + o.normT + tol) flag(AxiomProperty::Submultiplicative, o.normProduct, o.normS + o.normT);
  return found;
}

AxiomReport checkAxioms(std::uint64_t seed, std::int64_t trials, TraceMode mode, const AxiomSettings& settings) {
  AxiomReport report;
  report.seed = seed;
  report.trials = trials;
  report.mode = mode;
  for (std::int64_t i = 0; i < trials; ++i) {
    auto in = sampleTrial(seed, i, settings);
    auto outcome = evaluateTrial(in.s, in.t, in.alpha, mode, settings);
    outcome.trial = i;
    report.maxTinyNorm = std::max(report.maxTinyNorm, outcome.normTiny);
    auto found = checkTrial(outcome, settings);
    report.violations.insert(report.violations.end(), std::make_move_iterator(found.begin()),
                             std::make_move_iterator(found.end()));
  }
  return report;
}

}  // namespace logalg
