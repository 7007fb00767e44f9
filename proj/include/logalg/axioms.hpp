#pragma once

// Randomised check of the F-norm properties of the log norm on same-partition
// step function pairs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logalg/rearrangement.hpp"

namespace logalg {

enum class AxiomProperty {
  Positivity,         // (a) ||0|| = 0, and T != 0 gives ||T|| > 0
  ScalingMonotone,    // (b) ||alpha T|| <= ||T|| for |alpha| <= 1
  ContinuityAtZero,   // (c) surrogate: ||1e-8 T|| < 1e-6
  Subadditive,        // (d) ||S + T|| <= ||S|| + ||T||
  Submultiplicative,  // (e) ||S T|| <= ||S|| + ||T||
};

std::string propertyLabel(AxiomProperty p);

struct AxiomSettings {
  double tolerance = 1e-9;
  double tinyScale = 1e-8;
  double tinyBound = 1e-6;
  int minCells = 1;
  int maxCells = 32;
  double maxMass = 10.0;
  double maxModulus = 1e3;
};

/// One sampled (or forced) input pair with every norm the checks use.
struct TrialOutcome {
  std::int64_t trial = 0;
  StepFunction s;
  StepFunction t;
  Complex alpha;
  double normZero = 0.0;
  double normS = 0.0;
  double normT = 0.0;
  double normScaled = 0.0;
  double normTiny = 0.0;
  double normSum = 0.0;
  double normProduct = 0.0;
};

struct AxiomViolation {
  std::int64_t trial = 0;
  AxiomProperty property = AxiomProperty::Positivity;
  double lhs = 0.0;
  double rhs = 0.0;
  StepFunction s;
  StepFunction t;
  Complex alpha;
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  TraceMode mode = TraceMode::Semifinite;
  std::vector<AxiomViolation> violations;
  /// Largest ||1e-8 T|| seen, for reading the (c) surrogate at a glance.
  double maxTinyNorm = 0.0;

  std::int64_t count(AxiomProperty p) const;
};

struct TrialInput {
  StepFunction s;
  StepFunction t;
  Complex alpha;
};

/// The pair generated for trial `index` of `seed`: shared masses in (0, 10],
/// 1 to 32 cells, complex values with modulus in [0, 1e3], |alpha| <= 1.
/// T is forced nonzero so (a) is exercised in its contrapositive form.
TrialInput sampleTrial(std::uint64_t seed, std::int64_t index, const AxiomSettings& settings = {});

/// Evaluates all norms for a given pair (masses must coincide).
TrialOutcome evaluateTrial(const StepFunction& s, const StepFunction& t, Complex alpha, TraceMode mode,
                           const AxiomSettings& settings = {});

/// Violations found in one outcome.
std::vector<AxiomViolation> checkTrial(const TrialOutcome& outcome, const AxiomSettings& settings = {});

AxiomReport checkAxioms(std::uint64_t seed, std::int64_t trials, TraceMode mode, const AxiomSettings& settings = {});

}  // namespace logalg
