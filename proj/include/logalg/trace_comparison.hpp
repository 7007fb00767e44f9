#pragma once

// Two traces mu and nu on a countable cell model, related by h = dnu/dmu.
// L_log(mu) is contained in L_log(nu) exactly when h is essentially bounded,
// so inclusion and coincidence reduce to supremum questions about h and 1/h.
// When h is unbounded, an explicit f in L_log(mu) \ L_log(nu) is built.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logalg/extended_real.hpp"
#include "logalg/measure_core.hpp"
#include "logalg/rearrangement.hpp"

namespace logalg {

struct TracePair {
  CellModel model;
};

/// Throws InputError if the model violates its invariants (h > 0 everywhere).
void validate(const TracePair& tp);

/// h (forward) or 1/h (inverse).
enum class Derivative { Forward, Inverse };

struct BoundDecision {
  bool bounded = true;
  /// Supremum of h (or 1/h) when bounded.
  std::optional<double> bound;
  /// 1-based cell with h > 1e6 (or h < 1e-6) when unbounded.
  std::optional<std::int64_t> witnessCell;
};

BoundDecision essentiallyBounded(const TracePair& tp, Derivative which);

enum class InclusionDirection { MuInNu, NuInMu };

struct Verdict {
  bool holds = true;
  std::string reason;
  BoundDecision evidence;
};

Verdict decideInclusion(const TracePair& tp, InclusionDirection direction);
Verdict decideCoincidence(const TracePair& tp);

/// Same measure space with h replaced by 1/h cell-wise.
TracePair swapped(const TracePair& tp);

struct CounterexampleGroup {
  std::int64_t n = 0;                 // every cell has n <= h < n + 1
  std::vector<std::int64_t> cells;    // 1-based cell indices
  ExtendedReal groupMass;             // mu(M_n)
  ExtendedReal g;                     // 1 / (k^2 mu(M_n)), k = position in the list
  ExtendedReal hMassSum;              // sum over the group of h * mass
  double f() const;                   // e^g - 1, +inf when it overflows
};

struct Counterexample {
  std::vector<CounterexampleGroup> groups;
  /// f restricted to the retained groups as a step function on the groups
  /// (one cell per group). Throws RangeError when a mass or value does not
  /// fit in a double.
  StepFunction truncatedF() const;
};

struct CounterexampleLimits {
  /// Distinct values of floor(h) examined; cells with floor(h) >= 2^63 are not scanned.
  std::int64_t maxGroups = 10'000'000;
  std::int64_t maxCells = 10'000'000;
};

/// Groups cells by floor(h) = n >= 1 and keeps the first K groups of
/// positive mass. Throws InputError("insufficient groups ...") when fewer
/// than K exist within the scan limits, or when h is bounded on an infinite
/// tail (no counterexample exists).
Counterexample buildCounterexample(const TracePair& tp, std::int64_t terms, const CounterexampleLimits& limits = {});

struct DivergenceCertificate {
  std::int64_t terms = 0;
  /// sum_k mu(M_{n_k}) log(1 + f_k), evaluated through the groups.
  double muPartial = 0.0;
  /// sum_k 1/k^2, evaluated independently.
  double muPartialClosedForm = 0.0;
  /// sum_k n_k / k^2, a lower bound for the nu-integral of log(1 + f).
  double nuPartialLower = 0.0;
  /// sum_k (n_k + 1) / k^2.
  double nuPartialUpper = 0.0;
  /// sum_k g_k * sum_{cells} h * mass, the partial nu-integral itself.
  double nuPartial = 0.0;
  /// sum_k 1/k.
  double harmonicLower = 0.0;
};

/// Throws NumericError if the two muPartial evaluations differ by more than
/// 1e-9 or a certificate invariant fails.
DivergenceCertificate certifyDivergence(const Counterexample& ce, const TracePair& tp);

}  // namespace logalg
