#include "logalg/trace_comparison.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "logalg/errors.hpp"

namespace logalg {

namespace {

constexpr double kWitnessLog = 13.815510557964274;  // log(1e6)

std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ClosedForm tailForm(const TracePair& tp, Derivative which) {
  return which == Derivative::Forward ? *tp.model.tailH : reciprocal(*tp.model.tailH);
}

// Smallest tail index m (within the doubling bracket) with log form(m) above
// the witness threshold; nullopt if none within 2^62.
std::optional<std::int64_t> searchWitness(const ClosedForm& form) {
  auto exceeds = [&](std::int64_t m) { return logClosedForm(form, m) > kWitnessLog; };
  std::int64_t lo = 0;
  for (int k = 0; k <= 62; ++k) {
    const std::int64_t hi = std::int64_t{1} << k;
    if (exceeds(hi)) {
      std::int64_t right = hi;
      while (right - lo > 1) {
        const std::int64_t mid = lo + (right - lo) / 2;
        if (exceeds(mid)) right = mid; else lo = mid;
      }
      return right;
    }
    lo = hi;
  }
  return std::nullopt;
}

struct CellH {
  ExtendedReal value;
  std::optional<std::int64_t> group;  // floor(h) when 1 <= h and it fits
  bool overflow = false;              // floor(h) beyond int64
};

// floor(h) is decided exactly whenever h is rational and the double
// evaluation lands near an integer.
CellH cellH(const CellModel& model, std::int64_t cell) {
  CellH out;
  std::optional<Rational> exact;
  if (cell <= model.prefixLength()) {
    exact = model.prefixCells[static_cast<std::size_t>(cell - 1)].h;
    out.value = ExtendedReal::fromRational(*exact);
  } else {
    const std::int64_t m = cell - model.prefixLength();
    out.value = evalExtended(*model.tailH, m);
    const double h = out.value.toDouble();
    if (std::isfinite(h) && h < 9.0e15 && std::abs(h - std::round(h)) <= 1e-9 * std::max(1.0, h))
      exact = evalExact(*model.tailH, m);
  }
  if (exact) {
    if (*exact < 1) return out;
    BigInt whole = numerator(*exact) / denominator(*exact);
    if (whole < BigInt(std::numeric_limits<std::int64_t>::max())) out.group = whole.convert_to<std::int64_t>();
    else out.overflow = true;
    return out;
  }
  const double h = out.value.toDouble();
  if (h < 1.0) return out;
  if (h >= 9.2e18) out.overflow = true;
  else out.group = static_cast<std::int64_t>(std::floor(h));
  return out;
}

}  // namespace

void validate(const TracePair& tp) {
  auto report = validateCellModel(tp.model);
  if (!report.valid()) throw InputError("invalid cell model: " + report.violations.front());
}

BoundDecision essentiallyBounded(const TracePair& tp, Derivative which) {
  validate(tp);
  const auto& model = tp.model;
  BoundDecision out;
  if (model.infinite()) {
    const ClosedForm form = tailForm(tp, which);
    if (!closedFormBounded(form)) {
      out.bounded = false;
      if (auto m = searchWitness(form)) out.witnessCell = model.prefixLength() + *m;
      return out;
    }
  }
  std::optional<Rational> prefixMax;
  for (const auto& c : model.prefixCells) {
    const Rational v = which == Derivative::Forward ? c.h : Rational(1) / c.h;
    if (!prefixMax || v > *prefixMax) prefixMax = v;
  }
  double bound = prefixMax ? toDouble(*prefixMax) : 0.0;
  if (model.infinite()) bound = std::max(bound, closedFormSupremum(tailForm(tp, which)));
  out.bound = bound;
  return out;
}

Verdict decideInclusion(const TracePair& tp, InclusionDirection direction) {
  const bool forward = direction == InclusionDirection::MuInNu;
  Verdict v;
  v.evidence = essentiallyBounded(tp, forward ? Derivative::Forward : Derivative::Inverse);
  v.holds = v.evidence.bounded;
  const std::string name = forward ? "h" : "h^-1";
  if (v.holds) {
    v.reason = name + " bounded, sup = " + formatDouble(*v.evidence.bound);
  } else {
    v.reason = name + " unbounded";
    if (v.evidence.witnessCell)
      v.reason += ", witness cell " + std::to_string(*v.evidence.witnessCell) + (forward ? " has h > 1e6" : " has h < 1e-6");
  }
  return v;
}

Verdict decideCoincidence(const TracePair& tp) {
  Verdict forward = decideInclusion(tp, InclusionDirection::MuInNu);
  Verdict inverse = decideInclusion(tp, InclusionDirection::NuInMu);
  if (!forward.holds) return forward;
  if (!inverse.holds) return inverse;
  Verdict v = forward;
  v.reason = forward.reason + "; " + inverse.reason;
  return v;
}

TracePair swapped(const TracePair& tp) {
  TracePair out = tp;
  for (auto& c : out.model.prefixCells) c.h = Rational(1) / c.h;
  if (out.model.tailH) out.model.tailH = reciprocal(*out.model.tailH);
  return out;
}

double CounterexampleGroup::f() const {
  const double gv = g.toDouble();
  return std::isinf(gv) ? HUGE_VAL : std::expm1(gv);
}

StepFunction Counterexample::truncatedF() const {
  StepFunction out;
  for (const auto& group : groups) {
    const double mass = group.groupMass.toDouble();
    const double value = group.f();
    if (!(mass > 0.0) || std::isinf(mass) || std::isinf(value))
      throw RangeError("counterexample group n=" + std::to_string(group.n) + " does not fit in double precision");
    out.cells.push_back({mass, Complex(value, 0.0)});
  }
  return out;
}

Counterexample buildCounterexample(const TracePair& tp, std::int64_t terms, const CounterexampleLimits& limits) {
  validate(tp);
  if (terms < 1) throw InputError("number of terms must be >= 1");
  const auto& model = tp.model;
  if (model.infinite() && closedFormBounded(*model.tailH))
    throw InputError("h is essentially bounded on the infinite tail; no counterexample exists");

  struct Accumulator {
    std::vector<std::int64_t> cells;
    ExtendedReal mass;
    ExtendedReal hMass;
  };
  std::map<std::int64_t, Accumulator> found;
  const std::int64_t monotoneCell = model.infinite() ? model.prefixLength() + monotoneFrom(*model.tailH) : 0;
  const auto requested = static_cast<std::size_t>(terms);

  for (std::int64_t cell = 1; cell <= limits.maxCells; ++cell) {
    if (!model.infinite() && cell > model.prefixLength()) break;
    const CellH h = cellH(model, cell);
    if (h.overflow) {
      if (model.infinite() && cell >= monotoneCell) break;
      continue;
    }
    if (h.group && (found.contains(*h.group) || static_cast<std::int64_t>(found.size()) < limits.maxGroups)) {
      auto& acc = found[*h.group];
      const ExtendedReal mass = model.massAt(cell);
      acc.cells.push_back(cell);
      acc.mass += mass;
      acc.hMass += h.value * mass;
    }
    // Past the turning point h only grows, so later cells land in groups above
    // the current one and cannot change the first K groups.
    if (model.infinite() && cell >= monotoneCell && h.group) {
      if (static_cast<std::int64_t>(found.size()) >= limits.maxGroups && !found.contains(*h.group)) break;
      if (found.size() >= requested && *h.group > std::next(found.begin(), terms - 1)->first) break;
    }
  }
  if (found.size() < requested) {
    throw InputError("insufficient groups: found " + std::to_string(found.size()) + " nonempty groups, need " +
                     std::to_string(terms));
  }

  Counterexample ce;
  std::int64_t k = 0;
  for (auto& [n, acc] : found) {
    if (++k > terms) break;
    CounterexampleGroup group;
    group.n = n;
    group.cells = std::move(acc.cells);
    group.groupMass = acc.mass;
    group.hMassSum = acc.hMass;
    group.g = ExtendedReal(1.0) / (ExtendedReal(static_cast<double>(k) * static_cast<double>(k)) * acc.mass);
    ce.groups.push_back(std::move(group));
  }
  return ce;
}

DivergenceCertificate certifyDivergence(const Counterexample& ce, const TracePair& tp) {
  validate(tp);
  if (ce.groups.empty()) throw InputError("empty counterexample");
  DivergenceCertificate cert;
  cert.terms = static_cast<std::int64_t>(ce.groups.size());

  for (std::size_t i = 0; i < ce.groups.size(); ++i) {
    const auto& group = ce.groups[i];
    if (i > 0 && group.n <= ce.groups[i - 1].n) throw InputError("counterexample group indices must increase");
    for (std::int64_t cell : group.cells) {
      if (cell < 1 || (!tp.model.infinite() && cell > tp.model.prefixLength()))
        throw InputError("counterexample refers to a cell outside the model");
      if (cellH(tp.model, cell).group != group.n)
        throw InputError("counterexample was not built from this model (cell " + std::to_string(cell) + ")");
    }
  }

  for (std::size_t i = 0; i < ce.groups.size(); ++i) {
    const auto& group = ce.groups[i];
    const double k = static_cast<double>(i + 1);
    const double f = group.f();
    // log(1 + f) = g; go through f whenever it is representable.
    const ExtendedReal integrand = std::isfinite(f) ? ExtendedReal(std::log1p(f)) : group.g;
    cert.muPartial += (integrand * group.groupMass).toDouble();
    cert.muPartialClosedForm += 1.0 / (k * k);
    cert.nuPartialLower += static_cast<double>(group.n) / (k * k);
    cert.nuPartialUpper += static_cast<double>(group.n + 1) / (k * k);
    cert.nuPartial += (group.g * group.hMassSum).toDouble();
    cert.harmonicLower += 1.0 / k;
  }

  if (std::abs(cert.muPartial - cert.muPartialClosedForm) > 1e-9)
    throw NumericError("mu-integral partial sums disagree: " + formatDouble(cert.muPartial) + " vs " +
                       formatDouble(cert.muPartialClosedForm));
  if (cert.muPartial > std::numbers::pi * std::numbers::pi / 6.0 + 1e-9)
    throw NumericError("mu-integral partial sum exceeds pi^2/6");
  if (cert.nuPartialLower < cert.harmonicLower - 1e-9)
    throw NumericError("nu lower bound falls below the harmonic partial sum");
  if (cert.nuPartial < cert.nuPartialLower * (1.0 - 1e-12) - 1e-9)
    throw NumericError("partial nu-integral falls below its lower bound");
  return cert;
}

}  // namespace logalg
