#include "logalg/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "logalg/errors.hpp"
#include "logalg/jacobi_svd.hpp"

namespace logalg {

namespace {

// Correctly rounded sum (Shewchuk partials). The coalesced mass of a level
// must not depend on cell order or on how a cell was split.
double exactSum(const std::vector<double>& values) {
  std::vector<double> partials;
  for (double x : values) {
    std::size_t used = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  double total = 0.0;
  if (partials.empty()) return total;
  auto n = partials.size();
  total = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = total;
    const double y = partials[--n];
    total = x + y;
    const double yr = total - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round-half-even correction across the remaining partials.
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = total + y;
    if (y == x - total) total = x;
  }
  return total;
}

RearrangementProfile profileFrom(std::vector<StepCell> cells) {
  struct Entry {
    double level;
    double mass;
  };
  std::vector<Entry> entries;
  entries.reserve(cells.size());
  for (const auto& c : cells) {
    const double level = modulus(c.value);
    if (level > 0.0) entries.push_back({level, c.mass});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.level != b.level ? a.level > b.level : a.mass < b.mass;
  });
  RearrangementProfile profile;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    std::vector<double> masses;
    while (j < entries.size() && entries[j].level == entries[i].level) masses.push_back(entries[j++].mass);
    profile.segments.push_back({masses.size() == 1 ? masses.front() : exactSum(masses), entries[i].level});
    i = j;
  }
  return profile;
}

void requireSamePartition(const StepFunction& f, const StepFunction& g) {
  const bool same = f.cells.size() == g.cells.size() &&
                    std::equal(f.cells.begin(), f.cells.end(), g.cells.begin(),
                               [](const StepCell& a, const StepCell& b) { return a.mass == b.mass; });
  if (!same) throw InputError("step functions are not defined on the same partition");
}

}  // namespace

double RearrangementProfile::totalLength() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.length;
  return total;
}

void validate(const StepFunction& f) {
  for (std::size_t i = 0; i < f.cells.size(); ++i) {
    const auto& c = f.cells[i];
    if (!(c.mass > 0.0) || !std::isfinite(c.mass))
      throw InputError("cell " + std::to_string(i) + ": mass must be positive and finite");
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag()))
      throw InputError("cell " + std::to_string(i) + ": value must be finite");
  }
}

void validate(const MatrixStepFunction& f) {
  if (f.n < 1) throw InputError("matrix size n must be >= 1");
  for (std::size_t i = 0; i < f.cells.size(); ++i) {
    const auto& c = f.cells[i];
    if (!(c.mass > 0.0) || !std::isfinite(c.mass))
      throw InputError("cell " + std::to_string(i) + ": mass must be positive and finite");
    if (c.value.rows() != f.n || c.value.cols() != f.n)
      throw InputError("cell " + std::to_string(i) + ": value is not " + std::to_string(f.n) + "x" +
                       std::to_string(f.n));
  }
}

RearrangementProfile rearrange(const StepFunction& f) {
  validate(f);
  return profileFrom(f.cells);
}

StepFunction scalarExpansion(const MatrixStepFunction& f) {
  validate(f);
  StepFunction out;
  for (const auto& cell : f.cells) {
    for (double sigma : singularValues(cell.value)) out.cells.push_back({cell.mass, Complex(sigma, 0.0)});
  }
  return out;
}

RearrangementProfile rearrangeMatrix(const MatrixStepFunction& f) { return rearrange(scalarExpansion(f)); }

double logNorm(const RearrangementProfile& profile, TraceMode mode) {
  double total = 0.0;
  if (mode == TraceMode::Semifinite) {
    for (const auto& s : profile.segments) total += s.length * std::log1p(s.level);
  } else {
    double remaining = 1.0;
    for (const auto& s : profile.segments) {
      if (remaining <= 0.0) break;
      const double take = std::min(s.length, remaining);
      total += take * std::log1p(s.level);
      remaining -= take;
    }
  }
  if (!std::isfinite(total)) throw NumericError("log norm is not representable in double precision");
  return total;
}

StepFunction addSamePartition(const StepFunction& f, const StepFunction& g) {
  requireSamePartition(f, g);
  StepFunction out = f;
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i].value += g.cells[i].value;
  return out;
}

StepFunction mulSamePartition(const StepFunction& f, const StepFunction& g) {
  requireSamePartition(f, g);
  StepFunction out = f;
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i].value *= g.cells[i].value;
  return out;
}

StepFunction scale(const StepFunction& f, Complex alpha) {
  StepFunction out = f;
  for (auto& c : out.cells) c.value *= alpha;
  return out;
}

}  // namespace logalg
