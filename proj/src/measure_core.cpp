#include "logalg/measure_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "logalg/errors.hpp"

namespace logalg {

namespace {

constexpr std::int64_t kExactIndexLimit = 2048;

bool isNonNegativeInteger(const Rational& r) { return isInteger(r) && r >= 0; }

std::int64_t floorMod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

double logSumExp(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  if (std::isinf(top)) return top;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return top + std::log(acc);
}

}  // namespace

// --- closed forms -----------------------------------------------------------

ExtendedReal evalExtended(const ClosedForm& form, std::int64_t n) {
  if (n < 1) throw InputError("closed forms are indexed from 1");
  ExtendedReal value = ExtendedReal::fromRational(form.c);
  if (isInteger(form.p)) {
    const std::int64_t p = toInt64(form.p);
    ExtendedReal power = ipow(ExtendedReal(static_cast<double>(n)), static_cast<std::uint64_t>(p < 0 ? -p : p));
    value = p < 0 ? value / power : value * power;
  } else {
    value *= ExtendedReal::fromLog(toDouble(form.p) * std::log(static_cast<double>(n)));
  }
  return value * ipow(ExtendedReal::fromRational(form.q), static_cast<std::uint64_t>(n));
}

double evalClosedForm(const ClosedForm& form, std::int64_t n) {
  if (n < 1) throw InputError("closed forms are indexed from 1");
  double value = 0.0;
  if (isNonNegativeInteger(form.p) && n <= kExactIndexLimit) {
    value = toDouble(*evalExact(form, n));
  } else {
    value = evalExtended(form, n).toDouble();
  }
  if (std::isinf(value))
    throw RangeError("closed form value at n=" + std::to_string(n) + " overflows double");
  return value;
}

double logClosedForm(const ClosedForm& form, std::int64_t n) {
  if (n < 1) throw InputError("closed forms are indexed from 1");
  const double dn = static_cast<double>(n);
  return logOf(form.c) + toDouble(form.p) * std::log(dn) + dn * logOf(form.q);
}

std::optional<Rational> evalExact(const ClosedForm& form, std::int64_t n) {
  if (n < 1) throw InputError("closed forms are indexed from 1");
  if (!isInteger(form.p)) return std::nullopt;
  return form.c * ipow(Rational(n), toInt64(form.p)) * ipow(form.q, n);
}

bool closedFormBounded(const ClosedForm& form) {
  return form.q < 1 || (form.q == 1 && form.p <= 0);
}

double closedFormSupremum(const ClosedForm& form) {
  if (!closedFormBounded(form)) throw InputError("supremum requested for an unbounded closed form");
  double best = logClosedForm(form, 1);
  if (form.q < 1 && form.p > 0) {
    const double turning = toDouble(form.p) / -logOf(form.q);
    for (double candidate : {std::floor(turning), std::ceil(turning)}) {
      if (candidate >= 1.0 && candidate < 9.2e18)
        best = std::max(best, logClosedForm(form, static_cast<std::int64_t>(candidate)));
    }
  }
  return std::exp(best);
}

ClosedForm reciprocal(const ClosedForm& form) {
  return ClosedForm{Rational(1) / form.c, -form.p, Rational(1) / form.q};
}

std::int64_t monotoneFrom(const ClosedForm& form) {
  const double p = toDouble(form.p);
  const double lq = logOf(form.q);
  // d/dn log a(n) = p/n + log q changes sign at most once, at n = -p / log q.
  if (p == 0.0 || lq == 0.0 || (p > 0.0) == (lq > 0.0)) return 1;
  const double turning = -p / lq;
  return static_cast<std::int64_t>(std::ceil(turning)) + 1;
}

void validateClosedForm(const ClosedForm& form, const std::string& where, std::vector<std::string>& out) {
  if (form.c <= 0) out.push_back(where + ": non-positive coefficient c");
  if (form.q <= 0) out.push_back(where + ": non-positive ratio q");
}

TailTerms normalizeTerms(TailTerms terms) {
  std::sort(terms.begin(), terms.end(), [](const ClosedForm& a, const ClosedForm& b) {
    return std::tie(a.q, a.p) < std::tie(b.q, b.p);
  });
  TailTerms out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().q == t.q && out.back().p == t.p) {
      out.back().c += t.c;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

const ClosedForm& dominantTerm(const TailTerms& terms) {
  if (terms.empty()) throw InputError("empty tail");
  return *std::max_element(terms.begin(), terms.end(), [](const ClosedForm& a, const ClosedForm& b) {
    return std::tie(a.q, a.p) < std::tie(b.q, b.p);
  });
}

std::optional<TailTerms> shiftTerms(const TailTerms& terms, std::int64_t shift) {
  if (shift < 0) return std::nullopt;
  if (shift == 0) return terms;
  TailTerms out;
  for (const auto& t : terms) {
    if (!isNonNegativeInteger(t.p)) return std::nullopt;
    // c (j+S)^p q^{j+S} = sum_i c q^S C(p,i) S^{p-i} j^i q^j
    const std::int64_t p = toInt64(t.p);
    const Rational scale = t.c * ipow(t.q, shift);
    BigInt binom = 1;
    for (std::int64_t i = 0; i <= p; ++i) {
      if (i > 0) binom = binom * (p - i + 1) / i;
      out.push_back(ClosedForm{scale * Rational(binom) * ipow(Rational(shift), p - i), Rational(i), t.q});
    }
  }
  return normalizeTerms(std::move(out));
}

// --- sequences --------------------------------------------------------------

double SeqSpec::logAt(std::int64_t n) const {
  if (n < 1) throw InputError("sequences are indexed from 1");
  if (n <= prefixLength()) return logOf(prefix[static_cast<std::size_t>(n - 1)]);
  if (!tail) throw InputError("index beyond the end of a finite sequence");
  std::vector<double> logs;
  for (const auto& t : *tail) logs.push_back(logClosedForm(t, n - prefixLength()));
  return logSumExp(logs);
}

std::optional<Rational> SeqSpec::exactAt(std::int64_t n) const {
  if (n < 1) throw InputError("sequences are indexed from 1");
  if (n <= prefixLength()) return prefix[static_cast<std::size_t>(n - 1)];
  if (!tail) throw InputError("index beyond the end of a finite sequence");
  Rational sum = 0;
  for (const auto& t : *tail) {
    auto v = evalExact(t, n - prefixLength());
    if (!v) return std::nullopt;
    sum += *v;
  }
  return sum;
}

std::optional<SeqSpec> SeqSpec::withPrefixLength(std::int64_t length) const {
  if (length == prefixLength()) return *this;
  if (length < prefixLength() || !tail) return std::nullopt;
  SeqSpec out;
  out.prefix = prefix;
  for (std::int64_t n = prefixLength() + 1; n <= length; ++n) {
    auto v = exactAt(n);
    if (!v) return std::nullopt;
    out.prefix.push_back(*v);
  }
  auto shifted = shiftTerms(*tail, length - prefixLength());
  if (!shifted) return std::nullopt;
  out.tail = std::move(*shifted);
  return out;
}

bool sameSequence(const SeqSpec& a, const SeqSpec& b) {
  if (a.infinite() != b.infinite()) return false;
  if (!a.infinite()) return a.prefix == b.prefix;
  const std::int64_t length = std::max(a.prefixLength(), b.prefixLength());
  auto a2 = a.withPrefixLength(length);
  auto b2 = b.withPrefixLength(length);
  if (!a2 || !b2) {
    return a.prefix == b.prefix && normalizeTerms(*a.tail) == normalizeTerms(*b.tail);
  }
  return a2->prefix == b2->prefix && normalizeTerms(*a2->tail) == normalizeTerms(*b2->tail);
}

RatioDecision ratioBounded(const SeqSpec& a, const SeqSpec& b) {
  if (a.infinite() != b.infinite())
    throw InputError("ratio of a finite and an infinite sequence");
  if (!a.infinite()) {
    if (a.prefix.size() != b.prefix.size()) throw InputError("ratio of finite sequences of different lengths");
    return RatioDecision{};
  }
  // Positive terms cannot cancel, so each sum behaves like its dominant term
  // and the ratio like (c_a/c_b) n^{p_a - p_b} (q_a/q_b)^n.
  const ClosedForm& da = dominantTerm(*a.tail);
  const ClosedForm& db = dominantTerm(*b.tail);
  if (da.q < db.q || (da.q == db.q && da.p <= db.p)) return RatioDecision{};

  RatioDecision out;
  out.bounded = false;
  const double threshold = std::log(1e6);
  auto exceeds = [&](std::int64_t n) { return a.logAt(n) - b.logAt(n) > threshold; };
  std::int64_t lo = 0;
  for (int k = 0; k <= 62; ++k) {
    const std::int64_t hi = std::int64_t{1} << k;
    if (exceeds(hi)) {
      std::int64_t right = hi;
      while (right - lo > 1) {
        const std::int64_t mid = lo + (right - lo) / 2;
        if (exceeds(mid)) right = mid; else lo = mid;
      }
      out.witnessIndex = right;
      break;
    }
    lo = hi;
  }
  return out;
}

// --- passport lines ---------------------------------------------------------

Cardinal PassportLine::at(std::int64_t i) const {
  if (i < 1) throw InputError("passport lines are indexed from 1");
  if (i <= prefixLength()) return prefix[static_cast<std::size_t>(i - 1)];
  if (!tail) throw InputError("index beyond the end of a finite passport line");
  return Cardinal{tail->at(i - prefixLength())};
}

bool PassportLine::contains(std::int64_t alephIndex) const {
  for (const auto& c : prefix)
    if (c.alephIndex == alephIndex) return true;
  if (!tail || tail->b1 < 1) return false;
  return alephIndex >= tail->at(1) && floorMod(alephIndex - tail->b0, tail->b1) == 0;
}

PassportLine canonicalLine(PassportLine line) {
  if (!line.tail) return line;
  while (!line.prefix.empty() && line.prefix.back().alephIndex == line.tail->b0) {
    line.prefix.pop_back();
    line.tail->b0 -= line.tail->b1;
  }
  return line;
}

bool sameLine(const PassportLine& a, const PassportLine& b) { return canonicalLine(a) == canonicalLine(b); }

namespace {

bool sameTailClass(const AffineTail& a, const AffineTail& b) {
  return a.b1 == b.b1 && floorMod(a.b0 - b.b0, a.b1) == 0;
}

// {b0 + b1 m} and {c0 + c1 m'} share infinitely many values iff the linear
// congruence is solvable; they never share only finitely many.
bool tailsIntersect(const AffineTail& a, const AffineTail& b) {
  return floorMod(b.b0 - a.b0, std::gcd(a.b1, b.b1)) == 0;
}

void validateLine(const PassportLine& line, const std::string& name, std::vector<std::string>& out) {
  bool increasing = true;
  for (std::size_t i = 0; i < line.prefix.size(); ++i) {
    if (line.prefix[i].alephIndex < 0) out.push_back(name + " has a negative aleph index");
    if (i > 0 && !(line.prefix[i - 1] < line.prefix[i])) increasing = false;
  }
  if (line.tail) {
    if (line.tail->b1 < 1) {
      out.push_back(name + " tail slope b1 must be >= 1");
    } else {
      if (line.tail->at(1) < 0) out.push_back(name + " has a negative aleph index");
      if (!line.prefix.empty() && line.prefix.back().alephIndex >= line.tail->at(1)) increasing = false;
    }
  }
  if (!increasing) out.push_back(name + " not strictly increasing");
}

}  // namespace

ValidationReport validatePassport(const Passport& p) {
  ValidationReport report;
  auto& out = report.violations;
  validateLine(p.sLine, "sLine", out);
  validateLine(p.uLine, "uLine", out);

  if (p.uLine.infinite() != p.uMeasures.infinite() ||
      (!p.uLine.infinite() && p.uLine.prefix.size() != p.uMeasures.prefix.size())) {
    out.push_back("length mismatch between uLine and uMeasures");
  }
  for (std::size_t i = 0; i < p.uMeasures.prefix.size(); ++i) {
    if (p.uMeasures.prefix[i] <= 0)
      out.push_back("non-positive measure at uMeasures[" + std::to_string(i) + "]");
  }
  if (p.uMeasures.tail) {
    if (p.uMeasures.tail->empty()) out.push_back("uMeasures tail has no terms");
    for (std::size_t i = 0; i < p.uMeasures.tail->size(); ++i)
      validateClosedForm((*p.uMeasures.tail)[i], "non-positive measure in uMeasures tail term " + std::to_string(i), out);
  }

  for (const auto& c : p.sLine.prefix)
    if (p.uLine.contains(c.alephIndex))
      out.push_back("aleph_" + std::to_string(c.alephIndex) + " appears in both sLine and uLine");
  for (const auto& c : p.uLine.prefix)
    if (p.sLine.tail && p.sLine.contains(c.alephIndex))
      out.push_back("aleph_" + std::to_string(c.alephIndex) + " appears in both sLine and uLine");
  if (p.sLine.tail && p.uLine.tail && p.sLine.tail->b1 >= 1 && p.uLine.tail->b1 >= 1 &&
      tailsIntersect(*p.sLine.tail, *p.uLine.tail)) {
    out.push_back("sLine and uLine tails share cardinals");
  }
  return report;
}

// --- merge ------------------------------------------------------------------

namespace {

struct Component {
  bool infinite = false;
  Rational measure = 0;
};

// Smallest value of the tail class (offset, step) that is > floor, >= every
// `atLeast` and satisfies `accept`.
template <typename Accept>
std::int64_t firstClassValue(const AffineTail& cls, std::int64_t floorExclusive, std::int64_t atLeast, Accept accept) {
  std::int64_t v = std::max(floorExclusive + 1, atLeast);
  v += floorMod(cls.b0 - v, cls.b1);
  while (!accept(v)) v += cls.b1;
  return v;
}

Rational exactMeasure(const SeqSpec& seq, std::int64_t index) {
  auto v = seq.exactAt(index);
  if (!v) throw UnsupportedMerge("tail measure with a non-integer exponent cannot be materialised exactly");
  return *v;
}

}  // namespace

Passport mergePassports(std::span<const Passport> passports) {
  if (passports.empty()) throw InputError("mergePassports needs at least one passport");
  for (std::size_t i = 0; i < passports.size(); ++i) {
    auto report = validatePassport(passports[i]);
    if (!report.valid())
      throw InputError("passport " + std::to_string(i) + " is invalid: " + report.violations.front());
  }
  if (passports.size() == 1) return passports.front();

  std::optional<AffineTail> sClass;
  std::optional<AffineTail> uClass;
  std::int64_t sFirst = std::numeric_limits<std::int64_t>::min();
  std::int64_t uFirst = std::numeric_limits<std::int64_t>::min();
  std::int64_t prefixMax = -1;
  for (const auto& p : passports) {
    for (const auto& c : p.sLine.prefix) prefixMax = std::max(prefixMax, c.alephIndex);
    for (const auto& c : p.uLine.prefix) prefixMax = std::max(prefixMax, c.alephIndex);
    if (p.sLine.tail) {
      if (sClass && !sameTailClass(*sClass, *p.sLine.tail))
        throw UnsupportedMerge("infinite sLine tails are not index-aligned");
      sClass = *p.sLine.tail;
      sFirst = std::max(sFirst, p.sLine.tail->at(1));
    }
    if (p.uLine.tail) {
      if (uClass && !sameTailClass(*uClass, *p.uLine.tail))
        throw UnsupportedMerge("infinite uLine tails are not index-aligned");
      uClass = *p.uLine.tail;
      uFirst = std::max(uFirst, p.uLine.tail->at(1));
    }
  }
  const bool absorbed = sClass && uClass && sameTailClass(*sClass, *uClass);
  if (sClass && uClass && !absorbed && tailsIntersect(*sClass, *uClass))
    throw UnsupportedMerge("sLine and uLine tails overlap without being index-aligned");

  // Output tails start beyond every prefix entry and every input tail start,
  // so each output tail entry receives a contribution from every input tail.
  std::optional<std::int64_t> sStart;
  std::optional<std::int64_t> uStart;
  if (sClass) {
    const std::int64_t atLeast = absorbed ? std::max(sFirst, uFirst) : sFirst;
    sStart = firstClassValue(*sClass, prefixMax, atLeast, [](std::int64_t) { return true; });
  }
  if (uClass && !absorbed) {
    uStart = firstClassValue(*uClass, prefixMax, uFirst, [&](std::int64_t v) {
      for (const auto& p : passports) {
        if (!p.uLine.tail) continue;
        const std::int64_t lineIndex = p.uLine.prefixLength() + (v - p.uLine.tail->at(1)) / p.uLine.tail->b1 + 1;
        if (lineIndex - p.uMeasures.prefixLength() < 1) return false;
      }
      return true;
    });
  }

  std::map<std::int64_t, Component> components;
  auto addInfinite = [&](std::int64_t v) { components[v].infinite = true; };
  auto addFinite = [&](std::int64_t v, const Rational& m) { components[v].measure += m; };

  for (const auto& p : passports) {
    for (const auto& c : p.sLine.prefix) addInfinite(c.alephIndex);
    if (p.sLine.tail)
      for (std::int64_t m = 1; p.sLine.tail->at(m) < *sStart; ++m) addInfinite(p.sLine.tail->at(m));
    for (std::int64_t i = 1; i <= p.uLine.prefixLength(); ++i)
      addFinite(p.uLine.at(i).alephIndex, exactMeasure(p.uMeasures, i));
    if (p.uLine.tail) {
      const std::int64_t limit = absorbed ? *sStart : *uStart;
      for (std::int64_t m = 1; p.uLine.tail->at(m) < limit; ++m)
        addFinite(p.uLine.tail->at(m), exactMeasure(p.uMeasures, p.uLine.prefixLength() + m));
    }
  }

  Passport out;
  for (const auto& [aleph, comp] : components) {
    if (comp.infinite) {
      out.sLine.prefix.push_back(Cardinal{aleph});
    } else {
      out.uLine.prefix.push_back(Cardinal{aleph});
      out.uMeasures.prefix.push_back(comp.measure);
    }
  }
  if (sClass) out.sLine.tail = AffineTail{*sStart - sClass->b1, sClass->b1};
  if (uStart) {
    out.uLine.tail = AffineTail{*uStart - uClass->b1, uClass->b1};
    TailTerms terms;
    for (const auto& p : passports) {
      if (!p.uLine.tail) continue;
      const std::int64_t lineIndex = p.uLine.prefixLength() + (*uStart - p.uLine.tail->at(1)) / p.uLine.tail->b1 + 1;
      const std::int64_t shift = lineIndex - p.uMeasures.prefixLength() - 1;
      auto shifted = shiftTerms(*p.uMeasures.tail, shift);
      if (!shifted) throw UnsupportedMerge("tail measure with a non-integer exponent cannot be re-indexed exactly");
      terms.insert(terms.end(), shifted->begin(), shifted->end());
    }
    out.uMeasures.tail = normalizeTerms(std::move(terms));
  }
  return out;
}

bool samePassport(const Passport& a, const Passport& b) {
  return sameLine(a.sLine, b.sLine) && sameLine(a.uLine, b.uLine) && sameSequence(a.uMeasures, b.uMeasures);
}

// --- cell models ------------------------------------------------------------

ExtendedReal CellModel::massAt(std::int64_t cell) const {
  if (cell < 1) throw InputError("cells are indexed from 1");
  if (cell <= prefixLength()) return ExtendedReal::fromRational(prefixCells[static_cast<std::size_t>(cell - 1)].mass);
  if (!tailMass) throw InputError("cell index beyond a finite model");
  return evalExtended(*tailMass, cell - prefixLength());
}

double CellModel::logHAt(std::int64_t cell) const {
  if (cell < 1) throw InputError("cells are indexed from 1");
  if (cell <= prefixLength()) return logOf(prefixCells[static_cast<std::size_t>(cell - 1)].h);
  if (!tailH) throw InputError("cell index beyond a finite model");
  return logClosedForm(*tailH, cell - prefixLength());
}

double CellModel::hAt(std::int64_t cell) const {
  if (cell >= 1 && cell <= prefixLength()) return toDouble(prefixCells[static_cast<std::size_t>(cell - 1)].h);
  if (cell > prefixLength() && tailH && isInteger(tailH->p) && cell - prefixLength() <= kExactIndexLimit)
    return toDouble(*evalExact(*tailH, cell - prefixLength()));
  return std::exp(logHAt(cell));
}

ValidationReport validateCellModel(const CellModel& model) {
  ValidationReport report;
  auto& out = report.violations;
  for (std::size_t i = 0; i < model.prefixCells.size(); ++i) {
    if (model.prefixCells[i].mass <= 0) out.push_back("non-positive mass at prefixCells[" + std::to_string(i) + "]");
    if (model.prefixCells[i].h <= 0) out.push_back("non-positive h at prefixCells[" + std::to_string(i) + "]");
  }
  if (model.tailMass.has_value() != model.tailH.has_value())
    out.push_back("tailMass and tailH must be both present or both absent");
  if (model.tailMass) validateClosedForm(*model.tailMass, "tailMass", out);
  if (model.tailH) validateClosedForm(*model.tailH, "tailH", out);
  return report;
}

}  // namespace logalg
