#pragma once

// Cardinals, closed-form positive sequences, countable cell models and
// passports of nonatomic sigma-finite measure algebras. Every yes/no answer
// in this header is decided in exact rational arithmetic; doubles appear
// only in reported values.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logalg/extended_real.hpp"
#include "logalg/rational.hpp"

namespace logalg {

/// The cardinal aleph_k, stored as k.
struct Cardinal {
  std::int64_t alephIndex = 0;
  friend auto operator<=>(const Cardinal&, const Cardinal&) = default;
};

/// a(n) = c * n^p * q^n for n >= 1, with c > 0 and q > 0.
struct ClosedForm {
  Rational c{1};
  Rational p{0};
  Rational q{1};
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

/// Double value of a(n). Exact rational path when p is a non-negative integer
/// and n is small enough for the exact power to stay cheap; otherwise an
/// extended-exponent evaluation. Throws RangeError on overflow. Results below
/// the smallest subnormal flush to 0.
double evalClosedForm(const ClosedForm& form, std::int64_t n);

/// a(n) without leaving the extended exponent range.
ExtendedReal evalExtended(const ClosedForm& form, std::int64_t n);

/// log a(n) in double precision; valid for any n up to 2^62.
double logClosedForm(const ClosedForm& form, std::int64_t n);

/// Exact a(n) when p is an integer, otherwise nullopt.
std::optional<Rational> evalExact(const ClosedForm& form, std::int64_t n);

/// sup_n a(n) < infinity, i.e. q < 1 or (q = 1 and p <= 0).
bool closedFormBounded(const ClosedForm& form);

/// sup_{n >= 1} a(n) for a bounded form (the maximum is attained).
double closedFormSupremum(const ClosedForm& form);

/// Pointwise reciprocal 1/a(n) = (1/c) n^{-p} (1/q)^n.
ClosedForm reciprocal(const ClosedForm& form);

/// Smallest n0 >= 1 after which a(n) is monotone (non-increasing when
/// log q + p/n <= 0 eventually, non-decreasing otherwise).
std::int64_t monotoneFrom(const ClosedForm& form);

void validateClosedForm(const ClosedForm& form, const std::string& where, std::vector<std::string>& out);

/// Sum of closed forms, kept in a normal form: like terms (equal p and q)
/// combined, sorted by (q, p). The last term dominates asymptotically.
using TailTerms = std::vector<ClosedForm>;

TailTerms normalizeTerms(TailTerms terms);
const ClosedForm& dominantTerm(const TailTerms& terms);

/// Terms re-indexed so the new index j corresponds to the old index j + shift.
/// Exact when shift == 0 or every p is a non-negative integer; nullopt otherwise.
std::optional<TailTerms> shiftTerms(const TailTerms& terms, std::int64_t shift);

/// Finite prefix followed by an optional closed-form tail: the value at global
/// index n (1-based) is prefix[n-1] for n <= prefix.size(), otherwise
/// sum of tail terms at m = n - prefix.size().
struct SeqSpec {
  std::vector<Rational> prefix;
  std::optional<TailTerms> tail;

  bool infinite() const { return tail.has_value(); }
  std::int64_t prefixLength() const { return static_cast<std::int64_t>(prefix.size()); }

  double logAt(std::int64_t n) const;
  std::optional<Rational> exactAt(std::int64_t n) const;

  /// Same sequence with the prefix/tail split moved to `length` >= current
  /// prefix length. Nullopt when materialising requires a non-integer power.
  std::optional<SeqSpec> withPrefixLength(std::int64_t length) const;

  friend bool operator==(const SeqSpec&, const SeqSpec&) = default;
};

/// Exact sequence equality (modulo prefix/tail split). Falls back to
/// structural equality when the two splits cannot be aligned exactly.
bool sameSequence(const SeqSpec& a, const SeqSpec& b);

struct RatioDecision {
  bool bounded = true;
  /// Global index n with a(n)/b(n) > 10^6, when unbounded and found within
  /// 63 doublings (then refined to the first such n in the last bracket).
  std::optional<std::int64_t> witnessIndex;
};

/// Decides sup_n a(n)/b(n) < infinity. Throws InputError when the two
/// sequences are not of the same length class.
RatioDecision ratioBounded(const SeqSpec& a, const SeqSpec& b);

/// Affine aleph-index tail: entry m >= 1 is aleph_{b0 + b1 m}.
struct AffineTail {
  std::int64_t b0 = 0;
  std::int64_t b1 = 1;
  std::int64_t at(std::int64_t m) const { return b0 + b1 * m; }
  friend bool operator==(const AffineTail&, const AffineTail&) = default;
};

struct PassportLine {
  std::vector<Cardinal> prefix;
  std::optional<AffineTail> tail;

  bool infinite() const { return tail.has_value(); }
  std::int64_t prefixLength() const { return static_cast<std::int64_t>(prefix.size()); }
  /// Cardinal at global index i (1-based).
  Cardinal at(std::int64_t i) const;
  bool contains(std::int64_t alephIndex) const;

  friend bool operator==(const PassportLine&, const PassportLine&) = default;
};

/// Shortest prefix describing the same cardinal sequence.
PassportLine canonicalLine(PassportLine line);
bool sameLine(const PassportLine& a, const PassportLine& b);

/// Three-line invariant: weights of infinite-measure homogeneous components,
/// weights of finite-measure components, and the measures of the latter.
struct Passport {
  PassportLine sLine;
  PassportLine uLine;
  SeqSpec uMeasures;
  friend bool operator==(const Passport&, const Passport&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

ValidationReport validatePassport(const Passport& p);

/// Passport of a direct sum. Components of equal weight merge into one whose
/// measure is the sum; any infinite contributor makes it an s-component.
/// Throws UnsupportedMerge when infinite tails are not index-aligned or a
/// tail measure cannot be re-indexed exactly; InputError on invalid input.
Passport mergePassports(std::span<const Passport> passports);

/// Semantic equality: same lines as cardinal sequences, same measures.
bool samePassport(const Passport& a, const Passport& b);

/// Countable measure space: finitely many explicit cells followed by an
/// optional infinite family whose mass and density are closed forms in the
/// tail index. `h` is the density dnu/dmu on each cell.
struct CellModel {
  struct Cell {
    Rational mass;
    Rational h;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  std::vector<Cell> prefixCells;
  std::optional<ClosedForm> tailMass;
  std::optional<ClosedForm> tailH;

  bool infinite() const { return tailH.has_value(); }
  std::int64_t prefixLength() const { return static_cast<std::int64_t>(prefixCells.size()); }

  ExtendedReal massAt(std::int64_t cell) const;
  double hAt(std::int64_t cell) const;
  double logHAt(std::int64_t cell) const;

  friend bool operator==(const CellModel&, const CellModel&) = default;
};

ValidationReport validateCellModel(const CellModel& model);

}  // namespace logalg
