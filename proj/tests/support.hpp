#pragma once

// Builders and seeded generators shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logalg/isomorphism.hpp"
#include "logalg/measure_core.hpp"
#include "logalg/random.hpp"
#include "logalg/rearrangement.hpp"
#include "logalg/trace_comparison.hpp"

namespace logalg::testing {

inline Rational R(const std::string& text) { return parseRational(text); }

inline ClosedForm cf(const std::string& c, const std::string& p, const std::string& q) {
  return ClosedForm{R(c), R(p), R(q)};
}

inline SeqSpec tailSeq(const ClosedForm& form) { return SeqSpec{{}, TailTerms{form}}; }

inline SeqSpec finiteSeq(const std::vector<std::string>& values) {
  SeqSpec s;
  for (const auto& v : values) s.prefix.push_back(R(v));
  return s;
}

inline PassportLine line(std::vector<std::int64_t> prefix, std::optional<AffineTail> tail = std::nullopt) {
  PassportLine l;
  for (auto k : prefix) l.prefix.push_back(Cardinal{k});
  l.tail = tail;
  return l;
}

/// Passport with empty sLine, uLine aleph_{1}, aleph_{2}, ... and the given measure tail.
inline Passport tailPassport(const ClosedForm& measure) {
  return Passport{line({}), line({}, AffineTail{0, 1}), tailSeq(measure)};
}

/// h(m) = m, mass(m) = 2^-m.
inline TracePair harmonicModel() {
  CellModel m;
  m.tailMass = cf("1", "0", "1/2");
  m.tailH = cf("1", "1", "1");
  return TracePair{m};
}

inline TracePair finiteModel(const std::vector<std::pair<std::string, std::string>>& massH) {
  CellModel m;
  for (const auto& [mass, h] : massH) m.prefixCells.push_back({R(mass), R(h)});
  return TracePair{m};
}

/// The two-block instance: blocks (n=2, 1-tail) + (n=3, 2^n-tail), against
/// the same algebra with the measure lines exchanged between the blocks.
inline std::pair<AlgebraDescriptor, AlgebraDescriptor> twoBlockInstance() {
  const Passport one = tailPassport(cf("1", "0", "1"));
  const Passport two = tailPassport(cf("1", "0", "2"));
  AlgebraDescriptor a{{Block{2, one}, Block{3, two}}};
  AlgebraDescriptor b{{Block{2, two}, Block{3, one}}};
  return {a, b};
}

struct CommutativeCase {
  std::string name;
  Passport x;
  Passport y;
  bool isomorphic;
  std::optional<ObstructionKind> kind;
  std::optional<std::string> direction;
};

/// Hand-derived decision table for the passport criterion.
inline std::vector<CommutativeCase> commutativeTable() {
  const Passport base = tailPassport(cf("1", "0", "1"));
  const Passport doubling = tailPassport(cf("1", "0", "2"));
  const Passport linear = tailPassport(cf("1", "1", "1"));
  const Passport linear3 = tailPassport(cf("3", "1", "1"));
  Passport sMoved = base;
  sMoved.sLine = line({0});
  sMoved.uLine = line({}, AffineTail{0, 1});
  Passport uShifted = base;
  uShifted.uLine = line({}, AffineTail{1, 1});
  return {
      {"identity", base, base, true, std::nullopt, std::nullopt},
      {"2^n ratio, nu over mu", base, doubling, false, ObstructionKind::RatioUnbounded, "nu/mu"},
      {"2^n ratio, mu over nu", doubling, base, false, ObstructionKind::RatioUnbounded, "mu/nu"},
      {"constant ratio 1/3 and 3", linear, linear3, true, std::nullopt, std::nullopt},
      {"sLine mismatch", sMoved, base, false, ObstructionKind::LineMismatch, std::nullopt},
      {"uLine mismatch", base, uShifted, false, ObstructionKind::LineMismatch, std::nullopt},
  };
}

inline Complex randomComplex(SplitMix64& rng, double maxModulus) {
  const double r = maxModulus * rng.uniform();
  const double theta = 2.0 * M_PI * rng.uniform();
  return std::polar(r, theta);
}

inline StepFunction randomStep(SplitMix64& rng, int maxCells, double maxModulus) {
  StepFunction f;
  const auto cells = rng.uniformInt(0, maxCells);
  for (std::int64_t i = 0; i < cells; ++i) {
    const double mass = 0.25 * static_cast<double>(rng.uniformInt(1, 16));
    // Repeated moduli exercise coalescing.
    Complex v = rng.uniformInt(0, 3) == 0 ? Complex(static_cast<double>(rng.uniformInt(0, 3)), 0.0)
                                          : randomComplex(rng, maxModulus);
    f.cells.push_back({mass, v});
  }
  return f;
}

inline MatrixStepFunction randomMatrixStep(SplitMix64& rng, int maxN, int maxCells) {
  MatrixStepFunction f;
  f.n = static_cast<int>(rng.uniformInt(1, maxN));
  const auto cells = rng.uniformInt(1, maxCells);
  for (std::int64_t c = 0; c < cells; ++c) {
    ComplexMatrix a(f.n, f.n);
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) a(i, j) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0) * 10.0;
    f.cells.push_back({0.125 * static_cast<double>(rng.uniformInt(1, 40)), a});
  }
  return f;
}

/// Random center passport: optional aleph_0 component plus an aleph_{b0+m}
/// tail with measure c n^p q^n.
inline Passport randomCenter(SplitMix64& rng) {
  Passport p;
  const bool head = rng.uniformInt(0, 1) == 1;
  if (head) {
    p.uLine = line({0}, AffineTail{0, 1});
    p.uMeasures.prefix.push_back(Rational(rng.uniformInt(1, 5), rng.uniformInt(1, 3)));
  } else {
    p.uLine = line({}, AffineTail{0, 1});
  }
  p.uMeasures.tail = TailTerms{ClosedForm{Rational(rng.uniformInt(1, 3)), Rational(rng.uniformInt(0, 1)),
                                          Rational(rng.uniformInt(1, 2))}};
  return p;
}

/// Variant of a center that is isomorphic to it (constant rescale) or,
/// sometimes, not (changed growth rate).
inline Passport perturbCenter(SplitMix64& rng, Passport p) {
  auto& term = p.uMeasures.tail->front();
  switch (rng.uniformInt(0, 3)) {
    case 0: break;
    case 1: term.c *= Rational(rng.uniformInt(1, 4)); break;
    case 2: term.q = term.q == 1 ? Rational(2) : Rational(1); break;
    default: term.p = term.p == 0 ? Rational(1) : Rational(0); break;
  }
  return p;
}

inline AlgebraDescriptor randomDescriptor(SplitMix64& rng) {
  AlgebraDescriptor a;
  const auto blocks = rng.uniformInt(1, 4);
  for (std::int64_t i = 0; i < blocks; ++i)
    a.blocks.push_back(Block{static_cast<int>(rng.uniformInt(1, 3)), randomCenter(rng)});
  return a;
}

/// Pair (a, b): b is a block permutation of a with perturbed centers and,
/// occasionally, a changed matrix size.
inline std::pair<AlgebraDescriptor, AlgebraDescriptor> randomDescriptorPair(SplitMix64& rng) {
  AlgebraDescriptor a = randomDescriptor(rng);
  AlgebraDescriptor b = a;
  for (auto& block : b.blocks) {
    block.center = perturbCenter(rng, block.center);
    if (rng.uniformInt(0, 9) == 0) block.n = static_cast<int>(rng.uniformInt(1, 3));
  }
  for (std::size_t i = b.blocks.size(); i > 1; --i)
    std::swap(b.blocks[i - 1], b.blocks[static_cast<std::size_t>(rng.uniformInt(0, static_cast<std::int64_t>(i) - 1))]);
  return {a, b};
}

/// Closed-form singular values of a 2x2 complex matrix: square roots of the
/// eigenvalues of A^H A from its characteristic polynomial.
inline std::pair<long double, long double> singularValues2x2(const ComplexMatrix& a) {
  using LC = std::complex<long double>;
  const LC a00(a(0, 0).real(), a(0, 0).imag()), a01(a(0, 1).real(), a(0, 1).imag());
  const LC a10(a(1, 0).real(), a(1, 0).imag()), a11(a(1, 1).real(), a(1, 1).imag());
  const long double trace = std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
  const long double det = std::norm(a00 * a11 - a01 * a10);
  const long double disc = std::sqrt(std::max(0.0L, trace * trace / 4.0L - det));
  const long double big = trace / 2.0L + disc;
  const long double small = big > 0.0L ? det / big : 0.0L;  // product of roots = det
  return {std::sqrt(big), std::sqrt(std::max(0.0L, small))};
}

}  // namespace logalg::testing
