#pragma once

// Isomorphism of log-algebras over finite direct sums of type I_n blocks
// L_inf(X) (x) B(H_n). Commutative blocks (n = 1) and single type I_n blocks
// are decided from center passports; direct sums by matching blocks of equal
// matrix size.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logalg/measure_core.hpp"

namespace logalg {

struct Block {
  int n = 1;
  /// Center passport; its measure line is the block trace restricted to the center.
  Passport center;
  friend bool operator==(const Block&, const Block&) = default;
};

struct AlgebraDescriptor {
  std::vector<Block> blocks;
  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// Throws InputError unless there is at least one block, every n >= 1 and
/// every center passport is valid.
void validate(const AlgebraDescriptor& a);

enum class ObstructionKind { LineMismatch, RatioUnbounded, NoBlockMatching, SizeMismatch };

/// Stable label used in reports: "line mismatch", "ratio unbounded", ...
std::string obstructionLabel(ObstructionKind kind);

struct Obstruction {
  ObstructionKind kind = ObstructionKind::LineMismatch;
  std::string detail;
  /// For ratio failures: "mu/nu" (first over second) or "nu/mu".
  std::optional<std::string> direction;
  std::optional<std::int64_t> witnessIndex;
  /// Block pair the obstruction was found on, if any.
  std::optional<std::pair<std::size_t, std::size_t>> blocks;
};

using BlockMatching = std::vector<std::pair<std::size_t, std::size_t>>;

struct IsoVerdict {
  bool isomorphic = false;
  std::optional<BlockMatching> matching;
  std::optional<Obstruction> obstruction;
};

/// Passport criterion: equal first and second lines, and mu_n/nu_n and
/// nu_n/mu_n both bounded.
IsoVerdict decideCommutative(const Passport& x, const Passport& y);

/// Single-block descriptors: equal matrix size and isomorphic centers.
IsoVerdict decideTypeIn(const AlgebraDescriptor& a, const AlgebraDescriptor& b);

/// Exhaustive search over size-preserving block bijections (at most 12
/// blocks); returns the lexicographically first matching whose pairs all pass
/// decideTypeIn.
IsoVerdict decideDirectSum(const AlgebraDescriptor& a, const AlgebraDescriptor& b);

/// Compares the merged center passports.
IsoVerdict decideCenter(const AlgebraDescriptor& a, const AlgebraDescriptor& b);

/// Whether a center-level block bijection lifts to the whole algebra: every
/// matched pair must have equal matrix size. Throws InputError when the
/// matching is not a bijection.
bool extensionExists(const BlockMatching& matching, const AlgebraDescriptor& a, const AlgebraDescriptor& b);

}  // namespace logalg
