#include "logalg/isomorphism.hpp"

#include <algorithm>

#include "logalg/errors.hpp"

namespace logalg {

namespace {

constexpr std::size_t kMaxBlocks = 12;

IsoVerdict isomorphicVia(BlockMatching matching) {
  IsoVerdict v;
  v.isomorphic = true;
  v.matching = std::move(matching);
  return v;
}

IsoVerdict obstructed(Obstruction o) {
  IsoVerdict v;
  v.obstruction = std::move(o);
  return v;
}

void requireValid(const Passport& p, const std::string& what) {
  auto report = validatePassport(p);
  if (!report.valid()) throw InputError(what + " passport is invalid: " + report.violations.front());
}

// Kuhn augmenting paths: can rows from..end be matched into unused columns?
bool augment(const std::vector<std::vector<bool>>& compatible, const std::vector<bool>& used, std::size_t row,
             std::vector<std::ptrdiff_t>& owner, std::vector<bool>& visited) {
  for (std::size_t j = 0; j < compatible.size(); ++j) {
    if (used[j] || !compatible[row][j] || visited[j]) continue;
    visited[j] = true;
    if (owner[j] < 0 || augment(compatible, used, static_cast<std::size_t>(owner[j]), owner, visited)) {
      owner[j] = static_cast<std::ptrdiff_t>(row);
      return true;
    }
  }
  return false;
}

bool completable(const std::vector<std::vector<bool>>& compatible, const std::vector<bool>& used, std::size_t from) {
  std::vector<std::ptrdiff_t> owner(compatible.size(), -1);
  for (std::size_t row = from; row < compatible.size(); ++row) {
    std::vector<bool> visited(compatible.size(), false);
    if (!augment(compatible, used, row, owner, visited)) return false;
  }
  return true;
}

// Lexicographically first bijection a_i -> b_{perm[i]} with compatible[i][perm[i]];
// branches that cannot be completed are pruned, so the search stays polynomial.
bool firstMatching(const std::vector<std::vector<bool>>& compatible, std::vector<std::size_t>& perm,
                   std::vector<bool>& used, std::size_t i) {
  if (i == compatible.size()) return true;
  for (std::size_t j = 0; j < compatible.size(); ++j) {
    if (used[j] || !compatible[i][j]) continue;
    used[j] = true;
    if (!completable(compatible, used, i + 1)) {
      used[j] = false;
      continue;
    }
    perm.push_back(j);
    if (firstMatching(compatible, perm, used, i + 1)) return true;
    perm.pop_back();
    used[j] = false;
  }
  return false;
}

std::size_t countMatchings(const std::vector<std::vector<bool>>& compatible, std::vector<bool>& used, std::size_t i,
                           std::size_t cap) {
  if (i == compatible.size()) return 1;
  std::size_t total = 0;
  for (std::size_t j = 0; j < compatible.size() && total < cap; ++j) {
    if (used[j] || !compatible[i][j]) continue;
    used[j] = true;
    if (completable(compatible, used, i + 1)) total += countMatchings(compatible, used, i + 1, cap - total);
    used[j] = false;
  }
  return total;
}

}  // namespace

std::string obstructionLabel(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::LineMismatch: return "line mismatch";
    case ObstructionKind::RatioUnbounded: return "ratio unbounded";
    case ObstructionKind::NoBlockMatching: return "no block matching";
    case ObstructionKind::SizeMismatch: return "size mismatch";
  }
  return "unknown";
}

void validate(const AlgebraDescriptor& a) {
  if (a.blocks.empty()) throw InputError("algebra descriptor needs at least one block");
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].n < 1) throw InputError("block " + std::to_string(i) + ": n must be >= 1");
    requireValid(a.blocks[i].center, "block " + std::to_string(i) + " center");
  }
}

IsoVerdict decideCommutative(const Passport& x, const Passport& y) {
  requireValid(x, "first");
  requireValid(y, "second");
  if (!sameLine(x.sLine, y.sLine))
    return obstructed({ObstructionKind::LineMismatch, "first lines (sLine) differ", {}, {}, {}});
  if (!sameLine(x.uLine, y.uLine))
    return obstructed({ObstructionKind::LineMismatch, "second lines (uLine) differ", {}, {}, {}});
  const RatioDecision forward = ratioBounded(x.uMeasures, y.uMeasures);
  if (!forward.bounded)
    return obstructed({ObstructionKind::RatioUnbounded, "mu_n / nu_n is unbounded", "mu/nu", forward.witnessIndex, {}});
  const RatioDecision backward = ratioBounded(y.uMeasures, x.uMeasures);
  if (!backward.bounded)
    return obstructed({ObstructionKind::RatioUnbounded, "nu_n / mu_n is unbounded", "nu/mu", backward.witnessIndex, {}});
  return isomorphicVia({{0, 0}});
}

IsoVerdict decideTypeIn(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  validate(a);
  validate(b);
  if (a.blocks.size() != 1 || b.blocks.size() != 1)
    throw InputError("decideTypeIn expects single-block descriptors; use decideDirectSum");
  if (a.blocks[0].n != b.blocks[0].n) {
    return obstructed({ObstructionKind::SizeMismatch,
                       "matrix sizes differ: " + std::to_string(a.blocks[0].n) + " vs " + std::to_string(b.blocks[0].n),
                       {}, {}, std::make_pair(std::size_t{0}, std::size_t{0})});
  }
  IsoVerdict v = decideCommutative(a.blocks[0].center, b.blocks[0].center);
  if (v.obstruction) v.obstruction->blocks = std::make_pair(std::size_t{0}, std::size_t{0});
  return v;
}

IsoVerdict decideDirectSum(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  validate(a);
  validate(b);
  if (a.blocks.size() > kMaxBlocks || b.blocks.size() > kMaxBlocks)
    throw InputError("decideDirectSum supports at most 12 blocks");
  if (a.blocks.size() != b.blocks.size()) {
    return obstructed({ObstructionKind::NoBlockMatching,
                       "block count mismatch: " + std::to_string(a.blocks.size()) + " vs " +
                           std::to_string(b.blocks.size()),
                       {}, {}, {}});
  }
  const std::size_t count = a.blocks.size();
  std::vector<int> sizesA, sizesB;
  for (std::size_t i = 0; i < count; ++i) {
    sizesA.push_back(a.blocks[i].n);
    sizesB.push_back(b.blocks[i].n);
  }
  std::sort(sizesA.begin(), sizesA.end());
  std::sort(sizesB.begin(), sizesB.end());
  if (sizesA != sizesB)
    return obstructed({ObstructionKind::SizeMismatch, "multisets of block sizes differ", {}, {}, {}});

  std::vector<std::vector<bool>> sizeCompatible(count, std::vector<bool>(count));
  std::vector<std::vector<bool>> compatible(count, std::vector<bool>(count));
  std::vector<std::vector<std::optional<Obstruction>>> why(count, std::vector<std::optional<Obstruction>>(count));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      sizeCompatible[i][j] = a.blocks[i].n == b.blocks[j].n;
      if (!sizeCompatible[i][j]) continue;
      IsoVerdict v = decideCommutative(a.blocks[i].center, b.blocks[j].center);
      compatible[i][j] = v.isomorphic;
      if (v.obstruction) {
        why[i][j] = std::move(v.obstruction);
        why[i][j]->blocks = std::make_pair(i, j);
      }
    }
  }

  std::vector<std::size_t> perm;
  std::vector<bool> used(count, false);
  if (firstMatching(compatible, perm, used, 0)) {
    BlockMatching matching;
    for (std::size_t i = 0; i < count; ++i) matching.emplace_back(i, perm[i]);
    return isomorphicVia(std::move(matching));
  }

  // No isomorphic matching. When the sizes force a unique bijection, report
  // the first failing pair of that bijection.
  std::vector<bool> scratch(count, false);
  if (countMatchings(sizeCompatible, scratch, 0, 2) == 1) {
    perm.clear();
    std::fill(used.begin(), used.end(), false);
    firstMatching(sizeCompatible, perm, used, 0);
    for (std::size_t i = 0; i < count; ++i) {
      if (!compatible[i][perm[i]]) {
        Obstruction o = *why[i][perm[i]];
        o.detail = "forced matching (block " + std::to_string(i) + " n=" + std::to_string(a.blocks[i].n) +
                   " <-> block " + std::to_string(perm[i]) + "): " + o.detail;
        return obstructed(std::move(o));
      }
    }
  }
  return obstructed({ObstructionKind::NoBlockMatching,
                     "no size-preserving block bijection has isomorphic centers on every pair", {}, {}, {}});
}

IsoVerdict decideCenter(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  validate(a);
  validate(b);
  auto centers = [](const AlgebraDescriptor& d) {
    std::vector<Passport> out;
    for (const auto& block : d.blocks) out.push_back(block.center);
    return mergePassports(out);
  };
  return decideCommutative(centers(a), centers(b));
}

bool extensionExists(const BlockMatching& matching, const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  const std::size_t count = a.blocks.size();
  if (b.blocks.size() != count || matching.size() != count) throw InputError("matching is not a bijection");
  std::vector<bool> seenA(count, false), seenB(count, false);
  for (const auto& [i, j] : matching) {
    if (i >= count || j >= count || seenA[i] || seenB[j]) throw InputError("matching is not a bijection");
    seenA[i] = seenB[j] = true;
  }
  return std::all_of(matching.begin(), matching.end(),
                     [&](const auto& pair) { return a.blocks[pair.first].n == b.blocks[pair.second].n; });
}

}  // namespace logalg
