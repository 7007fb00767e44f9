#pragma once

// Simple (finitely supported) elements of L_log, their decreasing
// rearrangements and the log F-norm.

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace logalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Modulus used everywhere a scalar enters a rearrangement.
inline double modulus(const Complex& z) { return std::hypot(z.real(), z.imag()); }

struct StepCell {
  double mass = 0.0;
  Complex value;
  friend bool operator==(const StepCell&, const StepCell&) = default;
};

/// Scalar step function: disjoint cells of positive (trace) mass.
struct StepFunction {
  std::vector<StepCell> cells;
  friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

struct MatrixStepCell {
  double mass = 0.0;
  ComplexMatrix value;
  friend bool operator==(const MatrixStepCell& a, const MatrixStepCell& b) {
    return a.mass == b.mass && a.value.rows() == b.value.rows() && a.value.cols() == b.value.cols() &&
           (a.value.array() == b.value.array()).all();
  }
};

/// Step function with n x n matrix values; the trace is mass (x) Tr.
struct MatrixStepFunction {
  int n = 1;
  std::vector<MatrixStepCell> cells;
  friend bool operator==(const MatrixStepFunction&, const MatrixStepFunction&) = default;
};

struct ProfileSegment {
  double length = 0.0;
  double level = 0.0;
  friend bool operator==(const ProfileSegment&, const ProfileSegment&) = default;
};

/// Decreasing piecewise-constant x -> mu_x(T): strictly decreasing positive
/// levels, zero level omitted.
struct RearrangementProfile {
  std::vector<ProfileSegment> segments;
  double totalLength() const;
  friend bool operator==(const RearrangementProfile&, const RearrangementProfile&) = default;
};

enum class TraceMode { Finite, Semifinite };

void validate(const StepFunction& f);
void validate(const MatrixStepFunction& f);

RearrangementProfile rearrange(const StepFunction& f);

/// Each cell (m, A) contributes the n scalar cells (m, sigma_i(A)).
StepFunction scalarExpansion(const MatrixStepFunction& f);
RearrangementProfile rearrangeMatrix(const MatrixStepFunction& f);

/// Semifinite: sum of length * log(1 + level). Finite: the same integral
/// restricted to x in [0, 1].
double logNorm(const RearrangementProfile& profile, TraceMode mode);

StepFunction addSamePartition(const StepFunction& f, const StepFunction& g);
StepFunction mulSamePartition(const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, Complex alpha);

}  // namespace logalg
