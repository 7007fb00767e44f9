#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "logalg/errors.hpp"

namespace logalg {

namespace detail {

template <typename T>
std::complex<T> unitPhase(const std::complex<T>& z) {
  const T r = std::abs(z);
  return r == T(0) ? std::complex<T>(1) : z / r;
}
template <typename T>
T unitPhase(const T& x) {
  return x < T(0) ? T(-1) : T(1);
}

template <typename T>
T magnitude(const T& x) { return std::abs(x); }
template <typename T>
T magnitude(const std::complex<T>& z) { return std::hypot(z.real(), z.imag()); }

template <typename T>
T scaleBy2(const T& x, int e) { return std::ldexp(x, e); }
template <typename T>
std::complex<T> scaleBy2(const std::complex<T>& z, int e) {
  return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)};
}

template <typename T>
T conjugate(const T& x) { return x; }
template <typename T>
std::complex<T> conjugate(const std::complex<T>& z) { return std::conj(z); }

// Column 2-norm as a running hypot, so a column with one nonzero entry z
// yields exactly |z| (the same modulus the scalar rearrangement uses).
template <typename Derived>
typename Derived::RealScalar columnNorm(const Eigen::MatrixBase<Derived>& col) {
  using Real = typename Derived::RealScalar;
  Real norm(0);
  for (Eigen::Index i = 0; i < col.size(); ++i) norm = std::hypot(norm, magnitude(col(i)));
  return norm;
}

}  // namespace detail

struct JacobiSettings {
  double rotationTolerance = 1e-13;
  double clampRelative = 1e-14;
  int maxSweeps = 30;
  int maxDimension = 64;
};

/// Singular values of a square real or complex matrix, decreasing, by
/// one-sided (Hestenes) Jacobi rotations on the columns.
///
/// A column pair (i, j) is rotated while |<a_i, a_j>| exceeds
/// rotationTolerance * ||a_i|| ||a_j||; the iteration has converged when a
/// full sweep performs no rotation. Values below clampRelative * largest are
/// reported as 0. Throws NumericError if maxSweeps is exhausted and
/// InputError for non-square or oversized input.
template <typename Derived>
std::vector<typename Derived::RealScalar> singularValues(const Eigen::MatrixBase<Derived>& matrix,
                                                         const JacobiSettings& settings = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  const Eigen::Index n = matrix.cols();
  if (n < 1 || matrix.rows() != n) throw InputError("singularValues expects a non-empty square matrix");
  if (n > settings.maxDimension) throw InputError("singularValues supports n <= 64");

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = matrix;
  if (!a.allFinite()) throw NumericError("singularValues: non-finite matrix entry");

  // Power-of-two prescaling keeps the Gram entries inside the exponent range
  // and is exact, so diagonal inputs still come back bit for bit.
  Real largest(0);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) largest = std::max(largest, detail::magnitude(a(r, c)));
  if (largest == Real(0)) return std::vector<Real>(static_cast<std::size_t>(n), Real(0));
  int exponent = 0;
  std::frexp(largest, &exponent);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = detail::scaleBy2(a(r, c), -exponent);

  bool converged = false;
  for (int sweep = 0; sweep < settings.maxSweeps && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Real alpha = a.col(i).squaredNorm();
        const Real beta = a.col(j).squaredNorm();
        const Scalar gamma = a.col(i).dot(a.col(j));  // conjugates the first argument
        const Real absGamma = std::abs(gamma);
        if (absGamma == Real(0) || absGamma <= Real(settings.rotationTolerance) * std::sqrt(alpha * beta)) continue;
        converged = false;
        // Rotate a_j by the phase of gamma so the pair's Gram entry is real,
        // then apply the classical real Jacobi rotation.
        const Scalar phase = detail::conjugate(detail::unitPhase(gamma));
        const Real zeta = (beta - alpha) / (Real(2) * absGamma);
        const Real t = (zeta >= Real(0) ? Real(1) : Real(-1)) / (std::abs(zeta) + std::sqrt(Real(1) + zeta * zeta));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = c * t;
        const auto colI = a.col(i).eval();
        const auto colJ = (a.col(j) * phase).eval();
        a.col(i) = c * colI - s * colJ;
        a.col(j) = s * colI + c * colJ;
      }
    }
  }
  if (!converged) throw NumericError("singularValues: Jacobi iteration did not converge within the sweep limit");

  std::vector<Real> values(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real v = std::ldexp(detail::columnNorm(a.col(k)), exponent);
    if (!std::isfinite(v)) throw NumericError("singularValues: singular value overflows double precision");
    values[static_cast<std::size_t>(k)] = v;
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  const Real cutoff = Real(settings.clampRelative) * values.front();
  for (auto& v : values)
    if (v < cutoff) v = Real(0);
  return values;
}

}  // namespace logalg
