#pragma once

// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection. Only the
// few lowest eigenvalues are ever needed (finite-difference oracle), so
// per-index bisection beats a full QR sweep and needs no workspace.

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pdmwell {

template <typename Scalar>
struct TridiagonalOperator {
  Eigen::Vector<Scalar, Eigen::Dynamic> diag; // N entries
  Eigen::Vector<Scalar, Eigen::Dynamic> off;  // N - 1 entries
};

using TridiagonalOperatord = TridiagonalOperator<double>;

/// Number of eigenvalues strictly below lambda, counted as the negative
/// pivots of the LDL^T factorization of (T - lambda I). Zero pivots are
/// nudged to -pivmin so ties resolve consistently and divisions stay finite.
template <typename Scalar>
int eigenvalue_count_below(const TridiagonalOperator<Scalar>& op, Scalar lambda) {
  const Eigen::Index n = op.diag.size();
  if (n == 0 || op.off.size() != n - 1)
    throw std::domain_error("eigenvalue_count_below: need N diagonal and N-1 off entries");
  Scalar max_off_sq = 1;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    max_off_sq = std::max(max_off_sq, op.off[i] * op.off[i]);
  const Scalar pivmin = std::numeric_limits<Scalar>::min() * max_off_sq;

  int count = 0;
  Scalar d = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar coupling = i == 0 ? Scalar(0) : op.off[i - 1] * op.off[i - 1] / d;
    d = (op.diag[i] - lambda) - coupling;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

/// The k smallest eigenvalues, ascending. Brackets from the Gershgorin disks,
/// then bisects each index until the interval width falls below 1e-10
/// relative to the eigenvalue's own magnitude. The operator norm is not used
/// as the scale: wall-singular potentials push it orders of magnitude above
/// the low eigenvalues this solver exists to resolve.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> smallest_eigenvalues(const TridiagonalOperator<Scalar>& op,
                                                           int k) {
  const Eigen::Index n = op.diag.size();
  if (n == 0 || op.off.size() != n - 1)
    throw std::domain_error("smallest_eigenvalues: need N diagonal and N-1 off entries");
  if (k < 1 || k > n) throw std::domain_error("smallest_eigenvalues: k out of range");

  Scalar lo = op.diag[0];
  Scalar hi = op.diag[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar radius = 0;
    if (i > 0) radius += std::abs(op.off[i - 1]);
    if (i + 1 < n) radius += std::abs(op.off[i]);
    lo = std::min(lo, op.diag[i] - radius);
    hi = std::max(hi, op.diag[i] + radius);
  }

  Eigen::Vector<Scalar, Eigen::Dynamic> values(k);
  for (int j = 0; j < k; ++j) {
    Scalar left = j == 0 ? lo : values[j - 1]; // eigenvalues are ordered
    Scalar right = hi;
    for (;;) {
      const Scalar scale = std::max({Scalar(1), std::abs(left), std::abs(right)});
      if (right - left <= Scalar(1e-10) * scale) break;
      const Scalar mid = left + (right - left) / 2;
      if (eigenvalue_count_below(op, mid) >= j + 1)
        right = mid;
      else
        left = mid;
    }
    values[j] = left + (right - left) / 2;
  }
  return values;
}

} // namespace pdmwell
