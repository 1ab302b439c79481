#pragma once

#include <cstddef>

#include "qschur/blaschke.hpp"
#include "qschur/kernels.hpp"
#include "qschur/qmatrix.hpp"
#include "qschur/star_algebra.hpp"

namespace qschur {

/// Operator matrix [[A, B], [C, D]] with signatures.
///
/// Half-space colligations store (F, G, H) in (B, C, D); the operator matrix is
/// then [[-(I + x0 A), F], [G, H]].
struct Colligation {
  QMatrix A;
  QMatrix B;
  QMatrix C;
  QMatrix D;
  SignatureMatrix J1;
  SignatureMatrix J2;
  Domain domain = Domain::ball;
  double x0 = 1.0;

  std::size_t state_dim() const { return A.rows(); }
  std::size_t rows() const { return D.rows(); }
  std::size_t cols() const { return D.cols(); }

  /// Throws ShapeError when the blocks do not fit together.
  void validate() const;
  QMatrix operator_matrix() const;
};

/// Ball: D + p (C - conj(p) C A)(I - 2Re(p) A + |p|^2 A^2)^{-1} B.
/// Half-space: H - (p - x0)(G - (conj p - x0)(conj p + x0)^{-1} G A)(|z|^2 A^2 - 2Re(z) A + I)^{-1} F, z = (p - x0)(p + x0)^{-1}.
/// Throws SpectrumError when the resolvent is singular.
QMatrix realize_eval(const Colligation& c, const Quaternion& p);

SchurFunction as_schur_function(const Colligation& c);

/// Coisometry residual || M diag(I, J1) M^* - diag(I, J2) ||.
double coisometry_residual(const Colligation& c);

/// Smallest eigenvalue of I - A^*A - C^*C (ball colligations).
double contraction_margin(const Colligation& c);

/// Truncated backward-shift realization: state = N blocks of size r.
Colligation backward_shift_colligation(const SliceRational& s, int n);
Colligation backward_shift_colligation(const SchurFunction& s, int n);

/// One-dimensional unitary colligation of B_a (ball, 0 < |a| < 1).
Colligation colligation_from_blaschke_factor(const Quaternion& a, Domain domain = Domain::ball);

/// Series connection realizing S1 * S2 (ball, I signatures).
Colligation cascade(const Colligation& c1, const Colligation& c2);

/// Cascade of factor colligations for a scalar ball Blaschke product (point and sphere factors only).
Colligation colligation_from_product(const FactoredProduct& b);

/// Hermitian P with A^* P A = P - C^* C. Requires every eigenvalue of chi(A) to have modulus > 1.
QMatrix solve_stein(const QMatrix& a, const QMatrix& c);

/// || A^* P A - P + C^* C ||_F.
double stein_residual(const QMatrix& a, const QMatrix& c, const QMatrix& p);

}  // namespace qschur
