#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qschur/quaternion.hpp"

namespace qschur {

/// Dense row-major quaternionic matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  static QMatrix scalar(const Quaternion& q) { return QMatrix(1, 1, {q}); }
  static QMatrix diagonal(const std::vector<Quaternion>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Quaternion> entries() const { return entries_; }

  /// Conjugate transpose.
  QMatrix adjoint() const;

  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const QMatrix& b);

  /// Frobenius norm.
  double norm() const;
  double max_abs() const;
  bool all_finite() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> entries_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
/// Left scalar multiplication: every entry becomes q * m_ij.
QMatrix operator*(const Quaternion& q, const QMatrix& m);
/// Right scalar multiplication: every entry becomes m_ij * q.
QMatrix operator*(const QMatrix& m, const Quaternion& q);

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix vstack(const QMatrix& a, const QMatrix& b);
QMatrix block_diag(const QMatrix& a, const QMatrix& b);
/// [[a, b], [c, d]] with compatible blocks.
QMatrix block2x2(const QMatrix& a, const QMatrix& b, const QMatrix& c, const QMatrix& d);

/// ||a - b||_F <= tol.
bool approx_equal(const QMatrix& a, const QMatrix& b, double tol = 1e-12);
/// ||H - H*||_F.
double hermitian_residual(const QMatrix& h);
/// (H + H*) / 2.
QMatrix hermitian_part(const QMatrix& h);

using ComplexMatrix = Eigen::MatrixXcd;

/// Complex adjoint chi(M) = [[A, B], [-conj(B), conj(A)]] where M = A + B j.
/// chi is a real-algebra homomorphism with chi(M*) = chi(M)*.
ComplexMatrix complex_adjoint(const QMatrix& m);

/// Inverse of complex_adjoint, reading the A and B blocks of the first block row.
QMatrix from_complex_adjoint(const ComplexMatrix& x);

/// Self-adjoint and unitary quaternionic matrix.
class SignatureMatrix {
 public:
  /// Validates ||J - J*|| < 1e-12 and ||J^2 - I|| < 1e-12.
  explicit SignatureMatrix(QMatrix j);
  SignatureMatrix() : SignatureMatrix(QMatrix::identity(1)) {}

  static SignatureMatrix identity(std::size_t n) { return SignatureMatrix(QMatrix::identity(n)); }
  /// diag(+1 x positives, -1 x negatives).
  static SignatureMatrix diagonal(std::size_t positives, std::size_t negatives);

  const QMatrix& matrix() const { return j_; }
  std::size_t dim() const { return j_.rows(); }
  /// Number of strictly negative eigenvalues.
  int index() const;

 private:
  QMatrix j_;
};

struct HermitianSpectrum {
  /// Ascending, one representative per chi-pair; length == rows.
  std::vector<double> eigenvalues;
  int negatives = 0;
  /// Largest |lambda_{2k-1} - lambda_{2k}| / max(1, spectral radius) observed.
  double pairing_gap = 0.0;
  double spectral_radius = 0.0;
};

inline constexpr double kNegativityCutoff = 1e-8;

/// Hermitian eigenvalues through the complex adjoint. Negatives counts eigenvalues
/// below -cutoff * max(1, spectral radius). Throws PreconditionError for
/// non-Hermitian input and NumericError if the solver fails or pairing breaks.
HermitianSpectrum herm_eigen_neg(const QMatrix& h, double cutoff = kNegativityCutoff);

inline constexpr double kMaxCondition = 1e12;

/// Inverse via chi(M). Throws NumericError (with the condition estimate) when the
/// one-norm condition estimate of chi(M) exceeds kMaxCondition.
QMatrix qmatrix_inv(const QMatrix& m);

/// One-norm condition estimate of chi(M).
double condition_estimate(const QMatrix& m);

enum class ColligationMode { coisometry, isometry, unitary };

/// Residual of M diag(I, J1) M* = diag(I, J2) (coisometry), of
/// M* diag(I, J2) M = diag(I, J1) (isometry), or the larger of both (unitary).
/// The state dimension is rows(M) - dim(J2) and must equal cols(M) - dim(J1).
double check_colligation(const QMatrix& m, const SignatureMatrix& j1, const SignatureMatrix& j2,
                         ColligationMode mode = ColligationMode::coisometry);

}  // namespace qschur
