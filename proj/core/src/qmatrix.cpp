#include "qschur/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qschur/errors.hpp"

namespace qschur {

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw ShapeError("QMatrix: entry count does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& diag) {
  QMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = conj((*this)(r, c));
  return out;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("QMatrix::block out of range");
  QMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void QMatrix::set_block(std::size_t r0, std::size_t c0, const QMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw ShapeError("QMatrix::set_block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

double QMatrix::norm() const {
  double s = 0.0;
  for (const auto& q : entries_) s += norm2(q);
  return std::sqrt(s);
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& q : entries_) m = std::max(m, modulus(q));
  return m;
}

bool QMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Quaternion& q) { return is_finite(q); });
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : entries_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(const QMatrix& a) { return a * -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()));
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion& ark = a(r, k);
      if (norm2(ark) == 0.0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

QMatrix operator*(const Quaternion& q, const QMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = q * m(r, c);
  return out;
}

QMatrix operator*(const QMatrix& m, const Quaternion& q) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) * q;
  return out;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack: row mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("vstack: column mismatch");
  QMatrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

QMatrix block2x2(const QMatrix& a, const QMatrix& b, const QMatrix& c, const QMatrix& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

bool approx_equal(const QMatrix& a, const QMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= tol;
}

double hermitian_residual(const QMatrix& h) {
  if (!h.is_square()) throw ShapeError("hermitian_residual: matrix is not square");
  return (h - h.adjoint()).norm();
}

QMatrix hermitian_part(const QMatrix& h) { return (h + h.adjoint()) * 0.5; }

ComplexMatrix complex_adjoint(const QMatrix& m) {
  const auto r = static_cast<Eigen::Index>(m.rows());
  const auto c = static_cast<Eigen::Index>(m.cols());
  ComplexMatrix x(2 * r, 2 * c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const Quaternion& q = m(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      const std::complex<double> a{q.x0, q.x1};
      const std::complex<double> b{q.x2, q.x3};
      x(i, k) = a;
      x(i, k + c) = b;
      x(i + r, k) = -std::conj(b);
      x(i + r, k + c) = std::conj(a);
    }
  return x;
}

QMatrix from_complex_adjoint(const ComplexMatrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) throw ShapeError("from_complex_adjoint: odd dimension");
  const Eigen::Index r = x.rows() / 2;
  const Eigen::Index c = x.cols() / 2;
  QMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      // Average the two redundant copies of each block.
      const std::complex<double> a = 0.5 * (x(i, k) + std::conj(x(i + r, k + c)));
      const std::complex<double> b = 0.5 * (x(i, k + c) - std::conj(x(i + r, k)));
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = {a.real(), a.imag(), b.real(), b.imag()};
    }
  return m;
}

SignatureMatrix::SignatureMatrix(QMatrix j) : j_(std::move(j)) {
  if (!j_.is_square()) throw PreconditionError("signature matrix must be square");
  if (hermitian_residual(j_) >= 1e-12) throw PreconditionError("signature matrix is not self-adjoint");
  if ((j_ * j_ - QMatrix::identity(j_.rows())).norm() >= 1e-12)
    throw PreconditionError("signature matrix is not unitary");
}

SignatureMatrix SignatureMatrix::diagonal(std::size_t positives, std::size_t negatives) {
  std::vector<Quaternion> d(positives, 1.0);
  d.insert(d.end(), negatives, -1.0);
  return SignatureMatrix(QMatrix::diagonal(d));
}

int SignatureMatrix::index() const { return herm_eigen_neg(j_).negatives; }

HermitianSpectrum herm_eigen_neg(const QMatrix& h, double cutoff) {
  if (!h.is_square()) throw ShapeError("herm_eigen_neg: matrix is not square");
  HermitianSpectrum out;
  if (h.rows() == 0) return out;
  if (!h.all_finite()) throw NumericError("herm_eigen_neg: non-finite entries");
  const double scale = std::max(1.0, h.norm());
  if (hermitian_residual(h) >= 1e-10 * scale) throw PreconditionError("herm_eigen_neg: matrix is not Hermitian");

  const ComplexMatrix x = complex_adjoint(hermitian_part(h));
  Eigen::VectorXd ev;  // ascending
  int group = 2;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x, Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) {
    ev = solver.eigenvalues();
  } else {
    // The complex QR iteration occasionally stalls on rank-deficient input; the real
    // embedding [[Re, -Im], [Im, Re]] has the same spectrum, each value doubled.
    Eigen::MatrixXd re(2 * x.rows(), 2 * x.cols());
    re << x.real(), -x.imag(), x.imag(), x.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_solver(re, Eigen::EigenvaluesOnly);
    if (real_solver.info() != Eigen::Success)
      throw NumericError("herm_eigen_neg: eigen-solver failed (norm " + std::to_string(h.norm()) + ")");
    ev = real_solver.eigenvalues();
    group = 4;
  }

  const double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  out.spectral_radius = radius;
  const double rel = std::max(1.0, radius);
  for (Eigen::Index k = 0; k + group - 1 < ev.size(); k += group)
    out.pairing_gap = std::max(out.pairing_gap, std::abs(ev(k + group - 1) - ev(k)) / rel);
  if (out.pairing_gap > 1e-6) throw NumericError("herm_eigen_neg: complex-adjoint eigenvalues are not paired");

  out.eigenvalues.reserve(h.rows());
  for (Eigen::Index k = 0; k + group - 1 < ev.size(); k += group) {
    const double lambda = ev.segment(k, group).mean();
    out.eigenvalues.push_back(lambda);
    if (lambda < -cutoff * rel) ++out.negatives;
  }
  return out;
}

double condition_estimate(const QMatrix& m) {
  if (!m.is_square()) throw ShapeError("condition_estimate: matrix is not square");
  if (m.rows() == 0) return 1.0;
  const ComplexMatrix x = complex_adjoint(m);
  Eigen::PartialPivLU<ComplexMatrix> lu(x);
  const double rc = lu.rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

QMatrix qmatrix_inv(const QMatrix& m) {
  if (!m.is_square()) throw ShapeError("qmatrix_inv: matrix is not square");
  if (m.rows() == 0) return m;
  if (!m.all_finite()) throw NumericError("qmatrix_inv: non-finite entries", std::numeric_limits<double>::infinity());
  const ComplexMatrix x = complex_adjoint(m);
  Eigen::PartialPivLU<ComplexMatrix> lu(x);
  const double rc = lu.rcond();
  const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(cond < kMaxCondition))
    throw NumericError("qmatrix_inv: matrix is singular or ill-conditioned (condition " + std::to_string(cond) + ")",
                       cond);
  return from_complex_adjoint(lu.inverse());
}

double check_colligation(const QMatrix& m, const SignatureMatrix& j1, const SignatureMatrix& j2,
                         ColligationMode mode) {
  const std::size_t r = j2.dim();
  const std::size_t s = j1.dim();
  if (m.rows() < r || m.cols() < s || m.rows() - r != m.cols() - s)
    throw ShapeError("check_colligation: block dimensions incompatible with the signature matrices");
  const std::size_t n = m.rows() - r;
  const QMatrix in_sig = block_diag(QMatrix::identity(n), j1.matrix());
  const QMatrix out_sig = block_diag(QMatrix::identity(n), j2.matrix());
  const QMatrix adj = m.adjoint();
  double co = 0.0;
  double iso = 0.0;
  if (mode != ColligationMode::isometry) co = (m * in_sig * adj - out_sig).norm();
  if (mode != ColligationMode::coisometry) iso = (adj * out_sig * m - in_sig).norm();
  return std::max(co, iso);
}

}  // namespace qschur
