#include "qschur/realization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "qschur/errors.hpp"

namespace qschur {

void Colligation::validate() const {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw ShapeError("colligation: A must be square");
  if (B.rows() != n || C.cols() != n) throw ShapeError("colligation: B rows and C cols must equal the state dimension");
  if (D.rows() != C.rows() || D.cols() != B.cols()) throw ShapeError("colligation: D must be r x s");
  if (J1.dim() != D.cols() || J2.dim() != D.rows()) throw ShapeError("colligation: signature sizes do not match D");
  if (domain == Domain::halfspace && !(x0 > 0.0)) throw DomainError("colligation: half-space x0 must be positive");
}

QMatrix Colligation::operator_matrix() const {
  validate();
  if (domain == Domain::ball) return block2x2(A, B, C, D);
  QMatrix top_left = QMatrix::identity(A.rows()) + A * x0;
  top_left *= -1.0;
  return block2x2(top_left, B, C, D);
}

namespace {

QMatrix resolvent_inverse(const QMatrix& r, const Quaternion& p) {
  try {
    return qmatrix_inv(r);
  } catch (const NumericError& e) {
    const SphereRep s = decompose(p);
    throw SpectrumError("realize_eval: resolvent singular on the sphere [" + std::to_string(s.x) + " + I " +
                        std::to_string(s.y) + "] (" + e.what() + ")");
  }
}

}  // namespace

QMatrix realize_eval(const Colligation& c, const Quaternion& p) {
  c.validate();
  const std::size_t n = c.state_dim();
  const QMatrix eye = QMatrix::identity(n);
  if (n == 0) return c.D;
  const QMatrix a2 = c.A * c.A;
  if (c.domain == Domain::ball) {
    const QMatrix r = eye - c.A * (2.0 * p.x0) + a2 * norm2(p);
    const QMatrix ca = c.C * c.A;
    return c.D + p * ((c.C - conj(p) * ca) * resolvent_inverse(r, p) * c.B);
  }
  const Quaternion plus = p + Quaternion{c.x0};
  if (norm2(plus) == 0.0) throw SpectrumError("realize_eval: p = -x0");
  const Quaternion z = (p - Quaternion{c.x0}) * inverse(plus);
  const Quaternion pb = conj(p);
  const Quaternion zb = (pb - Quaternion{c.x0}) * inverse(pb + Quaternion{c.x0});
  const QMatrix r = a2 * norm2(z) - c.A * (2.0 * z.x0) + eye;
  const QMatrix ga = c.C * c.A;
  return c.D - (p - Quaternion{c.x0}) * ((c.C - zb * ga) * resolvent_inverse(r, p) * c.B);
}

SchurFunction as_schur_function(const Colligation& c) {
  c.validate();
  return SchurFunction(c.domain, c.rows(), c.cols(), [c](const Quaternion& p) { return realize_eval(c, p); }, c.J1,
                       c.J2);
}

double coisometry_residual(const Colligation& c) {
  return check_colligation(c.operator_matrix(), c.J1, c.J2, ColligationMode::coisometry);
}

double contraction_margin(const Colligation& c) {
  c.validate();
  const std::size_t n = c.state_dim();
  if (n == 0) return 1.0;
  const QMatrix m = QMatrix::identity(n) - c.A.adjoint() * c.A - c.C.adjoint() * c.C;
  const HermitianSpectrum s = herm_eigen_neg(hermitian_part(m));
  return *std::min_element(s.eigenvalues.begin(), s.eigenvalues.end());
}

Colligation backward_shift_colligation(const SliceRational& s, int n) {
  if (n < 1) throw DomainError("backward_shift_colligation: truncation must be >= 1");
  const StarPoly t = taylor_coeffs(s, n);
  const std::size_t r = s.rows();
  const std::size_t cols = s.cols();
  const std::size_t dim = static_cast<std::size_t>(n) * r;
  Colligation c;
  c.A = QMatrix(dim, dim);
  for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k) c.A.set_block(k * r, (k + 1) * r, QMatrix::identity(r));
  c.B = QMatrix(dim, cols);
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) c.B.set_block(k * r, 0, t.coeff(k + 1));
  c.C = QMatrix(r, dim);
  c.C.set_block(0, 0, QMatrix::identity(r));
  c.D = t.coeff(0);
  c.J1 = SignatureMatrix::identity(cols);
  c.J2 = SignatureMatrix::identity(r);
  return c;
}

Colligation backward_shift_colligation(const SchurFunction& s, int n) {
  if (!s.rational()) throw PreconditionError("backward_shift_colligation: function has no rational form");
  if (s.domain() != Domain::ball) throw PreconditionError("backward_shift_colligation: ball domain only");
  Colligation c = backward_shift_colligation(*s.rational(), n);
  c.J1 = s.j1();
  c.J2 = s.j2();
  return c;
}

Colligation colligation_from_blaschke_factor(const Quaternion& a, Domain domain) {
  if (domain != Domain::ball) throw DomainError("colligation_from_blaschke_factor: ball domain only");
  const double r = modulus(a);
  if (!(r > 0.0 && r < 1.0)) throw DomainError("colligation_from_blaschke_factor: need 0 < |a| < 1");
  const double s = std::sqrt(1.0 - r * r);
  const Quaternion ab = conj(a);
  Colligation c;
  c.A = QMatrix::scalar(ab);
  c.B = QMatrix::scalar(-(ab * (s / r)));
  c.C = QMatrix::scalar(s);
  c.D = QMatrix::scalar(r);
  return c;
}

Colligation cascade(const Colligation& c1, const Colligation& c2) {
  c1.validate();
  c2.validate();
  if (c1.domain != Domain::ball || c2.domain != Domain::ball) throw DomainError("cascade: ball colligations only");
  if (c1.cols() != c2.rows()) throw ShapeError("cascade: inner dimensions do not match");
  const std::size_t n1 = c1.state_dim();
  const std::size_t n2 = c2.state_dim();
  Colligation c;
  c.A = QMatrix(n1 + n2, n1 + n2);
  c.A.set_block(0, 0, c1.A);
  c.A.set_block(0, n1, c1.B * c2.C);
  c.A.set_block(n1, n1, c2.A);
  c.B = vstack(c1.B * c2.D, c2.B);
  c.C = hstack(c1.C, c1.D * c2.C);
  c.D = c1.D * c2.D;
  c.J1 = c2.J1;
  c.J2 = c1.J2;
  return c;
}

Colligation colligation_from_product(const FactoredProduct& b) {
  if (b.domain() != Domain::ball || b.dim() != 1)
    throw PreconditionError("colligation_from_product: scalar ball products only");
  Colligation out;
  out.A = QMatrix(0, 0);
  out.B = QMatrix(0, 1);
  out.C = QMatrix(1, 0);
  out.D = QMatrix::identity(1);
  for (const auto& f : b.factors()) {
    if (f.origin_inverse || f.type == Factor::Type::potapov || modulus(f.a) >= 1.0)
      throw PreconditionError("colligation_from_product: only point and sphere factors inside the ball");
    if (f.type == Factor::Type::point) {
      if (norm2(f.a) == 0.0) {
        // B_0(p) = p
        Colligation z;
        z.A = QMatrix::scalar(0.0);
        z.B = QMatrix::scalar(1.0);
        z.C = QMatrix::scalar(1.0);
        z.D = QMatrix::scalar(0.0);
        out = cascade(out, z);
      } else {
        out = cascade(out, colligation_from_blaschke_factor(f.a));
      }
    } else {
      out = cascade(cascade(out, colligation_from_blaschke_factor(f.a)), colligation_from_blaschke_factor(conj(f.a)));
    }
  }
  return out;
}

QMatrix solve_stein(const QMatrix& a, const QMatrix& c) {
  if (!a.is_square()) throw ShapeError("solve_stein: A must be square");
  if (c.cols() != a.rows()) throw ShapeError("solve_stein: C must have as many columns as A");
  const std::size_t n = a.rows();
  if (n == 0) return QMatrix(0, 0);
  if (!a.all_finite() || !c.all_finite()) throw NumericError("solve_stein: non-finite input");

  Eigen::ComplexSchur<ComplexMatrix> schur(complex_adjoint(a));
  if (schur.info() != Eigen::Success) throw NumericError("solve_stein: Schur decomposition failed");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const Eigen::Index m = t.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(std::abs(t(i, i)) > 1.0))
      throw PreconditionError("solve_stein: ill-posed, A has an eigenvalue of modulus " +
                              std::to_string(std::abs(t(i, i))) + " (need > 1)");

  const ComplexMatrix q = u.adjoint() * complex_adjoint(c.adjoint() * c) * u;
  // T^* Y T - Y = -Q, column by column; Z(k, j) = sum_{l<j} Y(k, l) T(l, j).
  ComplexMatrix y = ComplexMatrix::Zero(m, m);
  ComplexMatrix z = ComplexMatrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index l = 0; l < j; ++l) acc += y(k, l) * t(l, j);
      z(k, j) = acc;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      std::complex<double> rhs = q(i, j);
      for (Eigen::Index k = 0; k <= i; ++k) rhs += std::conj(t(k, i)) * z(k, j);
      for (Eigen::Index k = 0; k < i; ++k) rhs += std::conj(t(k, i)) * y(k, j) * t(j, j);
      const std::complex<double> den = 1.0 - std::conj(t(i, i)) * t(j, j);
      if (std::abs(den) == 0.0) throw NumericError("solve_stein: singular Stein operator");
      y(i, j) = rhs / den;
    }
  }
  const ComplexMatrix x = u * y * u.adjoint();
  return hermitian_part(from_complex_adjoint(x));
}

double stein_residual(const QMatrix& a, const QMatrix& c, const QMatrix& p) {
  return (a.adjoint() * p * a - p + c.adjoint() * c).norm();
}

}  // namespace qschur
