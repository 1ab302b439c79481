#pragma once
// Reference computations for the tests. Nothing here calls the library's
// arithmetic: quaternions are multiplied through the 4x4 real left-regular
// representation and every function value comes from an independent formula.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qschur/quaternion.hpp"
#include "qschur/qmatrix.hpp"

namespace oracle {

using qschur::Quaternion;

inline Eigen::Matrix4d left_matrix(const Quaternion& a) {
  Eigen::Matrix4d m;
  m << a.x0, -a.x1, -a.x2, -a.x3,
       a.x1, a.x0, -a.x3, a.x2,
       a.x2, a.x3, a.x0, -a.x1,
       a.x3, -a.x2, a.x1, a.x0;
  return m;
}

inline Quaternion mul(const Quaternion& a, const Quaternion& b) {
  const Eigen::Vector4d v = left_matrix(a) * Eigen::Vector4d(b.x0, b.x1, b.x2, b.x3);
  return {v(0), v(1), v(2), v(3)};
}

inline double abs(const Quaternion& a) { return std::hypot(std::hypot(a.x0, a.x1), std::hypot(a.x2, a.x3)); }

inline Quaternion inv(const Quaternion& a) {
  const double n = a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
  return {a.x0 / n, -a.x1 / n, -a.x2 / n, -a.x3 / n};
}

inline Quaternion add(const Quaternion& a, const Quaternion& b) {
  return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}
inline Quaternion sub(const Quaternion& a, const Quaternion& b) {
  return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}
inline Quaternion scale(const Quaternion& a, double s) { return {a.x0 * s, a.x1 * s, a.x2 * s, a.x3 * s}; }
inline Quaternion cj(const Quaternion& a) { return {a.x0, -a.x1, -a.x2, -a.x3}; }
inline double dist(const Quaternion& a, const Quaternion& b) { return abs(sub(a, b)); }

/// sum_n p^n c_n.
inline Quaternion poly(const std::vector<Quaternion>& c, const Quaternion& p) {
  Quaternion pw{1, 0, 0, 0};
  Quaternion s{};
  for (const auto& cn : c) {
    s = add(s, mul(pw, cn));
    pw = mul(pw, p);
  }
  return s;
}

/// Value at p of f * g for left slice polynomials: f(p) g(f(p)^{-1} p f(p)).
inline Quaternion star_product_value(const std::vector<Quaternion>& f, const std::vector<Quaternion>& g,
                                     const Quaternion& p) {
  const Quaternion fp = poly(f, p);
  if (abs(fp) == 0.0) return Quaternion{};
  return mul(fp, poly(g, mul(mul(inv(fp), p), fp)));
}

/// Ball point factor from its power series: [a + sum_{n>=1} p^n conj(a)^{n-1}(|a|^2 - 1)] conj(a)/|a|.
inline Quaternion ball_point_series(const Quaternion& a, const Quaternion& p, int terms = 600) {
  const double r2 = a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
  const Quaternion ab = cj(a);
  Quaternion s = a;
  Quaternion pn = p;                 // p^n
  Quaternion an{1, 0, 0, 0};         // conj(a)^{n-1}
  for (int n = 1; n <= terms; ++n) {
    s = add(s, scale(mul(pn, an), r2 - 1.0));
    pn = mul(pn, p);
    an = mul(an, ab);
  }
  return mul(s, scale(ab, 1.0 / std::sqrt(r2)));
}

/// f^{-*}(p) = f^s(p)^{-1} f^c(p) for the degree-one polynomial f(p) = u + p v.
inline Quaternion linear_star_inverse(const Quaternion& u, const Quaternion& v, const Quaternion& p) {
  // f^c = conj(u) + p conj(v); f^s = |u|^2 + 2 Re(u conj v) p + |v|^2 p^2 (real coefficients)
  const double uu = u.x0 * u.x0 + u.x1 * u.x1 + u.x2 * u.x2 + u.x3 * u.x3;
  const double vv = v.x0 * v.x0 + v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
  const double uv = mul(u, cj(v)).x0;
  const Quaternion fs = add(add(Quaternion{uu, 0, 0, 0}, scale(p, 2.0 * uv)), scale(mul(p, p), vv));
  const Quaternion fc = add(cj(u), mul(p, cj(v)));
  return mul(inv(fs), fc);
}

/// Ball point factor through the pointwise product rule: (1 - p conj a)^{-*} * (a - p) conj(a)/|a|.
inline Quaternion ball_point_product_rule(const Quaternion& a, const Quaternion& p) {
  const Quaternion f = linear_star_inverse(Quaternion{1, 0, 0, 0}, scale(cj(a), -1.0), p);
  const Quaternion pt = mul(mul(inv(f), p), f);
  return mul(mul(f, sub(a, pt)), scale(cj(a), 1.0 / abs(a)));
}

/// Half-space point factor: (p + conj a)^{-*} * (p - a).
inline Quaternion half_point_product_rule(const Quaternion& a, const Quaternion& p) {
  const Quaternion f = linear_star_inverse(cj(a), Quaternion{1, 0, 0, 0}, p);
  const Quaternion pt = mul(mul(inv(f), p), f);
  return mul(f, sub(pt, a));
}

/// Real-coefficient rational (sum n_k p^k) / (sum d_k p^k).
inline Quaternion real_rational(const std::vector<double>& num, const std::vector<double>& den, const Quaternion& p) {
  std::vector<Quaternion> nq, dq;
  for (double c : num) nq.push_back(Quaternion{c, 0, 0, 0});
  for (double c : den) dq.push_back(Quaternion{c, 0, 0, 0});
  return mul(inv(poly(dq, p)), poly(nq, p));
}

inline Quaternion ball_sphere(const Quaternion& a, const Quaternion& p) {
  const double r2 = a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
  return real_rational({r2, -2.0 * a.x0, 1.0}, {1.0, -2.0 * a.x0, r2}, p);
}

inline Quaternion half_sphere(const Quaternion& a, const Quaternion& p) {
  const double r2 = a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
  return real_rational({r2, -2.0 * a.x0, 1.0}, {r2, 2.0 * a.x0, 1.0}, p);
}

/// sum_{n<=terms} p^n m conj(q)^n, entrywise.
inline qschur::QMatrix series_kernel(const qschur::QMatrix& m, const Quaternion& p, const Quaternion& q, int terms) {
  qschur::QMatrix out(m.rows(), m.cols());
  Quaternion pn{1, 0, 0, 0}, qn{1, 0, 0, 0};
  for (int n = 0; n <= terms; ++n) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = add(out(r, c), mul(mul(pn, m(r, c)), cj(qn)));
    pn = mul(pn, p);
    qn = mul(qn, q);
  }
  return out;
}

/// Real 4n x 4n image of a quaternionic n x n matrix acting on column vectors.
inline Eigen::MatrixXd real_embedding(const qschur::QMatrix& h) {
  Eigen::MatrixXd m(4 * h.rows(), 4 * h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      m.block<4, 4>(static_cast<Eigen::Index>(4 * r), static_cast<Eigen::Index>(4 * c)) = left_matrix(h(r, c));
  return m;
}

/// Eigenvalues of a quaternionic Hermitian matrix, ascending, from the real embedding
/// (each appears four times there).
inline std::vector<double> hermitian_eigenvalues(const qschur::QMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_embedding(h), Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); k += 4) out.push_back(es.eigenvalues()(k + 1));
  return out;
}

/// M = A + B j  ->  [[A, B], [-conj B, conj A]].
inline Eigen::MatrixXcd chi(const qschur::QMatrix& m) {
  const auto r = static_cast<Eigen::Index>(m.rows());
  const auto c = static_cast<Eigen::Index>(m.cols());
  Eigen::MatrixXcd x(2 * r, 2 * c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const Quaternion& q = m(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      const std::complex<double> a(q.x0, q.x1), b(q.x2, q.x3);
      x(i, k) = a;
      x(i, c + k) = b;
      x(r + i, k) = -std::conj(b);
      x(r + i, c + k) = std::conj(a);
    }
  return x;
}

inline qschur::QMatrix unchi(const Eigen::MatrixXcd& x) {
  const auto r = x.rows() / 2, c = x.cols() / 2;
  qschur::QMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
          Quaternion{x(i, k).real(), x(i, k).imag(), x(i, c + k).real(), x(i, c + k).imag()};
  return m;
}

/// P with A* P A = P - C* C by vectorizing the complex adjoint equation.
inline qschur::QMatrix stein_vectorized(const qschur::QMatrix& a, const qschur::QMatrix& c) {
  const Eigen::MatrixXcd xa = chi(a), xc = chi(c);
  const Eigen::Index n = xa.rows();
  // vec(A* P A) = (A^T kron A*) vec(P)
  Eigen::MatrixXcd k(n * n, n * n);
  const Eigen::MatrixXcd at = xa.transpose(), ah = xa.adjoint();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k.block(i * n, j * n, n, n) = at(i, j) * ah;
  const Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(n * n, n * n) - k;
  const Eigen::MatrixXcd q = xc.adjoint() * xc;
  const Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(q.data(), n * n);
  const Eigen::VectorXcd sol = lhs.fullPivLu().solve(rhs);
  const Eigen::MatrixXcd p = Eigen::Map<const Eigen::MatrixXcd>(sol.data(), n, n);
  return unchi(p);
}

}  // namespace oracle
