#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qschur/qmatrix.hpp"
#include "qschur/quaternion.hpp"

namespace qschur {

/// Polynomial with real coefficients; coeffs[n] multiplies p^n.
///
/// Real-coefficient polynomials are slice preserving: they commute with p and
/// with every other left slice regular function under the star product, and
/// their star product with anything is the pointwise product.
class RealPoly {
 public:
  RealPoly() : coeffs_{1.0} {}
  explicit RealPoly(std::vector<double> coeffs);

  static RealPoly one() { return RealPoly({1.0}); }
  /// (p - root)(p - conj(root)) = p^2 - 2 Re(root) p + |root|^2.
  static RealPoly sphere_quadratic(const Quaternion& root);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double x) const;
  Quaternion operator()(const Quaternion& p) const;
  /// sum |c_n| |p|^n, the natural scale for "is this value zero".
  double magnitude_at(double radius) const;

  RealPoly operator*(const RealPoly& o) const;
  RealPoly operator+(const RealPoly& o) const;
  RealPoly operator-(const RealPoly& o) const;
  RealPoly operator*(double s) const;

  /// Complex roots (all of them, via companion eigenvalues).
  std::vector<std::complex<double>> roots() const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Left slice regular polynomial sum_n p^n C_n with r x s quaternionic matrix
/// coefficients written on the right of the powers.
class StarPoly {
 public:
  StarPoly() : StarPoly(1, 1) {}
  StarPoly(std::size_t rows, std::size_t cols);
  explicit StarPoly(std::vector<QMatrix> coeffs);

  /// Scalar (1x1) polynomial from quaternion coefficients.
  static StarPoly scalar(const std::vector<Quaternion>& coeffs);
  static StarPoly constant(const QMatrix& c) { return StarPoly(std::vector<QMatrix>{c}); }
  static StarPoly identity(std::size_t n) { return constant(QMatrix::identity(n)); }
  /// Real polynomial lifted to d(p) I_n.
  static StarPoly from_real(const RealPoly& d, std::size_t n = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  /// Highest index with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  const std::vector<QMatrix>& coeffs() const { return coeffs_; }
  /// Coefficient n, or the zero matrix when n exceeds the stored length.
  QMatrix coeff(std::size_t n) const;
  /// Scalar coefficient (1x1 only).
  Quaternion scalar_coeff(std::size_t n) const;

  /// max_n ||C_n||_F.
  double coeff_norm() const;
  /// sum_n ||C_n|| |p|^n.
  double magnitude_at(double radius) const;

  StarPoly operator+(const StarPoly& o) const;
  StarPoly operator-(const StarPoly& o) const;
  /// Multiply every coefficient on the left by a constant matrix (c * F, a star product).
  StarPoly left_mul(const QMatrix& c) const;
  /// Multiply every coefficient on the right by a constant matrix (F * c).
  StarPoly right_mul(const QMatrix& c) const;
  StarPoly right_mul(const Quaternion& q) const;
  /// Multiply by a real polynomial (commutes with everything).
  StarPoly operator*(const RealPoly& d) const;

  /// Drops trailing coefficients whose norm is below tol * coeff_norm().
  StarPoly trimmed(double tol = 0.0) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<QMatrix> coeffs_;
};

/// Rational slice function den(p)^{-1} num(p) with real scalar denominator.
struct SliceRational {
  StarPoly num;
  RealPoly den;

  SliceRational() = default;
  SliceRational(StarPoly n, RealPoly d) : num(std::move(n)), den(std::move(d)) {}
  explicit SliceRational(StarPoly n) : num(std::move(n)), den(RealPoly::one()) {}

  std::size_t rows() const { return num.rows(); }
  std::size_t cols() const { return num.cols(); }

  static SliceRational identity(std::size_t n) { return SliceRational(StarPoly::identity(n)); }
};

SliceRational operator+(const SliceRational& a, const SliceRational& b);
SliceRational operator-(const SliceRational& a, const SliceRational& b);

/// Coefficient convolution c_k = sum_{n+m=k} f_n g_m.
StarPoly star_mul(const StarPoly& f, const StarPoly& g);
/// (N1 * N2) / (D1 D2).
SliceRational star_mul(const SliceRational& f, const SliceRational& g);

struct ConjSym {
  StarPoly conj;  ///< f^c: conjugated coefficients
  StarPoly sym;   ///< f^s = f * f^c, real coefficients
};

/// Conjugate and symmetrization of a scalar polynomial. Throws ShapeError for
/// matrix input.
ConjSym star_conj_sym(const StarPoly& f);

/// Real part of a scalar polynomial whose coefficients are real up to tol
/// (relative to coeff_norm). Throws NumericError otherwise.
RealPoly to_real_poly(const StarPoly& f, double tol = 1e-13);

/// sum_n p^n C_n (Horner from the left).
QMatrix eval_left(const StarPoly& f, const Quaternion& p);
Quaternion eval_left_scalar(const StarPoly& f, const Quaternion& p);

/// den(p)^{-1} num(p). Throws PoleError when p lies on a zero sphere of den.
QMatrix eval_left(const SliceRational& f, const Quaternion& p);

/// f^{-star} = (f^s)^{-1} f^c for a scalar polynomial.
SliceRational star_inv_scalar(const StarPoly& f);
/// Star inverse of a scalar rational: den * N^c / N^s.
SliceRational star_inv_scalar(const SliceRational& f);

inline constexpr double kRootTol = 1e-10;

/// g with f = (p - a) * g. Throws NotARootError if f(a) != 0 (relative tol).
StarPoly left_root_extract(const StarPoly& f, const Quaternion& a, double tol = kRootTol);

enum class ZeroKind { point, spherical };

struct ZeroMultiplicity {
  ZeroKind kind = ZeroKind::point;
  int count = 0;
};

/// Multiplicity of a as a zero of a scalar polynomial. Spherical when f vanishes
/// on all probe axes of [a]: count is the exponent of p^2 - 2Re(a)p + |a|^2.
/// Otherwise counts successive left roots extracted on [a] starting at a.
ZeroMultiplicity zero_multiplicity(const StarPoly& f, const Quaternion& a, double tol = kRootTol);

/// Taylor coefficients 0..n of den^{-1} num at the origin. Throws DomainError if den(0) = 0.
StarPoly taylor_coeffs(const SliceRational& r, int n);

/// Taylor coefficients of a star product from those of its factors (Cauchy product).
std::vector<QMatrix> cauchy_product(const std::vector<QMatrix>& f, const std::vector<QMatrix>& g, int n);

using SliceFunction = std::function<QMatrix(const Quaternion&)>;
using ScalarSliceFunction = std::function<Quaternion(const Quaternion&)>;

/// Slice extension of h from C_I: 1/2 [h(x+Iy) + h(x-Iy) + J I (h(x-Iy) - h(x+Iy))]
/// for q = x + J y with y >= 0 (J taken from q).
Quaternion extend_from_slice(const ScalarSliceFunction& h, const ImaginaryUnit& i, const Quaternion& q);
QMatrix extend_from_slice(const SliceFunction& h, const ImaginaryUnit& i, const Quaternion& q);

/// Value at p of the star product F * G of two left slice regular functions,
/// using only values of F and G on the slice through p.
QMatrix star_eval(const SliceFunction& f, const SliceFunction& g, const Quaternion& p);

/// Real Moebius map z -> (a z + b)(c z + d)^{-1}.
struct MoebiusMap {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  Quaternion operator()(const Quaternion& z) const;
  MoebiusMap inverse() const { return {d, -b, -c, a}; }
};

/// R o psi as a slice rational (psi real, so composition preserves slice regularity).
SliceRational compose_moebius(const SliceRational& r, const MoebiusMap& psi);

}  // namespace qschur
