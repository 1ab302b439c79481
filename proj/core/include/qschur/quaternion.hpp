#pragma once

#include <cmath>
#include <cstdint>
#include <array>
#include <optional>
#include <random>

namespace qschur {

/// Real quaternion p = x0 + i x1 + j x2 + k x3.
///
/// Plain value type. Equality is only ever tested through approx_equal();
/// there is deliberately no operator==.
struct Quaternion {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double re) : x0(re) {}  // NOLINT: implicit like std::complex
  constexpr Quaternion(double a, double b, double c, double d) : x0(a), x1(b), x2(c), x3(d) {}

  constexpr double real() const { return x0; }
  constexpr Quaternion imag() const { return {0.0, x1, x2, x3}; }
  double imag_abs() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    x0 += o.x0;
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    x0 -= o.x0;
    x1 -= o.x1;
    x2 -= o.x2;
    x3 -= o.x3;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    x0 *= s;
    x1 *= s;
    x2 *= s;
    x3 *= s;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o);
};

inline constexpr Quaternion kQI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kQJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kQK{0.0, 0.0, 0.0, 1.0};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

constexpr Quaternion& Quaternion::operator*=(const Quaternion& o) { return *this = *this * o; }

constexpr Quaternion conj(const Quaternion& a) { return {a.x0, -a.x1, -a.x2, -a.x3}; }
constexpr double norm2(const Quaternion& a) {
  return a.x0 * a.x0 + a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3;
}
inline double modulus(const Quaternion& a) { return std::sqrt(norm2(a)); }

/// Multiplicative inverse conj(a)/|a|^2. Throws DomainError for a == 0.
Quaternion inverse(const Quaternion& a);

/// a^n for n >= 0.
Quaternion pow(const Quaternion& a, int n);

/// Componentwise comparison: max |a_i - b_i| <= tol.
bool approx_equal(const Quaternion& a, const Quaternion& b, double tol = 1e-12);

bool is_finite(const Quaternion& a);

/// Purely imaginary unit quaternion; I^2 = -1.
class ImaginaryUnit {
 public:
  /// Validates zero real part and unit modulus (tolerance 1e-12), then renormalizes.
  static ImaginaryUnit from(const Quaternion& q);
  /// Normalizes the imaginary part of q. Throws DomainError if it vanishes.
  static ImaginaryUnit normalize(const Quaternion& q);

  static ImaginaryUnit i() { return ImaginaryUnit(kQI); }
  static ImaginaryUnit j() { return ImaginaryUnit(kQJ); }
  static ImaginaryUnit k() { return ImaginaryUnit(kQK); }

  const Quaternion& value() const { return unit_; }
  operator Quaternion() const { return unit_; }  // NOLINT

 private:
  explicit ImaginaryUnit(const Quaternion& q) : unit_(q) {}
  Quaternion unit_;
};

/// p = x + axis * y with y >= 0; the sphere [p] depends on (x, y) only.
struct SphereRep {
  double x = 0.0;
  double y = 0.0;
  std::optional<ImaginaryUnit> axis;

  Quaternion reconstruct() const;
};

/// Default real-axis threshold: |Im p| < kRealAxisTol * max(1, |p|) counts as real.
inline constexpr double kRealAxisTol = 1e-13;

SphereRep decompose(const Quaternion& p, double tol = kRealAxisTol);

/// True when p lies (numerically) on the real axis.
bool is_real(const Quaternion& p, double tol = kRealAxisTol);

/// p and q lie on the same 2-sphere [p] = [q].
bool same_sphere(const Quaternion& p, const Quaternion& q, double tol = 1e-12);

/// x + J y for the sphere of p and a chosen unit J (y taken from p).
Quaternion point_on_sphere(const Quaternion& p, const ImaginaryUnit& axis);

/// Eight fixed, well-spread imaginary units used to probe whole spheres.
const std::array<ImaginaryUnit, 8>& probe_axes();

/// Seeded generator handle. Uniform and normal draws are computed from raw
/// 64-bit output so streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for (seed, index), e.g. one per sampling trial.
  Rng(std::uint64_t seed, std::uint64_t index);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Uniform in the closed ball |p| <= radius.
Quaternion sample_ball(Rng& rng, double radius = 1.0);
/// Real part uniform in [re_lo, re_hi], imaginary part uniform in the 3-ball of radius imag_max.
Quaternion sample_halfspace(Rng& rng, double re_lo, double re_hi, double imag_max);
/// Uniform on the sphere S of imaginary units.
ImaginaryUnit sample_imaginary_unit(Rng& rng);
/// Components uniform in [lo, hi].
Quaternion sample_box(Rng& rng, double lo = -1.0, double hi = 1.0);
/// Standard Gaussian components.
Quaternion sample_normal(Rng& rng);

}  // namespace qschur
