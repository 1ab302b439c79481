#include "qschur/quaternion.hpp"

#include <algorithm>
#include <array>
#include <numbers>

#include "qschur/errors.hpp"

namespace qschur {

Quaternion inverse(const Quaternion& a) {
  const double n2 = norm2(a);
  if (n2 == 0.0 || !std::isfinite(n2)) throw DomainError("inverse of a zero quaternion");
  return conj(a) / n2;
}

Quaternion pow(const Quaternion& a, int n) {
  if (n < 0) throw DomainError("negative quaternion power");
  Quaternion result{1.0};
  Quaternion base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
  return std::abs(a.x0 - b.x0) <= tol && std::abs(a.x1 - b.x1) <= tol &&
         std::abs(a.x2 - b.x2) <= tol && std::abs(a.x3 - b.x3) <= tol;
}

bool is_finite(const Quaternion& a) {
  return std::isfinite(a.x0) && std::isfinite(a.x1) && std::isfinite(a.x2) &&
         std::isfinite(a.x3);
}

ImaginaryUnit ImaginaryUnit::from(const Quaternion& q) {
  if (std::abs(q.x0) > 1e-12 || std::abs(q.imag_abs() - 1.0) > 1e-12)
    throw DomainError("not a unit imaginary quaternion");
  return normalize(q);
}

ImaginaryUnit ImaginaryUnit::normalize(const Quaternion& q) {
  const double y = q.imag_abs();
  if (y == 0.0 || !std::isfinite(y)) throw DomainError("imaginary part vanishes");
  return ImaginaryUnit(q.imag() / y);
}

Quaternion SphereRep::reconstruct() const {
  if (!axis) return Quaternion{x};
  return Quaternion{x} + axis->value() * y;
}

bool is_real(const Quaternion& p, double tol) {
  return p.imag_abs() < tol * std::max(1.0, modulus(p));
}

SphereRep decompose(const Quaternion& p, double tol) {
  SphereRep rep;
  rep.x = p.x0;
  rep.y = p.imag_abs();
  if (!is_real(p, tol)) rep.axis = ImaginaryUnit::normalize(p);
  return rep;
}

bool same_sphere(const Quaternion& p, const Quaternion& q, double tol) {
  const double scale = std::max({1.0, modulus(p), modulus(q)});
  return std::abs(p.x0 - q.x0) <= tol * scale && std::abs(p.imag_abs() - q.imag_abs()) <= tol * scale;
}

Quaternion point_on_sphere(const Quaternion& p, const ImaginaryUnit& axis) {
  return Quaternion{p.x0} + axis.value() * p.imag_abs();
}

const std::array<ImaginaryUnit, 8>& probe_axes() {
  static const std::array<ImaginaryUnit, 8> axes = {
      ImaginaryUnit::i(),
      ImaginaryUnit::j(),
      ImaginaryUnit::k(),
      ImaginaryUnit::normalize({0, 1, 1, 1}),
      ImaginaryUnit::normalize({0, -1, 1, 0}),
      ImaginaryUnit::normalize({0, 0.3, -0.5, 0.8}),
      ImaginaryUnit::normalize({0, -0.7, -0.2, 0.4}),
      ImaginaryUnit::normalize({0, 0.1, 0.9, -0.6}),
  };
  return axes;
}

Rng::Rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  return r * std::cos(t);
}

Quaternion sample_normal(Rng& rng) {
  const double a = rng.normal();
  const double b = rng.normal();
  const double c = rng.normal();
  const double d = rng.normal();
  return {a, b, c, d};
}

Quaternion sample_ball(Rng& rng, double radius) {
  Quaternion g = sample_normal(rng);
  while (norm2(g) == 0.0) g = sample_normal(rng);
  const double r = radius * std::pow(rng.uniform(), 0.25);
  return g * (r / modulus(g));
}

Quaternion sample_halfspace(Rng& rng, double re_lo, double re_hi, double imag_max) {
  const double re = rng.uniform(re_lo, re_hi);
  const ImaginaryUnit axis = sample_imaginary_unit(rng);
  const double y = imag_max * std::cbrt(rng.uniform());
  return Quaternion{re} + axis.value() * y;
}

ImaginaryUnit sample_imaginary_unit(Rng& rng) {
  for (;;) {
    const Quaternion g{0.0, rng.normal(), rng.normal(), rng.normal()};
    if (g.imag_abs() > 1e-8) return ImaginaryUnit::normalize(g);
  }
}

Quaternion sample_box(Rng& rng, double lo, double hi) {
  const double a = rng.uniform(lo, hi);
  const double b = rng.uniform(lo, hi);
  const double c = rng.uniform(lo, hi);
  const double d = rng.uniform(lo, hi);
  return {a, b, c, d};
}

}  // namespace qschur
