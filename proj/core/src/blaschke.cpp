#include "qschur/blaschke.hpp"

#include <cmath>
#include <string>

#include "qschur/errors.hpp"

namespace qschur {

std::string to_string(Domain d) { return d == Domain::ball ? "ball" : "halfspace"; }

namespace {

std::string qstr(const Quaternion& q) {
  return "(" + std::to_string(q.x0) + ", " + std::to_string(q.x1) + ", " + std::to_string(q.x2) + ", " +
         std::to_string(q.x3) + ")";
}

bool inside(Domain d, const Quaternion& a) { return d == Domain::ball ? modulus(a) < 1.0 : a.x0 > 0.0; }

// Formulas without the domain precondition; inverses use them outside the domain.
SliceRational point_rational(Domain domain, const Quaternion& a) {
  const double r2 = norm2(a);
  if (domain == Domain::ball) {
    if (r2 == 0.0) return SliceRational(StarPoly::scalar({0.0, 1.0}), RealPoly::one());
    const Quaternion s = conj(a) / std::sqrt(r2);
    return {StarPoly::scalar({a * s, -(Quaternion{1.0} + a * a) * s, a * s}), RealPoly({1.0, -2.0 * a.x0, r2})};
  }
  return {StarPoly::scalar({-(a * a), 0.0, 1.0}), RealPoly({r2, 2.0 * a.x0, 1.0})};
}

SliceRational origin_inverse_rational() { return {StarPoly::scalar({1.0}), RealPoly({0.0, 1.0})}; }

SliceRational sphere_rational(Domain domain, const Quaternion& a) {
  const double r2 = norm2(a);
  const double re = a.x0;
  if (domain == Domain::ball) return {StarPoly::scalar({r2, -2.0 * re, 1.0}), RealPoly({1.0, -2.0 * re, r2})};
  return {StarPoly::scalar({r2, -2.0 * re, 1.0}), RealPoly({r2, 2.0 * re, 1.0})};
}

SliceRational lift(const SliceRational& s, std::size_t dim) {
  if (dim == 1) return s;
  std::vector<QMatrix> c;
  const QMatrix eye = QMatrix::identity(dim);
  for (const auto& m : s.num.coeffs()) c.push_back(m(0, 0) * eye);
  return {StarPoly(std::move(c)), s.den};
}

SliceRational potapov_rational(Domain domain, const Factor& f) {
  const PotapovParams& pp = *f.potapov;
  const std::size_t r = pp.J.dim();
  const QMatrix eye = QMatrix::identity(r);
  if (pp.kind == 1 || pp.kind == 2) {
    const SliceRational b = f.origin_inverse ? origin_inverse_rational() : point_rational(domain, pp.a);
    const std::size_t len = std::max(b.num.coeffs().size(), b.den.coeffs().size());
    std::vector<QMatrix> c;
    for (std::size_t n = 0; n < len; ++n) {
      const double dn = n < b.den.coeffs().size() ? b.den.coeffs()[n] : 0.0;
      const Quaternion nn = b.num.scalar_coeff(n);
      c.push_back(eye * dn + (nn - Quaternion{dn}) * pp.P);
    }
    return {StarPoly(std::move(c)), b.den};
  }
  const Quaternion w = pp.a;
  const double r2 = norm2(w);
  std::vector<Quaternion> hnum;
  RealPoly hden;
  if (domain == Domain::ball) {
    hnum = {Quaternion{-r2}, w.imag() * 2.0, 1.0};
    hden = RealPoly({r2, -2.0 * w.x0, 1.0});
  } else {
    hnum = {conj(w), 1.0};
    hden = RealPoly({r2, 2.0 * w.x0, 1.0});
  }
  const QMatrix uj = pp.u.adjoint() * pp.J.matrix();
  const std::size_t len = std::max(hnum.size(), hden.coeffs().size());
  std::vector<QMatrix> c;
  for (std::size_t n = 0; n < len; ++n) {
    const double dn = n < hden.coeffs().size() ? hden.coeffs()[n] : 0.0;
    const Quaternion hn = n < hnum.size() ? hnum[n] : Quaternion{};
    c.push_back(eye * dn - (pp.u * hn) * uj * pp.k);
  }
  return {StarPoly(std::move(c)), hden};
}

void validate_potapov(Domain domain, const PotapovParams& pp) {
  const std::size_t r = pp.J.dim();
  if (pp.kind == 1 || pp.kind == 2) {
    if (pp.P.rows() != r || pp.P.cols() != r) throw ShapeError("potapov: P must be r x r with r = dim J");
    const double scale = std::max(1.0, pp.P.norm());
    if ((pp.P * pp.P - pp.P).norm() > 1e-10 * scale) throw DomainError("potapov: P is not a projection (P^2 != P)");
    const QMatrix jp = pp.J.matrix() * pp.P;
    if (hermitian_residual(jp) > 1e-10 * scale) throw DomainError("potapov: JP is not Hermitian");
    if (herm_eigen_neg(hermitian_part(jp)).negatives != 0) throw DomainError("potapov: JP is not positive semidefinite");
    if (pp.kind == 1 && !inside(domain, pp.a)) throw DomainError("potapov: kind 1 needs a inside the domain");
    if (pp.kind == 2) {
      const bool ok = domain == Domain::ball ? modulus(pp.a) > 1.0 : pp.a.x0 < 0.0;
      if (!ok) throw DomainError("potapov: kind 2 needs a outside the closed domain");
    }
    return;
  }
  if (pp.kind != 3) throw DomainError("potapov: kind must be 1, 2 or 3");
  if (pp.u.rows() != r || pp.u.cols() != 1) throw ShapeError("potapov: u must be an r x 1 column");
  const double un = pp.u.norm();
  if (un == 0.0) throw DomainError("potapov: u is zero");
  if ((pp.u.adjoint() * pp.J.matrix() * pp.u).norm() > 1e-10 * un * un) throw DomainError("potapov: u is not J-neutral");
  if (!(pp.k > 0.0)) throw DomainError("potapov: gain k must be positive");
  if (domain == Domain::ball && std::abs(modulus(pp.a) - 1.0) > 1e-12)
    throw DomainError("potapov: kind 3 (ball) needs |w0| = 1");
  if (domain == Domain::halfspace && std::abs(pp.a.x0) > 1e-12)
    throw DomainError("potapov: kind 3 (halfspace) needs Re(w0) = 0");
}

std::size_t factor_dim(const Factor& f) { return f.potapov ? f.potapov->J.dim() : 1; }

Quaternion mirror(Domain domain, const Quaternion& a) {
  return domain == Domain::ball ? inverse(conj(a)) : -conj(a);
}

Factor invert(Domain domain, const Factor& f) {
  Factor g = f;
  switch (f.type) {
    case Factor::Type::point:
      if (domain == Domain::ball && (f.origin_inverse || norm2(f.a) == 0.0))
        g.origin_inverse = !f.origin_inverse;
      else
        g.a = mirror(domain, f.a);
      break;
    case Factor::Type::sphere:
      g.a = domain == Domain::ball ? inverse(f.a) : -f.a;
      break;
    case Factor::Type::potapov: {
      PotapovParams& pp = *g.potapov;
      if (pp.kind == 3) {
        pp.k = -pp.k;
        break;
      }
      for (const auto& e : pp.P.entries()) {
        const Quaternion c = e * pp.a - pp.a * e;
        if (modulus(c) > 1e-12 * (1.0 + modulus(e) * modulus(pp.a)))
          throw DomainError("potapov inverse: P does not commute with a; closed form unavailable");
      }
      pp.kind = pp.kind == 1 ? 2 : 1;
      if (domain == Domain::ball && (f.origin_inverse || norm2(pp.a) == 0.0))
        g.origin_inverse = !f.origin_inverse;
      else
        pp.a = mirror(domain, pp.a);
      break;
    }
  }
  return g;
}

}  // namespace

int Factor::degree() const {
  switch (type) {
    case Type::point:
      return 1;
    case Type::sphere:
      return 2;
    case Type::potapov:
      if (potapov->kind == 3) return 1;
      double tr = 0.0;
      for (std::size_t i = 0; i < potapov->P.rows(); ++i) tr += potapov->P(i, i).x0;
      return static_cast<int>(std::lround(tr));
  }
  return 0;
}

void validate(const ZeroSet& z) {
  for (std::size_t i = 0; i < z.points.size(); ++i) {
    const auto& pt = z.points[i];
    if (!is_finite(pt.a)) throw DomainError("zero set: point " + std::to_string(i) + " is not finite");
    if (!inside(z.domain, pt.a))
      throw DomainError("zero set: point " + qstr(pt.a) + " is outside the " + to_string(z.domain));
    if (pt.n < 1) throw DomainError("zero set: point multiplicity must be positive");
    // Points sharing a sphere are accepted; the builder reports a vanishing partial product.
    for (std::size_t j = 0; j < i; ++j)
      if (approx_equal(pt.a, z.points[j].a, 1e-12))
        throw DomainError("zero set: points " + std::to_string(j) + " and " + std::to_string(i) +
                          " coincide; use the multiplicity instead");
  }
  for (std::size_t i = 0; i < z.spheres.size(); ++i) {
    const auto& sp = z.spheres[i];
    if (!is_finite(sp.c)) throw DomainError("zero set: sphere " + std::to_string(i) + " is not finite");
    if (is_real(sp.c)) throw DomainError("zero set: sphere representative " + qstr(sp.c) + " is real");
    if (!inside(z.domain, sp.c))
      throw DomainError("zero set: sphere " + qstr(sp.c) + " is outside the " + to_string(z.domain));
    if (sp.m < 1) throw DomainError("zero set: sphere multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (same_sphere(sp.c, z.spheres[j].c))
        throw DomainError("zero set: spheres " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    for (const auto& pt : z.points)
      if (same_sphere(pt.a, sp.c)) throw DomainError("zero set: point " + qstr(pt.a) + " lies on a listed sphere");
  }
}

SliceRational blaschke_factor(Domain domain, FactorKind kind, const Quaternion& a) {
  if (!is_finite(a)) throw DomainError("blaschke_factor: non-finite parameter");
  if (!inside(domain, a))
    throw DomainError("blaschke_factor: " + qstr(a) + " is outside the " + to_string(domain));
  if (kind == FactorKind::sphere) {
    if (is_real(a)) throw DomainError("blaschke_factor: sphere factor needs a nonreal representative");
    return sphere_rational(domain, a);
  }
  return point_rational(domain, a);
}

SliceRational factor_rational(Domain domain, const Factor& f, std::size_t dim) {
  switch (f.type) {
    case Factor::Type::point:
      return lift(f.origin_inverse ? origin_inverse_rational() : point_rational(domain, f.a), dim);
    case Factor::Type::sphere:
      return lift(sphere_rational(domain, f.a), dim);
    case Factor::Type::potapov:
      if (f.potapov->J.dim() != dim) throw ShapeError("factor_rational: Potapov factor dimension mismatch");
      return potapov_rational(domain, f);
  }
  throw DomainError("factor_rational: unknown factor type");
}

FactoredProduct::FactoredProduct(Domain domain, std::size_t dim, std::vector<Factor> factors)
    : domain_(domain), dim_(dim), factors_(std::move(factors)), rational_(SliceRational::identity(dim)) {
  for (const auto& f : factors_) {
    const std::size_t d = factor_dim(f);
    if (d != 1 && d != dim_) throw ShapeError("FactoredProduct: factor dimension differs from product dimension");
    rational_ = star_mul(rational_, factor_rational(domain_, f, dim_));
  }
}

FactoredProduct potapov_factor(Domain domain, const PotapovParams& params) {
  validate_potapov(domain, params);
  Factor f;
  f.type = Factor::Type::potapov;
  f.a = params.a;
  f.potapov = params;
  return FactoredProduct(domain, params.J.dim(), {f});
}

FactoredProduct build_product(const ZeroSet& zeros) {
  validate(zeros);
  std::vector<Factor> factors;
  SliceRational partial = SliceRational::identity(1);
  auto push = [&](Factor f) {
    partial = star_mul(partial, factor_rational(zeros.domain, f, 1));
    factors.push_back(f);
  };
  for (const auto& sp : zeros.spheres)
    for (int i = 0; i < sp.m; ++i) push(Factor{Factor::Type::sphere, sp.c, std::nullopt, false});

  for (const auto& pt : zeros.points) {
    const Quaternion val = eval_left(partial, pt.a)(0, 0);
    if (modulus(val) <= 1e-10)
      throw ConstructionError("build_product: partial product vanishes at " + qstr(pt.a));
    // alpha is fixed by the first factor; repeating it keeps the zero at a_r and raises its multiplicity.
    const Quaternion alpha = inverse(val) * pt.a * val;
    for (int j = 0; j < pt.n; ++j) push(Factor{Factor::Type::point, alpha, std::nullopt, false});
  }
  return FactoredProduct(zeros.domain, 1, std::move(factors));
}

FactoredProduct product_inverse(const FactoredProduct& b) {
  std::vector<Factor> inv;
  for (auto it = b.factors().rbegin(); it != b.factors().rend(); ++it) inv.push_back(invert(b.domain(), *it));
  return FactoredProduct(b.domain(), b.dim(), std::move(inv));
}

int product_degree(const FactoredProduct& b) {
  int d = 0;
  for (const auto& f : b.factors()) d += f.degree();
  return d;
}

}  // namespace qschur
