#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "qschur/blaschke.hpp"
#include "qschur/errors.hpp"
#include "support/generators.hpp"

using namespace qschur;

namespace {
const Quaternion I{0, 1, 0, 0}, J{0, 0, 1, 0};

Quaternion eval1(const SliceRational& r, const Quaternion& p) { return eval_left(r, p)(0, 0); }
Quaternion eval1(const FactoredProduct& b, const Quaternion& p) { return b(p)(0, 0); }
}  // namespace

TEST(Blaschke, BallPointFactorMatchesSeriesAndProductRule) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    Quaternion a = sample_ball(rng, 0.9);
    if (modulus(a) < 0.05) continue;
    const SliceRational b = blaschke_factor(Domain::ball, FactorKind::point, a);
    EXPECT_LT(modulus(eval1(b, a)), 1e-12);
    EXPECT_NEAR(eval1(b, Quaternion{}).x0, modulus(a), 1e-14);
    for (int s = 0; s < 5; ++s) {
      const Quaternion p = sample_ball(rng, 0.9);
      const Quaternion v = eval1(b, p);
      EXPECT_LE(oracle::dist(v, oracle::ball_point_series(a, p)), 1e-10);
      EXPECT_LE(oracle::dist(v, oracle::ball_point_product_rule(a, p)), 1e-12);
      EXPECT_LT(modulus(v), 1.0);
    }
  }
  const SliceRational half = blaschke_factor(Domain::ball, FactorKind::point, 0.5 * I);
  EXPECT_LT(modulus(eval1(half, 0.5 * I)), 1e-15);
  EXPECT_NEAR(eval1(half, Quaternion{}).x0, 0.5, 1e-15);
  // real a: the classical disk factor
  const SliceRational real = blaschke_factor(Domain::ball, FactorKind::point, Quaternion(0.5));
  for (double x : {-0.7, 0.0, 0.3, 0.9}) EXPECT_NEAR(eval1(real, Quaternion(x)).x0, (0.5 - x) / (1 - 0.5 * x), 1e-15);
  // a = 0 gives p
  EXPECT_LE(oracle::dist(eval1(blaschke_factor(Domain::ball, FactorKind::point, Quaternion{}), J), J), 0.0);
}

TEST(Blaschke, SphereFactorsVanishOnWholeSphere) {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    Quaternion a = sample_ball(rng, 0.9);
    const SliceRational b = blaschke_factor(Domain::ball, FactorKind::sphere, a);
    for (int s = 0; s < 8; ++s) {
      const ImaginaryUnit ax = sample_imaginary_unit(rng);
      EXPECT_LT(modulus(eval1(b, point_on_sphere(a, ax))), 1e-12);
    }
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE(oracle::dist(eval1(b, p), oracle::ball_sphere(a, p)), 1e-13);

    const Quaternion h = sample_halfspace(rng, 0.1, 2.0, 2.0);
    const SliceRational bh = blaschke_factor(Domain::halfspace, FactorKind::sphere, h);
    for (const auto& ax : probe_axes()) EXPECT_LT(modulus(eval1(bh, point_on_sphere(h, ax))), 1e-12);
    const Quaternion q = sample_halfspace(rng, 0.05, 3.0, 3.0);
    EXPECT_LE(oracle::dist(eval1(bh, q), oracle::half_sphere(h, q)), 1e-13);
  }
}

TEST(Blaschke, HalfspacePointFactor) {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const Quaternion a = sample_halfspace(rng, 0.1, 2.0, 2.0);
    const SliceRational b = blaschke_factor(Domain::halfspace, FactorKind::point, a);
    EXPECT_LT(modulus(eval1(b, a)), 1e-12);
    // rational form (p^2 + 2Re(a)p + |a|^2)^{-1}(p^2 - a^2)
    ASSERT_EQ(b.den.degree(), 2);
    EXPECT_NEAR(b.den.coeffs()[0] / b.den.coeffs()[2], norm2(a), 1e-13);
    EXPECT_NEAR(b.den.coeffs()[1] / b.den.coeffs()[2], 2 * a.x0, 1e-13);
    for (int s = 0; s < 5; ++s) {
      const Quaternion p = sample_halfspace(rng, 0.01, 4.0, 4.0);
      const Quaternion v = eval1(b, p);
      EXPECT_LE(oracle::dist(v, oracle::half_point_product_rule(a, p)), 1e-12);
      EXPECT_LT(modulus(v), 1.0);
    }
  }
}

TEST(Blaschke, InversesRoundTrip) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const Quaternion a = sample_ball(rng, 0.9);
    for (auto kind : {Factor::Type::point, Factor::Type::sphere}) {
      const FactoredProduct b(Domain::ball, 1, {Factor{kind, a, std::nullopt, false}});
      const FactoredProduct inv = product_inverse(b);
      const SliceRational one = star_mul(b.rational(), inv.rational());
      for (int s = 0; s < 20; ++s) {
        const Quaternion p = sample_ball(rng, 0.9);
        EXPECT_LE(oracle::dist(eval1(one, p), Quaternion(1.0)), 1e-9);
      }
    }
  }
  // B_a^{-*} = B_{conj(a)^{-1}}: its zero moves outside the ball, its poles sit on [a]
  const Quaternion a{0.2, 0.3, -0.1, 0.4};
  const FactoredProduct inv = product_inverse(FactoredProduct(Domain::ball, 1, {Factor{Factor::Type::point, a, std::nullopt, false}}));
  ASSERT_EQ(inv.factors().size(), 1u);
  EXPECT_LE(oracle::dist(inv.factors()[0].a, oracle::inv(conj(a))), 1e-15);
  EXPECT_LT(modulus(eval1(inv.rational(), oracle::inv(conj(a)))), 1e-12);
  for (const auto& root : inv.rational().den.roots()) EXPECT_NEAR(std::abs(root), modulus(a), 1e-12);
}

TEST(Blaschke, InverseReversesOrder) {
  const Quaternion a{0.1, 0.5, 0, 0}, c{-0.3, 0, 0.2, 0.4};
  const FactoredProduct b(Domain::ball, 1, {Factor{Factor::Type::point, a, std::nullopt, false},
                                           Factor{Factor::Type::point, c, std::nullopt, false}});
  const FactoredProduct inv = product_inverse(b);
  ASSERT_EQ(inv.factors().size(), 2u);
  EXPECT_LE(oracle::dist(inv.factors()[0].a, oracle::inv(conj(c))), 1e-15);
  EXPECT_LE(oracle::dist(inv.factors()[1].a, oracle::inv(conj(a))), 1e-15);
  const SliceRational one = star_mul(b.rational(), inv.rational());
  const SliceRational one2 = star_mul(inv.rational(), b.rational());
  Rng rng(25);
  for (int s = 0; s < 20; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE(oracle::dist(eval1(one, p), Quaternion(1.0)), 1e-12);
    EXPECT_LE(oracle::dist(eval1(one2, p), Quaternion(1.0)), 1e-12);
  }
}

TEST(Blaschke, BuilderPrescribedZeros) {
  ZeroSet z{Domain::ball, {{0.5 * I, 1}}, {}};
  FactoredProduct b = build_product(z);
  ASSERT_EQ(b.factors().size(), 1u);
  EXPECT_LE(oracle::dist(b.factors()[0].a, 0.5 * I), 0.0);

  z.points.push_back({0.5 * J, 1});
  b = build_product(z);
  ASSERT_EQ(b.factors().size(), 2u);
  const Quaternion v = oracle::ball_point_product_rule(0.5 * I, 0.5 * J);
  const Quaternion alpha = oracle::mul(oracle::mul(oracle::inv(v), 0.5 * J), v);
  EXPECT_LE(oracle::dist(b.factors()[1].a, alpha), 1e-14);
  EXPECT_LT(modulus(eval1(b, 0.5 * I)), 1e-10);
  EXPECT_LT(modulus(eval1(b, 0.5 * J)), 1e-10);

  b = build_product(ZeroSet{Domain::ball, {}, {{0.5 * I, 1}}});
  ASSERT_EQ(b.factors().size(), 1u);
  EXPECT_EQ(b.factors()[0].type, Factor::Type::sphere);
}

TEST(Blaschke, BuilderRandomSets) {
  Rng rng(26);
  for (int t = 0; t < 25; ++t) {
    const Domain d = t % 3 == 2 ? Domain::halfspace : Domain::ball;
    const ZeroSet z = testgen::random_zero_set(rng, d, 6);
    const FactoredProduct b = build_product(z);
    int deg = 0;
    for (const auto& p : z.points) {
      deg += p.n;
      EXPECT_LT(b(p.a).norm(), 1e-10);
      const ZeroMultiplicity m = zero_multiplicity(b.rational().num, p.a);
      EXPECT_EQ(m.kind, ZeroKind::point);
      EXPECT_EQ(m.count, p.n);
    }
    for (const auto& s : z.spheres) {
      deg += 2 * s.m;
      for (const auto& ax : probe_axes()) EXPECT_LT(b(point_on_sphere(s.c, ax)).norm(), 1e-10);
      const ZeroMultiplicity m = zero_multiplicity(b.rational().num, s.c);
      EXPECT_EQ(m.kind, ZeroKind::spherical);
      EXPECT_EQ(m.count, s.m);
    }
    EXPECT_EQ(product_degree(b), deg);
  }
}

TEST(Blaschke, Degree) {
  const Quaternion a{0.1, 0.2, 0, 0}, c{0, 0, 0.4, 0.1};
  EXPECT_EQ(product_degree(build_product(ZeroSet{Domain::ball, {{a, 2}}, {{c, 1}}})), 4);
  EXPECT_EQ(product_degree(build_product(ZeroSet{Domain::ball, {{a, 1}}, {}})), 1);
  EXPECT_EQ(product_degree(FactoredProduct(Domain::ball, 1, {})), 0);
}

TEST(Blaschke, ValidationRejectsBadZeroSets) {
  EXPECT_THROW(build_product(ZeroSet{Domain::ball, {{Quaternion(1.2), 1}}, {}}), DomainError);
  EXPECT_THROW(build_product(ZeroSet{Domain::halfspace, {{Quaternion(-0.2), 1}}, {}}), DomainError);
  EXPECT_THROW(build_product(ZeroSet{Domain::ball, {{0.5 * I, 0}}, {}}), DomainError);
  EXPECT_THROW(build_product(ZeroSet{Domain::ball, {{0.5 * I, 1}, {0.5 * I, 1}}, {}}), DomainError);
  // a point on an already prescribed sphere is rejected up front
  EXPECT_THROW(build_product(ZeroSet{Domain::ball, {{0.5 * J, 1}}, {{0.5 * I, 1}}}), DomainError);
  // three points on one sphere: the first two already force the whole sphere
  EXPECT_THROW(build_product(ZeroSet{Domain::ball, {{0.5 * I, 1}, {0.5 * J, 1}, {Quaternion(0, 0, 0, 0.5), 1}}, {}}),
               ConstructionError);
}

TEST(Blaschke, PotapovKindsOneAndTwo) {
  const Quaternion a{0.2, 0.1, -0.3, 0.2};
  const SignatureMatrix j2 = SignatureMatrix::identity(2);
  FactoredProduct full = potapov_factor(Domain::ball, {1, a, QMatrix::identity(2), j2, {}, 1.0});
  FactoredProduct none = potapov_factor(Domain::ball, {1, a, QMatrix(2, 2), j2, {}, 1.0});
  Rng rng(27);
  for (int s = 0; s < 10; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    const Quaternion ba = oracle::ball_point_product_rule(a, p);
    EXPECT_LE((full(p) - QMatrix::diagonal({ba, ba})).norm(), 1e-12);
    EXPECT_LE((none(p) - QMatrix::identity(2)).norm(), 1e-15);
  }
  // I + (B_a - 1)P with a real-entry projection; the inverse uses B_a^{-*}
  QMatrix proj(2, 2);
  proj(0, 0) = 0.5;
  proj(0, 1) = 0.5;
  proj(1, 0) = 0.5;
  proj(1, 1) = 0.5;
  const Quaternion ra{0.4, 0.0, 0.0, 0.0};
  const FactoredProduct f = potapov_factor(Domain::ball, {1, ra, proj, j2, {}, 1.0});
  EXPECT_EQ(product_degree(f), 1);
  const FactoredProduct g = product_inverse(f);
  const SliceRational prod = star_mul(f.rational(), g.rational());
  const FactoredProduct scalar_inv =
      product_inverse(FactoredProduct(Domain::ball, 1, {Factor{Factor::Type::point, ra, std::nullopt, false}}));
  for (int s = 0; s < 10; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE((eval_left(prod, p) - QMatrix::identity(2)).norm(), 1e-12);
    const Quaternion binv = eval1(scalar_inv, p);
    EXPECT_LE(oracle::dist(oracle::mul(binv, oracle::ball_point_product_rule(ra, p)), Quaternion(1.0)), 1e-12);
    EXPECT_LE((g(p) - (QMatrix::identity(2) + (binv - 1.0) * proj)).norm(), 1e-12);
  }
  QMatrix notproj = QMatrix::identity(2) * 0.5;
  EXPECT_THROW(potapov_factor(Domain::ball, {1, a, notproj, j2, {}, 1.0}), DomainError);
  EXPECT_THROW(potapov_factor(Domain::ball, {2, a, proj, j2, {}, 1.0}), DomainError);
}

TEST(Blaschke, PotapovThirdKind) {
  const SignatureMatrix jm = SignatureMatrix::diagonal(1, 1);
  QMatrix u(2, 1);
  u(0, 0) = 1.0 / std::sqrt(2.0);
  u(1, 0) = 1.0 / std::sqrt(2.0);
  const Quaternion w0{0.6, 0.8, 0.0, 0.0};
  const double k = 0.7;
  const FactoredProduct th = potapov_factor(Domain::ball, {3, w0, {}, jm, u, k});
  EXPECT_EQ(product_degree(th), 1);
  // On the real line every star product is pointwise: J - T J T* = 2k Re(h) u u*, h = (x + w0)(x - w0)^{-1}.
  for (double x : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
    const QMatrix v = th(Quaternion(x));
    const Quaternion h = oracle::mul(oracle::add(Quaternion(x), w0), oracle::inv(oracle::sub(Quaternion(x), w0)));
    const QMatrix want = QMatrix::identity(2) - k * (u * h) * u.adjoint() * jm.matrix();
    EXPECT_LE((v - want).norm(), 1e-13);
    const QMatrix defect = jm.matrix() - v * jm.matrix() * v.adjoint();
    EXPECT_LE((defect - (2.0 * k * h.x0) * (u * u.adjoint())).norm(), 1e-13);
    EXPECT_LT(h.x0, 0.0);
  }
  Rng rng(28);
  const FactoredProduct inv = product_inverse(th);
  const SliceRational one = star_mul(th.rational(), inv.rational());
  for (int s = 0; s < 10; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE((eval_left(one, p) - QMatrix::identity(2)).norm(), 1e-10);
  }
  QMatrix bad(2, 1);
  bad(0, 0) = 1.0;
  EXPECT_THROW(potapov_factor(Domain::ball, {3, w0, {}, jm, bad, 1.0}), DomainError);
  EXPECT_THROW(potapov_factor(Domain::ball, {3, Quaternion(0.5), {}, jm, u, 1.0}), DomainError);
}
