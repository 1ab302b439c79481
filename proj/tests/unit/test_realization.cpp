#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "qschur/errors.hpp"
#include "qschur/realization.hpp"

using namespace qschur;

namespace {
const Quaternion I{0, 1, 0, 0}, J{0, 0, 1, 0};

QMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = scale * sample_box(rng);
  return m;
}

Colligation make(QMatrix a, QMatrix b, QMatrix c, QMatrix d) {
  Colligation col;
  col.A = std::move(a);
  col.B = std::move(b);
  col.C = std::move(c);
  col.D = std::move(d);
  col.J1 = SignatureMatrix::identity(col.D.cols());
  col.J2 = SignatureMatrix::identity(col.D.rows());
  return col;
}
}  // namespace

TEST(Realization, ZeroStateOperatorGivesAffineFunction) {
  Rng rng(41);
  const Colligation c = make(QMatrix(2, 2), random_matrix(rng, 2, 1), random_matrix(rng, 1, 2), random_matrix(rng, 1, 1));
  for (int t = 0; t < 10; ++t) {
    const Quaternion p = sample_ball(rng, 0.9);
    const Quaternion cb = (c.C * c.B)(0, 0);
    EXPECT_LE(oracle::dist(realize_eval(c, p)(0, 0), oracle::add(c.D(0, 0), oracle::mul(p, cb))), 1e-14);
  }
}

TEST(Realization, RealPointsUseClassicalResolvent) {
  Rng rng(42);
  const Colligation c = make(random_matrix(rng, 3, 3, 0.3), random_matrix(rng, 3, 2), random_matrix(rng, 2, 3),
                             random_matrix(rng, 2, 2));
  for (double x : {-0.8, -0.2, 0.0, 0.5, 0.9}) {
    const QMatrix res = qmatrix_inv(QMatrix::identity(3) - x * c.A);
    const QMatrix want = c.D + x * (c.C * res * c.B);
    EXPECT_LE((realize_eval(c, Quaternion(x)) - want).norm(), 1e-12);
  }
}

TEST(Realization, BlaschkeFactorColligation) {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const Quaternion a = sample_ball(rng, 0.9);
    if (modulus(a) < 0.05) continue;
    const Colligation c = colligation_from_blaschke_factor(a);
    EXPECT_LT(check_colligation(c.operator_matrix(), c.J1, c.J2), 1e-10);
    EXPECT_LT(check_colligation(c.operator_matrix(), c.J1, c.J2, ColligationMode::unitary), 1e-10);
    EXPECT_NEAR(c.D(0, 0).x0, modulus(a), 1e-15);
    for (int s = 0; s < 30; ++s) {
      const Quaternion p = sample_ball(rng, 0.95);
      EXPECT_LE(oracle::dist(realize_eval(c, p)(0, 0), oracle::ball_point_product_rule(a, p)), 1e-10);
    }
  }
  const Colligation real = colligation_from_blaschke_factor(Quaternion(0.5));
  for (double x : {-0.5, 0.1, 0.7}) EXPECT_NEAR(realize_eval(real, Quaternion(x))(0, 0).x0, (0.5 - x) / (1 - 0.5 * x), 1e-14);
}

TEST(Realization, ProductCascadeIsCoisometricAndContractive) {
  Rng rng(44);
  const ZeroSet z{Domain::ball, {{{0.2, 0.4, 0, 0}, 2}, {{-0.3, 0, 0.1, 0.5}, 1}}, {{{0.1, 0, 0, 0.6}, 1}}};
  const FactoredProduct b = build_product(z);
  const Colligation c = colligation_from_product(b);
  EXPECT_EQ(c.state_dim(), static_cast<std::size_t>(product_degree(b)));
  EXPECT_LT(coisometry_residual(c), 1e-10);
  EXPECT_GE(contraction_margin(c), -1e-10);
  for (int s = 0; s < 30; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE((realize_eval(c, p) - b(p)).norm(), 1e-10);
  }
}

TEST(Realization, BackwardShift) {
  // s0 + p s1 with N = 1
  const SliceRational lin(StarPoly::scalar({Quaternion{0.1, 0.2, 0, 0}, Quaternion{0, 0, 0.3, -0.1}}));
  const Colligation c1 = backward_shift_colligation(lin, 1);
  Rng rng(45);
  for (int s = 0; s < 10; ++s) {
    const Quaternion p = sample_ball(rng, 2.0);
    EXPECT_LE((realize_eval(c1, p) - eval_left(lin, p)).norm(), 1e-14);
  }
  // degree-5 polynomial reproduced exactly once N >= 5
  std::vector<Quaternion> co;
  for (int n = 0; n < 6; ++n) co.push_back(0.3 * sample_box(rng));
  const SliceRational poly(StarPoly::scalar(co));
  const Colligation c5 = backward_shift_colligation(poly, 5);
  for (int s = 0; s < 20; ++s) {
    const Quaternion p = sample_ball(rng, 1.5);
    EXPECT_LE(oracle::dist(realize_eval(c5, p)(0, 0), oracle::poly(co, p)), 1e-13);
  }
  // C f = f(0): C picks the first block of the state
  QMatrix f(c5.state_dim(), 1);
  for (std::size_t k = 0; k < f.rows(); ++k) f(k, 0) = co[k];
  EXPECT_LE(oracle::dist((c5.C * f)(0, 0), co[0]), 0.0);

  // B_a truncated at N = 12 on the real segment |x| <= 0.5
  const Quaternion a{0.2, 0.3, 0, -0.1};
  const FactoredProduct ba = build_product(ZeroSet{Domain::ball, {{a, 1}}, {}});
  const Colligation c12 = backward_shift_colligation(ba.rational(), 12);
  for (double x = -0.5; x <= 0.5; x += 0.05)
    EXPECT_LT((realize_eval(c12, Quaternion(x)) - ba(Quaternion(x))).norm(), 2.0 * std::pow(0.5, 13));
}

TEST(Realization, CascadeRealizesProduct) {
  const Quaternion a{0.3, 0.1, 0, 0.2}, b{-0.1, 0, 0.5, 0};
  const Colligation c = cascade(colligation_from_blaschke_factor(a), colligation_from_blaschke_factor(b));
  Rng rng(46);
  for (int s = 0; s < 20; ++s) {
    const Quaternion p = sample_ball(rng, 0.9);
    const FactoredProduct prod(Domain::ball, 1, {Factor{Factor::Type::point, a, std::nullopt, false},
                                                 Factor{Factor::Type::point, b, std::nullopt, false}});
    EXPECT_LE((realize_eval(c, p) - prod(p)).norm(), 1e-12);
  }
  EXPECT_LT(coisometry_residual(c), 1e-12);
}

TEST(Realization, SteinEquation) {
  const QMatrix p = solve_stein(QMatrix::scalar(2.0), QMatrix::scalar(1.0));
  EXPECT_NEAR(p(0, 0).x0, -1.0 / 3.0, 1e-14);
  EXPECT_EQ(solve_stein(QMatrix::scalar(Quaternion{0, 3, 0, 0}), QMatrix::scalar(0.0)).norm(), 0.0);

  Rng rng(47);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3;
    QMatrix a = random_matrix(rng, n, n);
    // shift the spectrum of chi(A) outside the closed unit disk
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(oracle::chi(a));
    double mn = 1e300;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) mn = std::min(mn, std::abs(es.eigenvalues()(k)));
    a *= 1.3 / mn;
    const QMatrix c = random_matrix(rng, 2, n);
    const QMatrix sol = solve_stein(a, c);
    EXPECT_LT(stein_residual(a, c, sol), 1e-9);
    EXPECT_LE((sol - oracle::stein_vectorized(a, c)).norm(), 1e-9 * std::max(1.0, sol.norm()));
    const HermitianSpectrum spec = herm_eigen_neg(sol);
    for (double ev : spec.eigenvalues) EXPECT_LE(ev, 1e-12 * std::max(1.0, spec.spectral_radius));
  }
  EXPECT_THROW(solve_stein(QMatrix::scalar(0.5), QMatrix::scalar(1.0)), PreconditionError);
}

TEST(Realization, SpectrumErrors) {
  const Colligation c = make(QMatrix::scalar(2.0), QMatrix::scalar(1.0), QMatrix::scalar(1.0), QMatrix::scalar(0.0));
  EXPECT_THROW(realize_eval(c, Quaternion(0.5)), SpectrumError);
  Colligation bad = c;
  bad.B = QMatrix(2, 1);
  EXPECT_THROW(bad.validate(), ShapeError);
}
