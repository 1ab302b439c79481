#include "qschur/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qschur/errors.hpp"

namespace qschur {

// ---------------------------------------------------------------- RealPoly

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

void RealPoly::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

RealPoly RealPoly::sphere_quadratic(const Quaternion& root) {
  return RealPoly({norm2(root), -2.0 * root.x0, 1.0});
}

double RealPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Quaternion RealPoly::operator()(const Quaternion& p) const {
  Quaternion acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + Quaternion{*it};
  return acc;
}

double RealPoly::magnitude_at(double radius) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * radius + std::abs(*it);
  return acc;
}

RealPoly RealPoly::operator*(const RealPoly& o) const {
  std::vector<double> out(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return RealPoly(std::move(out));
}

RealPoly RealPoly::operator+(const RealPoly& o) const {
  std::vector<double> out(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return RealPoly(std::move(out));
}

RealPoly RealPoly::operator-(const RealPoly& o) const { return *this + o * -1.0; }

RealPoly RealPoly::operator*(double s) const {
  std::vector<double> out = coeffs_;
  for (auto& c : out) c *= s;
  return RealPoly(std::move(out));
}

std::vector<std::complex<double>> RealPoly::roots() const {
  const int d = degree();
  if (d < 1) return {};
  const double lead = coeffs_.back();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeffs_[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericError("RealPoly::roots: eigen-solver failed");
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < d; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

// ---------------------------------------------------------------- StarPoly

StarPoly::StarPoly(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), coeffs_{QMatrix(rows, cols)} {}

StarPoly::StarPoly(std::vector<QMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ShapeError("StarPoly: at least one coefficient is required");
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  for (const auto& c : coeffs_)
    if (c.rows() != rows_ || c.cols() != cols_) throw ShapeError("StarPoly: coefficients differ in shape");
}

StarPoly StarPoly::scalar(const std::vector<Quaternion>& coeffs) {
  std::vector<QMatrix> m;
  m.reserve(std::max<std::size_t>(coeffs.size(), 1));
  for (const auto& q : coeffs) m.push_back(QMatrix::scalar(q));
  if (m.empty()) m.push_back(QMatrix::scalar(0.0));
  return StarPoly(std::move(m));
}

StarPoly StarPoly::from_real(const RealPoly& d, std::size_t n) {
  std::vector<QMatrix> m;
  for (double c : d.coeffs()) m.push_back(QMatrix::identity(n) * c);
  return StarPoly(std::move(m));
}

int StarPoly::degree() const {
  for (int n = static_cast<int>(coeffs_.size()) - 1; n >= 0; --n)
    if (coeffs_[static_cast<std::size_t>(n)].max_abs() != 0.0) return n;
  return -1;
}

QMatrix StarPoly::coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : QMatrix(rows_, cols_); }

Quaternion StarPoly::scalar_coeff(std::size_t n) const {
  if (!is_scalar()) throw ShapeError("scalar_coeff on a matrix polynomial");
  return n < coeffs_.size() ? coeffs_[n](0, 0) : Quaternion{0.0};
}

double StarPoly::coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.norm());
  return m;
}

double StarPoly::magnitude_at(double radius) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * radius + it->norm();
  return acc;
}

StarPoly StarPoly::operator+(const StarPoly& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("StarPoly +: shape mismatch");
  std::vector<QMatrix> out(std::max(coeffs_.size(), o.coeffs_.size()), QMatrix(rows_, cols_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return StarPoly(std::move(out));
}

StarPoly StarPoly::operator-(const StarPoly& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("StarPoly -: shape mismatch");
  std::vector<QMatrix> out(std::max(coeffs_.size(), o.coeffs_.size()), QMatrix(rows_, cols_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
  return StarPoly(std::move(out));
}

StarPoly StarPoly::left_mul(const QMatrix& c) const {
  std::vector<QMatrix> out;
  out.reserve(coeffs_.size());
  for (const auto& m : coeffs_) out.push_back(c * m);
  return StarPoly(std::move(out));
}

StarPoly StarPoly::right_mul(const QMatrix& c) const {
  std::vector<QMatrix> out;
  out.reserve(coeffs_.size());
  for (const auto& m : coeffs_) out.push_back(m * c);
  return StarPoly(std::move(out));
}

StarPoly StarPoly::right_mul(const Quaternion& q) const {
  std::vector<QMatrix> out;
  out.reserve(coeffs_.size());
  for (const auto& m : coeffs_) out.push_back(m * q);
  return StarPoly(std::move(out));
}

StarPoly StarPoly::operator*(const RealPoly& d) const {
  const auto& dc = d.coeffs();
  std::vector<QMatrix> out(coeffs_.size() + dc.size() - 1, QMatrix(rows_, cols_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < dc.size(); ++j)
      if (dc[j] != 0.0) out[i + j] += coeffs_[i] * dc[j];
  return StarPoly(std::move(out));
}

StarPoly StarPoly::trimmed(double tol) const {
  const double cut = tol * coeff_norm();
  std::vector<QMatrix> out = coeffs_;
  while (out.size() > 1 && out.back().norm() <= cut) out.pop_back();
  return StarPoly(std::move(out));
}

// ---------------------------------------------------------------- rationals

SliceRational operator+(const SliceRational& a, const SliceRational& b) {
  if (a.den.coeffs() == b.den.coeffs()) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

SliceRational operator-(const SliceRational& a, const SliceRational& b) {
  if (a.den.coeffs() == b.den.coeffs()) return {a.num - b.num, a.den};
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

StarPoly star_mul(const StarPoly& f, const StarPoly& g) {
  if (f.cols() != g.rows()) throw ShapeError("star_mul: inner dimensions do not match");
  const auto& fc = f.coeffs();
  const auto& gc = g.coeffs();
  std::vector<QMatrix> out(fc.size() + gc.size() - 1, QMatrix(f.rows(), g.cols()));
  for (std::size_t n = 0; n < fc.size(); ++n) {
    if (fc[n].max_abs() == 0.0) continue;
    for (std::size_t m = 0; m < gc.size(); ++m) out[n + m] += fc[n] * gc[m];
  }
  return StarPoly(std::move(out));
}

SliceRational star_mul(const SliceRational& f, const SliceRational& g) {
  return {star_mul(f.num, g.num), f.den * g.den};
}

ConjSym star_conj_sym(const StarPoly& f) {
  if (!f.is_scalar()) throw ShapeError("star_conj_sym: only scalar polynomials are supported");
  std::vector<Quaternion> c;
  for (std::size_t n = 0; n < f.coeffs().size(); ++n) c.push_back(conj(f.scalar_coeff(n)));
  StarPoly fc = StarPoly::scalar(c);
  StarPoly fs = star_mul(f, fc);
  return {std::move(fc), std::move(fs)};
}

RealPoly to_real_poly(const StarPoly& f, double tol) {
  if (!f.is_scalar()) throw ShapeError("to_real_poly: only scalar polynomials are supported");
  const double scale = f.coeff_norm();
  std::vector<double> out;
  for (std::size_t n = 0; n < f.coeffs().size(); ++n) {
    const Quaternion q = f.scalar_coeff(n);
    if (q.imag_abs() > tol * scale)
      throw NumericError("to_real_poly: coefficient " + std::to_string(n) + " is not real");
    out.push_back(q.x0);
  }
  return RealPoly(std::move(out));
}

QMatrix eval_left(const StarPoly& f, const Quaternion& p) {
  const auto& c = f.coeffs();
  QMatrix acc = c.back();
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = p * acc + c[n];
  return acc;
}

Quaternion eval_left_scalar(const StarPoly& f, const Quaternion& p) {
  if (!f.is_scalar()) throw ShapeError("eval_left_scalar on a matrix polynomial");
  const auto& c = f.coeffs();
  Quaternion acc = c.back()(0, 0);
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = p * acc + c[n](0, 0);
  return acc;
}

QMatrix eval_left(const SliceRational& f, const Quaternion& p) {
  const Quaternion d = f.den(p);
  const double scale = f.den.magnitude_at(modulus(p));
  if (!(modulus(d) > 1e-14 * scale)) {
    const SphereRep s = decompose(p);
    throw PoleError("evaluation on a pole sphere [" + std::to_string(s.x) + " + I " + std::to_string(s.y) + "]",
                    s.x, s.y);
  }
  return inverse(d) * eval_left(f.num, p);
}

SliceRational star_inv_scalar(const StarPoly& f) {
  if (!f.is_scalar()) throw ShapeError("star_inv_scalar: only scalar polynomials are supported");
  if (f.is_zero()) throw DomainError("star_inv_scalar: zero polynomial");
  ConjSym cs = star_conj_sym(f);
  return {std::move(cs.conj), to_real_poly(cs.sym)};
}

SliceRational star_inv_scalar(const SliceRational& f) {
  if (!f.num.is_scalar()) throw ShapeError("star_inv_scalar: only scalar rationals are supported");
  if (f.num.is_zero()) throw DomainError("star_inv_scalar: zero function");
  ConjSym cs = star_conj_sym(f.num);
  return {cs.conj * f.den, to_real_poly(cs.sym)};
}

namespace {

bool vanishes(const StarPoly& f, const Quaternion& p, double tol) {
  const double scale = std::max(f.magnitude_at(modulus(p)), 1e-300);
  return modulus(eval_left_scalar(f, p)) <= tol * scale;
}

// Division by a monic real quadratic; returns false if the remainder is not negligible.
bool divide_by_quadratic(const StarPoly& f, const RealPoly& quad, double tol, StarPoly& quotient) {
  const int d = f.degree();
  if (d < 2) return false;
  std::vector<Quaternion> rem;
  for (int n = 0; n <= d; ++n) rem.push_back(f.scalar_coeff(static_cast<std::size_t>(n)));
  const auto& qc = quad.coeffs();
  std::vector<Quaternion> quo(static_cast<std::size_t>(d - 1));
  for (int k = d; k >= 2; --k) {
    const Quaternion lead = rem[static_cast<std::size_t>(k)];
    quo[static_cast<std::size_t>(k - 2)] = lead;
    for (int j = 0; j <= 2; ++j) rem[static_cast<std::size_t>(k - 2 + j)] -= lead * qc[static_cast<std::size_t>(j)];
  }
  const double scale = f.coeff_norm();
  if (modulus(rem[0]) > tol * scale || modulus(rem[1]) > tol * scale) return false;
  quotient = StarPoly::scalar(quo);
  return true;
}

}  // namespace

StarPoly left_root_extract(const StarPoly& f, const Quaternion& a, double tol) {
  if (!f.is_scalar()) throw ShapeError("left_root_extract: only scalar polynomials are supported");
  const int d = f.degree();
  if (d < 1) throw NotARootError("left_root_extract: polynomial has no roots");
  if (!vanishes(f, a, tol)) throw NotARootError("left_root_extract: value at the given point is not zero");
  std::vector<Quaternion> g(static_cast<std::size_t>(d));
  g[static_cast<std::size_t>(d - 1)] = f.scalar_coeff(static_cast<std::size_t>(d));
  for (int k = d - 1; k >= 1; --k)
    g[static_cast<std::size_t>(k - 1)] = f.scalar_coeff(static_cast<std::size_t>(k)) + a * g[static_cast<std::size_t>(k)];
  return StarPoly::scalar(g);
}

ZeroMultiplicity zero_multiplicity(const StarPoly& f, const Quaternion& a, double tol) {
  if (!f.is_scalar()) throw ShapeError("zero_multiplicity: only scalar polynomials are supported");
  if (f.is_zero()) throw DomainError("zero_multiplicity: zero polynomial");

  if (!is_real(a)) {
    bool whole_sphere = true;
    for (const auto& axis : probe_axes())
      if (!vanishes(f, point_on_sphere(a, axis), tol)) {
        whole_sphere = false;
        break;
      }
    if (whole_sphere) {
      const RealPoly quad = RealPoly::sphere_quadratic(a);
      ZeroMultiplicity out{ZeroKind::spherical, 0};
      StarPoly g = f;
      StarPoly q;
      while (divide_by_quadratic(g, quad, tol, q)) {
        ++out.count;
        g = q;
      }
      if (out.count == 0) throw NumericError("zero_multiplicity: sphere vanishing without a quadratic factor");
      return out;
    }
  }

  if (!vanishes(f, a, tol)) throw NotARootError("zero_multiplicity: not a zero");

  ZeroMultiplicity out{ZeroKind::point, 0};
  StarPoly g = f;
  Quaternion root = a;
  const SphereRep sphere = decompose(a);
  for (;;) {
    g = left_root_extract(g, root, tol);
    ++out.count;
    if (g.degree() < 1) break;

    Quaternion candidate;
    if (!sphere.axis) {
      candidate = Quaternion{sphere.x};
    } else {
      // On [a], g(x + Jy) = u + J v with u, v independent of J; solve u + J v = 0.
      const Quaternion ii = sphere.axis->value();
      const Quaternion z = Quaternion{sphere.x} + ii * sphere.y;
      const Quaternion zb = Quaternion{sphere.x} - ii * sphere.y;
      const Quaternion gz = eval_left_scalar(g, z);
      const Quaternion gzb = eval_left_scalar(g, zb);
      const Quaternion u = (gz + gzb) * 0.5;
      const Quaternion v = -ii * (gz - gzb) * 0.5;
      const double scale = std::max(g.magnitude_at(modulus(a)), 1e-300);
      if (modulus(v) <= tol * scale) break;
      const Quaternion unit = -u * inverse(v);
      if (std::abs(unit.x0) > 1e-6 || std::abs(modulus(unit) - 1.0) > 1e-6) break;
      candidate = point_on_sphere(a, ImaginaryUnit::normalize(unit));
    }
    if (!vanishes(g, candidate, tol)) break;
    root = candidate;
  }
  return out;
}

StarPoly taylor_coeffs(const SliceRational& r, int n) {
  if (n < 0) throw DomainError("taylor_coeffs: negative truncation order");
  const auto& d = r.den.coeffs();
  double dmax = 0.0;
  for (double c : d) dmax = std::max(dmax, std::abs(c));
  if (!(std::abs(d[0]) > 1e-14 * dmax)) throw DomainError("taylor_coeffs: denominator vanishes at the origin");
  std::vector<QMatrix> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    QMatrix acc = r.num.coeff(static_cast<std::size_t>(k));
    for (int j = 1; j <= std::min<int>(k, static_cast<int>(d.size()) - 1); ++j)
      acc -= c[static_cast<std::size_t>(k - j)] * d[static_cast<std::size_t>(j)];
    c.push_back(acc * (1.0 / d[0]));
  }
  return StarPoly(std::move(c));
}

std::vector<QMatrix> cauchy_product(const std::vector<QMatrix>& f, const std::vector<QMatrix>& g, int n) {
  if (f.empty() || g.empty()) throw ShapeError("cauchy_product: empty series");
  if (f.front().cols() != g.front().rows()) throw ShapeError("cauchy_product: inner dimensions do not match");
  std::vector<QMatrix> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    QMatrix acc(f.front().rows(), g.front().cols());
    for (int i = 0; i <= k; ++i) {
      const auto fi = static_cast<std::size_t>(i);
      const auto gi = static_cast<std::size_t>(k - i);
      if (fi < f.size() && gi < g.size()) acc += f[fi] * g[gi];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Quaternion extend_from_slice(const ScalarSliceFunction& h, const ImaginaryUnit& i, const Quaternion& q) {
  const SphereRep rep = decompose(q);
  if (!rep.axis) return h(Quaternion{rep.x});
  const Quaternion ii = i.value();
  const Quaternion hz = h(Quaternion{rep.x} + ii * rep.y);
  const Quaternion hzb = h(Quaternion{rep.x} - ii * rep.y);
  return (hz + hzb + rep.axis->value() * ii * (hzb - hz)) * 0.5;
}

QMatrix extend_from_slice(const SliceFunction& h, const ImaginaryUnit& i, const Quaternion& q) {
  const SphereRep rep = decompose(q);
  if (!rep.axis) return h(Quaternion{rep.x});
  const Quaternion ii = i.value();
  const QMatrix hz = h(Quaternion{rep.x} + ii * rep.y);
  const QMatrix hzb = h(Quaternion{rep.x} - ii * rep.y);
  return (hz + hzb + (rep.axis->value() * ii) * (hzb - hz)) * 0.5;
}

QMatrix star_eval(const SliceFunction& f, const SliceFunction& g, const Quaternion& p) {
  const SphereRep rep = decompose(p);
  if (!rep.axis) return f(p) * g(p);
  const Quaternion jj = rep.axis->value();
  const Quaternion pb = Quaternion{rep.x} - jj * rep.y;
  const QMatrix fz = f(p);
  const QMatrix fzb = f(pb);
  const QMatrix gz = g(p);
  const QMatrix gzb = g(pb);
  const QMatrix fa = (fz + fzb) * 0.5;
  const QMatrix fb = (-jj) * (fz - fzb) * 0.5;
  const QMatrix ga = (gz + gzb) * 0.5;
  const QMatrix gb = (-jj) * (gz - gzb) * 0.5;
  return fa * ga - fb * gb + jj * (fa * gb + fb * ga);
}

Quaternion MoebiusMap::operator()(const Quaternion& z) const {
  const Quaternion den = z * c + Quaternion{d};
  if (norm2(den) == 0.0) {
    const SphereRep s = decompose(z);
    throw PoleError("Moebius map evaluated at its pole", s.x, s.y);
  }
  return (z * a + Quaternion{b}) * qschur::inverse(den);
}

SliceRational compose_moebius(const SliceRational& r, const MoebiusMap& psi) {
  const int k = std::max(r.num.degree(), r.den.degree());
  const RealPoly top({psi.b, psi.a});
  const RealPoly bottom({psi.d, psi.c});
  std::vector<RealPoly> top_pow{RealPoly::one()};
  std::vector<RealPoly> bottom_pow{RealPoly::one()};
  for (int n = 1; n <= std::max(k, 0); ++n) {
    top_pow.push_back(top_pow.back() * top);
    bottom_pow.push_back(bottom_pow.back() * bottom);
  }
  StarPoly num(r.rows(), r.cols());
  RealPoly den({0.0});
  for (int n = 0; n <= std::max(k, 0); ++n) {
    const RealPoly basis = top_pow[static_cast<std::size_t>(n)] * bottom_pow[static_cast<std::size_t>(k - n)];
    num = num + StarPoly::constant(r.num.coeff(static_cast<std::size_t>(n))) * basis;
    const auto& dc = r.den.coeffs();
    if (static_cast<std::size_t>(n) < dc.size()) den = den + basis * dc[static_cast<std::size_t>(n)];
  }
  return {num, den};
}

}  // namespace qschur
