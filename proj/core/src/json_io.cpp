#include "qschur/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qschur {

namespace {

void write_double(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_scalar(e);
      // rows of scalars (quaternions) also stay on one line
      bool nested_flat = !flat;
      for (const auto& e : j) {
        if (!e.is_array() || e.size() > 4) {
          nested_flat = false;
          break;
        }
        for (const auto& x : e) nested_flat = nested_flat && is_scalar(x);
      }
      if (flat || nested_flat) {
        os << "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) os << ", ";
          first = false;
          write(os, e, indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        write(os, e, indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      write_double(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string join_violations(const std::vector<Violation>& v) {
  std::string s = "schema violation";
  for (const auto& x : v) s += "\n  " + (x.path.empty() ? std::string("/") : x.path) + ": " + x.message;
  return s;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

std::string json_pointer_append(const std::string& base, const std::string& key) {
  std::string out = base + "/";
  for (char ch : key) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

std::string json_pointer_append(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

SchemaError::SchemaError(std::vector<Violation> v) : Error(join_violations(v)), violations_(std::move(v)) {}

void JsonReader::raise() const {
  if (!violations_.empty()) throw SchemaError(violations_);
}

bool JsonReader::check_object(const Json& j, const std::string& path, const std::vector<std::string>& required,
                              const std::vector<std::string>& optional) {
  if (!j.is_object()) {
    add(path, "expected an object");
    return false;
  }
  for (const auto& r : required)
    if (!j.contains(r)) add(json_pointer_append(path, r), "missing required field");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    bool known = false;
    for (const auto& r : required) known = known || r == k;
    for (const auto& o : optional) known = known || o == k;
    if (!known) add(json_pointer_append(path, k), "unknown field");
  }
  return true;
}

std::optional<double> JsonReader::number(const Json& j, const std::string& path) {
  if (!j.is_number()) {
    add(path, "expected a number");
    return std::nullopt;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    add(path, "number is not finite");
    return std::nullopt;
  }
  return v;
}

std::optional<long long> JsonReader::integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9e15) return static_cast<long long>(v);
  }
  add(path, "expected an integer");
  return std::nullopt;
}

std::optional<bool> JsonReader::boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) {
    add(path, "expected true or false");
    return std::nullopt;
  }
  return j.get<bool>();
}

std::optional<std::string> JsonReader::string(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    add(path, "expected a string");
    return std::nullopt;
  }
  return j.get<std::string>();
}

std::optional<Quaternion> JsonReader::quaternion(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) {
    add(path, "expected a quaternion [x0, x1, x2, x3]");
    return std::nullopt;
  }
  double x[4];
  bool good = true;
  for (std::size_t i = 0; i < 4; ++i) {
    auto v = number(j[i], json_pointer_append(path, i));
    good = good && v.has_value();
    x[i] = v.value_or(0.0);
  }
  if (!good) return std::nullopt;
  return Quaternion{x[0], x[1], x[2], x[3]};
}

std::optional<QMatrix> JsonReader::qmatrix(const Json& j, const std::string& path) {
  const std::size_t before = violations_.size();
  if (!check_object(j, path, {"rows", "cols", "entries"}, {})) return std::nullopt;
  if (violations_.size() != before) return std::nullopt;
  auto rows = integer(j["rows"], json_pointer_append(path, "rows"));
  auto cols = integer(j["cols"], json_pointer_append(path, "cols"));
  if (rows && (*rows < 1 || *rows > 4096)) add(json_pointer_append(path, "rows"), "rows must be in 1..4096");
  if (cols && (*cols < 1 || *cols > 4096)) add(json_pointer_append(path, "cols"), "cols must be in 1..4096");
  if (violations_.size() != before) return std::nullopt;
  const auto r = static_cast<std::size_t>(*rows);
  const auto c = static_cast<std::size_t>(*cols);
  const auto ep = json_pointer_append(path, "entries");
  const Json& e = j["entries"];
  if (!e.is_array() || e.size() != r * c) {
    add(ep, "expected " + std::to_string(r * c) + " quaternions in row-major order");
    return std::nullopt;
  }
  QMatrix m(r, c);
  for (std::size_t k = 0; k < r * c; ++k) {
    auto q = quaternion(e[k], json_pointer_append(ep, k));
    if (q) m(k / c, k % c) = *q;
  }
  if (violations_.size() != before) return std::nullopt;
  return m;
}

std::optional<StarPoly> JsonReader::star_poly(const Json& j, const std::string& path) {
  const std::size_t before = violations_.size();
  if (!check_object(j, path, {"shape", "coeffs"}, {})) return std::nullopt;
  if (violations_.size() != before) return std::nullopt;
  const auto sp = json_pointer_append(path, "shape");
  const Json& sh = j["shape"];
  std::size_t r = 0, c = 0;
  if (!sh.is_array() || sh.size() != 2) {
    add(sp, "expected [rows, cols]");
  } else {
    auto a = integer(sh[0], json_pointer_append(sp, 0));
    auto b = integer(sh[1], json_pointer_append(sp, 1));
    if (a && b && *a >= 1 && *b >= 1) {
      r = static_cast<std::size_t>(*a);
      c = static_cast<std::size_t>(*b);
    } else if (a && b) {
      add(sp, "shape entries must be positive");
    }
  }
  const auto cp = json_pointer_append(path, "coeffs");
  if (!j["coeffs"].is_array() || j["coeffs"].empty()) {
    add(cp, "expected a non-empty array of QMatrix");
    return std::nullopt;
  }
  if (violations_.size() != before) return std::nullopt;
  std::vector<QMatrix> coeffs;
  for (std::size_t k = 0; k < j["coeffs"].size(); ++k) {
    const auto kp = json_pointer_append(cp, k);
    auto m = qmatrix(j["coeffs"][k], kp);
    if (!m) continue;
    if (m->rows() != r || m->cols() != c) {
      add(kp, "coefficient shape differs from /shape");
      continue;
    }
    coeffs.push_back(std::move(*m));
  }
  if (violations_.size() != before) return std::nullopt;
  return StarPoly(std::move(coeffs));
}

std::optional<SliceRational> JsonReader::slice_rational(const Json& j, const std::string& path) {
  const std::size_t before = violations_.size();
  if (!check_object(j, path, {"num"}, {"den"})) return std::nullopt;
  auto num = j.contains("num") ? star_poly(j["num"], json_pointer_append(path, "num")) : std::nullopt;
  std::vector<double> den{1.0};
  if (j.contains("den")) {
    const auto dp = json_pointer_append(path, "den");
    auto d = star_poly(j["den"], dp);
    if (d) {
      if (d->rows() != 1 || d->cols() != 1) {
        add(dp, "denominator must be scalar (shape [1, 1])");
      } else {
        den.clear();
        for (std::size_t k = 0; k < d->coeffs().size(); ++k) {
          const Quaternion& q = d->coeffs()[k](0, 0);
          if (q.imag_abs() != 0.0)
            add(json_pointer_append(json_pointer_append(dp, "coeffs"), k), "denominator coefficients must be real");
          den.push_back(q.x0);
        }
      }
    }
  }
  if (violations_.size() != before || !num) return std::nullopt;
  bool zero = true;
  for (double d : den) zero = zero && d == 0.0;
  if (zero) {
    add(json_pointer_append(path, "den"), "denominator is identically zero");
    return std::nullopt;
  }
  return SliceRational(std::move(*num), RealPoly(den));
}

std::optional<Domain> JsonReader::domain(const Json& j, const std::string& path) {
  auto s = string(j, path);
  if (!s) return std::nullopt;
  if (*s == "ball") return Domain::ball;
  if (*s == "halfspace") return Domain::halfspace;
  add(path, "domain must be \"ball\" or \"halfspace\"");
  return std::nullopt;
}

std::optional<ZeroSet> JsonReader::zero_set(const Json& j, const std::string& path) {
  const std::size_t before = violations_.size();
  if (!check_object(j, path, {"domain"}, {"points", "spheres"})) return std::nullopt;
  ZeroSet z;
  if (j.contains("domain")) z.domain = domain(j["domain"], json_pointer_append(path, "domain")).value_or(Domain::ball);

  auto in_domain = [&](const Quaternion& a, const std::string& p) {
    if (z.domain == Domain::ball && !(modulus(a) < 1.0)) add(p, "zero must satisfy |a| < 1");
    if (z.domain == Domain::halfspace && !(a.x0 > 0.0)) add(p, "zero must satisfy Re(a) > 0");
  };

  if (j.contains("points")) {
    const auto pp = json_pointer_append(path, "points");
    if (!j["points"].is_array()) {
      add(pp, "expected an array");
    } else {
      for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const auto ip = json_pointer_append(pp, i);
        const Json& e = j["points"][i];
        if (!check_object(e, ip, {"a"}, {"n"})) continue;
        ZeroPoint zp;
        if (e.contains("a")) {
          auto a = quaternion(e["a"], json_pointer_append(ip, "a"));
          if (a) {
            zp.a = *a;
            in_domain(*a, json_pointer_append(ip, "a"));
          }
        }
        if (e.contains("n")) {
          auto n = integer(e["n"], json_pointer_append(ip, "n"));
          if (n && (*n < 1 || *n > 64))
            add(json_pointer_append(ip, "n"), "multiplicity must be in 1..64");
          else if (n)
            zp.n = static_cast<int>(*n);
        }
        for (std::size_t k = 0; k < z.points.size(); ++k)
          if (modulus(z.points[k].a - zp.a) < 1e-12)
            add(json_pointer_append(ip, "a"),
                "coincides with /points/" + std::to_string(k) + "; use the multiplicity instead");
        z.points.push_back(zp);
      }
    }
  }
  if (j.contains("spheres")) {
    const auto sp = json_pointer_append(path, "spheres");
    if (!j["spheres"].is_array()) {
      add(sp, "expected an array");
    } else {
      for (std::size_t i = 0; i < j["spheres"].size(); ++i) {
        const auto ip = json_pointer_append(sp, i);
        const Json& e = j["spheres"][i];
        if (!check_object(e, ip, {"c"}, {"m"})) continue;
        ZeroSphere zs;
        if (e.contains("c")) {
          auto c = quaternion(e["c"], json_pointer_append(ip, "c"));
          if (c) {
            zs.c = *c;
            in_domain(*c, json_pointer_append(ip, "c"));
            if (c->imag_abs() < 1e-12) add(json_pointer_append(ip, "c"), "sphere representative must be non-real");
          }
        }
        if (e.contains("m")) {
          auto m = integer(e["m"], json_pointer_append(ip, "m"));
          if (m && (*m < 1 || *m > 64))
            add(json_pointer_append(ip, "m"), "multiplicity must be in 1..64");
          else if (m)
            zs.m = static_cast<int>(*m);
        }
        for (std::size_t k = 0; k < z.spheres.size(); ++k)
          if (same_sphere(z.spheres[k].c, zs.c, 1e-12))
            add(json_pointer_append(ip, "c"),
                "same sphere as /spheres/" + std::to_string(k) + "; use the multiplicity instead");
        z.spheres.push_back(zs);
      }
    }
  }
  if (violations_.size() != before) return std::nullopt;
  try {
    validate(z);
  } catch (const Error& e) {
    add(path, e.what());
    return std::nullopt;
  }
  return z;
}

std::optional<Colligation> JsonReader::colligation(const Json& j, const std::string& path) {
  const std::size_t before = violations_.size();
  if (!check_object(j, path, {"A", "B", "C", "D"}, {"J1", "J2", "domain", "x0"})) return std::nullopt;
  Colligation c;
  auto mat = [&](const char* key) {
    if (!j.contains(key)) return QMatrix();
    return qmatrix(j[key], json_pointer_append(path, key)).value_or(QMatrix());
  };
  c.A = mat("A");
  c.B = mat("B");
  c.C = mat("C");
  c.D = mat("D");
  if (j.contains("domain")) c.domain = domain(j["domain"], json_pointer_append(path, "domain")).value_or(Domain::ball);
  if (j.contains("x0")) {
    auto x0 = number(j["x0"], json_pointer_append(path, "x0"));
    if (x0 && !(*x0 > 0.0)) add(json_pointer_append(path, "x0"), "x0 must be positive");
    c.x0 = x0.value_or(1.0);
  }
  auto sig = [&](const char* key, std::size_t n) -> SignatureMatrix {
    if (!j.contains(key)) return SignatureMatrix::identity(n);
    auto m = qmatrix(j[key], json_pointer_append(path, key));
    if (!m) return SignatureMatrix::identity(n);
    try {
      return SignatureMatrix(*m);
    } catch (const Error& e) {
      add(json_pointer_append(path, key), e.what());
      return SignatureMatrix::identity(n);
    }
  };
  if (violations_.size() != before) return std::nullopt;
  c.J1 = sig("J1", c.D.cols());
  c.J2 = sig("J2", c.D.rows());
  if (violations_.size() != before) return std::nullopt;
  try {
    c.validate();
  } catch (const Error& e) {
    add(path, e.what());
    return std::nullopt;
  }
  return c;
}

Json to_json(const Quaternion& q) { return Json::array({q.x0, q.x1, q.x2, q.x3}); }

Json to_json(const QMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e.push_back(to_json(m(r, c)));
  j["entries"] = std::move(e);
  return j;
}

Json to_json(const StarPoly& p) {
  Json j;
  j["shape"] = Json::array({p.rows(), p.cols()});
  Json cs = Json::array();
  for (const auto& c : p.coeffs()) cs.push_back(to_json(c));
  j["coeffs"] = std::move(cs);
  return j;
}

Json to_json(const ZeroSet& z) {
  Json j;
  j["domain"] = to_string(z.domain);
  Json pts = Json::array();
  for (const auto& p : z.points) pts.push_back(Json{{"a", to_json(p.a)}, {"n", p.n}});
  Json sph = Json::array();
  for (const auto& s : z.spheres) sph.push_back(Json{{"c", to_json(s.c)}, {"m", s.m}});
  j["points"] = std::move(pts);
  j["spheres"] = std::move(sph);
  return j;
}

Json to_json(const SliceRational& r) {
  std::vector<Quaternion> den(r.den.coeffs().begin(), r.den.coeffs().end());
  Json j;
  j["num"] = to_json(r.num);
  j["den"] = to_json(StarPoly::scalar(den));
  return j;
}

Json to_json(const FactoredProduct& b) {
  Json j;
  j["domain"] = to_string(b.domain());
  j["dim"] = b.dim();
  j["degree"] = product_degree(b);
  Json fs = Json::array();
  for (const auto& f : b.factors()) {
    Json e;
    switch (f.type) {
      case Factor::Type::point:
        e["type"] = "point";
        break;
      case Factor::Type::sphere:
        e["type"] = "sphere";
        break;
      case Factor::Type::potapov:
        e["type"] = "potapov";
        break;
    }
    e["a"] = to_json(f.a);
    if (f.origin_inverse) e["origin_inverse"] = true;
    if (f.potapov) {
      e["kind"] = f.potapov->kind;
      if (f.potapov->kind == 3) e["k"] = f.potapov->k;
    }
    fs.push_back(std::move(e));
  }
  j["factors"] = std::move(fs);
  j["rational"] = to_json(b.rational());
  return j;
}

Json to_json(const Colligation& c) {
  Json j;
  j["domain"] = to_string(c.domain);
  if (c.domain == Domain::halfspace) j["x0"] = c.x0;
  j["A"] = to_json(c.A);
  j["B"] = to_json(c.B);
  j["C"] = to_json(c.C);
  j["D"] = to_json(c.D);
  j["J1"] = to_json(c.J1.matrix());
  j["J2"] = to_json(c.J2.matrix());
  return j;
}

Json to_json(const NegSquaresOptions& o) {
  Json j;
  j["trials"] = o.trials;
  j["batch"] = o.batch;
  j["seed"] = o.seed;
  j["radius"] = o.radius;
  j["cutoff"] = o.cutoff;
  j["threads"] = o.threads;
  j["cayley_x0"] = o.cayley_x0;
  return j;
}

Json to_json(const NegSquaresReport& r) {
  Json j;
  j["kappa_hat"] = r.kappa_hat;
  j["trials"] = r.trials;
  j["batch"] = r.batch;
  j["seed"] = r.seed;
  j["cutoff"] = r.cutoff;
  j["per_trial"] = r.per_trial;
  Json w;
  w["trial"] = r.witness.trial;
  Json pts = Json::array();
  for (const auto& p : r.witness.points) pts.push_back(to_json(p));
  w["points"] = std::move(pts);
  Json vecs = Json::array();
  for (const auto& v : r.witness.vectors) vecs.push_back(to_json(v));
  w["vectors"] = std::move(vecs);
  w["eigenvalues"] = r.witness.eigenvalues;
  j["witness"] = std::move(w);
  return j;
}

Json to_json(const DimHBReport& r) {
  Json j;
  j["rank"] = r.rank;
  j["points"] = r.points;
  j["gap"] = r.gap;
  j["eigenvalues"] = r.eigenvalues;
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

Json to_json(const KernelIdentityReport& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["order"] = r.order;
  j["shift_x0"] = r.x0;
  j["radius"] = r.radius;
  j["coeff_deviation"] = r.coeff_deviation;
  j["hermitian_residual"] = r.hermitian_residual;
  j["min_gram_eigenvalue"] = r.min_gram_eigenvalue;
  j["tail_estimate"] = r.tail_estimate;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

Json to_json(const KreinLangerReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["kappa_hat"] = r.kappa_hat;
  j["deg_B0"] = r.deg_b0;
  j["expected_kappa"] = r.expected_kappa;
  j["identity_residual"] = r.identity.coeff_deviation;
  j["min_gram_eig"] = r.identity.min_gram_eigenvalue;
  if (!r.message.empty()) j["message"] = r.message;
  j["budget"] = to_json(r.budget);
  j["identity"] = to_json(r.identity);
  j["negsq"] = to_json(r.negsq);
  return j;
}

}  // namespace qschur
