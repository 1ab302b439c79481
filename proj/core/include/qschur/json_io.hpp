#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qschur/blaschke.hpp"
#include "qschur/errors.hpp"
#include "qschur/factor_check.hpp"
#include "qschur/kernels.hpp"
#include "qschur/qmatrix.hpp"
#include "qschur/realization.hpp"

namespace qschur {

using Json = nlohmann::ordered_json;

/// Deterministic text form: two-space indentation, scalar arrays on one line,
/// doubles printed with 17 significant digits.
std::string dump_json(const Json& j);

/// "/a/b" + key with RFC 6901 escaping.
std::string json_pointer_append(const std::string& base, const std::string& key);
std::string json_pointer_append(const std::string& base, std::size_t index);

struct Violation {
  std::string path;
  std::string message;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Violation> v);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Strict reader that records violations with JSON-pointer paths instead of throwing.
class JsonReader {
 public:
  void add(const std::string& path, const std::string& message) { violations_.push_back({path, message}); }
  const std::vector<Violation>& violations() const { return violations_; }
  bool ok() const { return violations_.empty(); }
  /// Throws SchemaError when any violation was recorded.
  void raise() const;

  /// Records unknown keys and missing required keys. Returns false if j is not an object.
  bool check_object(const Json& j, const std::string& path, const std::vector<std::string>& required,
                    const std::vector<std::string>& optional);

  std::optional<double> number(const Json& j, const std::string& path);
  std::optional<long long> integer(const Json& j, const std::string& path);
  std::optional<bool> boolean(const Json& j, const std::string& path);
  std::optional<std::string> string(const Json& j, const std::string& path);
  std::optional<Quaternion> quaternion(const Json& j, const std::string& path);
  std::optional<QMatrix> qmatrix(const Json& j, const std::string& path);
  std::optional<StarPoly> star_poly(const Json& j, const std::string& path);
  std::optional<SliceRational> slice_rational(const Json& j, const std::string& path);
  std::optional<Domain> domain(const Json& j, const std::string& path);
  std::optional<ZeroSet> zero_set(const Json& j, const std::string& path);
  std::optional<Colligation> colligation(const Json& j, const std::string& path);

 private:
  std::vector<Violation> violations_;
};

Json to_json(const Quaternion& q);
Json to_json(const QMatrix& m);
Json to_json(const ZeroSet& z);
Json to_json(const StarPoly& p);
Json to_json(const SliceRational& r);
Json to_json(const FactoredProduct& b);
Json to_json(const Colligation& c);
Json to_json(const NegSquaresReport& r);
Json to_json(const DimHBReport& r);
Json to_json(const KernelIdentityReport& r);
Json to_json(const NegSquaresOptions& o);
Json to_json(const KreinLangerReport& r);

}  // namespace qschur
