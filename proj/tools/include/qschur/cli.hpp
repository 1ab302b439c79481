#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qschur/factor_check.hpp"
#include "qschur/json_io.hpp"
#include "qschur/realization.hpp"

namespace qschur::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 3, kIo = 4 };

enum class Command { blaschke_build, negsq, dim_hb, realize, stein, kl_check, transport };
std::string to_string(Command c);
std::optional<Command> parse_command(const std::string& s);

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

struct FunctionSpec {
  enum class Type { product, quotient, rational, colligation } type = Type::product;
  std::optional<ZeroSet> zeros;  ///< product
  bool inverse = false;          ///< product: use the star-inverse
  std::optional<ZeroSet> b0;     ///< quotient
  std::optional<S0Spec> s0;      ///< quotient
  Domain domain = Domain::ball;  ///< rational
  std::optional<SliceRational> rational;
  std::optional<Colligation> colligation;
};

struct RunConfig {
  Command command = Command::kl_check;
  std::uint64_t seed = NegSquaresOptions{}.seed;
  NegSquaresOptions budget;
  KernelIdentityOptions identity;
  std::optional<std::string> output;
  std::optional<std::string> csv;

  std::optional<ZeroSet> zeros;           ///< blaschke-build, dim-hb
  std::optional<FunctionSpec> function;   ///< negsq, realize, transport
  std::optional<ZeroSet> b0;              ///< kl-check
  std::optional<S0Spec> s0;               ///< kl-check
  std::optional<int> expected_kappa;      ///< negsq, kl-check, transport
  std::optional<QMatrix> stein_a;         ///< stein
  std::optional<QMatrix> stein_c;         ///< stein
  TransportDirection direction = TransportDirection::halfspace_to_ball;
  double x0 = 1.0;
  int points = 0;            ///< dim-hb: 0 picks 3 deg + 4
  double cutoff = 1e-8;      ///< dim-hb rank cutoff
  int order = 8;             ///< realize: backward-shift truncation for rationals
  int samples = 30;          ///< realize: evaluation points
  double tolerance = 1e-10;  ///< realize and stein

  std::filesystem::path base_dir;  ///< directory of the config file
  Json resolved;                   ///< input with file payloads inlined
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> batch;
  std::optional<std::string> out;
};

/// Parses and validates a config. Throws SchemaError (with JSON-pointer paths) or IoError
/// when a referenced payload file cannot be read.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");

/// Applies command-line overrides, checking ranges. Throws SchemaError.
void apply_overrides(RunConfig& cfg, const Overrides& o);

/// Effective config after defaults and overrides, as embedded in reports.
Json effective_config(const RunConfig& cfg);

struct RunResult {
  int exit_code = kPass;
  Json report;
  std::string csv;  ///< empty when no table applies
};

/// Runs the pipeline. Library errors propagate.
RunResult dispatch(const RunConfig& cfg);

/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qschur::cli
