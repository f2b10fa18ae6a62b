#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phaseop/builder.hpp"
#include "phaseop/verifier.hpp"

namespace phaseop::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kConfigError = 2,
  kRangeError = 3,
  kIoError = 4,
  kInternalError = 5,
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  unsigned p = 20;
  std::size_t dim = 40;
  std::optional<std::size_t> pad;  // auto when empty
  cplx z0 = 1.0;
  Variant variant = Variant::full;
  mp::Bits precision_bits = Precision::kDefaultBits;
  double radius = 1.0;
  std::optional<std::size_t> quad_nodes;
  std::vector<cplx> alphas{1.0, 2.0, {1.0, 1.0}};
  std::vector<double> phis;  // empty: verifier default grid
  std::vector<unsigned> p_grid{5, 10, 20, 40, 80};
  std::map<std::string, double> tolerances;
  std::filesystem::path output_dir = ".";
  // Forced h for the star expansion and explicit f-of-a coefficients.
  std::optional<double> h;
  std::vector<cplx> coeffs;
};

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config);

/// Reads a config object; unknown keys and mistyped values are rejected.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

CheckContext check_context(const RunConfig& config);
SuiteConfig suite_config(const RunConfig& config, Profile profile);

// Each command writes into config.output_dir and returns the written path.
std::filesystem::path cmd_ml_coeffs(const RunConfig& config, std::ostream& log);
std::filesystem::path cmd_build(const RunConfig& config, const std::string& target, std::ostream& log);
std::filesystem::path cmd_verify(const RunConfig& config, Profile profile, std::ostream& log, bool& all_passed);
std::filesystem::path cmd_converge(const RunConfig& config, std::ostream& log);

std::string ml_coeffs_document(const RunConfig& config);
std::string converge_csv(const RunConfig& config);

/// Parses argv, dispatches, maps errors to ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phaseop::cli
