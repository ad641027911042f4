#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curved_mie/cli/config.hpp"

namespace curved_mie::cli {

enum class Suite { geometry, specfun, spectrum, wavefunction, algebra, limits };

inline constexpr Suite kAllSuites[] = {Suite::geometry, Suite::specfun,  Suite::spectrum,
                                       Suite::wavefunction, Suite::algebra, Suite::limits};

const char* to_string(Suite s);
std::vector<Suite> parse_suites(const std::string& csv);

enum class Status { pass, fail, info };

struct Check {
  std::string suite;
  std::string check;
  Status status = Status::info;
  double measured = 0.0;
  std::optional<double> tolerance;
};

struct VerifyReport {
  std::vector<Check> checks;
  /// Mode whose worst relative error over the arbitration grid is within
  /// verify_tol, and each mode's worst error. Filled by the spectrum suite.
  std::optional<SolvabilityMode> validated_mode;
  std::vector<std::pair<SolvabilityMode, double>> mode_errors;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Runs the suites concurrently (unless serial) and merges their checks in
/// suite order.
VerifyReport run_verify(const RunConfig& cfg, const std::vector<Suite>& suites,
                        bool serial = false);

nlohmann::json to_json(const VerifyReport& r);

/// Arbitration outcome and notes, for stderr.
std::string summary(const VerifyReport& r);

}  // namespace curved_mie::cli
