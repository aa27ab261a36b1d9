#pragma once

/**
 * @file verify.hpp
 * @brief Seeded property batteries that compare every closed form against an
 * independent oracle or identity and report worst-case residuals.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace lgmaps {

/// Inputs of one check evaluation; so3 checks use the angular block of each screw.
struct CheckInputs
{
  std::array<Vec6<double>, 4> v{Vec6<double>::Zero(), Vec6<double>::Zero(), Vec6<double>::Zero(), Vec6<double>::Zero()};
};

struct CheckResult
{
  std::string id;
  std::string suite;
  /// The relation being checked, in plain notation.
  std::string relation;
  double tolerance    = 0.0;
  double max_residual = 0.0;
  int samples         = 0;
  /// Inputs that produced max_residual.
  CheckInputs worst;
  /// First exception message if an evaluation threw; the check then fails.
  std::optional<std::string> error;

  [[nodiscard]] bool passed() const { return !error && max_residual <= tolerance; }
};

struct VerifyOptions
{
  std::string suite = "all";
  int n             = 100;
  std::uint64_t seed = 42;
  /// Replace the random draws by fixed inputs (first and second screw); n is then ignored.
  std::optional<Vec6<double>> x;
  std::optional<Vec6<double>> y;
};

struct VerifyReport
{
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_passed() const;
  /// Index of the failing check with the largest residual-to-tolerance ratio.
  [[nodiscard]] std::optional<std::size_t> worst_failure() const;
};

/// Suite names accepted by run_verify.
[[nodiscard]] const std::vector<std::string> & verify_suites();

/// Throws InvalidInput for an unknown suite or n < 1.
[[nodiscard]] VerifyReport run_verify(const VerifyOptions & opt);

}  // namespace lgmaps
