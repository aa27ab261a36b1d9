#pragma once

#include <stdexcept>
#include <string>

namespace lgmaps {

/// Coordinate chart whose domain was left.
enum class Chart
{
  /// dexp^-1 on SO(3)/SE(3): |x| < 2 pi.
  dexp_inverse,
  /// Cayley chart on SO(3)/SE(3): rotation angle != pi.
  cayley,
  /// Bernoulli series oracle: spectral radius <= 1.
  bernoulli_series,
};

/// Thrown when an argument lies outside the chart on which a map is defined.
class DomainError : public std::domain_error
{
public:
  DomainError(Chart chart, const std::string & what) : std::domain_error(what), chart_(chart) {}

  [[nodiscard]] Chart chart() const noexcept { return chart_; }

private:
  Chart chart_;
};

/// Thrown when an input fails a structural check (not skew, not orthonormal, ...).
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by reference implementations that fail to converge or hit a singular solve.
class OracleError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace lgmaps
