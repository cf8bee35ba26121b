#pragma once

// Named verification suites over a deterministic parameter grid.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpainleve/record.hpp"

namespace qpainleve {

/// One solution parameter point, kept in double so grids are exact to print.
struct GridPoint {
  std::complex<double> tau;
  std::complex<double> u;
  std::complex<double> v;
  std::complex<double> m;
  int n = 0;
  std::complex<double> k;
};

struct SuiteConfig {
  /// Overrides every per-check tolerance when set.
  std::optional<double> tol;
  /// Minimum working precision. Determinant checks raise it per grid point
  /// when the measured cancellation would leave fewer than kGuardBits.
  unsigned precision_bits = 53;
  std::uint64_t seed = 20240917;
  /// Seeded (u, v) perturbations added to the base pair; random points for "weyl".
  int grid = 10;
  /// Replaces the default grid when set.
  std::optional<GridPoint> point;
};

/// Correct bits the escalation keeps after cancellation.
inline constexpr unsigned kGuardBits = 40;
/// Escalation ceiling.
inline constexpr unsigned kMaxBits = 1024;

/// τ ∈ {i, 1/3+i}; (u, v) = (0.23+0.11i, 0.41+0.07i) plus cfg.grid perturbations;
/// m ∈ {1.3, 2, 3.7}; k ∈ {-1, 0, 1, 0.4}; n ∈ {0, 1, 2, 3} innermost. Just cfg.point when set.
std::vector<GridPoint> suite_grid(const SuiteConfig& cfg);

const std::vector<std::string>& suite_names();

struct SuiteSummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int warned = 0;
  int truncated = 0;  // skipped because a series hit its index cap
  double max_residual = 0.0;  // over non-skipped records
};

SuiteSummary summarize(const std::vector<ResidualRecord>& records);

/// Runs a suite; records come back in (equation id, grid index) order.
/// Unknown names raise DomainError.
std::vector<ResidualRecord> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace qpainleve
