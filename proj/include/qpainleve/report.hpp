#pragma once

// Run configuration, report serialisation (JSON, CSV, aligned text) and
// comparison of two reports.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpainleve/record.hpp"
#include "qpainleve/suite.hpp"

namespace qpainleve {

enum class ReportFormat { Json, Csv, Text };

/// Everything a CLI run depends on. Point fields default to a generic
/// pole-free solution; verify uses them only when one was set explicitly.
struct RunConfig {
  std::complex<double> tau{0.0, 1.0};
  std::complex<double> u{0.23, 0.11};
  std::complex<double> v{0.41, 0.07};
  std::complex<double> m{2.0, 0.0};
  int n = 1;
  std::complex<double> k{0.0, 0.0};
  std::optional<double> tol;
  unsigned precision_bits = 53;
  std::uint64_t seed = 20240917;
  int grid = 10;
  std::string suite = "thm2";
  std::string output;  // empty for stdout
  ReportFormat format = ReportFormat::Text;

  /// Names of the point fields (tau, u, v, m, n, k) set by a file or flag.
  std::set<std::string> point_fields;

  /// Checks Im τ > 0, tol > 0 and the precision set; DomainError otherwise.
  void validate() const;
  /// The suite configuration: a single point when any point field was set.
  SuiteConfig suite_config() const;
};

/// "re,im" or a bare real. DomainError on anything else.
std::complex<double> parse_complex(const std::string& text);

ReportFormat parse_format(const std::string& text);
std::string to_string(ReportFormat f);

/// Sets one field by its RunConfig name. DomainError for an unknown key or a
/// malformed value.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);

/// Applies a flat key=value file. Blank lines and lines starting with '#'
/// are ignored. DomainError names the offending line.
void apply_config_file(RunConfig& cfg, std::istream& in);

/// (key, value) pairs describing the effective configuration, in a fixed
/// order. The output path and format are left out so that the same run
/// written twice produces the same bytes.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

void write_report(std::ostream& out, const RunConfig& cfg, const std::vector<ResidualRecord>& records);

/// Reads a JSON or CSV report. DomainError on malformed input.
std::vector<ResidualRecord> read_report(std::istream& in);

/// One record that appears in only one report, or whose pass flag, skip
/// state, tolerance or residual order of magnitude changed.
struct ReportChange {
  std::string key;
  std::string what;
};

std::vector<ReportChange> diff_reports(const std::vector<ResidualRecord>& before,
                                       const std::vector<ResidualRecord>& after);

}  // namespace qpainleve
