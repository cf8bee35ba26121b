#pragma once

#include <cmath>
#include <string>

#include "qpainleve/scalar.hpp"

namespace qpainleve {

/// The parameter point an identity was checked at. Unused fields stay zero.
struct RecordParams {
  double tau_re = 0, tau_im = 0;
  double u_re = 0, u_im = 0;
  double v_re = 0, v_im = 0;
  double m_re = 0, m_im = 0;
  int n = 0;
  double k_re = 0, k_im = 0;
  int a = 0, b = 0, c = 0;

  template <class R>
  static double re(const Complex<R>& z) { return to_double(z.re()); }
  template <class R>
  static double im(const Complex<R>& z) { return to_double(z.im()); }
};

/// One identity check.
///
/// Skipped records never count as failures. A record that documents a known
/// discrepancy (a misprinted formula evaluated for evidence) is skipped with a
/// reason starting "WARN" and still carries its residual.
struct ResidualRecord {
  std::string suite;
  std::string equation;
  RecordParams params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string reason;

  bool failed() const { return !skipped && !pass; }
};

inline ResidualRecord make_record(std::string suite, std::string equation, const RecordParams& params,
                                  double residual, double tolerance) {
  ResidualRecord r{std::move(suite), std::move(equation), params, residual, tolerance, false, false, {}};
  r.pass = std::isfinite(residual) && residual < tolerance;
  return r;
}

inline ResidualRecord skip_record(std::string suite, std::string equation, const RecordParams& params,
                                  double tolerance, std::string reason) {
  return {std::move(suite), std::move(equation), params, 0.0, tolerance, false, true, std::move(reason)};
}

/// Evidence record for a formula expected not to hold.
inline ResidualRecord warn_record(std::string suite, std::string equation, const RecordParams& params,
                                  double residual, double tolerance, const std::string& note) {
  ResidualRecord r = make_record(std::move(suite), std::move(equation), params, residual, tolerance);
  r.skipped = true;
  r.reason = "WARN: " + note + (r.pass ? " (unexpectedly within tolerance)" : "");
  return r;
}

}  // namespace qpainleve
