#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qpainleve/scalar.hpp"

namespace qpainleve {

/// Truncation and pole-guard settings shared by every series evaluation.
struct SeriesPolicy {
  /// Terms below trunc_tol times the largest term seen count as negligible.
  double trunc_tol = 1e-24;
  /// Hard cap on |summation index|; must be at least 8.
  int max_index = 128;
  /// Pole guard in the |exp(2πi·) - 1| metric.
  double lattice_eps = 1e-6;

  /// Default policy for a precision: the double default, tightened to the
  /// working precision in extended mode.
  static SeriesPolicy for_precision(unsigned bits);
};

/// Truncation certificate accumulated over one or more series.
struct SeriesStats {
  long terms = 0;
  double tail_bound = 0.0;

  void merge(const SeriesStats& o) {
    terms += o.terms;
    tail_bound = std::max(tail_bound, o.tail_bound);
  }
};

/// Modular parameter τ with its cached nome q = e^{πiτ}.
template <class R>
class QContext {
 public:
  explicit QContext(Complex<R> tau, SeriesPolicy policy = {});

  const Complex<R>& tau() const { return tau_; }
  const Complex<R>& q() const { return q_; }
  /// Im τ.
  const R& t() const { return tau_.im(); }
  const SeriesPolicy& policy() const { return policy_; }

  /// e^{πiτw}: q^w for arbitrary complex w, single-valued by construction.
  Complex<R> epow(const Complex<R>& w) const;

  /// Same policy at another τ (used by the modular transformation checks).
  QContext with_tau(Complex<R> tau) const { return QContext(std::move(tau), policy_); }

  /// min over the nearest row of Λ_τ of |exp(2πi(z - sτ)) - 1|; zero iff z ∈ Λ_τ.
  double lattice_distance(const Complex<R>& z) const;

 private:
  Complex<R> tau_;
  Complex<R> q_;
  SeriesPolicy policy_;
};

/// Σ_{n∈ℤ} term(n), summed outward from n = 0 (positive side first).
///
/// A side stops once three consecutive terms fall below trunc_tol relative to
/// the largest term seen and the geometric tail bound |t|ρ/(1-ρ), with ρ the
/// ratio of the last two magnitudes, confirms it. Gaussian-type series are
/// log-concave in n, so the ratio only decreases from there on and the bound
/// is valid.
template <class R, class Term>
Complex<R> bilateral_sum(const SeriesPolicy& policy, Term&& term, SeriesStats* stats,
                         const char* what) {
  Complex<R> sum = term(0);
  double scale = magnitude(sum);
  long used = 1;
  double tail_total = 0.0;
  for (int dir : {+1, -1}) {
    int small = 0;
    double prev = -1.0;
    bool done = false;
    double mag = 0.0;
    for (int k = 1; k <= policy.max_index; ++k) {
      Complex<R> t = term(dir * k);
      ++used;
      mag = magnitude(t);
      sum += t;
      scale = std::max(scale, mag);
      small = mag <= policy.trunc_tol * scale ? small + 1 : 0;
      if (small >= 3 && prev >= 0.0) {
        double ratio = prev > 0.0 ? mag / prev : 0.0;
        if (ratio < 1.0) {
          double tail = ratio > 0.0 ? mag * ratio / (1.0 - ratio) : 0.0;
          if (tail <= policy.trunc_tol * scale) {
            tail_total += tail;
            done = true;
            break;
          }
        }
      }
      prev = mag;
    }
    if (!done) throw TruncationError(what, mag);
  }
  if (stats) {
    stats->terms += used;
    stats->tail_bound = std::max(stats->tail_bound, tail_total);
  }
  return sum;
}

}  // namespace qpainleve
