#pragma once

// Residual checks of the bilinear relations and of the end-to-end Painlevé
// claim, built on a memoised ξ lattice.

#include <array>
#include <string>
#include <vector>

#include "qpainleve/equations.hpp"
#include "qpainleve/errors.hpp"
#include "qpainleve/record.hpp"
#include "qpainleve/xi.hpp"

namespace qpainleve {

/// Skip reason for a failed evaluation; truncation failures are tagged so
/// callers can tell them from domain problems.
inline std::string failure_reason(const Error& e) {
  return dynamic_cast<const TruncationError*>(&e) ? std::string("truncation: ") + e.what() : e.what();
}

/// ξ̃_{a,b,c} ↦ δ·c₁^a c₂^b c₃^c ξ̃_{a,b,c}. The identity gauge is all ones.
template <class R>
struct Gauge {
  Complex<R> delta{R(1)};
  std::array<Complex<R>, 3> c{Complex<R>(R(1)), Complex<R>(R(1)), Complex<R>(R(1))};

  bool is_identity() const {
    const Complex<R> one(R(1));
    return delta == one && c[0] == one && c[1] == one && c[2] == one;
  }

  Complex<R> factor(const TildeIndex& t) const {
    return delta * ipow(c[0], t.a) * ipow(c[1], t.b) * ipow(c[2], t.c);
  }
};

/// |Σ terms| / max |term| for a lattice relation at the lattice's own (m, n, k).
/// Skipped when a factor has n ≤ -2 or a ξ evaluation fails.
template <class R>
ResidualRecord check_thm2(XiLattice<R>& lat, const std::string& eq_id, double tol = 1e-8,
                          const std::string& suite = "thm2");

/// The same for a specialised relation at (a, b, c), with an optional gauge on ξ̃.
/// A relation carrying a warn text is reported as WARN evidence.
template <class R>
ResidualRecord check_thm3(XiLattice<R>& lat, const std::string& eq_id, const TildeIndex& at, double tol = 1e-8,
                          const std::string& suite = "thm3", const Gauge<R>& gauge = {});

/// Specialised relation eq(10+i) at (a, b, c) against lattice relation eq(i) at
/// (m-a, n-b, k+c): the factor pairs must coincide and the coefficient ratios
/// must agree. Residual is the spread of the ratios over their largest modulus.
template <class R>
ResidualRecord check_thm3_proportional(XiLattice<R>& lat, const std::string& thm3_id, const TildeIndex& at,
                                       double tol = 1e-10, const std::string& suite = "thm3");

/// Family A at the lattice's (m, n, k) and its T, T₁, T₁⁻¹, T₂, T₂⁻¹ images
/// obtained by k+1, m+1, m-1, n-1, n+1. The T₂ image needs n ≥ 1.
template <class R>
EvolutionImages<R> family_images(XiLattice<R>& lat);

/// Every evolution identity on family_images, plus the printed (t1) as WARN.
template <class R>
std::vector<ResidualRecord> check_theorem1(XiLattice<R>& lat, double tol = 1e-8,
                                           const std::string& suite = "painleve-e2e");

/// Gauge invariance at (a, b, c): each specialised residual moves by less than
/// tol, and f₁, f₂ written in ξ̃ keep their values.
template <class R>
std::vector<ResidualRecord> check_gauge(XiLattice<R>& lat, const TildeIndex& at, const Gauge<R>& gauge,
                                        double tol = 1e-12, const std::string& suite = "gauge");

}  // namespace qpainleve
