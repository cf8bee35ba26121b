#pragma once

// The trilinear-term bilinear relations as data.
//
// Lattice relations are written in ξ_{m,n,k} with x = e^{πiu}; site offsets
// are (Δm, Δn, Δk) from the base index and q-exponents are affine in (m, n, k).
// Specialised relations are written in ξ̃_{a,b,c} with x = e^{πiu}q^k,
// a₁ = -q^m, a₂ = q^{-n}; offsets are (Δa, Δb, Δc) and q-exponents are affine
// in (a, b, c).

#include <array>
#include <string>
#include <vector>

namespace qpainleve {

enum class EquationFamily { Thm2, Thm3 };

/// sign · x^x_pow · a₁^a1_pow · a₂^a2_pow · q^{q[0] + q[1]·i₁ + q[2]·i₂ + q[3]·i₃} · ξ(site₀) ξ(site₁)
struct Term {
  int sign;
  int x_pow;
  int a1_pow;
  int a2_pow;
  std::array<int, 4> q;
  std::array<std::array<int, 3>, 2> sites;
};

struct Equation {
  std::string id;
  EquationFamily family;
  std::array<Term, 3> terms;
  /// Nonempty for forms that are kept only as evidence of a misprint.
  std::string warn;
};

/// "eq1" … "eq8".
const std::vector<Equation>& thm2_equations();

/// "eq11" … "eq18", with eq18 in its corrected form.
const std::vector<Equation>& thm3_equations();

/// "eq18.printed": eq18 with the printed third exponent 2a+2b+c.
const Equation& thm3_eq18_printed();

/// Lookup over all of the above; throws DomainError for an unknown id.
const Equation& find_equation(const std::string& id);

}  // namespace qpainleve
