#pragma once

// Determinant tau-functions ξ_{m,n,k} = det[μ(u+v+kτ, v; m-j-j')]_{j,j'=0..n},
// the solutions of the q-Painlevé system built from them, the determinant
// identities used to prove the bilinear relations, and propagation of ξ over
// the lattice from six initial values.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpainleve/context.hpp"
#include "qpainleve/equations.hpp"
#include "qpainleve/matrix.hpp"
#include "qpainleve/record.hpp"
#include "qpainleve/weyl.hpp"

namespace qpainleve {

template <class R>
struct XiIndex {
  Complex<R> m;
  int n;  // -1 is the empty determinant
  Complex<R> k;
};

template <class R>
struct SolutionParams {
  QContext<R> ctx;
  Complex<R> u;
  Complex<R> v;
  Complex<R> m;
  int n;
  Complex<R> k;

  /// e^{πiu}
  Complex<R> x_bare() const;
  /// e^{πiu} q^k, the x of the solution at lattice position k.
  Complex<R> x() const;
  RecordParams record_params() const;
};

/// The (n+1)×(n+1) Hankel matrix of ξ at idx; 0×0 for n = -1.
template <class R>
Matrix<R> xi_matrix(const SolutionParams<R>& sp, const XiIndex<R>& idx);

/// ξ at an arbitrary complex (m, k), without memoisation.
template <class R>
Complex<R> xi(const SolutionParams<R>& sp, const XiIndex<R>& idx);

/// Integer offset from the base (m, k) of a SolutionParams, with absolute n.
struct LatticeSite {
  int dm = 0;
  int n = 0;
  int dk = 0;
  friend auto operator<=>(const LatticeSite&, const LatticeSite&) = default;
};

std::string to_string(const LatticeSite& s);

/// ξ̃_{a,b,c} = ξ_{m-a, n-b, k+c}.
struct TildeIndex {
  int a = 0;
  int b = 0;
  int c = 0;
  LatticeSite site(int n) const { return {-a, n - b, c}; }
};

/// e^{πiu}, q, q^m and q^k. Every relation coefficient is a monomial in these.
template <class R>
struct CoefficientBasis {
  Complex<R> x_bare, q, qm, qk;
  static CoefficientBasis of(const SolutionParams<R>& sp);
};

/// Memoised ξ on the integer lattice around a base point. Every ξ is built
/// from μ(u+v+(k+Δk)τ, v; m+Δα), cached by (Δk, Δα). Neither cache depends on
/// the n of the parameters, so lattices made by with_n share them.
template <class R>
class XiLattice {
 public:
  explicit XiLattice(SolutionParams<R> sp) : sp_(std::move(sp)), cache_(std::make_shared<Cache>()) {}

  const SolutionParams<R>& params() const { return sp_; }
  const QContext<R>& ctx() const { return sp_.ctx; }

  /// The same lattice seen from another n; caches are shared.
  XiLattice with_n(int n) const {
    XiLattice out(*this);
    out.sp_.n = n;
    return out;
  }

  /// References stay valid for the lifetime of the shared cache.
  const Complex<R>& mu_entry(int dk, int dalpha);

  /// n = -1 gives 1; n < -1 raises IndexDomainError.
  const Complex<R>& xi(const LatticeSite& s);
  const Complex<R>& xi_tilde(const TildeIndex& t) { return xi(t.site(sp_.n)); }

  XiIndex<R> index(const LatticeSite& s) const;

  const CoefficientBasis<R>& basis() {
    if (!cache_->basis) cache_->basis = CoefficientBasis<R>::of(sp_);
    return *cache_->basis;
  }

  std::size_t mu_evaluations() const { return cache_->mu.size(); }

  /// Largest cancellation_bits over the determinants evaluated so far.
  double cancellation_bits() const { return cache_->loss_bits; }
  /// Folds a determinant evaluated outside the cache into cancellation_bits().
  Complex<R> tracked_det(const Matrix<R>& m);

 private:
  struct Cache {
    std::map<std::pair<int, int>, Complex<R>> mu;
    std::map<LatticeSite, Complex<R>> xi;
    double loss_bits = 0.0;
    const Complex<R> one{R(1)};
    std::optional<CoefficientBasis<R>> basis;
  };
  SolutionParams<R> sp_;
  std::shared_ptr<Cache> cache_;
};

/// (x, a₁, a₂; f₁, f₂) = (x, -q^m, q^{-n}; ξ_{m,n,k+1}ξ_{m,n-1,k}/(ξ_{m,n,k}ξ_{m,n-1,k+1}),
/// -ξ_{m,n-1,k+1}ξ_{m-1,n-1,k}/(ξ_{m,n-1,k}ξ_{m-1,n-1,k+1})) with x = e^{πiu}q^k at the given
/// site, completed by a₀ = q/(a₁a₂), f₀ = x²q/(f₁f₂). A vanishing ξ raises DegenerateError.
template <class R>
FieldPoint<R> solution_family_A(XiLattice<R>& lat, const LatticeSite& at);

template <class R>
FieldPoint<R> solution_family_A(XiLattice<R>& lat) {
  return solution_family_A(lat, LatticeSite{0, lat.params().n, 0});
}

/// (x, a₀, a₂; f₀, f₂) = (x, -q^{-m}, q^{n+1}; ξ_{m,n,k+1}ξ_{m,n-1,k}/(ξ_{m,n,k}ξ_{m,n-1,k+1}),
/// -ξ_{m+1,n,k+1}ξ_{m,n,k}/(ξ_{m+1,n,k}ξ_{m,n,k+1})), completed through the constraints.
/// It is the s₂-image of family A at (m+1, n+1).
template <class R>
FieldPoint<R> solution_family_B(XiLattice<R>& lat, const LatticeSite& at);

template <class R>
FieldPoint<R> solution_family_B(XiLattice<R>& lat) {
  return solution_family_B(lat, LatticeSite{0, lat.params().n, 0});
}

/// (x⁻¹ - x)ξ_{m-1,n-1,k} = q^{2n(m-n-1)} det of the (n+2)×(n+2) matrix with rows
/// (x^j'), (x^{-j'}) and ν_{i+j'}, ν_j = μ(u+v+kτ, v; m-j), x = e^{πiu}q^k. Needs n ≥ 1.
template <class R>
ResidualRecord bordered_xi_identity(XiLattice<R>& lat, double tol = 1e-10);

/// ξ_{m-1,n-1,k±1} = x^{±n} q^{n(m-n)} det[row (x^{±j'}); ν_{i+j'}, i = 1..n]. Needs n ≥ 1.
template <class R>
ResidualRecord shifted_xi_identity(XiLattice<R>& lat, int sign, double tol = 1e-10);

/// Coefficient of a relation term (everything except its two ξ factors) at
/// `base`: a lattice site for lattice relations, (a, b, c) for specialised ones.
template <class R>
Complex<R> term_coefficient(const SolutionParams<R>& sp, EquationFamily family, const Term& term,
                            const std::array<int, 3>& base);
/// The same from a precomputed basis at the given n, with no exponentials.
template <class R>
Complex<R> term_coefficient(const CoefficientBasis<R>& b, int n, EquationFamily family, const Term& term,
                            const std::array<int, 3>& base);

/// Lattice site of a term factor.
LatticeSite term_site(EquationFamily family, int n, const std::array<int, 3>& base, const std::array<int, 3>& offset);

/// Inclusive ranges of (Δm, n, Δk).
struct PropagationBlock {
  int dm_lo, dm_hi;
  int n_lo, n_hi;
  int dk_lo, dk_hi;
  bool contains(const LatticeSite& s) const {
    return s.dm >= dm_lo && s.dm <= dm_hi && s.n >= n_lo && s.n <= n_hi && s.dk >= dk_lo && s.dk <= dk_hi;
  }
};

/// The six initial values: 1 at ξ̃_{0,n+1,0}, ξ̃_{0,n+1,1}, ξ̃_{1,n+1,0}, ξ̃_{1,n+1,1}
/// (sites at n = -1) and μ at ξ̃_{0,n,0}, ξ̃_{0,n,1} (sites at n = 0).
std::vector<LatticeSite> propagation_seeds();

template <class R>
struct PropagationResult {
  std::map<LatticeSite, Complex<R>> values;
  /// Equation used for each solved site ("seed" for the initial values).
  std::map<LatticeSite, std::string> solved_by;
};

/// Fills `block` from the seeds by solving lattice relations for one
/// unknown vertex at a time: eq1 first, then eq2, then eq3-eq8. Relations
/// touching n ≤ -2 are never used. Raises PropagationStall naming the first
/// unreachable site.
template <class R>
PropagationResult<R> lattice_propagate(XiLattice<R>& lat, const PropagationBlock& block);

}  // namespace qpainleve
