#pragma once

// Theta function, q-factorials, Zwegers' μ and its one-parameter extension
// μ(u,v;α), the finite polynomials H_n and F_n, the non-holomorphic R
// correction, and the completions built from them.
//
// Conventions: q = e^{πiτ}; every non-integer power of q goes through
// QContext::epow. Series functions optionally accumulate a truncation
// certificate into `stats`.

#include "qpainleve/context.hpp"
#include "qpainleve/scalar.hpp"

namespace qpainleve {

template <class R>
struct MuArgs {
  Complex<R> u;
  Complex<R> v;
  Complex<R> alpha;
};

/// ∏_{l=1}^{n} (1 - base^l); 1 for n = 0.
template <class R>
Complex<R> q_factorial(int n, const Complex<R>& base);

/// ϑ(z;τ) = Σ_{ν∈ℤ+1/2} e^{2πiν(z+1/2) + πiν²τ}.
template <class R>
Complex<R> theta(const QContext<R>& ctx, const Complex<R>& z, SeriesStats* stats = nullptr);

/// Zwegers' μ(u,v). Throws PoleError when u or v is within the lattice guard.
template <class R>
Complex<R> mu(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v,
              SeriesStats* stats = nullptr);

/// μ(u,v;α). The inner infinite product is truncated per summation index once
/// three consecutive factors are within trunc_tol of 1.
template <class R>
Complex<R> mu_general(const QContext<R>& ctx, const MuArgs<R>& args, SeriesStats* stats = nullptr);

/// H_n(u | base) = Σ_l (base)_n / ((base)_l (base)_{n-l}) e^{πi(n-2l)u}.
template <class R>
Complex<R> hermite_H(int n, const Complex<R>& u, const Complex<R>& base);

/// F_n(u | base), n ≥ 1, with F_{N+1} = (-1)^N base^{N(N+1)/2} Σ_l base^{l(l-N)} e^{πi(N-2l)u} / ((base)_{N-l}(base)_l).
template <class R>
Complex<R> poly_F(int n, const Complex<R>& u, const Complex<R>& base);

/// R(u|τ), the half-integer sum weighted by sgn(ν) - E((ν+a)√(2t)).
///
/// The Gaussian decay of the weight has to beat |q^{-ν²}| inside max_index;
/// the call is rejected with DomainError unless
/// max_index ≥ |a| + √(max(0, -ln trunc_tol)/(π t)) + 4, a = Im u / Im τ.
template <class R>
Complex<R> r_function(const QContext<R>& ctx, const Complex<R>& u, SeriesStats* stats = nullptr);

/// μ̃(u,v) = μ(u,v) + (i/2) R(u - v).
template <class R>
Complex<R> mu_tilde(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v,
                    SeriesStats* stats = nullptr);

/// R_n(u) with μ(u,v;n) + (i/2)R_n(u-v) the completion of μ(u,v;n). The
/// factor i/2 is not included.
template <class R>
Complex<R> r_n_completion(const QContext<R>& ctx, int n, const Complex<R>& u,
                          SeriesStats* stats = nullptr);

/// μ(u,v;n+1) via its finite expansion in μ(u,v), F and H at base q².
/// The terms cancel to leave something of order q^{n²}, so each unit of n
/// costs digits; mu_general is the accurate route for evaluation. When
/// lost_bits is given it receives log₂(Σ|summand| / |result|).
template <class R>
Complex<R> mu_integer_expansion(const QContext<R>& ctx, int n, const Complex<R>& u,
                                const Complex<R>& v, SeriesStats* stats = nullptr,
                                double* lost_bits = nullptr);

/// Which form of the inversion law τ → -1/τ to test.
enum class InversionLaw {
  /// μ̃(u,v|τ) = -(-iτ)^{-1/2} e^{πi(u-v)²/τ} μ̃(u/τ, v/τ | -1/τ).
  Canonical,
  /// μ̃(u,v|τ) = i(-iτ)^{-1/2} e^{-πi(u-v)²/τ} μ̃(u/τ, v/τ | -1/τ); does not hold.
  Printed,
};

/// Residual of μ̃(u,v|τ) = e^{πi/4} μ̃(u,v|τ+1).
template <class R>
double mu_tilde_translation_residual(const QContext<R>& ctx, const Complex<R>& u,
                                     const Complex<R>& v);

/// Residual of the τ → -1/τ law in the requested form.
template <class R>
double mu_tilde_inversion_residual(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v,
                                   InversionLaw law = InversionLaw::Canonical);

/// |q^{-α}μ(u+v+τ,v;α) + x²μ(u+v,v;α) - xμ(u+v,v;α-1)| / max term, x = e^{πiu}.
template <class R>
double contiguous_up_residual(const QContext<R>& ctx, const MuArgs<R>& args);

/// |μ(u+v,v;α) + x²q^{-α}μ(u+v-τ,v;α) - xμ(u+v,v;α-1)| / max term.
template <class R>
double contiguous_down_residual(const QContext<R>& ctx, const MuArgs<R>& args);

}  // namespace qpainleve
