#include "qpainleve/xi.hpp"

#include <algorithm>

#include "qpainleve/q_special.hpp"

namespace qpainleve {

namespace {

template <class R>
Complex<R> pi_i() {
  return Complex<R>(R(0), pi<R>());
}

template <class R>
Complex<R> entry(const SolutionParams<R>& sp, const Complex<R>& k, const Complex<R>& alpha, int j, int jj) {
  const Complex<R> u = sp.u + sp.v + k * sp.ctx.tau();
  try {
    return mu_general(sp.ctx, MuArgs<R>{u, sp.v, alpha});
  } catch (const PoleError& e) {
    throw PoleError(std::string(e.what()) + " (xi entry " + std::to_string(j) + "," + std::to_string(jj) + ")");
  }
}

template <class R>
Complex<R> nonzero(XiLattice<R>& lat, const LatticeSite& s) {
  Complex<R> v = lat.xi(s);
  if (v.re() == 0 && v.im() == 0) throw DegenerateError("xi vanishes at " + to_string(s));
  return v;
}

/// ν_j = μ(u+v+kτ, v; m-j), served from the lattice cache.
template <class R>
Complex<R> nu(XiLattice<R>& lat, int j) {
  return lat.mu_entry(0, -j);
}

}  // namespace

template <class R>
Complex<R> SolutionParams<R>::x_bare() const {
  return exp(pi_i<R>() * u);
}

template <class R>
Complex<R> SolutionParams<R>::x() const {
  return x_bare() * ctx.epow(k);
}

template <class R>
RecordParams SolutionParams<R>::record_params() const {
  RecordParams p;
  p.tau_re = RecordParams::re(ctx.tau());
  p.tau_im = RecordParams::im(ctx.tau());
  p.u_re = RecordParams::re(u);
  p.u_im = RecordParams::im(u);
  p.v_re = RecordParams::re(v);
  p.v_im = RecordParams::im(v);
  p.m_re = RecordParams::re(m);
  p.m_im = RecordParams::im(m);
  p.n = n;
  p.k_re = RecordParams::re(k);
  p.k_im = RecordParams::im(k);
  return p;
}

template <class R>
Matrix<R> xi_matrix(const SolutionParams<R>& sp, const XiIndex<R>& idx) {
  if (idx.n < -1) throw IndexDomainError("xi: n = " + std::to_string(idx.n) + " is below the empty determinant");
  const std::size_t size = static_cast<std::size_t>(idx.n + 1);
  Matrix<R> mat(size, size);
  // Hankel: one μ per anti-diagonal.
  std::vector<Complex<R>> diag(size == 0 ? 0 : 2 * size - 1);
  for (std::size_t s = 0; s < diag.size(); ++s) {
    const int j = static_cast<int>(std::min(s, size - 1));
    diag[s] = entry(sp, idx.k, idx.m - Complex<R>(R(static_cast<long>(s))), j, static_cast<int>(s) - j);
  }
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) mat(r, c) = diag[r + c];
  return mat;
}

template <class R>
Complex<R> xi(const SolutionParams<R>& sp, const XiIndex<R>& idx) {
  return det(xi_matrix(sp, idx));
}

std::string to_string(const LatticeSite& s) {
  return "(dm=" + std::to_string(s.dm) + ", n=" + std::to_string(s.n) + ", dk=" + std::to_string(s.dk) + ")";
}

template <class R>
const Complex<R>& XiLattice<R>::mu_entry(int dk, int dalpha) {
  const auto key = std::make_pair(dk, dalpha);
  if (auto it = cache_->mu.find(key); it != cache_->mu.end()) return it->second;
  const Complex<R> k = sp_.k + Complex<R>(R(dk));
  const Complex<R> alpha = sp_.m + Complex<R>(R(dalpha));
  return cache_->mu.emplace(key, entry(sp_, k, alpha, 0, -dalpha)).first->second;
}

template <class R>
const Complex<R>& XiLattice<R>::xi(const LatticeSite& s) {
  if (s.n < -1) throw IndexDomainError("xi: " + to_string(s) + " is below the empty determinant");
  if (s.n == -1) return cache_->one;
  if (auto it = cache_->xi.find(s); it != cache_->xi.end()) return it->second;
  const std::size_t size = static_cast<std::size_t>(s.n + 1);
  Matrix<R> mat(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) mat(r, c) = mu_entry(s.dk, s.dm - static_cast<int>(r + c));
  return cache_->xi.emplace(s, tracked_det(mat)).first->second;
}

template <class R>
Complex<R> XiLattice<R>::tracked_det(const Matrix<R>& m) {
  Complex<R> d = det(m);
  cache_->loss_bits = std::max(cache_->loss_bits, qpainleve::cancellation_bits(m, d));
  return d;
}

template <class R>
XiIndex<R> XiLattice<R>::index(const LatticeSite& s) const {
  return {sp_.m + Complex<R>(R(s.dm)), s.n, sp_.k + Complex<R>(R(s.dk))};
}

template <class R>
FieldPoint<R> solution_family_A(XiLattice<R>& lat, const LatticeSite& at) {
  const auto& sp = lat.params();
  const auto& ctx = lat.ctx();
  auto X = [&](int dm, int dn, int dk) { return nonzero(lat, LatticeSite{at.dm + dm, at.n + dn, at.dk + dk}); };
  const Complex<R> x = sp.x_bare() * ctx.epow(sp.k + Complex<R>(R(at.dk)));
  const Complex<R> a1 = -ctx.epow(sp.m + Complex<R>(R(at.dm)));
  const Complex<R> a2 = ctx.epow(Complex<R>(R(-at.n)));
  const Complex<R> f1 = X(0, 0, 1) * X(0, -1, 0) / (X(0, 0, 0) * X(0, -1, 1));
  const Complex<R> f2 = -X(0, -1, 1) * X(-1, -1, 0) / (X(0, -1, 0) * X(-1, -1, 1));
  return FieldPoint<R>::constrained(ctx.q(), x, a1, a2, f1, f2);
}

template <class R>
FieldPoint<R> solution_family_B(XiLattice<R>& lat, const LatticeSite& at) {
  const auto& sp = lat.params();
  const auto& ctx = lat.ctx();
  auto X = [&](int dm, int dn, int dk) { return nonzero(lat, LatticeSite{at.dm + dm, at.n + dn, at.dk + dk}); };
  const Complex<R> q = ctx.q();
  const Complex<R> x = sp.x_bare() * ctx.epow(sp.k + Complex<R>(R(at.dk)));
  const Complex<R> a0 = -ctx.epow(-(sp.m + Complex<R>(R(at.dm))));
  const Complex<R> a2 = ctx.epow(Complex<R>(R(at.n + 1)));
  const Complex<R> f0 = X(0, 0, 1) * X(0, -1, 0) / (X(0, 0, 0) * X(0, -1, 1));
  const Complex<R> f2 = -X(1, 0, 1) * X(0, 0, 0) / (X(1, 0, 0) * X(0, 0, 1));
  FieldPoint<R> p;
  p.q = q;
  p.x = x;
  p.a = {a0, q / (a0 * a2), a2};
  p.f = {f0, x * x * q / (f0 * f2), f2};
  return p;
}

template <class R>
ResidualRecord bordered_xi_identity(XiLattice<R>& lat, double tol) {
  const auto& sp = lat.params();
  const int n = sp.n;
  const RecordParams params = sp.record_params();
  if (n < 1) return skip_record("thm2", "bordered", params, tol, "needs n >= 1");
  const Complex<R> x = sp.x();
  const Complex<R> one(R(1));
  const std::size_t size = static_cast<std::size_t>(n + 2);
  Matrix<R> mat(size, size);
  for (std::size_t c = 0; c < size; ++c) {
    mat(0, c) = ipow(x, static_cast<long>(c));
    mat(1, c) = ipow(x, -static_cast<long>(c));
    for (std::size_t r = 2; r < size; ++r) mat(r, c) = nu(lat, static_cast<int>(r - 1 + c));
  }
  const Complex<R> lhs = (one / x - x) * lat.xi({-1, n - 1, 0});
  const Complex<R> rhs =
      lat.ctx().epow(Complex<R>(R(2 * n)) * (sp.m - Complex<R>(R(n + 1)))) * lat.tracked_det(mat);
  return make_record("thm2", "bordered", params, relative_residual(lhs, rhs), tol);
}

template <class R>
ResidualRecord shifted_xi_identity(XiLattice<R>& lat, int sign, double tol) {
  const auto& sp = lat.params();
  const int n = sp.n;
  const std::string name = sign > 0 ? "shifted+" : "shifted-";
  const RecordParams params = sp.record_params();
  if (sign != 1 && sign != -1) throw DomainError("shifted_xi_identity: sign must be +1 or -1");
  if (n < 1) return skip_record("thm2", name, params, tol, "needs n >= 1");
  const Complex<R> x = sp.x();
  const std::size_t size = static_cast<std::size_t>(n + 1);
  Matrix<R> mat(size, size);
  for (std::size_t c = 0; c < size; ++c) {
    mat(0, c) = ipow(x, sign * static_cast<long>(c));
    for (std::size_t r = 1; r < size; ++r) mat(r, c) = nu(lat, static_cast<int>(r + c));
  }
  const Complex<R> lhs = lat.xi({-1, n - 1, sign});
  const Complex<R> rhs = ipow(x, sign * n) * lat.ctx().epow(Complex<R>(R(n)) * (sp.m - Complex<R>(R(n)))) * lat.tracked_det(mat);
  return make_record("thm2", name, params, relative_residual(lhs, rhs), tol);
}

template <class R>
CoefficientBasis<R> CoefficientBasis<R>::of(const SolutionParams<R>& sp) {
  return {sp.x_bare(), sp.ctx.q(), sp.ctx.epow(sp.m), sp.ctx.epow(sp.k)};
}

template <class R>
Complex<R> term_coefficient(const CoefficientBasis<R>& b, int n, EquationFamily family, const Term& term,
                            const std::array<int, 3>& base) {
  const long lin = static_cast<long>(term.q[1]) * base[0] + static_cast<long>(term.q[2]) * base[1] +
                   static_cast<long>(term.q[3]) * base[2];
  Complex<R> coef(R(term.sign));
  if (family == EquationFamily::Thm2)
    return coef * ipow(b.x_bare, term.x_pow) * ipow(b.q, term.q[0] + lin) * ipow(b.qm, term.q[1]) *
           ipow(b.qk, term.q[3]);
  // x = e^{πiu} q^k, a₁ = -q^m, a₂ = q^{-n}.
  const int a1_sign = term.a1_pow % 2 == 0 ? 1 : -1;
  return coef * R(a1_sign) * ipow(b.x_bare, term.x_pow) * ipow(b.qk, term.x_pow) * ipow(b.qm, term.a1_pow) *
         ipow(b.q, term.q[0] + lin - static_cast<long>(n) * term.a2_pow);
}

template <class R>
Complex<R> term_coefficient(const SolutionParams<R>& sp, EquationFamily family, const Term& term,
                            const std::array<int, 3>& base) {
  return term_coefficient(CoefficientBasis<R>::of(sp), sp.n, family, term, base);
}

LatticeSite term_site(EquationFamily family, int n, const std::array<int, 3>& base, const std::array<int, 3>& offset) {
  if (family == EquationFamily::Thm2) return {base[0] + offset[0], base[1] + offset[1], base[2] + offset[2]};
  return TildeIndex{base[0] + offset[0], base[1] + offset[1], base[2] + offset[2]}.site(n);
}

std::vector<LatticeSite> propagation_seeds() {
  return {{0, -1, 0}, {0, -1, 1}, {-1, -1, 0}, {-1, -1, 1}, {0, 0, 0}, {0, 0, 1}};
}

template <class R>
PropagationResult<R> lattice_propagate(XiLattice<R>& lat, const PropagationBlock& block) {
  PropagationResult<R> out;
  for (const LatticeSite& s : propagation_seeds()) {
    out.values[s] = s.n == -1 ? Complex<R>(R(1)) : lat.mu_entry(s.dk, s.dm);
    out.solved_by[s] = "seed";
  }
  const auto& eqs = thm2_equations();
  // Groups in priority order: eq1, eq2, then the rest.
  const std::vector<std::vector<const Equation*>> groups = {
      {&eqs[0]}, {&eqs[1]}, {&eqs[2], &eqs[3], &eqs[4], &eqs[5], &eqs[6], &eqs[7]}};
  const auto& sp = lat.params();

  auto try_solve = [&](const Equation& eq, const std::array<int, 3>& base) -> bool {
    LatticeSite sites[3][2];
    const LatticeSite* unknown = nullptr;
    int unknown_term = -1, unknown_slot = -1, unknown_count = 0;
    for (int t = 0; t < 3; ++t) {
      for (int f = 0; f < 2; ++f) {
        sites[t][f] = term_site(EquationFamily::Thm2, sp.n, base, eq.terms[t].sites[f]);
        if (sites[t][f].n < -1) return false;
        if (!out.values.count(sites[t][f])) {
          if (unknown && !(*unknown == sites[t][f])) return false;
          unknown = &sites[t][f];
          unknown_term = t;
          unknown_slot = f;
          ++unknown_count;
        }
      }
    }
    if (unknown_count != 1 || !block.contains(*unknown)) return false;
    Complex<R> rest;
    for (int t = 0; t < 3; ++t) {
      if (t == unknown_term) continue;
      rest += term_coefficient(lat.basis(), sp.n, EquationFamily::Thm2, eq.terms[t], base) *
              out.values.at(sites[t][0]) * out.values.at(sites[t][1]);
    }
    const Complex<R> lead =
        term_coefficient(lat.basis(), sp.n, EquationFamily::Thm2, eq.terms[unknown_term], base) *
        out.values.at(sites[unknown_term][1 - unknown_slot]);
    if (lead.re() == 0 && lead.im() == 0) return false;
    const LatticeSite solved = *unknown;
    out.values[solved] = -rest / lead;
    out.solved_by[solved] = eq.id;
    return true;
  };

  auto missing = [&] {
    std::vector<LatticeSite> todo;
    for (int dm = block.dm_lo; dm <= block.dm_hi; ++dm)
      for (int n = block.n_lo; n <= block.n_hi; ++n)
        for (int dk = block.dk_lo; dk <= block.dk_hi; ++dk)
          if (!out.values.count({dm, n, dk})) todo.push_back({dm, n, dk});
    return todo;
  };

  while (!missing().empty()) {
    bool progress = false;
    for (const auto& group : groups) {
      for (const Equation* eq : group) {
        for (int dm = block.dm_lo; dm <= block.dm_hi + 2 && !progress; ++dm)
          for (int n = std::max(block.n_lo, 0); n <= block.n_hi + 2 && !progress; ++n)
            for (int dk = block.dk_lo - 1; dk <= block.dk_hi + 1 && !progress; ++dk)
              progress = try_solve(*eq, {dm, n, dk});
        if (progress) break;
      }
      if (progress) break;
    }
    if (!progress) throw PropagationStall("lattice propagation stalled; cannot reach " + to_string(missing().front()));
  }
  return out;
}

#define QPAINLEVE_INSTANTIATE(R)                                                                          \
  template struct SolutionParams<R>;                                                                      \
  template class XiLattice<R>;                                                                            \
  template Matrix<R> xi_matrix(const SolutionParams<R>&, const XiIndex<R>&);                              \
  template Complex<R> xi(const SolutionParams<R>&, const XiIndex<R>&);                                    \
  template FieldPoint<R> solution_family_A(XiLattice<R>&, const LatticeSite&);                            \
  template FieldPoint<R> solution_family_B(XiLattice<R>&, const LatticeSite&);                            \
  template ResidualRecord bordered_xi_identity(XiLattice<R>&, double);                                    \
  template ResidualRecord shifted_xi_identity(XiLattice<R>&, int, double);                                \
  template struct CoefficientBasis<R>;                                                                     \
  template Complex<R> term_coefficient(const CoefficientBasis<R>&, int, EquationFamily, const Term&,        \
                                       const std::array<int, 3>&);                                          \
  template Complex<R> term_coefficient(const SolutionParams<R>&, EquationFamily, const Term&,             \
                                       const std::array<int, 3>&);                                        \
  template PropagationResult<R> lattice_propagate(XiLattice<R>&, const PropagationBlock&);

QPAINLEVE_INSTANTIATE(double)
QPAINLEVE_INSTANTIATE(Mp)

#undef QPAINLEVE_INSTANTIATE

}  // namespace qpainleve
