#include "doctest.h"
#include "qpainleve/q_special.hpp"
#include "qpainleve/xi.hpp"

using namespace qpainleve;
using C = Complex<double>;

namespace {

SolutionParams<double> params(int n, C m = C(0.37, 0.21), C k = C(0.0)) {
  return {QContext<double>(C(0.1, 0.9)), C(0.23, 0.11), C(0.41, 0.07), m, n, k};
}

C mu_at(const SolutionParams<double>& sp, C alpha, C k) {
  return mu_general(sp.ctx, MuArgs<double>{sp.u + sp.v + k * sp.ctx.tau(), sp.v, alpha});
}

// Hankel determinants of μ cancel heavily unless Re m is above n + 1.
C conditioned_m(int n) { return C(n + 1.37, 0.21); }

}  // namespace

TEST_CASE("small determinants") {
  const auto sp = params(2);
  CHECK(xi(sp, XiIndex<double>{sp.m, -1, sp.k}) == C(1.0));
  CHECK(relative_residual(xi(sp, XiIndex<double>{sp.m, 0, sp.k}), mu_at(sp, sp.m, sp.k)) < 1e-15);
  CHECK_THROWS_AS(xi(sp, XiIndex<double>{sp.m, -2, sp.k}), IndexDomainError);

  // 3×3 by cofactor expansion along the first row.
  C e[5];
  for (int s = 0; s < 5; ++s) e[s] = mu_at(sp, sp.m - C(double(s)), sp.k);
  auto m2 = [](C a, C b, C c, C d) { return a * d - b * c; };
  const C expected = e[0] * m2(e[2], e[3], e[3], e[4]) - e[1] * m2(e[1], e[3], e[2], e[4]) +
                     e[2] * m2(e[1], e[2], e[2], e[3]);
  CHECK(relative_residual(xi(sp, XiIndex<double>{sp.m, 2, sp.k}), expected) < 1e-12);

  const auto mat = xi_matrix(sp, XiIndex<double>{sp.m, 3, sp.k});
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(mat(r, c) == mat(c, r));
      if (r + 1 < 4 && c > 0) CHECK(mat(r + 1, c - 1) == mat(r, c));
    }
}

TEST_CASE("lattice agrees with direct evaluation") {
  auto sp = params(2, conditioned_m(2), C(0.15, -0.05));
  XiLattice<double> lat(sp);
  CHECK(lat.xi({3, -1, 7}) == C(1.0));
  CHECK_THROWS_AS(lat.xi({0, -2, 0}), IndexDomainError);
  for (const LatticeSite s : {LatticeSite{0, 0, 0}, LatticeSite{-1, 1, 1}, LatticeSite{1, 2, -1}}) {
    INFO(to_string(s));
    CHECK(relative_residual(lat.xi(s), xi(sp, lat.index(s))) < 1e-13);
  }
  CHECK(lat.xi_tilde({0, 3, 0}) == C(1.0));
  CHECK(lat.xi_tilde({0, 2, 0}) == lat.mu_entry(0, 0));
  const auto before = lat.mu_evaluations();
  lat.xi({0, 0, 0});
  CHECK(lat.mu_evaluations() == before);
}

TEST_CASE("solution families") {
  SUBCASE("n = 0 reduces to ratios of mu") {
    XiLattice<double> lat(params(0));
    const auto p = solution_family_A(lat);
    const C f1 = lat.mu_entry(1, 0) / lat.mu_entry(0, 0);
    CHECK(relative_residual(p.f[1], f1) < 1e-14);
    CHECK(p.f[2] == C(-1.0));
    CHECK(p.constraint_residual() < 1e-14);
  }
  for (int n = 0; n <= 2; ++n) {
    CAPTURE(n);
    XiLattice<double> lat(params(n, conditioned_m(n)));
    const auto a = solution_family_A(lat);
    CHECK(relative_residual(a.a[1], -lat.ctx().epow(lat.params().m)) < 1e-15);
    CHECK(a.constraint_residual() < 1e-13);

    // B at (m, n) is s₂ of A at (m+1, n+1).
    const auto b = solution_family_B(lat);
    CHECK(b.constraint_residual() < 1e-13);
    const auto moved = apply_generator(Generator::s2, solution_family_A(lat, LatticeSite{1, n + 1, 0}));
    CHECK(point_deviation(b, moved) < 1e-10);
  }
}

TEST_CASE("bordered and shifted determinant identities") {
  for (int n = 1; n <= 3; ++n) {
    for (const C k : {C(0.0), C(0.3, 0.1)}) {
      CAPTURE(n);
      XiLattice<double> lat(params(n, conditioned_m(n), k));
      auto b = bordered_xi_identity(lat);
      INFO("bordered " << b.residual);
      CHECK(b.pass);
      for (int sign : {1, -1}) {
        auto s = shifted_xi_identity(lat, sign);
        INFO("shifted " << sign << " " << s.residual);
        CHECK(s.pass);
      }
    }
  }
  XiLattice<double> lat(params(0));
  CHECK(bordered_xi_identity(lat).skipped);
  CHECK_THROWS_AS(shifted_xi_identity(lat, 2), DomainError);
}

TEST_CASE("propagation from six initial values") {
  XiLattice<double> lat(params(1));
  const PropagationBlock block{-1, 0, 0, 1, 0, 1};
  const auto result = lattice_propagate(lat, block);
  for (const auto& s : propagation_seeds()) CHECK(result.solved_by.at(s) == "seed");
  XiLattice<double> direct(params(1));
  for (int dm = -1; dm <= 0; ++dm)
    for (int n = 0; n <= 1; ++n)
      for (int dk = 0; dk <= 1; ++dk) {
        const LatticeSite s{dm, n, dk};
        INFO(to_string(s) << " via " << result.solved_by.at(s));
        CHECK(relative_residual(result.values.at(s), direct.xi(s)) < 1e-6);
      }
  // Nothing reaches n = 3 in one step from this block.
  CHECK_THROWS_AS(lattice_propagate(lat, PropagationBlock{0, 0, 3, 3, 0, 0}), PropagationStall);
}

TEST_CASE("extended precision identities away from the well-conditioned region") {
  PrecisionScope scope(192);
  using M = Complex<Mp>;
  // m = 0.37 at n = 3 loses every digit in double.
  SolutionParams<Mp> sp{QContext<Mp>(M(Mp("0.1"), Mp("0.9")), SeriesPolicy::for_precision(192)),
                        M(Mp("0.23"), Mp("0.11")), M(Mp("0.41"), Mp("0.07")), M(Mp("0.37"), Mp("0.21")), 3, M(Mp(0))};
  XiLattice<Mp> lat(sp);
  CHECK(bordered_xi_identity(lat, 1e-30).pass);
  CHECK(shifted_xi_identity(lat, 1, 1e-30).pass);
  CHECK(shifted_xi_identity(lat, -1, 1e-30).pass);
}
