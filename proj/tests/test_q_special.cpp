#include <cmath>
#include <complex>

#include "doctest.h"
#include "qpainleve/q_special.hpp"

using namespace qpainleve;
using C = Complex<double>;
using SC = std::complex<double>;

namespace {

const C U(0.23, 0.11);
const C V(0.41, 0.07);

SC to_std(const C& z) { return {z.re(), z.im()}; }

double rel(const SC& a, const SC& b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Brute-force references built on std::complex with fixed generous truncation.
SC ref_theta(SC tau, SC z) {
  const SC I(0, 1);
  SC sum = 0;
  for (int k = -40; k < 40; ++k) {
    double nu = k + 0.5;
    sum += std::exp(2.0 * M_PI * I * nu * (z + 0.5) + M_PI * I * nu * nu * tau);
  }
  return sum;
}

SC ref_mu_general(SC tau, SC u, SC v, SC alpha) {
  const SC I(0, 1);
  const SC X = std::exp(2.0 * M_PI * I * u);
  SC sum = 0;
  for (int n = -30; n <= 30; ++n) {
    SC prod = 1;
    for (int j = 1; j <= 400; ++j) {
      SC top = 1.0 - X * std::exp(2.0 * M_PI * I * tau * double(n + j));
      SC bot = 1.0 - X * std::exp(2.0 * M_PI * I * tau * (double(n + j) - alpha));
      prod *= top / bot;
    }
    double sign = n % 2 ? -1.0 : 1.0;
    sum += sign * std::exp(2.0 * M_PI * I * (n + 0.5) * v) * std::exp(M_PI * I * tau * double(n * (n + 1))) * prod;
  }
  return std::exp(M_PI * I * alpha * (u - v)) / ref_theta(tau, v) * sum;
}

}  // namespace

TEST_CASE("q_factorial") {
  C b(0.3, 0.2);
  CHECK(q_factorial(0, b) == C(1.0));
  SC expected = 1;
  SC bs = to_std(b);
  for (int l = 1; l <= 6; ++l) expected *= 1.0 - std::pow(bs, l);
  CHECK(rel(to_std(q_factorial(6, b)), expected) < 1e-14);
  CHECK_THROWS_AS(q_factorial(-1, b), DomainError);
}

TEST_CASE("theta") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0), C(-0.2, 0.6)}) {
    QContext<double> ctx(tau);
    CHECK(magnitude(theta(ctx, C(0.0))) < 1e-15);
    CHECK(rel(to_std(theta(ctx, V)), ref_theta(to_std(tau), to_std(V))) < 1e-13);
    CHECK(relative_residual(theta(ctx, -U), -theta(ctx, U)) < 1e-13);
    CHECK(relative_residual(theta(ctx, U + C(1.0)), -theta(ctx, U)) < 1e-13);
    // ϑ(z+τ) = -q^{-1} e^{-2πiz} ϑ(z).
    C factor = -ctx.epow(C(-1.0)) * exp(C(0.0, -2.0 * M_PI) * U);
    CHECK(relative_residual(theta(ctx, U + tau), factor * theta(ctx, U)) < 1e-12);
  }
}

TEST_CASE("mu: reference value and elliptic transformation laws") {
  QContext<double> ctx(C(0.0, 1.0));
  C m = mu(ctx, U, V);
  CHECK(std::abs(m.re() - -0.301658) < 1e-6);
  CHECK(std::abs(m.im() - -0.676607) < 1e-6);

  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0)}) {
    QContext<double> c(tau);
    CHECK(relative_residual(mu(c, U, V), mu(c, V, U)) < 1e-12);
    CHECK(relative_residual(mu(c, U + C(1.0), V), -mu(c, U, V)) < 1e-12);
    // μ(u+τ,v) = -e^{2πi(u-v)} q μ(u,v) - i e^{πi(u-v)} q^{3/4}.
    C d = U - V;
    C rhs = -exp(C(0.0, 2.0 * M_PI) * d) * c.q() * mu(c, U, V) -
            C::i() * exp(C(0.0, M_PI) * d) * c.epow(C(0.75));
    CHECK(relative_residual(mu(c, U + tau, V), rhs) < 1e-12);
  }
  CHECK_THROWS_AS(mu(ctx, U, C(0.0)), PoleError);
  CHECK_THROWS_AS(mu(ctx, U, C(0.0, 1.0)), PoleError);
  CHECK_THROWS_AS(mu(ctx, C(1.0, 2.0), V), PoleError);
}

TEST_CASE("mu_general against brute force") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0)}) {
    QContext<double> ctx(tau);
    for (C alpha : {C(0.0), C(1.0), C(2.3), C(-0.7, 0.2), C(3.0)}) {
      C got = mu_general(ctx, {U, V, alpha});
      CHECK(rel(to_std(got), ref_mu_general(to_std(tau), to_std(U), to_std(V), to_std(alpha))) < 1e-11);
    }
    CHECK(relative_residual(mu_general(ctx, {U, V, C(1.0)}), mu(ctx, U, V)) < 1e-12);
  }
}

TEST_CASE("mu_general is insensitive to the truncation budget") {
  QContext<double> a(C(1.0 / 3.0, 1.0), SeriesPolicy{1e-24, 64, 1e-6});
  QContext<double> b(C(1.0 / 3.0, 1.0), SeriesPolicy{1e-24, 256, 1e-6});
  MuArgs<double> args{U, V, C(2.3)};
  SeriesStats sa, sb;
  C va = mu_general(a, args, &sa);
  C vb = mu_general(b, args, &sb);
  CHECK(relative_residual(va, vb) < 1e-15);
  CHECK(sa.terms > 0);
  CHECK(sa.tail_bound < 1e-20);
}

TEST_CASE("contiguous relations in alpha") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0)}) {
    QContext<double> ctx(tau);
    for (C alpha : {C(1.0), C(2.3), C(0.4, 0.3)}) {
      CHECK(contiguous_up_residual(ctx, MuArgs<double>{U, V, alpha}) < 1e-12);
      CHECK(contiguous_down_residual(ctx, MuArgs<double>{U, V, alpha}) < 1e-12);
    }
  }
}

TEST_CASE("H and F polynomials") {
  C b(0.2, 0.1);
  C w(0.3, -0.05);
  CHECK(hermite_H(0, w, b) == C(1.0));
  C x = exp(C(0.0, M_PI) * w);
  CHECK(relative_residual(hermite_H(1, w, b), x + C(1.0) / x) < 1e-15);
  CHECK(relative_residual(hermite_H(3, -w, b), hermite_H(3, w, b)) < 1e-14);
  CHECK(poly_F(1, w, b) == C(1.0));
  // F_2 = -b (x + 1/x) / (1-b).
  C f2 = -b * (x + C(1.0) / x) / (C(1.0) - b);
  CHECK(relative_residual(poly_F(2, w, b), f2) < 1e-14);
  CHECK_THROWS_AS(poly_F(0, w, b), DomainError);
  CHECK_THROWS_AS(hermite_H(-1, w, b), DomainError);
}

TEST_CASE("R function") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0), C(0.1, 0.7)}) {
    QContext<double> ctx(tau);
    C u(0.17, 0.09);
    CHECK(relative_residual(r_function(ctx, -u), r_function(ctx, u)) < 1e-12);
    CHECK(relative_residual(r_function(ctx, u + C(1.0)), -r_function(ctx, u)) < 1e-12);
    // R(u) + e^{-2πiu} q^{-1} R(u+τ) = 2 e^{-πiu} q^{-1/4}.
    C lhs = r_function(ctx, u) + exp(C(0.0, -2.0 * M_PI) * u) * ctx.epow(C(-1.0)) * r_function(ctx, u + tau);
    C rhs = C(2.0) * exp(C(0.0, -M_PI) * u) * ctx.epow(C(-0.25));
    CHECK(relative_residual(lhs, rhs) < 1e-12);
  }
  QContext<double> tight(C(0.0, 1.0), SeriesPolicy{1e-24, 8, 1e-6});
  CHECK_THROWS_AS(r_function(tight, C(0.0, 6.0)), DomainError);
}

TEST_CASE("integer-alpha expansion matches the direct series") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0)}) {
    QContext<double> ctx(tau);
    for (int n = 0; n <= 4; ++n) {
      // The expansion cancels heavily as n grows; double keeps about 9 digits at n = 4.
      C direct = mu_general(ctx, {U, V, C(double(n + 1))});
      CHECK(relative_residual(mu_integer_expansion(ctx, n, U, V), direct) < (n < 3 ? 1e-13 : 1e-9));
    }
  }
  QContext<double> ctx(C(0.0, 1.0));
  CHECK_THROWS_AS(mu_integer_expansion(ctx, -1, U, V), DomainError);
}

TEST_CASE("R_n completes mu(u,v;n)") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0)}) {
    QContext<double> ctx(tau);
    CHECK(relative_residual(r_n_completion(ctx, 1, U - V), r_function(ctx, U - V)) < 1e-15);
    const C base = ctx.epow(C(2.0));
    for (int n = 2; n <= 4; ++n) {
      C lhs = mu_general(ctx, {U, V, C(double(n))}) + C(0.0, 0.5) * r_n_completion(ctx, n, U - V);
      C rhs = poly_F(n, U - V, base) * mu_tilde(ctx, U, V);
      CHECK(relative_residual(lhs, rhs) < 1e-11);
    }
  }
}

TEST_CASE("modular behaviour of mu tilde") {
  for (C tau : {C(0.0, 1.0), C(1.0 / 3.0, 1.0), C(-0.25, 0.8)}) {
    QContext<double> ctx(tau);
    CHECK(mu_tilde_translation_residual(ctx, U, V) < 1e-10);
    CHECK(mu_tilde_inversion_residual(ctx, U, V, InversionLaw::Canonical) < 1e-10);
    CHECK(mu_tilde_inversion_residual(ctx, U, V, InversionLaw::Printed) > 1e-3);
  }
}

TEST_CASE("extended precision agrees and tightens") {
  PrecisionScope scope(128);
  using M = Complex<Mp>;
  QContext<Mp> ctx(M(Mp(1) / 3, Mp(1)), SeriesPolicy::for_precision(128));
  M u(Mp("0.23"), Mp("0.11")), v(Mp("0.41"), Mp("0.07"));
  QContext<double> dctx(C(1.0 / 3.0, 1.0));
  M m = mu(ctx, u, v);
  C md = mu(dctx, U, V);
  CHECK(std::abs(to_double(m.re()) - md.re()) < 1e-13);
  CHECK(std::abs(to_double(m.im()) - md.im()) < 1e-13);

  CHECK(relative_residual(mu_general(ctx, {u, v, M(Mp(1))}), m) < 1e-33);
  CHECK(relative_residual(mu_integer_expansion(ctx, 2, u, v), mu_general(ctx, {u, v, M(Mp(3))})) < 1e-30);
  CHECK(relative_residual(mu_integer_expansion(ctx, 4, u, v), mu_general(ctx, {u, v, M(Mp(5))})) < 1e-25);
  CHECK(contiguous_up_residual(ctx, MuArgs<Mp>{u, v, M(Mp("2.3"))}) < 1e-30);
  CHECK(mu_tilde_inversion_residual(ctx, u, v) < 1e-30);
}
