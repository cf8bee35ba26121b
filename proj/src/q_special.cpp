#include "qpainleve/q_special.hpp"

#include <cmath>
#include <string>

namespace qpainleve {
namespace {

template <class R>
Complex<R> i_times(const R& scale) {
  return Complex<R>(R(0), scale);
}

template <class R>
void require_off_lattice(const QContext<R>& ctx, const Complex<R>& z, const char* fn, const char* arg) {
  if (ctx.lattice_distance(z) < ctx.policy().lattice_eps) {
    throw PoleError(std::string(fn) + ": " + arg + " lies within the lattice guard of Λ_τ");
  }
}

template <class R>
Complex<R> parity(long n) {
  return Complex<R>(R(n % 2 == 0 ? 1 : -1));
}

}  // namespace

template <class R>
Complex<R> q_factorial(int n, const Complex<R>& base) {
  if (n < 0) throw DomainError("q_factorial: n must be non-negative");
  Complex<R> result(R(1));
  Complex<R> power(R(1));
  for (int l = 1; l <= n; ++l) {
    power *= base;
    result *= Complex<R>(R(1)) - power;
  }
  return result;
}

template <class R>
Complex<R> theta(const QContext<R>& ctx, const Complex<R>& z, SeriesStats* stats) {
  const Complex<R> two_pi_i = i_times(2 * pi<R>());
  const Complex<R> pi_i = i_times(pi<R>());
  const Complex<R> shifted = z + Complex<R>(R(0.5));
  // t(k) = e^{2πiνs} q^{ν²}, ν = k + 1/2, s = z + 1/2, stepped by
  // t(k+1) = t(k) e^{2πis} q^{2k+2} and t(k-1) = t(k) e^{-2πis} q^{-2k}.
  const Complex<R> t0 = exp(pi_i * shifted + pi_i * ctx.tau() / Complex<R>(R(4)));
  const Complex<R> w = exp(two_pi_i * shifted);
  const Complex<R> w_inv = Complex<R>(R(1)) / w;
  const Complex<R> q2 = ctx.q() * ctx.q();
  int up_k = 0, down_k = 0;
  Complex<R> up = t0, down = t0, up_step = w * q2, down_step = w_inv;
  auto term = [&](int k) {
    if (k == 0) return t0;
    if (k > 0) {
      if (k != up_k + 1) throw DomainError("theta: terms must be visited in order");
      up *= up_step;
      up_step *= q2;
      up_k = k;
      return up;
    }
    if (k != down_k - 1) throw DomainError("theta: terms must be visited in order");
    down *= down_step;
    down_step *= q2;
    down_k = k;
    return down;
  };
  return bilateral_sum<R>(ctx.policy(), term, stats, "theta");
}

template <class R>
Complex<R> mu(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v, SeriesStats* stats) {
  require_off_lattice(ctx, u, "mu", "u");
  require_off_lattice(ctx, v, "mu", "v");
  const Complex<R> two_pi_i = i_times(2 * pi<R>());
  const Complex<R> pi_i = i_times(pi<R>());
  const Complex<R> one(R(1));
  const double eps = ctx.policy().lattice_eps;
  auto term = [&](int n) {
    Complex<R> num = exp(two_pi_i * Complex<R>(R(n)) * v + pi_i * Complex<R>(R(long(n) * (n + 1))) * ctx.tau());
    Complex<R> den = one - exp(two_pi_i * (u + Complex<R>(R(n)) * ctx.tau()));
    if (magnitude(den) < eps) throw PoleError("mu: denominator 1 - e^{2πi(u+nτ)} vanishes at n = " + std::to_string(n));
    return parity<R>(n) * num / den;
  };
  Complex<R> sum = bilateral_sum<R>(ctx.policy(), term, stats, "mu");
  return exp(pi_i * u) / theta(ctx, v, stats) * sum;
}

template <class R>
Complex<R> mu_general(const QContext<R>& ctx, const MuArgs<R>& args, SeriesStats* stats) {
  const auto& [u, v, alpha] = args;
  require_off_lattice(ctx, u, "mu_general", "u");
  require_off_lattice(ctx, v, "mu_general", "v");
  const Complex<R> two_pi_i = i_times(2 * pi<R>());
  const Complex<R> pi_i = i_times(pi<R>());
  const Complex<R> one(R(1));
  const Complex<R> q2 = ctx.q() * ctx.q();
  const SeriesPolicy& policy = ctx.policy();
  long product_factors = 0;

  // P(n) = ∏_{j≥1} (1 - X q^{2(n+j)}) / (1 - X q^{2(n-α+j)}), X = e^{2πiu}, is
  // built once at n = 0; neighbours follow from
  // P(n) = P(n-1) (1 - X q^{2(n-α)}) / (1 - X q^{2n}).
  const Complex<R> X = exp(two_pi_i * u);
  const Complex<R> Xa = exp(two_pi_i * (u - alpha * ctx.tau()));
  auto guarded_den = [&](const Complex<R>& den, int n) {
    if (magnitude(den) < policy.lattice_eps)
      throw PoleError("mu_general: product denominator vanishes at n = " + std::to_string(n));
    return den;
  };
  Complex<R> p0;
  {
    Complex<R> top = X, bottom = Xa;
    Complex<R> num(R(1)), den(R(1));
    const long cap = policy.max_index + static_cast<long>(std::ceil(magnitude(alpha)));
    int small = 0;
    double last = 0.0;
    bool converged = false;
    for (long j = 1; j <= cap; ++j) {
      top *= q2;
      bottom *= q2;
      const Complex<R> t = one - top;
      const Complex<R> b = guarded_den(one - bottom, 0);
      num *= t;
      den *= b;
      ++product_factors;
      // |t/b - 1| = |bottom - top| / |b|
      last = magnitude(bottom - top) / magnitude(b);
      const bool settled = magnitude(top) < 1.0 && magnitude(bottom) < 1.0 && last < policy.trunc_tol;
      small = settled ? small + 1 : 0;
      if (small >= 3) {
        converged = true;
        break;
      }
    }
    if (!converged) throw TruncationError("mu_general product", last);
    p0 = num / den;
  }

  // Running state per direction: P(n), X q^{2n}, X q^{2(n-α)} and the
  // prefactor e^{2πi(n+1/2)v} q^{n(n+1)}.
  struct Walk {
    int n;
    Complex<R> p, xn, xan, lead;
  };
  const Complex<R> lead0 = exp(pi_i * v);
  const Complex<R> w = exp(two_pi_i * v);
  const Complex<R> w_inv = one / w;
  const Complex<R> q2_inv = one / q2;
  Walk up{0, p0, X, Xa, lead0};
  Walk down = up;

  auto term = [&](int n) {
    if (n == 0) return lead0 * p0;
    if (n > 0) {
      if (n != up.n + 1) throw DomainError("mu_general: terms must be visited in order");
      // lead(n) = lead(n-1) e^{2πiv} q^{2n}
      up.xn *= q2;
      up.xan *= q2;
      up.lead *= w * up.xn / X;
      up.p *= (one - up.xan) / guarded_den(one - up.xn, n);
      up.n = n;
      ++product_factors;
      return parity<R>(n) * up.lead * up.p;
    }
    if (n != down.n - 1) throw DomainError("mu_general: terms must be visited in order");
    // P(n) = P(n+1) (1 - X q^{2(n+1)}) / (1 - X q^{2(n+1-α)})
    down.p *= (one - down.xn) / guarded_den(one - down.xan, n);
    // lead(n) = lead(n+1) e^{-2πiv} q^{-2(n+1)}
    down.lead *= w_inv * X / down.xn;
    down.xn *= q2_inv;
    down.xan *= q2_inv;
    down.n = n;
    ++product_factors;
    return parity<R>(n) * down.lead * down.p;
  };

  Complex<R> sum = bilateral_sum<R>(policy, term, stats, "mu_general");
  if (stats) stats->terms += product_factors;
  return exp(pi_i * alpha * (u - v)) / theta(ctx, v, stats) * sum;
}

namespace {

// The polynomial sums, optionally accumulating Σ|term| for error bounds.
template <class R>
Complex<R> hermite_sum(int n, const Complex<R>& u, const Complex<R>& base, double* abs_sum) {
  if (n < 0) throw DomainError("hermite_H: n must be non-negative");
  const Complex<R> pi_i = i_times(pi<R>());
  const Complex<R> top = q_factorial(n, base);
  Complex<R> sum;
  for (int l = 0; l <= n; ++l) {
    Complex<R> coeff = top / (q_factorial(l, base) * q_factorial(n - l, base));
    const Complex<R> term = coeff * exp(pi_i * Complex<R>(R(n - 2 * l)) * u);
    if (abs_sum) *abs_sum += magnitude(term);
    sum += term;
  }
  return sum;
}

template <class R>
Complex<R> poly_F_sum(int n, const Complex<R>& u, const Complex<R>& base, double* abs_sum) {
  if (n < 1) throw DomainError("poly_F: n must be at least 1");
  const int N = n - 1;
  const Complex<R> pi_i = i_times(pi<R>());
  Complex<R> lead = ipow(base, long(N) * (N + 1) / 2);
  if (N % 2 == 1) lead = -lead;
  Complex<R> sum;
  for (int l = 0; l <= N; ++l) {
    Complex<R> coeff = ipow(base, long(l) * (l - N)) / (q_factorial(N - l, base) * q_factorial(l, base));
    const Complex<R> term = lead * coeff * exp(pi_i * Complex<R>(R(N - 2 * l)) * u);
    if (abs_sum) *abs_sum += magnitude(term);
    sum += term;
  }
  return sum;
}

}  // namespace

template <class R>
Complex<R> hermite_H(int n, const Complex<R>& u, const Complex<R>& base) {
  return hermite_sum(n, u, base, static_cast<double*>(nullptr));
}

template <class R>
Complex<R> poly_F(int n, const Complex<R>& u, const Complex<R>& base) {
  return poly_F_sum(n, u, base, static_cast<double*>(nullptr));
}

template <class R>
Complex<R> r_function(const QContext<R>& ctx, const Complex<R>& u, SeriesStats* stats) {
  using std::sqrt;
  const SeriesPolicy& policy = ctx.policy();
  const R t = ctx.t();
  const R a = u.im() / t;
  const double needed = std::abs(to_double(a)) +
                        std::sqrt(std::max(0.0, -std::log(policy.trunc_tol)) / (M_PI * to_double(t))) + 4.0;
  if (policy.max_index < needed) {
    throw DomainError("r_function: max_index " + std::to_string(policy.max_index) +
                      " below the Gaussian-decay requirement " + std::to_string(needed));
  }
  const R root2t = sqrt(2 * t);
  const Complex<R> two_pi_i = i_times(2 * pi<R>());
  const Complex<R> pi_i = i_times(pi<R>());
  auto term = [&](int k) {
    const R nu = R(k) + R(0.5);
    const R y = (nu + a) * root2t;
    // sgn(ν) - E(y); when ν and y share a sign this is ±(1 - E(|y|)).
    R weight;
    if (nu > 0 && y > 0) {
      weight = gauss_E_complement(y);
    } else if (nu < 0 && y < 0) {
      weight = -gauss_E_complement(R(-y));
    } else {
      weight = R(nu > 0 ? 1 : -1) - gauss_E(y);
    }
    Complex<R> phase = exp(-two_pi_i * Complex<R>(nu) * u - pi_i * Complex<R>(nu * nu) * ctx.tau());
    return parity<R>(k) * Complex<R>(weight) * phase;
  };
  return bilateral_sum<R>(policy, term, stats, "r_function");
}

template <class R>
Complex<R> mu_tilde(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v, SeriesStats* stats) {
  const Complex<R> half_i(R(0), R(0.5));
  return mu(ctx, u, v, stats) + half_i * r_function(ctx, u - v, stats);
}

template <class R>
Complex<R> r_n_completion(const QContext<R>& ctx, int n, const Complex<R>& u, SeriesStats* stats) {
  if (n < 1) throw DomainError("r_n_completion: n must be at least 1");
  const Complex<R> base = ctx.epow(Complex<R>(R(2)));
  const Complex<R> q_quarter_inv = ctx.epow(Complex<R>(R(-0.25)));
  Complex<R> result = poly_F(n, u, base) * r_function(ctx, u, stats);
  for (int l = 1; l <= n - 1; ++l) {
    result += Complex<R>(R(2)) * q_quarter_inv * ipow(base, l) / q_factorial(l, base) *
              poly_F(n - l, u, base) * hermite_H(l - 1, u, base);
  }
  return result;
}

template <class R>
Complex<R> mu_integer_expansion(const QContext<R>& ctx, int n, const Complex<R>& u, const Complex<R>& v,
                                SeriesStats* stats, double* lost_bits) {
  if (n < 0) throw DomainError("mu_integer_expansion: n must be non-negative");
  const Complex<R> base = ctx.epow(Complex<R>(R(2)));
  const Complex<R> w = u - v;
  // bound accumulates the expression with every summand replaced by its modulus.
  double f_abs = 0.0;
  const Complex<R> m = mu(ctx, u, v, stats);
  const Complex<R> lead = poly_F_sum(n + 1, w, base, &f_abs) * m;
  double bound = f_abs * magnitude(m);
  Complex<R> correction;
  double correction_abs = 0.0;
  for (int l = 1; l <= n; ++l) {
    double fa = 0.0, ha = 0.0;
    const Complex<R> weight = ipow(base, l) / q_factorial(l, base);
    correction += weight * poly_F_sum(n - l + 1, w, base, &fa) * hermite_sum(l - 1, w, base, &ha);
    correction_abs += magnitude(weight) * fa * ha;
  }
  const Complex<R> i_q_quarter_inv = Complex<R>::i() * ctx.epow(Complex<R>(R(-0.25)));
  bound += magnitude(i_q_quarter_inv) * correction_abs;
  const Complex<R> result = lead - i_q_quarter_inv * correction;
  if (lost_bits) {
    const double mag = magnitude(result);
    *lost_bits = mag > 0 ? std::max(0.0, std::log2(bound / mag)) : std::numeric_limits<double>::infinity();
  }
  return result;
}

template <class R>
double mu_tilde_translation_residual(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v) {
  const QContext<R> shifted = ctx.with_tau(ctx.tau() + Complex<R>(R(1)));
  const Complex<R> eighth_turn = exp(i_times(pi<R>() / 4));
  return relative_residual(mu_tilde(ctx, u, v), eighth_turn * mu_tilde(shifted, u, v));
}

template <class R>
double mu_tilde_inversion_residual(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v,
                                   InversionLaw law) {
  const Complex<R>& tau = ctx.tau();
  const QContext<R> inverted = ctx.with_tau(-Complex<R>(R(1)) / tau);
  const Complex<R> root = sqrt(-Complex<R>::i() * tau);
  const Complex<R> d = u - v;
  const Complex<R> gauss = i_times(pi<R>()) * d * d / tau;
  const Complex<R> image = mu_tilde(inverted, u / tau, v / tau);
  Complex<R> rhs;
  if (law == InversionLaw::Canonical) {
    rhs = -exp(gauss) / root * image;
  } else {
    rhs = Complex<R>::i() * exp(-gauss) / root * image;
  }
  return relative_residual(mu_tilde(ctx, u, v), rhs);
}

template <class R>
double contiguous_up_residual(const QContext<R>& ctx, const MuArgs<R>& args) {
  const auto& [u, v, alpha] = args;
  const Complex<R> x = exp(i_times(pi<R>()) * u);
  const Complex<R> one(R(1));
  const Complex<R> terms[3] = {
      ctx.epow(-alpha) * mu_general(ctx, {u + v + ctx.tau(), v, alpha}),
      x * x * mu_general(ctx, {u + v, v, alpha}),
      -x * mu_general(ctx, {u + v, v, alpha - one}),
  };
  return term_sum_residual<R>(terms);
}

template <class R>
double contiguous_down_residual(const QContext<R>& ctx, const MuArgs<R>& args) {
  const auto& [u, v, alpha] = args;
  const Complex<R> x = exp(i_times(pi<R>()) * u);
  const Complex<R> one(R(1));
  const Complex<R> terms[3] = {
      mu_general(ctx, {u + v, v, alpha}),
      x * x * ctx.epow(-alpha) * mu_general(ctx, {u + v - ctx.tau(), v, alpha}),
      -x * mu_general(ctx, {u + v, v, alpha - one}),
  };
  return term_sum_residual<R>(terms);
}

#define QPAINLEVE_INSTANTIATE(R)                                                                        \
  template Complex<R> q_factorial(int, const Complex<R>&);                                              \
  template Complex<R> theta(const QContext<R>&, const Complex<R>&, SeriesStats*);                       \
  template Complex<R> mu(const QContext<R>&, const Complex<R>&, const Complex<R>&, SeriesStats*);       \
  template Complex<R> mu_general(const QContext<R>&, const MuArgs<R>&, SeriesStats*);                   \
  template Complex<R> hermite_H(int, const Complex<R>&, const Complex<R>&);                             \
  template Complex<R> poly_F(int, const Complex<R>&, const Complex<R>&);                                \
  template Complex<R> r_function(const QContext<R>&, const Complex<R>&, SeriesStats*);                  \
  template Complex<R> mu_tilde(const QContext<R>&, const Complex<R>&, const Complex<R>&, SeriesStats*); \
  template Complex<R> r_n_completion(const QContext<R>&, int, const Complex<R>&, SeriesStats*);         \
  template Complex<R> mu_integer_expansion(const QContext<R>&, int, const Complex<R>&, const Complex<R>&, \
                                           SeriesStats*, double*);                                      \
  template double mu_tilde_translation_residual(const QContext<R>&, const Complex<R>&, const Complex<R>&); \
  template double mu_tilde_inversion_residual(const QContext<R>&, const Complex<R>&, const Complex<R>&,  \
                                              InversionLaw);                                            \
  template double contiguous_up_residual(const QContext<R>&, const MuArgs<R>&);                         \
  template double contiguous_down_residual(const QContext<R>&, const MuArgs<R>&);

QPAINLEVE_INSTANTIATE(double)
QPAINLEVE_INSTANTIATE(Mp)

#undef QPAINLEVE_INSTANTIATE

}  // namespace qpainleve
