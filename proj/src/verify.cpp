#include "qpainleve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "qpainleve/errors.hpp"

namespace qpainleve {

namespace {

template <class R>
struct Evaluation {
  std::array<Complex<R>, 3> terms;
  std::array<Complex<R>, 3> coefficients;
  std::array<std::array<LatticeSite, 2>, 3> sites;
  std::string skip;  // nonempty when the relation could not be evaluated
};

template <class R>
Evaluation<R> evaluate(XiLattice<R>& lat, const Equation& eq, const std::array<int, 3>& base,
                       const Gauge<R>* gauge) {
  Evaluation<R> ev;
  const auto& sp = lat.params();
  for (int t = 0; t < 3; ++t) {
    for (int f = 0; f < 2; ++f) {
      ev.sites[t][f] = term_site(eq.family, sp.n, base, eq.terms[t].sites[f]);
      if (ev.sites[t][f].n < -1) {
        ev.skip = "xi index " + to_string(ev.sites[t][f]) + " is below n = -1";
        return ev;
      }
    }
  }
  try {
    for (int t = 0; t < 3; ++t) {
      const Term& term = eq.terms[t];
      ev.coefficients[t] = term_coefficient(lat.basis(), sp.n, eq.family, term, base);
      Complex<R> value = ev.coefficients[t];
      for (int f = 0; f < 2; ++f) {
        value *= lat.xi(ev.sites[t][f]);
        if (gauge) {
          const auto& o = term.sites[f];
          value *= gauge->factor(TildeIndex{base[0] + o[0], base[1] + o[1], base[2] + o[2]});
        }
      }
      ev.terms[t] = value;
    }
  } catch (const Error& e) {
    ev.skip = failure_reason(e);
  }
  return ev;
}

template <class R>
double term_residual(const Evaluation<R>& ev) {
  // In log₂ so terms beyond double range still give a ratio.
  Complex<R> sum;
  double scale = -std::numeric_limits<double>::infinity();
  for (const auto& t : ev.terms) {
    sum += t;
    scale = std::max(scale, log2_magnitude(t));
  }
  if (std::isinf(scale)) return std::numeric_limits<double>::quiet_NaN();
  return std::exp2(log2_magnitude(sum) - scale);
}

RecordParams with_tilde(RecordParams p, const TildeIndex& t) {
  p.a = t.a;
  p.b = t.b;
  p.c = t.c;
  return p;
}

std::size_t thm3_position(const std::string& id) {
  const auto& eqs = thm3_equations();
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (eqs[i].id == id) return i;
  throw DomainError("'" + id + "' is not a specialised relation");
}

template <class R>
std::optional<FieldPoint<R>> family_at(XiLattice<R>& lat, const LatticeSite& at) {
  try {
    return solution_family_A(lat, at);
  } catch (const DegenerateError&) {
    return std::nullopt;
  }
}

template <class R>
Complex<R> f_tilde(XiLattice<R>& lat, const TildeIndex& at, const Gauge<R>& g, int which) {
  auto X = [&](int da, int db, int dc) {
    const TildeIndex t{at.a + da, at.b + db, at.c + dc};
    return lat.xi_tilde(t) * g.factor(t);
  };
  if (which == 1) return X(0, 0, 1) * X(0, 1, 0) / (X(0, 0, 0) * X(0, 1, 1));
  return -X(0, 1, 1) * X(1, 1, 0) / (X(0, 1, 0) * X(1, 1, 1));
}

}  // namespace

template <class R>
ResidualRecord check_thm2(XiLattice<R>& lat, const std::string& eq_id, double tol, const std::string& suite) {
  const Equation& eq = find_equation(eq_id);
  if (eq.family != EquationFamily::Thm2) throw DomainError("'" + eq_id + "' is not a lattice relation");
  const auto params = lat.params().record_params();
  const auto ev = evaluate<R>(lat, eq, {0, lat.params().n, 0}, nullptr);
  if (!ev.skip.empty()) return skip_record(suite, eq_id, params, tol, ev.skip);
  return make_record(suite, eq_id, params, term_residual(ev), tol);
}

template <class R>
ResidualRecord check_thm3(XiLattice<R>& lat, const std::string& eq_id, const TildeIndex& at, double tol,
                          const std::string& suite, const Gauge<R>& gauge) {
  const Equation& eq = find_equation(eq_id);
  if (eq.family != EquationFamily::Thm3) throw DomainError("'" + eq_id + "' is not a specialised relation");
  const auto params = with_tilde(lat.params().record_params(), at);
  const auto ev = evaluate<R>(lat, eq, {at.a, at.b, at.c}, gauge.is_identity() ? nullptr : &gauge);
  if (!ev.skip.empty()) return skip_record(suite, eq_id, params, tol, ev.skip);
  if (!eq.warn.empty()) return warn_record(suite, eq_id, params, term_residual(ev), tol, eq.warn);
  return make_record(suite, eq_id, params, term_residual(ev), tol);
}

template <class R>
ResidualRecord check_thm3_proportional(XiLattice<R>& lat, const std::string& thm3_id, const TildeIndex& at,
                                       double tol, const std::string& suite) {
  const std::size_t pos = thm3_position(thm3_id);
  const Equation& e3 = thm3_equations()[pos];
  const Equation& e2 = thm2_equations()[pos];
  const std::string name = thm3_id + "~" + e2.id;
  const auto params = with_tilde(lat.params().record_params(), at);
  const int n = lat.params().n;

  auto sorted_sites = [](const Equation& eq, int nn, const std::array<int, 3>& base, int t) {
    auto a = term_site(eq.family, nn, base, eq.terms[t].sites[0]);
    auto b = term_site(eq.family, nn, base, eq.terms[t].sites[1]);
    return a < b ? std::array<LatticeSite, 2>{a, b} : std::array<LatticeSite, 2>{b, a};
  };
  const std::array<int, 3> base3{at.a, at.b, at.c};
  const std::array<int, 3> base2{-at.a, n - at.b, at.c};

  std::vector<Complex<R>> ratios;
  for (int t = 0; t < 3; ++t) {
    const auto s3 = sorted_sites(e3, n, base3, t);
    int match = -1;
    for (int u = 0; u < 3; ++u)
      if (sorted_sites(e2, n, base2, u) == s3) match = u;
    if (match < 0)
      return make_record(suite, name, params, std::numeric_limits<double>::infinity(), tol);
    ratios.push_back(term_coefficient(lat.basis(), n, EquationFamily::Thm3, e3.terms[t], base3) /
                     term_coefficient(lat.basis(), n, EquationFamily::Thm2, e2.terms[match], base2));
  }
  double spread = -std::numeric_limits<double>::infinity(), scale = spread;
  for (const auto& r : ratios) {
    scale = std::max(scale, log2_magnitude(r));
    for (const auto& s : ratios) spread = std::max(spread, log2_magnitude(r - s));
  }
  return make_record(suite, name, params, std::exp2(spread - scale), tol);
}

template <class R>
EvolutionImages<R> family_images(XiLattice<R>& lat) {
  const int n = lat.params().n;
  EvolutionImages<R> im{solution_family_A(lat, LatticeSite{0, n, 0}), {}, {}, {}, {}, {}};
  im.T = family_at(lat, {0, n, 1});
  im.T1 = family_at(lat, {1, n, 0});
  im.T1_inv = family_at(lat, {-1, n, 0});
  if (n >= 1) im.T2 = family_at(lat, {0, n - 1, 0});
  im.T2_inv = family_at(lat, {0, n + 1, 0});
  return im;
}

template <class R>
std::vector<ResidualRecord> check_theorem1(XiLattice<R>& lat, double tol, const std::string& suite) {
  const auto params = lat.params().record_params();
  std::vector<ResidualRecord> out;
  std::optional<EvolutionImages<R>> images;
  std::string failure;
  try {
    images = family_images(lat);
  } catch (const Error& e) {
    failure = failure_reason(e);
  }
  for (const auto& id : evolution_ids()) {
    if (images)
      out.push_back(evolution_residual(id, *images, suite, params, tol));
    else
      out.push_back(skip_record(suite, id, params, tol, failure));
  }
  if (images) out.push_back(evolution_residual(std::string(kPrintedT1Forward), *images, suite, params, tol));
  return out;
}

template <class R>
std::vector<ResidualRecord> check_gauge(XiLattice<R>& lat, const TildeIndex& at, const Gauge<R>& gauge, double tol,
                                        const std::string& suite) {
  std::vector<ResidualRecord> out;
  const auto params = with_tilde(lat.params().record_params(), at);
  for (const auto& eq : thm3_equations()) {
    const auto plain = check_thm3(lat, eq.id, at, tol, suite);
    const auto gauged = check_thm3(lat, eq.id, at, tol, suite, gauge);
    const std::string name = "gauge " + eq.id;
    if (plain.skipped || gauged.skipped)
      out.push_back(skip_record(suite, name, params, tol, plain.skipped ? plain.reason : gauged.reason));
    else
      out.push_back(make_record(suite, name, params, std::abs(plain.residual - gauged.residual), tol));
  }
  for (int which : {1, 2}) {
    const std::string name = which == 1 ? "gauge f1" : "gauge f2";
    if (lat.params().n - at.b - 1 < -1) {
      out.push_back(skip_record(suite, name, params, tol, "xi index below n = -1"));
      continue;
    }
    try {
      const auto plain = f_tilde(lat, at, Gauge<R>{}, which);
      const auto gauged = f_tilde(lat, at, gauge, which);
      out.push_back(make_record(suite, name, params, relative_residual(plain, gauged), tol));
    } catch (const Error& e) {
      out.push_back(skip_record(suite, name, params, tol, failure_reason(e)));
    }
  }
  return out;
}

#define QPAINLEVE_INSTANTIATE(R)                                                                                   \
  template ResidualRecord check_thm2(XiLattice<R>&, const std::string&, double, const std::string&);               \
  template ResidualRecord check_thm3(XiLattice<R>&, const std::string&, const TildeIndex&, double,                 \
                                     const std::string&, const Gauge<R>&);                                          \
  template ResidualRecord check_thm3_proportional(XiLattice<R>&, const std::string&, const TildeIndex&, double,     \
                                                  const std::string&);                                              \
  template EvolutionImages<R> family_images(XiLattice<R>&);                                                         \
  template std::vector<ResidualRecord> check_theorem1(XiLattice<R>&, double, const std::string&);                   \
  template std::vector<ResidualRecord> check_gauge(XiLattice<R>&, const TildeIndex&, const Gauge<R>&, double,       \
                                                   const std::string&);

QPAINLEVE_INSTANTIATE(double)
QPAINLEVE_INSTANTIATE(Mp)

#undef QPAINLEVE_INSTANTIATE

}  // namespace qpainleve
