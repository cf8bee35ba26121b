#include "qpainleve/suite.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <random>
#include <type_traits>

#include "qpainleve/q_special.hpp"
#include "qpainleve/sampling.hpp"
#include "qpainleve/verify.hpp"
#include "qpainleve/weyl.hpp"

namespace qpainleve {

namespace {

using Records = std::vector<ResidualRecord>;

template <class R>
Complex<R> lift(const std::complex<double>& z) {
  return Complex<R>(R(z.real()), R(z.imag()));
}

double tol_or(const SuiteConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

template <class R>
QContext<R> context(const std::complex<double>& tau, unsigned bits) {
  return QContext<R>(lift<R>(tau), SeriesPolicy::for_precision(bits));
}

template <class R>
SolutionParams<R> solution(const GridPoint& g, unsigned bits) {
  return {context<R>(g.tau, bits), lift<R>(g.u), lift<R>(g.v), lift<R>(g.m), g.n, lift<R>(g.k)};
}

/// Calls body(R{}) in double or, above 53 bits, in Mp at that precision.
template <class Body>
auto at_precision(unsigned bits, Body&& body) {
  if (bits <= 53) return body(double{});
  PrecisionScope scope(bits);
  return body(Mp{});
}

/// Runs body(real, bits) -> (records, lost bits), re-running at higher
/// precision while the cancellation it measured leaves fewer than kGuardBits.
template <class Body>
Records escalating(unsigned min_bits, Body&& body) {
  unsigned bits = min_bits;
  for (;;) {
    auto [out, loss] = at_precision(bits, [&](auto real) { return body(real, bits); });
    if (loss + kGuardBits <= bits || bits >= kMaxBits) return out;
    // Estimates made in double saturate near 53 bits, so the first step overshoots.
    const double wanted = std::min<double>(kMaxBits, (bits <= 53 ? 2 * loss : loss) + kGuardBits + 16);
    bits = std::min(kMaxBits, std::max(bits + 32, (static_cast<unsigned>(wanted) + 31) / 32 * 32));
  }
}

/// Lattice checks over grid points that differ only in n. Each point
/// escalates on its own, starting where the previous one settled, and points
/// run at the same precision share one ξ cache.
template <class Body>
Records lattice_group(const std::vector<GridPoint>& group, unsigned min_bits, Body&& body) {
  Records out;
  unsigned start = min_bits;
  std::optional<XiLattice<double>> dbl;
  std::optional<XiLattice<Mp>> mp;
  unsigned mp_bits = 0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    Records r = escalating(start, [&](auto real, unsigned bits) {
      using R = decltype(real);
      XiLattice<R>* base;
      if constexpr (std::is_same_v<R, double>) {
        if (!dbl) dbl.emplace(solution<double>(group.front(), bits));
        base = &*dbl;
      } else {
        if (!mp || mp_bits != bits) mp.emplace(solution<Mp>(group.front(), bits));
        mp_bits = bits;
        base = &*mp;
      }
      start = bits;
      auto lat = base->with_n(group[i].n);
      Records part = body(lat, i);
      // Earlier points were accepted at this precision, so the shared maximum
      // only trips on this point's own determinants.
      return std::make_pair(std::move(part), base->cancellation_bits());
    });
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

template <class R>
RecordParams sf_params(const QContext<R>& ctx, const Complex<R>& u, const Complex<R>& v) {
  RecordParams p;
  p.tau_re = RecordParams::re(ctx.tau());
  p.tau_im = RecordParams::im(ctx.tau());
  p.u_re = RecordParams::re(u);
  p.u_im = RecordParams::im(u);
  p.v_re = RecordParams::re(v);
  p.v_im = RecordParams::im(v);
  return p;
}

/// Evaluates one residual, turning library errors into skip records.
template <class F>
ResidualRecord guarded(const std::string& suite, const std::string& eq, const RecordParams& p, double tol, F&& f) {
  try {
    return make_record(suite, eq, p, f(), tol);
  } catch (const Error& e) {
    return skip_record(suite, eq, p, tol, failure_reason(e));
  }
}

Records expansion(const GridPoint& g, const SuiteConfig& cfg, int n) {
  return escalating(cfg.precision_bits, [&](auto real, unsigned bits) {
    using R = decltype(real);
    using C = Complex<R>;
    const auto ctx = context<R>(g.tau, bits);
    const C u = lift<R>(g.u), v = lift<R>(g.v);
    auto p = sf_params(ctx, u, v);
    p.n = n;
    p.m_re = n + 1;
    double loss = 0.0;
    Records out{guarded("special-functions", "expansion", p, tol_or(cfg, 1e-9), [&] {
      const C expanded = mu_integer_expansion(ctx, n, u, v, nullptr, &loss);
      return relative_residual(expanded, mu_general(ctx, MuArgs<R>{u, v, C(R(n + 1))}));
    })};
    return std::make_pair(std::move(out), loss);
  });
}

// The special-function and modular suites use α for the m slot and the
// expansion order for n.
Records special_functions(const GridPoint& g, const SuiteConfig& cfg) {
  return at_precision(cfg.precision_bits, [&](auto real) {
    using R = decltype(real);
    using C = Complex<R>;
    const auto ctx = context<R>(g.tau, cfg.precision_bits);
    const C u = lift<R>(g.u), v = lift<R>(g.v);
    const auto base = sf_params(ctx, u, v);
    const std::string s = "special-functions";
    Records out;
    out.push_back(guarded(s, "mu-general(1) = mu", base, tol_or(cfg, 1e-10), [&] {
      return relative_residual(mu_general(ctx, MuArgs<R>{u, v, C(R(1))}), mu(ctx, u, v));
    }));
    for (double alpha : {0.7, 1.0, 2.3, 4.0}) {
      auto p = base;
      p.m_re = alpha;
      const MuArgs<R> args{u, v, C(R(alpha))};
      out.push_back(guarded(s, "contiguous-up", p, tol_or(cfg, 1e-10), [&] { return contiguous_up_residual(ctx, args); }));
      out.push_back(
          guarded(s, "contiguous-down", p, tol_or(cfg, 1e-10), [&] { return contiguous_down_residual(ctx, args); }));
    }
    return out;
  });
}

Records modular(const GridPoint& g, const SuiteConfig& cfg) {
  return at_precision(cfg.precision_bits, [&](auto real) {
    using R = decltype(real);
    using C = Complex<R>;
    const auto ctx = context<R>(g.tau, cfg.precision_bits);
    const C u = lift<R>(g.u), v = lift<R>(g.v);
    const auto base = sf_params(ctx, u, v);
    const std::string s = "modular";
    const double tol = tol_or(cfg, 1e-8);
    Records out;
    out.push_back(guarded(s, "translation", base, tol, [&] { return mu_tilde_translation_residual(ctx, u, v); }));
    out.push_back(guarded(s, "inversion", base, tol, [&] { return mu_tilde_inversion_residual(ctx, u, v); }));
    try {
      out.push_back(warn_record(s, "inversion.printed", base,
                                mu_tilde_inversion_residual(ctx, u, v, InversionLaw::Printed), tol,
                                "printed sign and exponent of the inversion law"));
    } catch (const Error& e) {
      out.push_back(skip_record(s, "inversion.printed", base, tol, failure_reason(e)));
    }
    const C q2 = ctx.epow(C(R(2)));
    for (int n = 1; n <= 3; ++n) {
      auto p = base;
      p.n = n;
      out.push_back(guarded(s, "R_n completion", p, tol_or(cfg, 1e-9), [&] {
        const C lhs = mu_general(ctx, MuArgs<R>{u, v, C(R(n))}) + C(R(0), R(0.5)) * r_n_completion(ctx, n, u - v);
        return relative_residual(lhs, poly_F(n, u - v, q2) * mu_tilde(ctx, u, v));
      }));
    }
    return out;
  });
}

Records weyl_point(std::mt19937_64& rng, const SuiteConfig& cfg) {
  const double tol = tol_or(cfg, 1e-12);
  const auto p = random_constrained_point(rng);
  Records out;
  for (auto* check : {&check_group_relations, &check_translation_commutation, &check_shift_law,
                      &check_constraint_preservation}) {
    auto r = check(p, tol);
    out.insert(out.end(), r.begin(), r.end());
  }
  const auto images = word_images(p);
  for (const auto& id : evolution_ids()) out.push_back(evolution_residual(id, images, "weyl", {}, tol));
  out.push_back(evolution_residual(std::string(kPrintedT1Forward), images, "weyl", {}, tol));
  return out;
}

Records thm2_point(const std::vector<GridPoint>& group, const SuiteConfig& cfg) {
  return lattice_group(group, cfg.precision_bits, [&](auto& lat, std::size_t) {
    Records out;
    for (const auto& eq : thm2_equations()) out.push_back(check_thm2(lat, eq.id, tol_or(cfg, 1e-8)));
    const double tol = tol_or(cfg, 1e-10);
    out.push_back(bordered_xi_identity(lat, tol));
    out.push_back(shifted_xi_identity(lat, 1, tol));
    out.push_back(shifted_xi_identity(lat, -1, tol));
    return out;
  });
}

Records thm3_point(const std::vector<GridPoint>& group, const SuiteConfig& cfg) {
  return lattice_group(group, cfg.precision_bits, [&](auto& lat, std::size_t) {
    Records out;
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b)
        for (int c = 0; c <= 1; ++c) {
          const TildeIndex at{a, b, c};
          for (const auto& eq : thm3_equations()) {
            out.push_back(check_thm3(lat, eq.id, at, tol_or(cfg, 1e-8)));
            out.push_back(check_thm3_proportional(lat, eq.id, at, tol_or(cfg, 1e-10)));
          }
          out.push_back(check_thm3(lat, thm3_eq18_printed().id, at, tol_or(cfg, 1e-8)));
        }
    return out;
  });
}

Records e2e_point(const std::vector<GridPoint>& group, const SuiteConfig& cfg) {
  return lattice_group(group, cfg.precision_bits, [&](auto& lat, std::size_t) {
    Records out = check_theorem1(lat, tol_or(cfg, 1e-8));
    const auto params = lat.params().record_params();
    const double tol = tol_or(cfg, 1e-10);
    try {
      const auto b = solution_family_B(lat);
      const auto a = solution_family_A(lat, LatticeSite{1, lat.params().n + 1, 0});
      out.push_back(make_record("painleve-e2e", "family B = s2 A", params,
                                point_deviation(b, apply_generator(Generator::s2, a)), tol));
    } catch (const Error& e) {
      out.push_back(skip_record("painleve-e2e", "family B = s2 A", params, tol, failure_reason(e)));
    }
    return out;
  });
}

Records propagation_point(const std::vector<GridPoint>& group, const SuiteConfig& cfg) {
  const PropagationBlock block{-1, 0, 0, 1, 0, 1};
  return lattice_group(group, cfg.precision_bits, [&](auto& lat, std::size_t) {
    Records out;
    const auto params = lat.params().record_params();
    const double tol = tol_or(cfg, 1e-6);
    try {
      const auto result = lattice_propagate(lat, block);
      for (const auto& [site, value] : result.values) {
        if (!block.contains(site) || result.solved_by.at(site) == "seed") continue;
        out.push_back(make_record("propagation", "propagate " + to_string(site) + " by " + result.solved_by.at(site),
                                  params, relative_residual(value, lat.xi(site)), tol));
      }
    } catch (const Error& e) {
      auto r = make_record("propagation", "propagate", params, std::numeric_limits<double>::infinity(), tol);
      r.reason = failure_reason(e);
      out.push_back(r);
    }
    return out;
  });
}

Records gauge_point(const std::vector<GridPoint>& group, const SuiteConfig& cfg, std::mt19937_64& rng) {
  // Drawn before any evaluation so escalation cannot change the stream.
  std::vector<std::array<Complex<double>, 4>> draws;
  for (std::size_t i = 0; i < group.size(); ++i)
    draws.push_back({random_polar(rng, 0.5, 2.0), random_polar(rng, 0.5, 2.0), random_polar(rng, 0.5, 2.0),
                     random_polar(rng, 0.5, 2.0)});
  return lattice_group(group, cfg.precision_bits, [&](auto& lat, std::size_t i) {
    using R = std::decay_t<decltype(lat.params().u.re())>;
    auto to_r = [](const Complex<double>& z) { return Complex<R>(R(z.re()), R(z.im())); };
    const auto& d = draws[i];
    const Gauge<R> gauge{to_r(d[0]), {to_r(d[1]), to_r(d[2]), to_r(d[3])}};
    Records out;
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b)
        for (int cc = 0; cc <= 1; ++cc) {
          auto r = check_gauge(lat, TildeIndex{a, b, cc}, gauge, tol_or(cfg, 1e-12));
          out.insert(out.end(), r.begin(), r.end());
        }
    return out;
  });
}

/// Orders ids with embedded integers numerically ("eq2" before "eq11").
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const std::string da = a.substr(i, ie - i), db = b.substr(j, je - j);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace

std::vector<GridPoint> suite_grid(const SuiteConfig& cfg) {
  if (cfg.point) return {*cfg.point};
  if (cfg.grid < 0) throw DomainError("grid must be non-negative");
  using Z = std::complex<double>;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<Z, Z>> uv{{Z(0.23, 0.11), Z(0.41, 0.07)}};
  for (int i = 0; i < cfg.grid; ++i) {
    const Z du(uniform(rng, -0.1, 0.1), uniform(rng, -0.05, 0.05));
    const Z dv(uniform(rng, -0.1, 0.1), uniform(rng, -0.05, 0.05));
    uv.emplace_back(uv[0].first + du, uv[0].second + dv);
  }
  std::vector<GridPoint> out;
  for (Z tau : {Z(0, 1), Z(1.0 / 3.0, 1)})
    for (const auto& [u, v] : uv)
      for (double m : {1.3, 2.0, 3.7})
        for (double k : {-1.0, 0.0, 1.0, 0.4})
          for (int n = 0; n <= 3; ++n) out.push_back({tau, u, v, Z(m), n, Z(k)});
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"special-functions", "modular", "weyl",        "thm2",
                                              "thm3",              "painleve-e2e", "propagation", "gauge"};
  return names;
}

SuiteSummary summarize(const std::vector<ResidualRecord>& records) {
  SuiteSummary s;
  for (const auto& r : records) {
    if (r.skipped) {
      ++s.skipped;
      if (r.reason.rfind("WARN", 0) == 0) ++s.warned;
      if (r.reason.rfind("truncation", 0) == 0) ++s.truncated;
      continue;
    }
    r.pass ? ++s.passed : ++s.failed;
    if (std::isfinite(r.residual)) s.max_residual = std::max(s.max_residual, r.residual);
  }
  return s;
}

std::vector<ResidualRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw DomainError("unknown suite '" + name + "'");
  switch (cfg.precision_bits) {
    case 53: case 113: case 128: case 256: break;
    default: throw DomainError("precision must be one of 53, 113, 128, 256");
  }
  if (cfg.tol && !(*cfg.tol > 0)) throw DomainError("tol must be positive");

  Records out;
  auto append = [&](Records r) { out.insert(out.end(), r.begin(), r.end()); };
  std::mt19937_64 rng(cfg.seed);

  if (name == "weyl") {
    const int points = cfg.grid > 0 ? cfg.grid : 1;
    for (int i = 0; i < points; ++i) append(weyl_point(rng, cfg));
  } else {
    auto grid = suite_grid(cfg);
    // Suites that do not depend on (m, n, k) visit each (τ, u, v) once;
    // propagation is independent of n.
    auto unique_by = [&](auto key) {
      std::vector<GridPoint> kept;
      for (const auto& g : grid)
        if (std::none_of(kept.begin(), kept.end(), [&](const GridPoint& h) { return key(h) == key(g); }))
          kept.push_back(g);
      grid = kept;
    };
    if (name == "special-functions" || name == "modular")
      unique_by([](const GridPoint& g) { return std::make_tuple(g.tau, g.u, g.v); });
    if (name == "propagation")
      unique_by([](const GridPoint& g) { return std::make_tuple(g.tau, g.u, g.v, g.m, g.k); });

    if (name == "special-functions" || name == "modular") {
      for (const auto& g : grid) {
        if (name == "modular") {
          append(modular(g, cfg));
          continue;
        }
        append(special_functions(g, cfg));
        for (int n = 0; n <= 4; ++n) append(expansion(g, cfg, n));
      }
    } else {
      // Consecutive points that differ only in n form one lattice group.
      auto key = [](const GridPoint& g) { return std::make_tuple(g.tau, g.u, g.v, g.m, g.k); };
      for (std::size_t i = 0; i < grid.size();) {
        std::size_t j = i + 1;
        while (j < grid.size() && key(grid[j]) == key(grid[i])) ++j;
        const std::vector<GridPoint> group(grid.begin() + i, grid.begin() + j);
        if (name == "thm2") append(thm2_point(group, cfg));
        else if (name == "thm3") append(thm3_point(group, cfg));
        else if (name == "painleve-e2e") append(e2e_point(group, cfg));
        else if (name == "propagation") append(propagation_point(group, cfg));
        else append(gauge_point(group, cfg, rng));
        i = j;
      }
    }
  }
  for (auto& r : out) r.suite = name;
  std::stable_sort(out.begin(), out.end(),
                   [](const ResidualRecord& a, const ResidualRecord& b) { return natural_less(a.equation, b.equation); });
  return out;
}

}  // namespace qpainleve
