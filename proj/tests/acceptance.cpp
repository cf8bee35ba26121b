// One PASS/FAIL line per acceptance criterion, each with its measured time
// against the budget. Exits nonzero when any criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "qpainleve/report.hpp"
#include "qpainleve/suite.hpp"

using namespace qpainleve;
using Records = std::vector<ResidualRecord>;

namespace {

struct Timed {
  Records records;
  double seconds;
};

Timed timed_suite(const std::string& name, SuiteConfig cfg = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Records r = run_suite(name, cfg);
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

Records select(const Records& all, const std::function<bool(const ResidualRecord&)>& keep) {
  Records out;
  for (const auto& r : all)
    if (keep(r)) out.push_back(r);
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

/// Points a record set covers, counted by their distinct parameter tuples.
std::size_t distinct_points(const Records& rs) {
  std::set<std::tuple<double, double, double, double, double, double>> seen;
  for (const auto& r : rs)
    seen.insert({r.params.tau_re, r.params.tau_im, r.params.u_re, r.params.u_im, r.params.v_re, r.params.v_im});
  return seen.size();
}

int failures = 0;

/// A criterion holds when every selected record is evaluated and passes,
/// there is at least one, the extra condition holds, and time is in budget.
void report(int id, const std::string& title, const Records& rs, double seconds, double budget,
            bool extra = true, const std::string& note = {}) {
  const auto s = summarize(rs);
  const bool ok = extra && !rs.empty() && s.failed == 0 && s.passed > 0 && seconds < budget;
  std::string detail = fmt::format("{} checked, {} failed, {} skipped, max residual {:.2e}, {:.2f} s of {:.0f} s",
                                   s.passed + s.failed, s.failed, s.skipped, s.max_residual, seconds, budget);
  if (!note.empty()) detail += "; " + note;
  fmt::print("{} {:>2} {}: {}\n", ok ? "PASS" : "FAIL", id, title, detail);
  if (!ok) ++failures;
}

std::string json_report(const std::string& suite, const SuiteConfig& sc) {
  RunConfig cfg;
  cfg.suite = suite;
  cfg.grid = sc.grid;
  cfg.seed = sc.seed;
  cfg.format = ReportFormat::Json;
  std::ostringstream out;
  write_report(out, cfg, run_suite(suite, sc));
  return out.str();
}

}  // namespace

int main() {
  // 20 (τ, u, v) points: two τ values times the base pair and nine perturbations.
  SuiteConfig sf;
  sf.grid = 9;
  const auto special = timed_suite("special-functions", sf);
  const auto mu_eq = select(special.records, [](const auto& r) { return r.equation == "mu-general(1) = mu"; });
  report(1, "mu-general at alpha = 1 equals mu", mu_eq, special.seconds, 1.0, distinct_points(mu_eq) == 20,
         fmt::format("{} points", distinct_points(mu_eq)));
  const auto expansion = select(special.records, [](const auto& r) { return r.equation == "expansion"; });
  std::set<int> orders;
  for (const auto& r : expansion) orders.insert(r.params.n);
  report(2, "finite expansion for n = 0..4", expansion, special.seconds, 2.0, orders == std::set<int>{0, 1, 2, 3, 4});
  const auto contiguous = select(special.records, [](const auto& r) { return starts_with(r.equation, "contiguous"); });
  report(3, "contiguous relations", contiguous, special.seconds, 2.0, distinct_points(contiguous) >= 10);

  SuiteConfig mod;
  mod.grid = 4;
  const auto modular = timed_suite("modular", mod);
  const auto laws = select(modular.records, [](const auto& r) { return !r.skipped || !starts_with(r.reason, "WARN"); });
  const bool printed_flagged = !select(modular.records, [](const auto& r) {
                                  return r.equation == "inversion.printed" && starts_with(r.reason, "WARN");
                                }).empty();
  report(4, "modular laws and R_n completion", laws, modular.seconds, 5.0,
         distinct_points(laws) >= 10 && printed_flagged, "printed inversion law reported as WARN");

  SuiteConfig weyl_cfg;
  weyl_cfg.grid = 50;
  const auto weyl = timed_suite("weyl", weyl_cfg);
  const auto relations = select(weyl.records, [](const auto& r) { return !starts_with(r.reason, "WARN"); });
  report(5, "Weyl group relations at 50 random points", relations, weyl.seconds, 2.0);

  const auto thm2 = timed_suite("thm2");
  const auto bilinear = select(thm2.records, [](const auto& r) { return starts_with(r.equation, "eq"); });
  const bool non_integer = !select(bilinear, [](const auto& r) { return r.params.m_re != 2.0 && r.params.k_re == 0.4; })
                                .empty();
  report(6, "lattice relations eq1-eq8 over the default grid", bilinear, thm2.seconds, 20.0, non_integer);

  const auto thm3 = timed_suite("thm3");
  // The printed and corrected third exponents, 2a+2b+c and 2a-b+c, differ only when b = 1.
  const auto printed18 = select(thm3.records, [](const auto& r) {
    return r.equation == "eq18.printed" && r.params.b == 1 && starts_with(r.reason, "WARN");
  });
  const auto detected = select(printed18, [](const auto& r) { return r.residual > 1e-3; });
  const auto thm3_checked = select(thm3.records, [](const auto& r) { return !starts_with(r.reason, "WARN"); });
  report(7, "specialised relations eq11-eq18 at (a,b,c) in {0,1}^3", thm3_checked, thm3.seconds, 20.0,
         !printed18.empty() && detected.size() == printed18.size(),
         fmt::format("printed eq18 off by O(1) at {} of {} evaluated points with b = 1", detected.size(),
                     printed18.size()));

  const auto e2e = timed_suite("painleve-e2e");
  const auto evolution = select(e2e.records, [](const auto& r) {
    return !starts_with(r.reason, "WARN") && (r.params.n <= 2 || r.equation == "family B = s2 A");
  });
  report(8, "evolution of the determinant solution and family B = s2(A)", evolution, e2e.seconds, 10.0);

  const auto identities = select(thm2.records, [](const auto& r) { return !starts_with(r.equation, "eq"); });
  report(9, "bordered and shifted determinant identities", identities, thm2.seconds, 5.0, true,
         "timed with the thm2 run that contains them");

  const auto propagation = timed_suite("propagation");
  report(10, "propagation from six initial values", propagation.records, propagation.seconds, 5.0);

  const auto t0 = std::chrono::steady_clock::now();
  bool identical = true;
  for (const auto& [suite, grid] : std::vector<std::pair<std::string, int>>{{"weyl", 50}, {"thm2", 10}}) {
    SuiteConfig sc;
    sc.grid = grid;
    identical = identical && json_report(suite, sc) == json_report(suite, sc);
  }
  const double det_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("{} 11 identical config and seed give byte-identical reports: weyl and thm2 JSON, {:.2f} s\n",
             identical ? "PASS" : "FAIL", det_seconds);
  if (!identical) ++failures;

  return failures == 0 ? 0 : 1;
}
