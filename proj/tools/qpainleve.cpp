// Command-line front end: single evaluations, verification suites and
// report comparison.

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpainleve/errors.hpp"
#include "qpainleve/q_special.hpp"
#include "qpainleve/report.hpp"
#include "qpainleve/suite.hpp"
#include "qpainleve/xi.hpp"

using namespace qpainleve;

namespace {

enum Exit { kPass = 0, kFailure = 1, kUsage = 2, kTruncation = 3 };

/// Flags that map onto RunConfig fields, in the order they are applied.
const std::vector<std::pair<std::string, std::string>> kConfigFlags{
    {"--tau", "tau"},   {"--u", "u"},       {"--v", "v"},         {"--m", "m"},           {"--n", "n"},
    {"--k", "k"},       {"--tol", "tol"},   {"--precision", "precision_bits"},             {"--seed", "seed"},
    {"--grid", "grid"}, {"--suite", "suite"}, {"--output", "output"}, {"--format", "format"}};

struct ConfigOptions {
  std::map<std::string, std::string> values;
  std::string file;

  void attach(CLI::App& cmd, bool with_suite) {
    for (const auto& [flag, key] : kConfigFlags) {
      if (!with_suite && (key == "suite" || key == "grid" || key == "seed")) continue;
      cmd.add_option(flag, values[key], help(key));
    }
    cmd.add_option("--config", file, "key=value file; flags override it");
  }

  /// Defaults, then the file, then the flags given on the command line.
  RunConfig resolve(const CLI::App& cmd) const {
    RunConfig cfg;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw DomainError("cannot read config file '" + file + "'");
      apply_config_file(cfg, in);
    }
    for (const auto& [flag, key] : kConfigFlags) {
      if (cmd.get_option_no_throw(flag) && cmd.count(flag)) set_field(cfg, key, values.at(key));
    }
    cfg.validate();
    return cfg;
  }

  static std::string help(const std::string& key) {
    if (key == "tau" || key == "u" || key == "v" || key == "m" || key == "k") return "complex value as re,im";
    if (key == "precision_bits") return "minimum working precision: 53, 113, 128 or 256";
    if (key == "tol") return "override every per-check tolerance";
    if (key == "grid") return "number of (u, v) perturbations, or random points for weyl";
    if (key == "format") return "json, csv or text";
    if (key == "output") return "report path (stdout when omitted)";
    return key;
  }
};

template <class R>
std::string fmt_real(const R& x, unsigned bits) {
  if constexpr (std::is_same_v<R, double>) {
    return fmt::format("{}", x);
  } else {
    std::ostringstream os;
    os << std::setprecision(static_cast<int>(std::ceil(bits * 0.30103)) + 1) << x;
    return os.str();
  }
}

struct EvalResult {
  std::string re, im;
  SeriesStats stats;
};

template <class R>
EvalResult evaluate(const std::string& target, const RunConfig& cfg, const std::complex<double>& z,
                    const std::complex<double>& alpha) {
  using C = Complex<R>;
  auto lift = [](const std::complex<double>& w) { return C(R(w.real()), R(w.imag())); };
  const QContext<R> ctx(lift(cfg.tau), SeriesPolicy::for_precision(cfg.precision_bits));
  const C u = lift(cfg.u), v = lift(cfg.v);
  SeriesStats stats;
  C value;
  if (target == "theta") {
    value = theta(ctx, lift(z), &stats);
  } else if (target == "mu") {
    value = mu(ctx, u, v, &stats);
  } else if (target == "mu-general") {
    value = mu_general(ctx, MuArgs<R>{u, v, lift(alpha)}, &stats);
  } else if (target == "r") {
    value = r_function(ctx, lift(z), &stats);
  } else if (target == "mu-tilde") {
    value = mu_tilde(ctx, u, v, &stats);
  } else {
    const SolutionParams<R> sp{ctx, u, v, lift(cfg.m), cfg.n, lift(cfg.k)};
    value = xi(sp, XiIndex<R>{sp.m, cfg.n, sp.k});
    // The certificate covers the 2n+1 distinct entries of the determinant.
    for (int s = 0; s <= 2 * cfg.n; ++s) {
      SeriesStats entry;
      mu_general(ctx, MuArgs<R>{u + v + sp.k * ctx.tau(), v, sp.m - C(R(s))}, &entry);
      stats.merge(entry);
    }
  }
  return {fmt_real(value.re(), cfg.precision_bits), fmt_real(value.im(), cfg.precision_bits), stats};
}

int cmd_eval(const std::string& target, const RunConfig& cfg, const std::complex<double>& z,
             const std::complex<double>& alpha) {
  EvalResult r;
  if (cfg.precision_bits <= 53) {
    r = evaluate<double>(target, cfg, z, alpha);
  } else {
    PrecisionScope scope(cfg.precision_bits);
    r = evaluate<Mp>(target, cfg, z, alpha);
  }

  std::vector<std::pair<std::string, std::string>> args;
  if (target == "theta" || target == "r") args = {{"z", fmt::format("{},{}", z.real(), z.imag())}};
  if (target == "mu" || target == "mu-general" || target == "mu-tilde" || target == "xi")
    args = {{"u", fmt::format("{},{}", cfg.u.real(), cfg.u.imag())}, {"v", fmt::format("{},{}", cfg.v.real(), cfg.v.imag())}};
  if (target == "mu-general") args.emplace_back("alpha", fmt::format("{},{}", alpha.real(), alpha.imag()));
  if (target == "xi") {
    args.emplace_back("m", fmt::format("{},{}", cfg.m.real(), cfg.m.imag()));
    args.emplace_back("n", std::to_string(cfg.n));
    args.emplace_back("k", fmt::format("{},{}", cfg.k.real(), cfg.k.imag()));
  }
  args.insert(args.begin(), {"tau", fmt::format("{},{}", cfg.tau.real(), cfg.tau.imag())});

  std::ostringstream out;
  if (cfg.format == ReportFormat::Json) {
    nlohmann::ordered_json j{{"target", target}};
    for (const auto& [k, v] : args) j[k] = v;
    j["precision_bits"] = cfg.precision_bits;
    j["value"] = {{"re", r.re}, {"im", r.im}};
    j["terms"] = r.stats.terms;
    j["tail_bound"] = r.stats.tail_bound;
    out << j.dump(2) << '\n';
  } else {
    out << target << '(';
    for (std::size_t i = 0; i < args.size(); ++i) out << (i ? "; " : "") << args[i].first << '=' << args[i].second;
    out << ") = " << r.re << ',' << r.im << '\n';
    out << "terms " << r.stats.terms << ", tail bound " << fmt::format("{:.3e}", r.stats.tail_bound)
        << ", precision " << cfg.precision_bits << " bits\n";
  }
  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!(f << out.str())) throw DomainError("cannot write '" + cfg.output + "'");
  }
  return kPass;
}

int cmd_verify(const RunConfig& cfg) {
  const auto records = run_suite(cfg.suite, cfg.suite_config());
  const auto s = summarize(records);
  if (cfg.output.empty()) {
    write_report(std::cout, cfg, records);
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    write_report(f, cfg, records);
    if (!f) throw DomainError("cannot write '" + cfg.output + "'");
  }
  std::cerr << fmt::format("{}: {} passed, {} failed, {} skipped ({} warn, {} truncation), max residual {:.3e}\n",
                           cfg.suite, s.passed, s.failed, s.skipped, s.warned, s.truncated, s.max_residual);
  return s.failed ? kFailure : kPass;
}

std::vector<ResidualRecord> load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  try {
    return read_report(in);
  } catch (const DomainError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

int cmd_report_diff(const std::string& before, const std::string& after) {
  const auto changes = diff_reports(load(before), load(after));
  for (const auto& c : changes) std::cout << c.key << ": " << c.what << '\n';
  return changes.empty() ? kPass : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of determinant solutions of a q-Painlevé system"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate one special function or determinant");
  std::string target;
  std::string z_text = "0", alpha_text;
  eval->add_option("target", target, "theta, mu, mu-general, xi, r or mu-tilde")
      ->required()
      ->check(CLI::IsMember({"theta", "mu", "mu-general", "xi", "r", "mu-tilde"}));
  eval->add_option("--z", z_text, "argument of theta and r, as re,im");
  eval->add_option("--alpha", alpha_text, "third argument of mu-general (default: m)");
  ConfigOptions eval_opts;
  eval_opts.attach(*eval, false);

  auto* verify = app.add_subcommand("verify", "run a verification suite and write a report");
  ConfigOptions verify_opts;
  verify_opts.attach(*verify, true);

  auto* diff = app.add_subcommand("report-diff", "compare two JSON or CSV reports");
  std::string before, after;
  diff->add_option("old", before)->required();
  diff->add_option("new", after)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eval) {
      const RunConfig cfg = eval_opts.resolve(*eval);
      const auto alpha = alpha_text.empty() ? cfg.m : parse_complex(alpha_text);
      return cmd_eval(target, cfg, parse_complex(z_text), alpha);
    }
    if (*verify) return cmd_verify(verify_opts.resolve(*verify));
    return cmd_report_diff(before, after);
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << '\n';
    return kTruncation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
