#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qpainleve/errors.hpp"
#include "qpainleve/report.hpp"

using namespace qpainleve;

namespace {

std::vector<ResidualRecord> sample() {
  RecordParams p;
  p.tau_im = 1;
  p.u_re = 0.23;
  p.m_re = 1.3;
  p.n = 2;
  p.k_re = 0.4;
  p.b = 1;
  return {make_record("thm3", "eq11", p, 3.5e-15, 1e-8),
          make_record("thm3", "eq12", p, 2e-3, 1e-8),
          skip_record("thm3", "eq13", p, 1e-8, "xi index (dm=0, n=-2, dk=0) is below n = -1"),
          warn_record("thm3", "eq18.printed", p, 0.7, 1e-8, "printed exponent, with \"quotes\", and commas"),
          make_record("thm3", "eq14", p, std::numeric_limits<double>::quiet_NaN(), 1e-8)};
}

std::string render(const std::vector<ResidualRecord>& rs, ReportFormat f) {
  RunConfig cfg;
  cfg.suite = "thm3";
  cfg.format = f;
  std::ostringstream out;
  write_report(out, cfg, rs);
  return out.str();
}

}  // namespace

TEST_CASE("complex and field parsing") {
  CHECK(parse_complex("0.5,-1.25") == std::complex<double>(0.5, -1.25));
  CHECK(parse_complex(" 2 ") == std::complex<double>(2, 0));
  CHECK_THROWS_AS(parse_complex("1,2,3"), DomainError);
  CHECK_THROWS_AS(parse_complex("1+2i"), DomainError);
  CHECK_THROWS_AS(parse_complex(""), DomainError);

  RunConfig cfg;
  set_field(cfg, "tau", "0.3333,1");
  set_field(cfg, "precision", "113");
  set_field(cfg, "format", "csv");
  CHECK(cfg.precision_bits == 113);
  CHECK(cfg.format == ReportFormat::Csv);
  CHECK(cfg.point_fields.count("tau") == 1);
  CHECK(cfg.suite_config().point.has_value());
  CHECK_THROWS_AS(set_field(cfg, "colour", "red"), DomainError);
  CHECK_THROWS_AS(set_field(cfg, "n", "1.5"), DomainError);

  cfg.tau = {0, -1};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.tau = {0, 1};
  cfg.precision_bits = 100;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.precision_bits = 53;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("config files") {
  RunConfig cfg;
  std::istringstream in("# comment\n\nsuite = thm3\n m=1.7 \nk=0.4,0\nseed=7\n");
  apply_config_file(cfg, in);
  CHECK(cfg.suite == "thm3");
  CHECK(cfg.m == std::complex<double>(1.7, 0));
  CHECK(cfg.seed == 7);
  // A later assignment, as a flag would make, wins.
  set_field(cfg, "m", "2");
  CHECK(cfg.m == std::complex<double>(2, 0));

  std::istringstream bad("suite thm3\n");
  CHECK_THROWS_WITH_AS(apply_config_file(cfg, bad), "config line 1: expected key=value", DomainError);
  std::istringstream unknown("grid=3\nwidth=2\n");
  CHECK_THROWS_AS(apply_config_file(cfg, unknown), DomainError);

  RunConfig defaults;
  const auto entries = config_entries(defaults);
  CHECK(entries.front() == std::pair<std::string, std::string>{"suite", "thm2"});
  CHECK(std::find(entries.begin(), entries.end(), std::pair<std::string, std::string>{"points", "default grid"}) !=
        entries.end());
}

TEST_CASE("reports survive a round trip") {
  const auto rs = sample();
  for (const auto f : {ReportFormat::Json, ReportFormat::Csv}) {
    CAPTURE(to_string(f));
    const std::string text = render(rs, f);
    CHECK(text.find("precision_bits") != std::string::npos);
    std::istringstream in(text);
    const auto back = read_report(in);
    REQUIRE(back.size() == rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(back[i].equation == rs[i].equation);
      CHECK(back[i].reason == rs[i].reason);
      CHECK(back[i].pass == rs[i].pass);
      CHECK(back[i].skipped == rs[i].skipped);
      CHECK(back[i].params.n == rs[i].params.n);
      CHECK(back[i].params.k_re == rs[i].params.k_re);
      if (std::isnan(rs[i].residual))
        CHECK(std::isnan(back[i].residual));
      else
        CHECK(back[i].residual == rs[i].residual);
    }
    CHECK(diff_reports(rs, back).empty());
    CHECK(render(rs, f) == text);
  }
  const std::string table = render(rs, ReportFormat::Text);
  CHECK(table.find("WARN") != std::string::npos);
  CHECK(table.find("FAIL") != std::string::npos);
}

TEST_CASE("report differences") {
  const auto before = sample();
  CHECK(diff_reports(before, before).empty());

  auto after = before;
  after[0].tolerance = 1e-16;
  after[0].pass = false;
  after[1].residual = 5e-3;   // same order of magnitude
  after[4].residual = 1e-12;  // nan -> finite
  after.pop_back();
  after.push_back(make_record("thm3", "eq15", before[0].params, 1e-14, 1e-8));
  const auto changes = diff_reports(before, after);
  REQUIRE(changes.size() == 3);
  CHECK(changes[0].what.find("PASS -> FAIL") != std::string::npos);
  CHECK(changes[0].what.find("tolerance") != std::string::npos);
  CHECK(changes[1].what == "added (PASS)");
  CHECK(changes[2].what == "removed (FAIL)");

  after = before;
  after[1].residual = 2e-5;
  REQUIRE(diff_reports(before, after).size() == 1);

  std::istringstream garbage("not a report\n");
  CHECK_THROWS_AS(read_report(garbage), DomainError);
  std::istringstream truncated("{\"records\": [");
  CHECK_THROWS_AS(read_report(truncated), DomainError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_report(empty), DomainError);
}
