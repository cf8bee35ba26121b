#include "qpainleve/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "json.hpp"
#include "qpainleve/errors.hpp"

namespace qpainleve {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw DomainError("'" + text + "' is not a number");
  return x;
}

template <class Int>
Int parse_int(const std::string& text) {
  const std::string t = trim(text);
  Int x = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw DomainError("'" + text + "' is not an integer");
  return x;
}

std::string fmt_complex(const std::complex<double>& z) { return fmt::format("{},{}", z.real(), z.imag()); }

const std::vector<std::string> kColumns{"suite", "equation", "tau_re", "tau_im", "u_re",     "u_im",      "v_re",
                                        "v_im",  "m_re",     "m_im",   "n",      "k_re",     "k_im",      "a",
                                        "b",     "c",        "residual", "tolerance", "pass", "skipped", "reason"};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else if (ch != '\r') {
      cells.back() += ch;
    }
  }
  if (quoted) throw DomainError("unterminated quote in '" + line + "'");
  return cells;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw DomainError("'" + s + "' is not a boolean");
}

ordered_json params_json(const RecordParams& p) {
  return ordered_json{{"tau_re", p.tau_re}, {"tau_im", p.tau_im}, {"u_re", p.u_re}, {"u_im", p.u_im},
                      {"v_re", p.v_re},     {"v_im", p.v_im},     {"m_re", p.m_re}, {"m_im", p.m_im},
                      {"n", p.n},           {"k_re", p.k_re},     {"k_im", p.k_im}, {"a", p.a},
                      {"b", p.b},           {"c", p.c}};
}

// Non-finite residuals are written as null and read back as NaN.
ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json record_json(const ResidualRecord& r) {
  return ordered_json{{"suite", r.suite},
                      {"equation", r.equation},
                      {"params", params_json(r.params)},
                      {"residual", number_or_null(r.residual)},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass},
                      {"skipped", r.skipped},
                      {"reason", r.reason.empty() ? ordered_json(nullptr) : ordered_json(r.reason)}};
}

ResidualRecord record_from_json(const ordered_json& j) {
  ResidualRecord r;
  r.suite = j.at("suite").get<std::string>();
  r.equation = j.at("equation").get<std::string>();
  const auto& p = j.at("params");
  r.params.tau_re = p.at("tau_re").get<double>();
  r.params.tau_im = p.at("tau_im").get<double>();
  r.params.u_re = p.at("u_re").get<double>();
  r.params.u_im = p.at("u_im").get<double>();
  r.params.v_re = p.at("v_re").get<double>();
  r.params.v_im = p.at("v_im").get<double>();
  r.params.m_re = p.at("m_re").get<double>();
  r.params.m_im = p.at("m_im").get<double>();
  r.params.n = p.at("n").get<int>();
  r.params.k_re = p.at("k_re").get<double>();
  r.params.k_im = p.at("k_im").get<double>();
  r.params.a = p.at("a").get<int>();
  r.params.b = p.at("b").get<int>();
  r.params.c = p.at("c").get<int>();
  const auto& res = j.at("residual");
  r.residual = res.is_null() ? std::numeric_limits<double>::quiet_NaN() : res.get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.skipped = j.at("skipped").get<bool>();
  const auto& reason = j.at("reason");
  r.reason = reason.is_null() ? std::string() : reason.get<std::string>();
  return r;
}

std::vector<std::string> csv_cells(const ResidualRecord& r) {
  const auto& p = r.params;
  return {r.suite,
          r.equation,
          fmt::format("{}", p.tau_re),
          fmt::format("{}", p.tau_im),
          fmt::format("{}", p.u_re),
          fmt::format("{}", p.u_im),
          fmt::format("{}", p.v_re),
          fmt::format("{}", p.v_im),
          fmt::format("{}", p.m_re),
          fmt::format("{}", p.m_im),
          std::to_string(p.n),
          fmt::format("{}", p.k_re),
          fmt::format("{}", p.k_im),
          std::to_string(p.a),
          std::to_string(p.b),
          std::to_string(p.c),
          fmt::format("{}", r.residual),
          fmt::format("{}", r.tolerance),
          r.pass ? "true" : "false",
          r.skipped ? "true" : "false",
          r.reason};
}

ResidualRecord record_from_csv(const std::vector<std::string>& c) {
  if (c.size() != kColumns.size())
    throw DomainError(fmt::format("expected {} CSV columns, found {}", kColumns.size(), c.size()));
  ResidualRecord r;
  r.suite = c[0];
  r.equation = c[1];
  auto& p = r.params;
  p.tau_re = parse_double(c[2]);
  p.tau_im = parse_double(c[3]);
  p.u_re = parse_double(c[4]);
  p.u_im = parse_double(c[5]);
  p.v_re = parse_double(c[6]);
  p.v_im = parse_double(c[7]);
  p.m_re = parse_double(c[8]);
  p.m_im = parse_double(c[9]);
  p.n = parse_int<int>(c[10]);
  p.k_re = parse_double(c[11]);
  p.k_im = parse_double(c[12]);
  p.a = parse_int<int>(c[13]);
  p.b = parse_int<int>(c[14]);
  p.c = parse_int<int>(c[15]);
  r.residual = parse_double(c[16]);
  r.tolerance = parse_double(c[17]);
  r.pass = parse_bool(c[18]);
  r.skipped = parse_bool(c[19]);
  r.reason = c[20];
  return r;
}

std::string status(const ResidualRecord& r) {
  if (!r.skipped) return r.pass ? "PASS" : "FAIL";
  return r.reason.rfind("WARN", 0) == 0 ? "WARN" : "SKIP";
}

ordered_json summary_json(const SuiteSummary& s) {
  return ordered_json{{"passed", s.passed},   {"failed", s.failed},       {"skipped", s.skipped},
                      {"warned", s.warned},   {"truncated", s.truncated}, {"max_residual", s.max_residual}};
}

void write_json(std::ostream& out, const RunConfig& cfg, const std::vector<ResidualRecord>& records) {
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : config_entries(cfg)) config[key] = value;
  out << "{\n\"config\": " << config.dump() << ",\n\"summary\": " << summary_json(summarize(records)).dump()
      << ",\n\"records\": [";
  for (std::size_t i = 0; i < records.size(); ++i) out << (i ? ",\n" : "\n") << record_json(records[i]).dump();
  out << "\n]}\n";
}

void write_csv(std::ostream& out, const RunConfig& cfg, const std::vector<ResidualRecord>& records) {
  for (const auto& [key, value] : config_entries(cfg)) out << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const auto& r : records) {
    const auto cells = csv_cells(r);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << (i < 2 || i + 1 == cells.size() ? csv_quote(cells[i]) : cells[i]);
    }
    out << '\n';
  }
}

void write_text(std::ostream& out, const RunConfig& cfg, const std::vector<ResidualRecord>& records) {
  for (const auto& [key, value] : config_entries(cfg)) out << fmt::format("# {:<15} {}\n", key, value);
  const auto s = summarize(records);
  out << fmt::format("# passed {}, failed {}, skipped {} ({} warn, {} truncation), max residual {:.3e}\n", s.passed,
                     s.failed, s.skipped, s.warned, s.truncated, s.max_residual);
  std::size_t eq_width = 8;
  for (const auto& r : records) eq_width = std::max(eq_width, r.equation.size());
  const std::string head = fmt::format("{:<{}}  {:>3}  {:>17}  {:>17}  {:>5}  {:>10}  {:>8}  {:<4}  {}", "equation",
                                       eq_width, "n", "m", "k", "abc", "residual", "tol", "stat", "reason");
  out << head << '\n' << std::string(trim(head).size(), '-') << '\n';
  for (const auto& r : records) {
    const auto& p = r.params;
    out << fmt::format("{:<{}}  {:>3}  {:>17}  {:>17}  {:>5}  {:>10.3e}  {:>8.1e}  {:<4}  {}", r.equation, eq_width, p.n,
                       fmt_complex({p.m_re, p.m_im}), fmt_complex({p.k_re, p.k_im}),
                       fmt::format("{}{}{}", p.a, p.b, p.c), r.residual, r.tolerance, status(r), r.reason);
    out << '\n';
  }
}

std::string record_key(const ResidualRecord& r) {
  const auto& p = r.params;
  return fmt::format("{} {} tau={},{} u={},{} v={},{} m={},{} n={} k={},{} abc={}{}{}", r.suite, r.equation, p.tau_re,
                     p.tau_im, p.u_re, p.u_im, p.v_re, p.v_im, p.m_re, p.m_im, p.n, p.k_re, p.k_im, p.a, p.b, p.c);
}

/// Keys made unique by an occurrence count, for records that share parameters.
std::vector<std::string> unique_keys(const std::vector<ResidualRecord>& records) {
  std::map<std::string, int> seen;
  std::vector<std::string> keys;
  for (const auto& r : records) {
    std::string k = record_key(r);
    const int count = seen[k]++;
    if (count) k += fmt::format(" #{}", count + 1);
    keys.push_back(std::move(k));
  }
  return keys;
}

// floor(log10 residual); exact zeros and non-finite values get their own buckets.
std::string magnitude_bucket(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return "inf";
  if (x == 0.0) return "zero";
  return fmt::format("1e{}", static_cast<int>(std::floor(std::log10(std::abs(x)))));
}

}  // namespace

void RunConfig::validate() const {
  if (!(tau.imag() > 0)) throw DomainError("tau must have positive imaginary part");
  if (tol && !(*tol > 0)) throw DomainError("tol must be positive");
  switch (precision_bits) {
    case 53: case 113: case 128: case 256: break;
    default: throw DomainError("precision must be one of 53, 113, 128, 256");
  }
  if (grid < 0) throw DomainError("grid must be non-negative");
}

SuiteConfig RunConfig::suite_config() const {
  SuiteConfig s;
  s.tol = tol;
  s.precision_bits = precision_bits;
  s.seed = seed;
  s.grid = grid;
  if (!point_fields.empty()) s.point = GridPoint{tau, u, v, m, n, k};
  return s;
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  if (text.find(',', comma + 1) != std::string::npos) throw DomainError("'" + text + "' is not a complex number");
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

ReportFormat parse_format(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "text") return ReportFormat::Text;
  throw DomainError("format must be json, csv or text");
}

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Text: return "text";
  }
  return {};
}

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "tau" || key == "u" || key == "v" || key == "m" || key == "k") {
    const auto z = parse_complex(value);
    (key == "tau" ? cfg.tau : key == "u" ? cfg.u : key == "v" ? cfg.v : key == "m" ? cfg.m : cfg.k) = z;
    cfg.point_fields.insert(key);
  } else if (key == "n") {
    cfg.n = parse_int<int>(value);
    cfg.point_fields.insert(key);
  } else if (key == "tol") {
    cfg.tol = parse_double(value);
  } else if (key == "precision_bits" || key == "precision") {
    cfg.precision_bits = parse_int<unsigned>(value);
  } else if (key == "seed") {
    cfg.seed = parse_int<std::uint64_t>(value);
  } else if (key == "grid") {
    cfg.grid = parse_int<int>(value);
  } else if (key == "suite") {
    cfg.suite = trim(value);
  } else if (key == "output") {
    cfg.output = trim(value);
  } else if (key == "format") {
    cfg.format = parse_format(trim(value));
  } else {
    throw DomainError("unknown configuration key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw DomainError(fmt::format("config line {}: expected key=value", number));
    try {
      set_field(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const DomainError& e) {
      throw DomainError(fmt::format("config line {}: {}", number, e.what()));
    }
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out{{"suite", cfg.suite}};
  if (cfg.point_fields.empty()) {
    out.emplace_back("points", "default grid");
  } else {
    out.emplace_back("points", "single");
    out.emplace_back("tau", fmt_complex(cfg.tau));
    out.emplace_back("u", fmt_complex(cfg.u));
    out.emplace_back("v", fmt_complex(cfg.v));
    out.emplace_back("m", fmt_complex(cfg.m));
    out.emplace_back("n", std::to_string(cfg.n));
    out.emplace_back("k", fmt_complex(cfg.k));
  }
  out.emplace_back("tol", cfg.tol ? fmt::format("{}", *cfg.tol) : "per-check default");
  out.emplace_back("precision_bits", std::to_string(cfg.precision_bits));
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("grid", std::to_string(cfg.grid));
  return out;
}

void write_report(std::ostream& out, const RunConfig& cfg, const std::vector<ResidualRecord>& records) {
  switch (cfg.format) {
    case ReportFormat::Json: write_json(out, cfg, records); break;
    case ReportFormat::Csv: write_csv(out, cfg, records); break;
    case ReportFormat::Text: write_text(out, cfg, records); break;
  }
}

std::vector<ResidualRecord> read_report(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw DomainError("empty report");
  std::vector<ResidualRecord> out;
  if (text[first] == '{') {
    try {
      const auto j = ordered_json::parse(text);
      for (const auto& r : j.at("records")) out.push_back(record_from_json(r));
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("malformed JSON report: ") + e.what());
    }
    return out;
  }
  std::size_t pos = 0;
  bool header = false;
  int number = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++number;
    if (trim(line).empty() || line[0] == '#') continue;
    if (!header) {
      if (csv_split(line) != kColumns) throw DomainError("not a JSON or CSV report");
      header = true;
      continue;
    }
    try {
      out.push_back(record_from_csv(csv_split(line)));
    } catch (const DomainError& e) {
      throw DomainError(fmt::format("report line {}: {}", number, e.what()));
    }
  }
  if (!header) throw DomainError("not a JSON or CSV report");
  return out;
}

std::vector<ReportChange> diff_reports(const std::vector<ResidualRecord>& before,
                                       const std::vector<ResidualRecord>& after) {
  const auto old_keys = unique_keys(before), new_keys = unique_keys(after);
  std::map<std::string, std::size_t> old_index;
  for (std::size_t i = 0; i < before.size(); ++i) old_index[old_keys[i]] = i;

  std::vector<ReportChange> out;
  std::map<std::string, bool> matched;
  for (std::size_t i = 0; i < after.size(); ++i) {
    const auto& key = new_keys[i];
    const auto it = old_index.find(key);
    if (it == old_index.end()) {
      out.push_back({key, "added (" + status(after[i]) + ")"});
      continue;
    }
    matched[key] = true;
    const auto& a = before[it->second];
    const auto& b = after[i];
    std::vector<std::string> what;
    if (status(a) != status(b)) what.push_back(status(a) + " -> " + status(b));
    if (a.tolerance != b.tolerance) what.push_back(fmt::format("tolerance {} -> {}", a.tolerance, b.tolerance));
    if (magnitude_bucket(a.residual) != magnitude_bucket(b.residual))
      what.push_back(fmt::format("residual {:.3e} -> {:.3e}", a.residual, b.residual));
    if (!what.empty()) {
      std::string joined;
      for (const auto& w : what) joined += (joined.empty() ? "" : "; ") + w;
      out.push_back({key, joined});
    }
  }
  for (std::size_t i = 0; i < before.size(); ++i)
    if (!matched.count(old_keys[i])) out.push_back({old_keys[i], "removed (" + status(before[i]) + ")"});
  return out;
}

}  // namespace qpainleve
