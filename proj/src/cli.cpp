#include "sechbloch/cli.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sechbloch/analytic.hpp"
#include "sechbloch/errors.hpp"
#include "sechbloch/sweep.hpp"
#include "sechbloch/verify.hpp"

namespace sechbloch::cli {

namespace {

// Thrown for argument problems detected after parsing; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double round_to_digits(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  double out = v;
  std::from_chars(buf, res.ptr, out, std::chars_format::general);
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const Value& v, int digits) {
  if (std::holds_alternative<double>(v)) return format_number(std::get<double>(v), digits);
  if (std::holds_alternative<std::string>(v)) return csv_escape(std::get<std::string>(v));
  return {};
}

nlohmann::ordered_json to_json(const Record& r, int digits) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r) {
    if (std::holds_alternative<double>(value)) {
      const double d = std::get<double>(value);
      obj[key] = std::isfinite(d) ? nlohmann::ordered_json(round_to_digits(d, digits)) : nullptr;
    } else if (std::holds_alternative<std::string>(value)) {
      obj[key] = std::get<std::string>(value);
    } else {
      obj[key] = nullptr;
    }
  }
  return obj;
}

struct CommonOptions {
  std::string format = "csv";
  std::string output;
  int precision = 12;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", o.output, "Write to this file instead of stdout");
  cmd->add_option("--precision", o.precision, "Significant digits in numeric output (6-17)")
      ->capture_default_str();
}

CliConfig make_config(const CommonOptions& o) {
  CliConfig cfg;
  cfg.output_format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (!o.output.empty()) cfg.output_path = o.output;
  cfg.precision_digits = o.precision;
  return cfg;
}

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw UsageError(std::string(name) + " must be a finite number >= 0");
  }
}

// Writes records to the configured sink.
void emit(const CliConfig& cfg, std::ostream& out, const std::vector<Record>& records, bool single) {
  std::ofstream file;
  std::ostream* os = &out;
  if (cfg.output_path) {
    file.open(*cfg.output_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + *cfg.output_path + "'");
    os = &file;
  }
  if (cfg.output_format == OutputFormat::json) {
    write_json(*os, records, cfg.precision_digits, single);
  } else {
    write_csv(*os, records, cfg.precision_digits);
  }
  os->flush();
}

Record estimate_fields(const char* prefix, const analytic::AsymptoticEstimate& e) {
  return {{std::string("w_") + prefix, e.value}, {std::string(prefix) + "_hint", e.validity_hint}};
}

int cmd_winf(const CliConfig& cfg, double alpha, double gamma_t, std::ostream& out) {
  require_nonnegative(alpha, "--alpha");
  require_nonnegative(gamma_t, "--gammaT");
  const auto p = analytic::DimensionlessParams::from_gamma_t(alpha, gamma_t);
  Record r{{"alpha", alpha}, {"gamma_t", gamma_t}, {"gamma", p.gamma}, {"w_exact", analytic::w_infinity(p)}};
  for (auto&& f : estimate_fields("weak_dephasing", analytic::w_weak_dephasing(p))) r.push_back(f);
  for (auto&& f : estimate_fields("strong_dephasing", analytic::w_strong_dephasing(p))) r.push_back(f);
  for (auto&& f : estimate_fields("large_area", analytic::w_large_area(p))) r.push_back(f);
  emit(cfg, out, {r}, true);
  return kExitOk;
}

int cmd_integrate(const CliConfig& cfg, double alpha, double gamma_t, std::ostream& out) {
  require_nonnegative(alpha, "--alpha");
  require_nonnegative(gamma_t, "--gammaT");
  const auto p = analytic::DimensionlessParams::from_gamma_t(alpha, gamma_t);
  const auto model = ode::SechPulseModel::from_dimensionless(p.alpha, p.gamma);
  const ode::Trajectory traj = ode::integrate(model, cfg.integrator);

  std::vector<Record> records;
  records.reserve(traj.size() + 1);
  for (const auto& s : traj.samples()) {
    records.push_back({{"record", std::string("sample")},
                       {"t_over_t", s.t / model.T},
                       {"u", s.state.u},
                       {"v", s.state.v},
                       {"w", s.state.w},
                       {"w_exact", std::monostate{}},
                       {"abs_diff", std::monostate{}}});
  }
  const auto& last = traj.back();
  const double exact = analytic::w_infinity(p);
  records.push_back({{"record", std::string("summary")},
                     {"t_over_t", last.t / model.T},
                     {"u", last.state.u},
                     {"v", last.state.v},
                     {"w", last.state.w},
                     {"w_exact", exact},
                     {"abs_diff", std::abs(last.state.w - exact)}});
  emit(cfg, out, records, false);
  return kExitOk;
}

int cmd_figure(const CliConfig& cfg, const std::string& which, int points, std::ostream& out) {
  sweep::Table table;
  if (which == "fig1") {
    table = sweep::figure_dephasing_axis(points > 0 ? points : 301);
  } else if (which == "fig2") {
    table = sweep::figure_area_axis(points > 0 ? points : 601);
  } else {
    throw UsageError("unknown figure '" + which + "' (expected fig1 or fig2)");
  }
  std::vector<Record> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    Record r;
    for (std::size_t i = 0; i < table.columns.size(); ++i) r.emplace_back(table.columns[i], row[i]);
    records.push_back(std::move(r));
  }
  emit(cfg, out, records, false);
  return kExitOk;
}

int cmd_verify(const std::string& level, const std::string& format, int digits, std::ostream& out,
               bool color) {
  const verify::Report report = verify::run(level == "full" ? verify::Level::full : verify::Level::fast);
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
      arr.push_back({{"check", c.name},
                     {"measured", round_to_digits(c.measured, digits)},
                     {"tolerance", c.tolerance},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    }
    out << arr.dump(2) << '\n';
  } else {
    const char* green = color ? "\033[32m" : "";
    const char* red = color ? "\033[31m" : "";
    const char* reset = color ? "\033[0m" : "";
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
      passed += c.passed ? 1 : 0;
      out << (c.passed ? green : red) << (c.passed ? "PASS" : "FAIL") << reset << "  " << c.name
          << "  measured=" << format_number(c.measured, 4)
          << "  tolerance=" << format_number(c.tolerance, 4);
      if (!c.detail.empty()) out << "  (" << c.detail << ")";
      out << '\n';
    }
    out << "verify " << level << ": " << passed << "/" << report.checks.size() << " checks passed in "
        << format_number(report.seconds, 3) << " s\n";
  }
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

void CliConfig::validate() const {
  if (precision_digits < 6 || precision_digits > 17) {
    throw UsageError("--precision must be between 6 and 17");
  }
  try {
    integrator.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<Record>& records, int digits) {
  if (records.empty()) return;
  const Record& head = records.front();
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << csv_escape(head[i].first);
  os << '\n';
  for (const Record& r : records) {
    if (r.size() != head.size()) throw std::logic_error("write_csv: ragged records");
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << render_csv(r[i].second, digits);
    os << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<Record>& records, int digits, bool single) {
  if (single && records.size() == 1) {
    os << to_json(records.front(), digits).dump(2) << '\n';
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Record& r : records) arr.push_back(to_json(r, digits));
  os << arr.dump(2) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"Resonant sech-pulse excitation with dephasing: exact final inversion, "
               "Bloch-equation integration and reference datasets.\n"
               "Dephasing is given as Gamma*T; internally gamma = Gamma*T / 2."};
  app.name("sechbloch");
  app.set_config("--config", "", "Read option values from a key=value file (flags override it)");
  app.require_subcommand(1);

  double alpha = 0.0;
  double gamma_t = 0.0;
  ode::IntegratorConfig integrator;
  integrator.sample_count = 201;

  CommonOptions winf_opts;
  auto* winf = app.add_subcommand("winf", "Exact w(inf) and its asymptotic estimates");
  winf->add_option("--alpha", alpha, "Pulse area / pi (alpha = Omega0 T)")->required();
  winf->add_option("--gammaT,--gamma-t", gamma_t, "Dephasing rate times pulse width")->required();
  add_common(winf, winf_opts);

  CommonOptions int_opts;
  auto* integ = app.add_subcommand("integrate", "Integrate the Bloch equation for the sech pulse");
  integ->add_option("--alpha", alpha, "Pulse area / pi (alpha = Omega0 T)")->required();
  integ->add_option("--gammaT,--gamma-t", gamma_t, "Dephasing rate times pulse width")->required();
  integ->add_option("--rel-tol", integrator.rel_tol, "Relative local error tolerance")->capture_default_str();
  integ->add_option("--abs-tol", integrator.abs_tol, "Absolute local error tolerance")->capture_default_str();
  integ->add_option("--window-L", integrator.window_halfwidth, "Integrate over [-L T, L T]")
      ->capture_default_str();
  integ->add_option("--points", integrator.sample_count, "Number of trajectory samples")
      ->capture_default_str();
  integ->add_option("--max-steps", integrator.max_steps, "Step budget")->capture_default_str();
  add_common(integ, int_opts);

  CommonOptions fig_opts;
  std::string which;
  int fig_points = 0;
  auto* fig = app.add_subcommand("figure", "Emit a reference dataset (fig1: against Gamma*T, fig2: against area)");
  fig->add_option("which", which, "fig1 or fig2")->required();
  fig->add_option("--points", fig_points, "Grid points (default 301 for fig1, 601 for fig2)");
  add_common(fig, fig_opts);

  std::string level = "fast";
  std::string verify_format = "text";
  int verify_precision = 12;
  auto* ver = app.add_subcommand("verify", "Run the self-check suite; exit 1 if any check fails");
  ver->add_option("level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  ver->add_option("--format", verify_format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  ver->add_option("--precision", verify_precision, "Significant digits in JSON output")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*winf) {
      CliConfig cfg = make_config(winf_opts);
      cfg.validate();
      return cmd_winf(cfg, alpha, gamma_t, out);
    }
    if (*integ) {
      CliConfig cfg = make_config(int_opts);
      cfg.integrator = integrator;
      cfg.validate();
      return cmd_integrate(cfg, alpha, gamma_t, out);
    }
    if (*fig) {
      CliConfig cfg = make_config(fig_opts);
      cfg.validate();
      if (fig_points != 0 && fig_points < 2) throw UsageError("--points must be >= 2");
      return cmd_figure(cfg, which, fig_points, out);
    }
    if (*ver) {
      if (verify_precision < 6 || verify_precision > 17) {
        throw UsageError("--precision must be between 6 and 17");
      }
      return cmd_verify(level, verify_format, verify_precision, out, color);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrationError& e) {
    err << "error: integration failed: " << e.what() << " (last good t=" << format_number(e.last_time(), 12)
        << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char* no_color = std::getenv("NO_COLOR");
  const bool color = (no_color == nullptr || *no_color == '\0') && ::isatty(::fileno(stdout)) != 0;
  return run(args, std::cout, std::cerr, color);
}

}  // namespace sechbloch::cli
