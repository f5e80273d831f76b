#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlambert/classifier.hpp"
#include "qlambert/deformed_exp.hpp"
#include "qlambert/errors.hpp"
#include "qlambert/exact_numbers.hpp"
#include "qlambert/lambert_wq.hpp"
#include "qlambert/verification.hpp"

namespace qlambert::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Plain, Json, Csv };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Plain;
}

std::string plain_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json json_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Globals {
  std::string format = "plain";
  double tol = SolverOptions{}.tol;
  int max_iter = SolverOptions{}.max_iter;

  SolverOptions solver() const { return {tol, max_iter}; }
  Json metadata() const { return Json{{"tol", tol}, {"max_iter", max_iter}}; }
};

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string subject;
  double q = 0;
  double z = 0;
  std::string branch = "upper";
};

int cmd_eval(const EvalArgs& a, const Globals& g, Format fmt, std::ostream& out) {
  const Branch branch = parse_branch(a.branch);
  const bool uses_branch = a.subject == "wq" || a.subject == "dwq";
  double value = 0;
  std::optional<SolveResult> solve;
  if (a.subject == "expq") {
    value = exp_q(a.q, a.z);
  } else if (a.subject == "lnq") {
    value = ln_q(a.q, a.z);
  } else if (a.subject == "dlnq") {
    value = dlnq_dz(a.q, a.z);
  } else if (a.subject == "wq") {
    solve = wq(a.q, a.z, branch, g.solver());
    value = solve->w;
  } else {
    value = dwq_dz(a.q, a.z, branch, g.solver());
  }

  switch (fmt) {
    case Format::Plain:
      out << plain_num(value) << "\n";
      if (solve) {
        out << "branch: " << to_string(solve->branch) << "\n"
            << "residual: " << plain_num(solve->residual) << "\n"
            << "iterations: " << solve->iterations << "\n";
      }
      break;
    case Format::Json: {
      Json doc{{"command", "eval"}, {"subject", a.subject}, {"q", a.q}, {"z", a.z}};
      if (uses_branch) doc["branch"] = to_string(branch);
      doc["value"] = json_num(value);
      if (solve) {
        doc["residual"] = solve->residual;
        doc["iterations"] = solve->iterations;
      }
      doc["metadata"] = g.metadata();
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "subject,q,z" << (uses_branch ? ",branch" : "") << ",value"
          << (solve ? ",residual,iterations" : "") << "\n";
      out << a.subject << "," << csv_num(a.q) << "," << csv_num(a.z);
      if (uses_branch) out << "," << to_string(branch);
      out << "," << csv_num(value);
      if (solve) out << "," << csv_num(solve->residual) << "," << solve->iterations;
      out << "\n";
      break;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// branch-point

int cmd_branch_point(double q, const Globals& g, Format fmt, std::ostream& out) {
  const auto bp = branch_point(q);
  switch (fmt) {
    case Format::Plain:
      if (bp) {
        out << "z_b = " << plain_num(bp->z_b) << "\nw_b = " << plain_num(bp->w_b) << "\n";
      } else {
        out << "none\n";
      }
      break;
    case Format::Json: {
      Json doc{{"command", "branch-point"}, {"q", q}};
      doc["branch_point"] = bp ? Json{{"z_b", bp->z_b}, {"w_b", bp->w_b}} : Json(nullptr);
      doc["metadata"] = g.metadata();
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "q,z_b,w_b\n" << csv_num(q) << ",";
      if (bp) out << csv_num(bp->z_b) << "," << csv_num(bp->w_b);
      else out << ",";
      out << "\n";
      break;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::string subject;
  std::optional<std::string> q, z, z0, r;
};

ExactNumber required_exact(const std::optional<std::string>& text, const char* flag,
                           const std::string& subject) {
  if (!text) throw ConfigError("classify " + subject + " requires " + flag);
  return parse_exact(*text);
}

int cmd_classify(const ClassifyArgs& a, const Globals& g, Format fmt, std::ostream& out) {
  Classification c;
  Json inputs = Json::object();
  if (a.subject == "wq" || a.subject == "expq") {
    const ExactNumber q = required_exact(a.q, "--q", a.subject);
    const ExactNumber z = required_exact(a.z, "--z", a.subject);
    inputs = {{"q", to_string(q)}, {"z", to_string(z)}};
    c = a.subject == "wq" ? classify_wq(q, z) : classify_expq(q, z);
  } else if (a.subject == "lnq-deriv") {
    const ExactNumber q = required_exact(a.q, "--q", a.subject);
    const ExactNumber z0 = required_exact(a.z0 ? a.z0 : a.z, "--z0", a.subject);
    inputs = {{"q", to_string(q)}, {"z0", to_string(z0)}};
    c = classify_lnq_derivative(q, z0);
  } else {
    const ExactNumber r = required_exact(a.r, "--r", a.subject);
    inputs = {{"r", to_string(r)}};
    c = classify_tower(r);
  }

  switch (fmt) {
    case Format::Plain:
      out << "verdict: " << to_string(c.verdict) << "\n"
          << "rule: " << to_string(c.rule) << "\n";
      if (c.exact_value) out << "exact_value: " << to_string(*c.exact_value) << "\n";
      out << "justification:\n";
      for (const auto& fact : c.justification) out << "  - " << fact << "\n";
      break;
    case Format::Json: {
      Json doc{{"command", "classify"},
               {"subject", a.subject},
               {"inputs", inputs},
               {"verdict", to_string(c.verdict)},
               {"rule", to_string(c.rule)},
               {"justification", c.justification}};
      if (c.exact_value) {
        doc["exact_value"] = to_string(*c.exact_value);
        doc["exact_value_real"] = to_real(*c.exact_value);
      }
      doc["metadata"] = g.metadata();
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::Csv: {
      std::string chain;
      for (const auto& fact : c.justification) chain += (chain.empty() ? "" : "; ") + fact;
      out << "subject,verdict,rule,exact_value,justification\n"
          << a.subject << "," << to_string(c.verdict) << "," << to_string(c.rule) << ","
          << (c.exact_value ? csv_field(to_string(*c.exact_value)) : "") << ","
          << csv_field(chain) << "\n";
      break;
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// table

struct TableArgs {
  std::string subject;
  double q = 0;
  double z_from = 0;
  double z_to = 0;
  int steps = 0;
  std::string branch = "upper";
};

int cmd_table(const TableArgs& a, const Globals& g, Format fmt, std::ostream& out,
              std::ostream& err) {
  if (!(a.z_from < a.z_to) || a.steps < 2) {
    throw ConfigError("table needs --z-from < --z-to and --steps >= 2");
  }
  const Branch branch = parse_branch(a.branch);
  const bool is_wq = a.subject == "wq";
  std::optional<Interval> domain;
  if (is_wq) domain = branch_domain(a.q, branch);

  struct Row {
    double z, value, residual;
  };
  std::vector<Row> rows;
  int skipped = 0;
  for (int i = 0; i < a.steps; ++i) {
    const double z =
        i == a.steps - 1 ? a.z_to : a.z_from + (a.z_to - a.z_from) * i / (a.steps - 1);
    if (is_wq) {
      if (!domain->contains(z)) {
        ++skipped;
        continue;
      }
      const SolveResult r = wq(a.q, z, branch, g.solver());
      rows.push_back({z, r.w, r.residual});
    } else {
      rows.push_back({z, exp_q(a.q, z), 0.0});
    }
  }
  if (rows.empty()) {
    throw DomainError("no grid point of [" + plain_num(a.z_from) + ", " + plain_num(a.z_to) +
                      "] lies in the " + std::string(to_string(branch)) + " branch domain " +
                      domain->to_string());
  }
  if (skipped > 0) {
    err << "warning: " << skipped << " of " << a.steps << " points outside the "
        << to_string(branch) << " branch domain " << domain->to_string() << " were skipped\n";
  }

  switch (fmt) {
    case Format::Csv:
      out << (is_wq ? "z,value,residual\n" : "z,value\n");
      for (const Row& r : rows) {
        out << csv_num(r.z) << "," << csv_num(r.value);
        if (is_wq) out << "," << csv_num(r.residual);
        out << "\n";
      }
      break;
    case Format::Plain:
      for (const Row& r : rows) {
        out << plain_num(r.z) << "\t" << plain_num(r.value);
        if (is_wq) out << "\t" << plain_num(r.residual);
        out << "\n";
      }
      break;
    case Format::Json: {
      Json doc{{"command", "table"}, {"subject", a.subject}, {"q", a.q}};
      if (is_wq) doc["branch"] = to_string(branch);
      Json list = Json::array();
      for (const Row& r : rows) {
        Json row{{"z", r.z}, {"value", json_num(r.value)}};
        if (is_wq) row["residual"] = r.residual;
        list.push_back(std::move(row));
      }
      doc["rows"] = std::move(list);
      doc["skipped"] = skipped;
      doc["metadata"] = g.metadata();
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, const ScanSettings& scan, const Globals& g, Format fmt,
               std::ostream& out, std::ostream& err) {
  // Reject bad scan bounds before spending time on other suites.
  if (suite == "scan" || suite == "all") algebraicity_scan(0.5, scan.degree_max, scan.coeff_max, scan.eps);

  SuiteReport rep;
  const SolverOptions opts = g.solver();
  if (suite == "residual" || suite == "all") rep.append(run_residual_suite(opts));
  if (suite == "derivative" || suite == "all") rep.append(run_derivative_suite(opts));
  if (suite == "eq5" || suite == "all") rep.append(run_identity_suite(opts));
  if (suite == "branch" || suite == "all") rep.append(run_branch_suite(opts));
  if (suite == "scan" || suite == "all") rep.append(run_scan_suite(scan));

  const auto failures = rep.failures();
  switch (fmt) {
    case Format::Plain: {
      std::vector<std::string> order;
      for (const auto& c : rep.checks) {
        if (std::find(order.begin(), order.end(), c.suite) == order.end()) order.push_back(c.suite);
      }
      for (const auto& name : order) {
        int total = 0, ok = 0, skipped = 0;
        double worst = 0;
        for (const auto& c : rep.checks) {
          if (c.suite != name) continue;
          if (c.skipped) {
            ++skipped;
            continue;
          }
          ++total;
          ok += c.passed ? 1 : 0;
          if (std::isfinite(c.measured)) worst = std::max(worst, c.measured);
        }
        out << name << ": " << ok << "/" << total << " passed (max measured "
            << plain_num(worst) << ")";
        if (skipped > 0) out << ", " << skipped << " skipped below double resolution";
        out << "\n";
      }
      out << (failures.empty() ? "PASS" : "FAIL") << "\n";
      break;
    }
    case Format::Json: {
      Json checks = Json::array();
      for (const auto& c : rep.checks) {
        checks.push_back({{"suite", c.suite},
                          {"name", c.name},
                          {"passed", c.passed},
                          {"skipped", c.skipped},
                          {"measured", json_num(c.measured)},
                          {"threshold", c.threshold}});
      }
      Json failed = Json::array();
      for (const auto& c : failures) failed.push_back(c.suite + ": " + c.name);
      Json doc{{"command", "verify"},
               {"suite", suite},
               {"passed", failures.empty()},
               {"checks", std::move(checks)},
               {"failures", std::move(failed)},
               {"metadata", g.metadata()}};
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "suite,name,passed,skipped,measured,threshold\n";
      for (const auto& c : rep.checks) {
        out << c.suite << "," << csv_field(c.name) << "," << (c.passed ? "true" : "false") << ","
            << (c.skipped ? "true" : "false") << "," << csv_num(c.measured) << ","
            << csv_num(c.threshold) << "\n";
      }
      break;
  }
  for (const auto& c : failures) {
    err << "FAILED " << c.suite << ": " << c.name << " (measured " << plain_num(c.measured)
        << ", threshold " << plain_num(c.threshold) << ")\n";
  }
  return failures.empty() ? kSuccess : kDomainOrCheckFailure;
}

void report_error(const std::string& kind, const std::string& message, int code, Format fmt,
                  std::ostream& out, std::ostream& err) {
  err << "error: " << message << "\n";
  if (fmt == Format::Json) {
    Json doc{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
    out << doc.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsallis q-exponential, Lambert-Tsallis W_q and transcendence classification"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  const auto formats = CLI::IsMember({"plain", "json", "csv"});
  app.add_option("--format", g.format, "Output format")->check(formats);
  app.add_option("--tol", g.tol, "Solver residual tolerance (relative to max(1,|z|))");
  app.add_option("--max-iter", g.max_iter, "Solver iteration cap");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate expq, lnq, dlnq, wq or dwq numerically");
  eval->add_option("subject", eval_args.subject)
      ->required()
      ->check(CLI::IsMember({"expq", "lnq", "dlnq", "wq", "dwq"}));
  eval->add_option("--q", eval_args.q)->required();
  eval->add_option("--z", eval_args.z)->required();
  eval->add_option("--branch", eval_args.branch)
      ->check(CLI::IsMember({"upper", "lower"}, CLI::ignore_case));

  double bp_q = 0;
  auto* bp = app.add_subcommand("branch-point", "Branch point (z_b, w_b) of W_q");
  bp->add_option("--q", bp_q)->required();

  ClassifyArgs cls_args;
  auto* cls = app.add_subcommand("classify", "Arithmetic nature for exact inputs");
  cls->add_option("subject", cls_args.subject)
      ->required()
      ->check(CLI::IsMember({"wq", "expq", "lnq-deriv", "tower"}));
  cls->add_option("--q", cls_args.q, "Exact number, e.g. 3/2, 1+sqrt(2), pi");
  cls->add_option("--z", cls_args.z);
  cls->add_option("--z0", cls_args.z0);
  cls->add_option("--r", cls_args.r);

  TableArgs tbl_args;
  auto* tbl = app.add_subcommand("table", "Tabulate wq or expq over a z range");
  tbl->add_option("subject", tbl_args.subject)
      ->required()
      ->check(CLI::IsMember({"wq", "expq"}));
  tbl->add_option("--q", tbl_args.q)->required();
  tbl->add_option("--z-from", tbl_args.z_from)->required();
  tbl->add_option("--z-to", tbl_args.z_to)->required();
  tbl->add_option("--steps", tbl_args.steps)->required();
  tbl->add_option("--branch", tbl_args.branch)
      ->check(CLI::IsMember({"upper", "lower"}, CLI::ignore_case));

  std::string suite = "all";
  ScanSettings scan;
  auto* ver = app.add_subcommand("verify", "Run verification suites; exit 1 on any failure");
  ver->add_option("--suite", suite)
      ->check(CLI::IsMember({"residual", "derivative", "eq5", "branch", "scan", "all"}));
  ver->add_option("--degree-max", scan.degree_max, "Scan degree bound (<= 4)");
  ver->add_option("--coeff-max", scan.coeff_max, "Scan coefficient bound (<= 100)");
  ver->add_option("--eps", scan.eps, "Scan hit threshold");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    const bool help = e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success);
    if (help) {
      app.exit(e, out, err);
      return kSuccess;
    }
    report_error("parse", e.what(), kParseOrConfigFailure, parse_format(g.format), out, err);
    return kParseOrConfigFailure;
  }

  const Format fmt = parse_format(g.format);
  try {
    if (!(g.tol > 0.0) || g.max_iter < 1) throw ConfigError("--tol must be > 0 and --max-iter >= 1");
    if (eval->parsed()) return cmd_eval(eval_args, g, fmt, out);
    if (bp->parsed()) return cmd_branch_point(bp_q, g, fmt, out);
    if (cls->parsed()) return cmd_classify(cls_args, g, fmt, out);
    if (tbl->parsed()) {
      // Tables default to CSV unless a format was given.
      const Format tf = app.get_option("--format")->count() > 0 ? fmt : Format::Csv;
      return cmd_table(tbl_args, g, tf, out, err);
    }
    return cmd_verify(suite, scan, g, fmt, out, err);
  } catch (const MalformedInput& e) {
    report_error("parse", e.what(), kParseOrConfigFailure, fmt, out, err);
    return kParseOrConfigFailure;
  } catch (const ConfigError& e) {
    report_error("config", e.what(), kParseOrConfigFailure, fmt, out, err);
    return kParseOrConfigFailure;
  } catch (const DomainError& e) {
    report_error("domain", e.what(), kDomainOrCheckFailure, fmt, out, err);
    return kDomainOrCheckFailure;
  } catch (const std::exception& e) {
    report_error("failure", e.what(), kDomainOrCheckFailure, fmt, out, err);
    return kDomainOrCheckFailure;
  }
}

}  // namespace qlambert::cli
