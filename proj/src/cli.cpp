#include "jladder/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "jladder/constants.hpp"
#include "jladder/geometry.hpp"
#include "jladder/ladder.hpp"
#include "jladder/partitions.hpp"
#include "jladder/report.hpp"
#include "jladder/selberg.hpp"
#include "jladder/suite.hpp"
#include "jladder/verify.hpp"

namespace jladder::cli {

namespace {

constexpr const char* kFormulas[] = {"1.3", "1.4", "1.7", "1.8", "2.1", "2.10", "2.3", "2.4",
                                     "2.5", "2.7", "2.8", "2.9", "3.6", "3.7", "3.8", "3.10",
                                     "4.4", "4.6", "4.7", "5.5", "5.7", "5.8", "6.1", "6.10",
                                     "6.15", "6.16"};

// Raised for bad option values that CLI11 cannot validate on its own.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_parts(const std::string& s) {
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      parts.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad partition '" + s + "', expected parts like 2,2,2");
    }
  }
  return parts;
}

struct FSpec {
  WeightKind kind = WeightKind::one;
  int l = 0;  // custom means F(t) = t
};

FSpec parse_f(const std::string& s) {
  FSpec f;
  const auto power = [&](const std::string& prefix) {
    try {
      const int l = std::stoi(s.substr(prefix.size()));
      if (l < 1) throw UsageError("F power must be at least 1");
      return l;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("bad F '" + s + "'");
    }
  };
  if (s == "one") return f;
  if (s == "t") {
    f.kind = WeightKind::custom;
    return f;
  }
  if (s.rfind("s2l:", 0) == 0) {
    f.kind = WeightKind::s_pow;
    f.l = power("s2l:");
    return f;
  }
  if (s.rfind("s1_2l:", 0) == 0) {
    f.kind = WeightKind::s1_pow;
    f.l = power("s1_2l:");
    return f;
  }
  throw UsageError("unknown F '" + s + "', expected one, t, s2l:<l> or s1_2l:<l>");
}

void write_reports(const RunConfig& cfg, const std::vector<RatioReport>& reports,
                   std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw std::runtime_error("cannot write " + cfg.output.string());
    sink = &file;
  }
  if (cfg.format == OutputFormat::json) {
    nlohmann::json doc;
    doc["sweep"] = cfg.sweep;
    doc["tolerances"] = cfg.tolerances;
    doc["reports"] = to_json(reports);
    *sink << doc.dump(2) << '\n';
  } else {
    write_csv(*sink, reports);
  }
}

bool all_passed(const std::vector<RatioReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

std::string describe(const std::string& id, double T, double U, int n, const std::string& F) {
  std::ostringstream os;
  os << "formula " << id << " T=" << format_double(T) << " U=" << format_double(U) << " n=" << n
     << " F=" << F;
  return os.str();
}

// Everything the verify subcommand needs to evaluate formulas at one T.
class Verifier {
 public:
  Verifier(const RunConfig& cfg, Ladder& ladder) : cfg_(cfg), ladder_(ladder) {
    if (!cfg.table_path.empty()) fixed_ = load_table(cfg.table_path);
  }

  const LadderTable& table(double T, double U, int depth) {
    if (fixed_) {
      if (!fixed_->covers(T + U) || !fixed_->covers(T))
        throw DomainError("table " + cfg_.table_path.string() + " does not cover [T, T+U]");
      return *fixed_;
    }
    const double lo_needed = ladder_.phi1_iter(T, depth);
    if (!local_ || !local_->covers(T + U) || !local_->covers(lo_needed))
      local_ = covering_table(ladder_, T, U, depth);
    return *local_;
  }

  std::shared_ptr<const SelbergTable> selberg(double upper) {
    if (!selberg_ || selberg_->upper() < upper)
      selberg_ = std::make_shared<const SelbergTable>(upper);
    return selberg_;
  }

  WeightFunction weight(const FSpec& f, double upper) {
    switch (f.kind) {
      case WeightKind::one:
        return WeightFunction::one();
      case WeightKind::s_pow:
        return WeightFunction::s_pow(f.l, selberg(upper));
      case WeightKind::s1_pow:
        return WeightFunction::s1_pow(f.l, selberg(upper));
      case WeightKind::custom:
        break;
    }
    return WeightFunction::make_custom(
        "t", [](double t) { return t; }, [](double t) { return 0.5 * t * t; });
  }

  Ladder& ladder() { return ladder_; }
  double tol(const char* key) const { return cfg_.tolerances.at(key); }

 private:
  const RunConfig& cfg_;
  Ladder& ladder_;
  std::optional<LadderTable> fixed_;
  std::optional<LadderTable> local_;
  std::shared_ptr<const SelbergTable> selberg_;
};

struct VerifyArgs {
  std::vector<std::string> formulas;
  std::optional<double> T;
  std::optional<double> U;
  int n = 0;
  int l = 1;
  std::string F = "one";
  std::string partition;
  std::string partition2 = "3,3";
  bool sweep = false;
};

double default_u(const std::string& id, double T) {
  if (id == "5.5" || id == "5.7" || id == "5.8") return selberg_window(T);
  return theorem_window(T);
}

std::vector<RatioReport> evaluate(const std::string& id, double T, double U, const VerifyArgs& a,
                                  Verifier& v, std::ostream& err) {
  const FSpec fs = parse_f(a.F);
  const int n = a.n;
  std::vector<RatioReport> out;
  // S and S_1 are evaluated at iterates below T + U only.
  const auto weight_for = [&] { return v.weight(fs, T + U + 1.0); };

  if (id == "1.3") {
    out.push_back(global_hl_ratio(T, v.ladder().store()));
  } else if (id == "1.4") {
    out = tka_reports({0.05, 0.02, 0.01});
  } else if (id == "1.7" || id == "6.10") {
    for (auto& r : hl_window_ratio(T, U, v.table(T, U, 1)))
      if (r.formula_id == id) out.push_back(r);
  } else if (id == "1.8") {
    const double U1 = std::pow(T, 7.0 / 8.0);
    out.push_back(sixth_order_ratio(T, v.table(T, U1, 1), v.tol("quad")));
  } else if (id == "2.1" || id == "2.10") {
    const LadderTable& t = v.table(T, U, n + 1);
    const WeightFunction F = weight_for();
    out.push_back(id == "2.1" ? theorem_ratio(T, U, n, F, t) : corollary_ratio(T, U, n, F, t));
  } else if (id == "2.3" || id == "2.4" || id == "2.5" || id == "2.7" || id == "2.8" ||
             id == "2.9" || id == "6.1") {
    for (auto& r : geometry_report(interval_system(T, U, n, v.table(T, U, n + 1)), PiMode::exact))
      if (r.formula_id == id) out.push_back(r);
  } else if (id == "3.6" || id == "3.7") {
    // An explicit partition fixes n + 1 as the sum of its parts.
    std::vector<int> parts = a.partition.empty() ? std::vector<int>(n + 1, 1)
                                                 : parse_parts(a.partition);
    int total = 0;
    for (int x : parts) total += x;
    const ProperPartition p = make_partition(total, std::move(parts));
    const LadderTable& t = v.table(T, U, p.n_plus_1);
    out.push_back(factorization_ratio(p, T, U, weight_for(), t,
                                      p.n_plus_1 > 2 ? v.tol("deep") : v.tol("quad")));
  } else if (id == "3.8") {
    const std::vector<int> parts1 = a.partition.empty() ? std::vector<int>{2, 2, 2}
                                                        : parse_parts(a.partition);
    const std::vector<int> parts2 = parse_parts(a.partition2);
    int total = 0;
    for (int x : parts1) total += x;
    const ProperPartition p1 = make_partition(total, parts1);
    const ProperPartition p2 = make_partition(total, parts2);
    out.push_back(cross_partition_ratio(p1, p2, T, U, v.table(T, U, total), v.tol("deep")));
  } else if (id == "3.10") {
    out.push_back(tau_witness(T, U, v.table(T, U, 3)).report);
  } else if (id == "4.4") {
    out.push_back(full_factorization_ratio(T, U, n, weight_for(), v.table(T, U, n + 1),
                                           &v.ladder().store()));
  } else if (id == "4.6" || id == "4.7") {
    const int l = id == "4.7" ? 0 : a.l;
    if (l < 0 || l > n) throw UsageError("--l must lie in [0, n]");
    out.push_back(degenerate_factorization_ratio(T, U, n, l, weight_for(),
                                                 v.table(T, U, n + 1)));
  } else if (id == "5.5" || id == "5.7" || id == "5.8") {
    const auto sel = v.selberg(T + U + 1.0);
    if (id == "5.8") {
      const LadderTable& t = v.table(T, U, 1);
      for (auto which : {SelbergWhich::S, SelbergWhich::S1}) {
        RatioReport r = selberg_gen_ratio(T, U, 0, 1, which, t, sel);
        r.meta["instance_of"] = r.formula_id;
        r.formula_id = "5.8";
        out.push_back(r);
      }
    } else {
      const auto which = id == "5.5" ? SelbergWhich::S : SelbergWhich::S1;
      out.push_back(selberg_gen_ratio(T, U, n, a.l, which, v.table(T, U, n + 1), sel));
    }
  } else if (id == "6.15") {
    const ChainRuleResult c = chain_rule_detail(T, n, v.table(T, U, n + 1));
    RatioReport r;
    r.formula_id = id;
    r.T = T;
    r.U = U;
    r.n = n;
    r.F = "-";
    r.kind = ReportKind::hard;
    r.lhs = c.product;
    r.rhs = c.finite_difference;
    r.meta["deviation"] = c.deviation;
    finish(r, c.deviation < 1e-3);
    err << describe(id, T, U, n, "-") << " deviation " << format_double(c.deviation) << ' '
        << r.verdict << '\n';
    out.push_back(r);
  } else if (id == "6.16") {
    const WeightFunction F = weight_for();
    const IdentityResult res = identity_6_16_detail(T, U, n, F, v.table(T, U, n + 1));
    RatioReport r;
    r.formula_id = id;
    r.T = T;
    r.U = U;
    r.n = n;
    r.F = F.label;
    r.kind = ReportKind::hard;
    r.lhs = res.lhs;
    r.rhs = res.rhs;
    r.meta["residual"] = res.residual;
    finish(r, res.residual < 1e-5);
    err << describe(id, T, U, n, F.label) << " residual " << format_double(res.residual) << ' '
        << r.verdict << '\n';
    out.push_back(r);
  } else {
    throw UsageError("unknown formula " + id);
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  HlStore store(cfg.checkpoint_dir);
  Ladder ladder(store);
  Verifier v(cfg, ladder);
  std::vector<double> Ts;
  if (a.sweep) {
    Ts = cfg.sweep;
  } else {
    if (!a.T) throw UsageError("verify needs --T or --sweep");
    Ts = {*a.T};
  }
  std::vector<RatioReport> reports;
  for (const auto& id : a.formulas) {
    for (double T : Ts) {
      const double U = a.U ? *a.U : default_u(id, T);
      try {
        for (auto& r : evaluate(id, T, U, a, v, err)) reports.push_back(std::move(r));
      } catch (const UsageError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::exception& e) {
        err << "error: " << describe(id, T, U, a.n, a.F) << ": " << e.what() << '\n';
        return kExitAssertion;
      }
    }
  }
  if (a.sweep) apply_trends(reports);
  sort_reports(reports);
  write_reports(cfg, reports, out);
  return all_passed(reports) ? kExitOk : kExitAssertion;
}

int cmd_report(const RunConfig& cfg, bool diagnostics, bool tau, std::ostream& out,
               std::ostream& err) {
  HlStore store(cfg.checkpoint_dir);
  Ladder ladder(store);
  SuiteOptions opts;
  opts.sweep = cfg.sweep;
  opts.deep_rel_tol = cfg.tolerances.at("deep");
  opts.with_tau = tau;
  std::vector<RatioReport> reports = trend_suite(ladder, opts);
  if (diagnostics)
    for (auto& r : diagnostic_suite(ladder, cfg.sweep)) reports.push_back(std::move(r));
  sort_reports(reports);
  write_reports(cfg, reports, out);
  for (const auto& r : reports)
    if (!r.passed())
      err << describe(r.formula_id, r.T, r.U, r.n, r.F) << ' ' << r.verdict << '\n';
  return all_passed(reports) ? kExitOk : kExitAssertion;
}

}  // namespace

void validate(const RunConfig& cfg) {
  for (const auto& [key, tol] : cfg.tolerances)
    if (!(tol >= 1e-12 && tol <= 1e-2))
      throw std::invalid_argument("tolerance " + key + " outside [1e-12, 1e-2]");
  for (std::size_t i = 1; i < cfg.sweep.size(); ++i)
    if (!(cfg.sweep[i] > cfg.sweep[i - 1]))
      throw std::invalid_argument("sweep must be strictly increasing");
  for (double T : cfg.sweep)
    if (!(T >= kDomainFloor)) throw std::invalid_argument("sweep point below the domain floor");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacob's ladder: iterated Hardy-Littlewood integrals and their factorizations",
               "jladder"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string checkpoint_dir = "jladder_checkpoints";
  std::string out_path, format;
  double quad_tol = cfg.tolerances["quad"], deep_tol = cfg.tolerances["deep"];
  app.add_option("--checkpoint-dir", checkpoint_dir, "Directory of the A(T) checkpoint file")
      ->envname("JLADDER_CHECKPOINT_DIR")
      ->capture_default_str();

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default: standard output)");
    sub->add_option("--format", format, "csv or json (default: from the --out extension)")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--sweep-values", cfg.sweep, "T values of the sweep")
        ->capture_default_str()
        ->delimiter(',');
    sub->add_option("--deep-tol", deep_tol,
                    "Relative tolerance of product integrals with three or more factors")
        ->capture_default_str();
  };

  // ladder
  auto* ladder_cmd = app.add_subcommand("ladder", "Build or evaluate a ladder table");
  ladder_cmd->require_subcommand(1);
  double t_min = 0, t_max = 0, step = 0, c0 = 0, eval_t = 0;
  int eval_k = 1;
  std::string table_out, table_in;
  auto* build_cmd = ladder_cmd->add_subcommand("build", "Tabulate phi_1 on [t-min, t-max]");
  build_cmd->add_option("--t-min", t_min)->required();
  build_cmd->add_option("--t-max", t_max)->required();
  build_cmd->add_option("--step", step)->required()->check(CLI::PositiveNumber);
  build_cmd->add_option("--c0", c0)->capture_default_str();
  build_cmd->add_option("--out", table_out, "Table JSON")->required();
  auto* eval_cmd = ladder_cmd->add_subcommand("eval", "Evaluate phi_1^k(t)");
  eval_cmd->add_option("--table", table_in, "Table JSON (default: direct solve)");
  eval_cmd->add_option("--t", eval_t)->required();
  eval_cmd->add_option("--k", eval_k)->capture_default_str()->check(CLI::Range(0, kMaxIterate));

  // verify
  VerifyArgs va;
  std::string verify_table;
  auto* verify_cmd = app.add_subcommand("verify", "Evaluate formulas and emit ratio reports");
  verify_cmd->add_option("--formula", va.formulas, "Formula ids")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kFormulas), std::end(kFormulas))));
  verify_cmd->add_option("--T", va.T);
  verify_cmd->add_option("--U", va.U, "Window length (default depends on the formula)");
  verify_cmd->add_option("--n", va.n)->capture_default_str()->check(CLI::Range(0, kMaxIterate - 1));
  verify_cmd->add_option("--l", va.l, "Power or component index")->capture_default_str();
  verify_cmd->add_option("--F", va.F, "one, t, s2l:<l> or s1_2l:<l>")->capture_default_str();
  verify_cmd->add_option("--partition", va.partition, "Parts, e.g. 2,2,2");
  verify_cmd->add_option("--partition2", va.partition2)->capture_default_str();
  verify_cmd->add_flag("--sweep", va.sweep, "Evaluate on every sweep value with trend verdicts");
  verify_cmd->add_option("--table", verify_table, "Table JSON (default: build as needed)");
  verify_cmd->add_option("--quad-tol", quad_tol)->capture_default_str();
  add_sweep(verify_cmd);
  add_output(verify_cmd);

  // partitions
  int part_n = 0;
  bool part_list = false, part_count = false;
  auto* part_cmd = app.add_subcommand("partitions", "Partition counts and enumeration");
  part_cmd->add_option("--n", part_n)->required()->check(CLI::Range(1, kMaxPartitionCount));
  auto* list_flag = part_cmd->add_flag("--list", part_list, "Proper partitions, one per line");
  auto* count_flag = part_cmd->add_flag("--count", part_count, "p(n) and the Hardy-Ramanujan estimate");
  list_flag->excludes(count_flag);

  // zeros
  double z_lower = 0, z_upper = 0;
  auto* zeros_cmd = app.add_subcommand("zeros", "Zeros of Z(t) as CSV");
  zeros_cmd->add_option("--lower", z_lower)->capture_default_str()->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--upper", z_upper)->required()->check(CLI::Range(0.0, 1e6));
  zeros_cmd->add_option("--out", out_path);

  // hl
  std::vector<double> hl_T;
  auto* hl_cmd = app.add_subcommand("hl", "Hardy-Littlewood integral A(T)");
  hl_cmd->add_option("--T", hl_T)->required()->delimiter(',')->check(CLI::NonNegativeNumber);

  // report
  bool diagnostics = true, tau = false;
  auto* report_cmd = app.add_subcommand("report", "Trend suite and diagnostics over the sweep");
  report_cmd->add_flag("--diagnostics,!--no-diagnostics", diagnostics)->capture_default_str();
  report_cmd->add_flag("--tau", tau, "Include the tau witnesses");
  add_sweep(report_cmd);
  add_output(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  cfg.checkpoint_dir = checkpoint_dir;
  cfg.table_path = verify_table;
  cfg.output = out_path;
  cfg.tolerances["quad"] = quad_tol;
  cfg.tolerances["deep"] = deep_tol;
  if (format == "json" || (format.empty() && cfg.output.extension() == ".json"))
    cfg.format = OutputFormat::json;

  try {
    validate(cfg);

    if (*ladder_cmd) {
      HlStore store(cfg.checkpoint_dir);
      Ladder ladder(store, c0);
      if (*build_cmd) {
        const LadderTable t = build_table(ladder, t_min, t_max, step);
        save_table(t, table_out);
        err << "table [" << format_double(t.t_min()) << ", " << format_double(t.t_max()) << "] "
            << t.size() << " knots, max interpolation error " << format_double(t.max_interp_err())
            << '\n';
        return kExitOk;
      }
      const double v = table_in.empty() ? ladder.phi1_iter(eval_t, eval_k)
                                        : load_table(table_in).iter(eval_t, eval_k);
      out << "t,k,phi\n"
          << format_double(eval_t) << ',' << eval_k << ',' << format_double(v) << '\n';
      return kExitOk;
    }

    if (*verify_cmd) return cmd_verify(cfg, va, out, err);
    if (*report_cmd) return cmd_report(cfg, diagnostics, tau, out, err);

    if (*part_cmd) {
      if (part_list) {
        if (part_n < 2 || part_n > kMaxEnumeration)
          throw UsageError("--list needs 2 <= n <= 40");
        for (const auto& p : enumerate_proper(part_n)) {
          for (std::size_t i = 0; i < p.parts.size(); ++i) out << (i ? " " : "") << p.parts[i];
          out << '\n';
        }
      } else {
        out << partition_count(part_n) << '\n';
        out << "hardy_ramanujan " << format_double(hr_estimate(part_n)) << '\n';
      }
      return kExitOk;
    }

    if (*zeros_cmd) {
      if (!(z_upper > z_lower)) throw UsageError("--upper must exceed --lower");
      const ZeroList zl = find_zeros(z_lower, z_upper);
      const long offset = z_lower > 0.0 ? count_zeros(z_lower) : 0;
      std::ofstream file;
      std::ostream* sink = &out;
      if (!cfg.output.empty()) {
        file.open(cfg.output);
        sink = &file;
      }
      *sink << "index,ordinate,bracket_width\n";
      for (std::size_t i = 0; i < zl.ordinates.size(); ++i)
        *sink << offset + long(i) + 1 << ',' << format_double(zl.ordinates[i]) << ','
              << format_double(zl.bracket_width[i]) << '\n';
      if (!zl.suspicious.empty())
        err << zl.suspicious.size() << " grid intervals with a sign-free dip were subdivided\n";
      return kExitOk;
    }

    if (*hl_cmd) {
      HlStore store(cfg.checkpoint_dir);
      out << "T,A,ratio\n";
      for (double T : hl_T) {
        const double A = store.cumulative_hl(T);
        out << format_double(T) << ',' << format_double(A) << ','
            << (T > 1.0 ? format_double(A / (T * std::log(T))) : "nan") << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace jladder::cli
