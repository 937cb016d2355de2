#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dualbound/adauctions.hpp"
#include "dualbound/capital.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/lp_solver.hpp"
#include "dualbound/lp_text.hpp"
#include "dualbound/vbp.hpp"

namespace dualbound::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string problem;
  std::optional<long> d;
  std::optional<std::string> n;
  std::optional<std::string> epsilon;
  std::string cert = "optimal";
  std::string mode = "exact";
  double tol = 1e-9;
  std::optional<std::string> range;
  std::optional<std::string> out;
  std::optional<std::string> instance;
  bool dual = false;
  bool symmetric = false;
  bool include_pruned = false;
  bool no_timing = false;
};

// Largest parameter solved inside a sweep, per problem and mode.
long sweep_solve_limit(const std::string& problem, bool exact) {
  if (problem == "vbp") return exact ? 12 : 40;
  if (problem == "adauctions") return exact ? 4 : 5;
  return exact ? 5 : 5;
}

long require_d(const Options& o) {
  if (!o.d) throw UsageError("--d is required for " + o.problem);
  return *o.d;
}

BigInt require_n_big(const Options& o) {
  if (!o.n) throw UsageError("--n is required for capital");
  Rational v;
  try {
    v = Rational::parse(*o.n);
  } catch (const std::exception&) {
    throw UsageError("--n: not a number: " + *o.n);
  }
  if (!v.is_integer() || v.sign() <= 0) throw UsageError("--n must be a positive integer");
  return v.num();
}

long require_n(const Options& o) {
  const BigInt n = require_n_big(o);
  if (!n.fits_slong_p()) throw UsageError("--n is too large for this command");
  return n.get_si();
}

Rational require_eps(const Options& o) {
  if (!o.epsilon) throw UsageError("--epsilon is required for capital");
  try {
    return Rational::parse(*o.epsilon);
  } catch (const std::exception&) {
    throw UsageError("--epsilon: not a number: " + *o.epsilon);
  }
}

vbp::CertificateKind require_kind(const Options& o) {
  const auto k = vbp::parse_kind(o.cert);
  if (!k) throw UsageError("--cert must be optimal or suboptimal");
  return *k;
}

bool exact_mode(const Options& o) {
  if (o.mode == "exact") return true;
  if (o.mode == "float") return false;
  throw UsageError("--mode must be exact or float");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for " + path);
}

LinearProgram build_program(const Options& o) {
  LinearProgram p;
  if (o.problem == "vbp") {
    p = vbp::primal(require_d(o), o.include_pruned);
  } else if (o.problem == "adauctions") {
    const long d = require_d(o);
    p = o.symmetric ? adauctions::primal_symmetric(d) : adauctions::primal(d);
  } else if (o.instance) {
    capital::GenericCapitalInstance g;
    try {
      g = capital::GenericCapitalInstance::parse(read_file(*o.instance));
    } catch (const std::invalid_argument& e) {
      throw UsageError(*o.instance + ": " + e.what());
    }
    p = capital::primal(g);
  } else {
    p = capital::primal(require_n(o));
  }
  return o.dual ? dualize(p) : p;
}

void check_exact_caps(const Options& o) {
  if (o.problem == "adauctions" && !o.symmetric && require_d(o) > 4) {
    throw SizeLimitError("exact ad-auctions solves are limited to d <= 4 (use --symmetric or --mode float)");
  }
  if (o.problem == "capital" && !o.instance && require_n(o) > 6) {
    throw SizeLimitError("exact capital solves are limited to n <= 6");
  }
}

Solution solve(const LinearProgram& p, const Options& o, bool exact) {
  if (exact) {
    check_exact_caps(o);
    return solve_exact(p);
  }
  return solve_float(p, o.tol);
}

Scalar difference(const Scalar& a, const Scalar& b, bool absolute) {
  if (is_exact(a) && is_exact(b)) {
    Rational r = std::get<Rational>(a) - std::get<Rational>(b);
    return absolute ? r.abs() : r;
  }
  HighPrecFloat r = sub(to_float(a, Round::Nearest), to_float(b, Round::Nearest), Round::Nearest);
  return absolute && r.sign() < 0 ? -r : r;
}

// ---- bound ----

int cmd_bound(const Options& o, std::ostream& out, std::ostream& err) {
  out << "problem: " << o.problem << "\n";
  if (o.problem == "vbp") {
    const long d = require_d(o);
    const auto kind = require_kind(o);
    const auto b = vbp::bound(d, kind);
    out << "d: " << d << "\n";
    out << "certificate: " << vbp::to_string(kind) << "\n";
    out << "certificate value: " << format_scalar(b.exact_ratio_value) << "\n";
    out << "analytic bound: " << format_scalar(b.analytic_lower_bound) << "\n";
    if (is_exact(b.exact_ratio_value)) out << "certificate value decimal: " << format_decimal(b.exact_ratio_value) << "\n";
    return kOk;
  }
  if (o.problem == "adauctions") {
    const long d = require_d(o);
    const auto b = adauctions::bound(d);
    out << "d: " << d << "\n";
    out << "n: " << adauctions::instance(d).n.get_str() << "\n";
    out << "certificate value: " << b.certificate_value << "\n";
    out << "ratio: " << b.ratio << "\n";
    out << "ratio decimal: " << b.ratio.decimal(12) << "\n";
    return kOk;
  }
  const BigInt n = require_n_big(o);
  const Rational eps = require_eps(o);
  if (eps.sign() <= 0 || eps >= Rational(1)) throw UsageError("--epsilon must lie in (0, 1)");
  const BigInt cutoff = (Rational(n) * eps).floor();
  out << "n: " << n.get_str() << "\n";
  out << "epsilon: " << eps << "\n";
  out << "cutoff: " << cutoff.get_str() << "\n";
  if (cutoff == 0) err << "warning: floor(n * epsilon) = 0, every w is zero and the bound is 0\n";
  if (n.fits_slong_p() && n <= 1'000'000) {
    const auto b = capital::bound(n.get_si(), eps);
    out << "certificate value: " << format_scalar(b.exact_ratio_value) << "\n";
    out << "analytic form: " << format_scalar(b.analytic_form) << "\n";
  } else {
    out << "certificate value: " << format_scalar(capital::closed_form_bound(n, eps)) << " (closed form)\n";
  }
  return kOk;
}

// ---- solve ----

int cmd_solve(const Options& o, std::ostream& out) {
  const bool exact = exact_mode(o);
  const LinearProgram p = build_program(o);
  const Solution s = solve(p, o, exact);
  out << "problem: " << o.problem << (o.dual ? " (dual)" : "") << "\n";
  out << "mode: " << o.mode << "\n";
  out << "variables: " << p.variables().size() << "\n";
  out << "constraints: " << p.constraints().size() << "\n";
  out << "status: " << to_string(s.status) << "\n";
  if (s.status != SolveStatus::Optimal) return kInfeasible;
  out << "objective: " << format_scalar(s.objective) << "\n";
  out << "dual objective: " << format_scalar(s.dual_objective) << "\n";
  out << "gap: " << format_scalar(duality_gap(p, s)) << "\n";
  if (s.uncertainty) out << "uncertainty: " << format_scalar(HighPrecFloat::from_double(*s.uncertainty)) << "\n";
  out << "pivots: " << s.pivot_count << "\n";
  if (o.problem == "adauctions" && !o.dual) {
    const Rational n(adauctions::instance(require_d(o)).n);
    if (is_exact(s.objective)) {
      out << "ratio: " << (std::get<Rational>(s.objective) / n) << "\n";
    } else {
      out << "ratio: " << format_scalar(div(to_float(s.objective, Round::Nearest),
                                            HighPrecFloat::from_rational(n, Round::Nearest), Round::Nearest))
          << "\n";
    }
  }
  return kOk;
}

// ---- verify ----

void print_report(const FeasibilityReport& r, std::ostream& out) {
  out << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
  out << "worst slack: " << format_scalar(r.worst_slack) << "\n";
  out << "tightest constraint: " << r.tightest_constraint << "\n";
  out << "rows checked: " << r.constraints_checked << "\n";
  if (!r.sign_violations.empty()) {
    out << "sign violations:";
    for (const auto& v : r.sign_violations) out << " " << v;
    out << "\n";
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  FeasibilityReport r;
  out << "problem: " << o.problem << "\n";
  if (o.problem == "vbp") {
    const long d = require_d(o);
    const auto kind = require_kind(o);
    out << "d: " << d << "\ncertificate: " << vbp::to_string(kind) << "\n";
    r = vbp::verify(d, kind);
  } else if (o.problem == "adauctions") {
    const long d = require_d(o);
    out << "d: " << d << "\n";
    r = adauctions::verify(d);
    const auto zero = std::count_if(r.per_constraint_slack.begin(), r.per_constraint_slack.end(),
                                    [](const auto& e) { return sign(e.second) == 0; });
    out << "zero-slack rows: " << zero << "/" << r.per_constraint_slack.size() << "\n";
  } else {
    const long n = require_n(o);
    const Rational eps = require_eps(o);
    out << "n: " << n << "\nepsilon: " << eps << "\n";
    r = capital::verify(n, eps);
  }
  print_report(r, out);
  return r.feasible ? kOk : kInfeasible;
}

// ---- sweep ----

std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  auto to_long = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("--range: bad value '" + s + "'");
    }
  };
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (const auto dots = part.find(".."); dots != std::string::npos) {
      const long a = to_long(part.substr(0, dots));
      const long b = to_long(part.substr(dots + 2));
      if (b < a) throw UsageError("--range: empty interval " + part);
      for (long v = a; v <= b; ++v) out.push_back(v);
    } else {
      out.push_back(to_long(part));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("--range is empty");
  return out;
}

BoundReport sweep_row(const Options& o, long param, bool exact) {
  const auto start = std::chrono::steady_clock::now();
  BoundReport r;
  r.problem = o.problem;
  r.param = param;
  Options local = o;
  std::optional<LinearProgram> program;
  bool max_type = false;
  if (o.problem == "vbp") {
    const auto kind = require_kind(o);
    r.cert_kind = std::string(vbp::to_string(kind));
    r.certificate_value = vbp::bound(param, kind).exact_ratio_value;
    r.feasible = vbp::verify(param, kind).feasible;
    local.d = param;
  } else if (o.problem == "adauctions") {
    r.cert_kind = "tight";
    r.certificate_value = adauctions::bound(param).certificate_value;
    r.feasible = adauctions::verify(param).feasible;
    local.d = param;
    max_type = true;
  } else {
    const Rational eps = require_eps(o);
    r.epsilon = eps.str();
    r.cert_kind = "epsilon";
    r.certificate_value = capital::bound(param, eps).exact_ratio_value;
    r.feasible = capital::verify(param, eps).feasible;
    local.n = std::to_string(param);
  }
  local.dual = false;
  local.instance.reset();
  if (param <= sweep_solve_limit(o.problem, exact)) {
    const LinearProgram p = build_program(local);
    const Solution s = solve(p, local, exact);
    if (s.status == SolveStatus::Optimal) {
      r.lp_optimum = s.objective;
      r.gap = difference(s.objective, r.certificate_value, max_type);
    }
  }
  if (!o.no_timing) {
    r.wall_time_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  }
  return r;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const bool exact = exact_mode(o);
  if (!o.range) throw UsageError("--range is required for sweep");
  const std::vector<long> params = parse_range(*o.range);
  if (o.problem == "capital") require_eps(o);
  if (o.problem == "vbp") require_kind(o);

  std::vector<BoundReport> rows(params.size());
  std::vector<std::exception_ptr> errors(params.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(params.size(), std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) {
      try {
        rows[i] = sweep_row(o, params[i], exact);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  for (const auto& r : rows) csv << csv_row(r) << "\n";
  if (o.out) {
    write_file(*o.out, csv.str());
    out << "wrote " << rows.size() << " rows to " << *o.out << "\n";
  } else {
    out << csv.str();
  }
  return kOk;
}

// ---- export ----

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  const LinearProgram p = build_program(o);
  const std::string text = write_lp_text(p);
  std::ostream& info = o.out ? out : err;
  if (o.out) {
    write_file(*o.out, text);
  } else {
    out << text;
  }
  info << "variables: " << p.variables().size() << "\n";
  info << "constraints: " << p.constraints().size() << "\n";
  info << "objective offset: " << p.objective_offset() << "\n";
  return kOk;
}

}  // namespace

std::string csv_row(const BoundReport& r) {
  std::ostringstream s;
  s << r.problem << ',' << r.param << ',' << r.epsilon << ',' << r.cert_kind << ','
    << format_scalar(r.certificate_value) << ',' << (r.lp_optimum ? format_scalar(*r.lp_optimum) : "") << ','
    << (r.gap ? format_scalar(*r.gap) : "") << ',' << (r.feasible ? "true" : "false") << ',' << r.wall_time_ms << ','
    << format_decimal(r.certificate_value) << ',' << (r.lp_optimum ? format_decimal(*r.lp_optimum) : "");
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dual-certificate lower bounds for online problems"};
  app.name("dualbound");
  app.require_subcommand(1);
  const std::vector<std::string> problems{"vbp", "adauctions", "capital"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem, "vbp, adauctions or capital")->required()->check(CLI::IsMember(problems));
    sub->add_option("--d", o.d, "dimension (vbp) or degree bound (adauctions)");
    sub->add_option("--n", o.n, "number of machines and phases (capital)");
    sub->add_option("--epsilon", o.epsilon, "capital slack parameter in (0, 1)");
  };
  CLI::App* bound = app.add_subcommand("bound", "evaluate a closed-form certificate");
  common(bound);
  bound->add_option("--cert", o.cert, "optimal or suboptimal (vbp)");

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the generated program");
  common(solve_cmd);
  solve_cmd->add_option("--mode", o.mode, "exact or float");
  solve_cmd->add_option("--tol", o.tol, "float tolerance");
  solve_cmd->add_flag("--dual", o.dual, "solve the dual program");
  solve_cmd->add_flag("--symmetric", o.symmetric, "use the symmetry-reduced ad-auctions program");
  solve_cmd->add_flag("--include-pruned", o.include_pruned, "keep the omitted vbp rows");
  solve_cmd->add_option("--instance", o.instance, "generic capital instance file");

  CLI::App* verify = app.add_subcommand("verify", "check certificate feasibility");
  common(verify);
  verify->add_option("--cert", o.cert, "optimal or suboptimal (vbp)");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate bounds over a parameter range");
  common(sweep);
  sweep->add_option("--range", o.range, "values such as 1..6 or 2,4,8")->required();
  sweep->add_option("--out", o.out, "CSV path (stdout when omitted)");
  sweep->add_option("--cert", o.cert, "optimal or suboptimal (vbp)");
  sweep->add_option("--mode", o.mode, "exact or float");
  sweep->add_option("--tol", o.tol, "float tolerance");
  sweep->add_flag("--no-timing", o.no_timing, "write 0 for wall_time_ms");

  CLI::App* exp = app.add_subcommand("export", "write the program as LP text");
  common(exp);
  exp->add_option("--out", o.out, "output path (stdout when omitted)");
  exp->add_flag("--dual", o.dual, "export dualize(primal)");
  exp->add_flag("--symmetric", o.symmetric, "use the symmetry-reduced ad-auctions program");
  exp->add_flag("--include-pruned", o.include_pruned, "keep the omitted vbp rows");
  exp->add_option("--instance", o.instance, "generic capital instance file");
  exp->add_option("--format", "LP text is the only format")->check(CLI::IsMember({"lp"}));

  std::vector<std::string> argv_storage{"dualbound"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kUsage;
  }

  try {
    if (bound->parsed()) return cmd_bound(o, out, err);
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (exp->parsed()) return cmd_export(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kSize;
  } catch (const NonconvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kSize;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dualbound::cli
