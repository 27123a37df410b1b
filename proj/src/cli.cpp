#include "qpb/cli.hpp"

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include "qpb/errors.hpp"
#include "qpb/jet.hpp"
#include "qpb/parse.hpp"

namespace qpb::cli {

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

namespace {

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i + 1 < r.size())
        os << std::left << std::setw(static_cast<int>(width[i] + 2)) << r[i];
      else
        os << r[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  return os.str();
}

std::string emit_rows(const std::vector<std::vector<std::string>>& rows, Format f) {
  return f == Format::Csv ? csv(rows) : table(rows);
}

}  // namespace

std::string emit_report(const AxiomReport& r, Format f) {
  std::vector<std::vector<std::string>> rows{{"axiom", "trials", "failures"}};
  for (const auto& a : r.results)
    rows.push_back({a.axiom, std::to_string(a.trials), std::to_string(a.failures)});
  return emit_rows(rows, f);
}

std::string emit_report(const FdReport& r, Format f, int precision) {
  std::vector<std::vector<std::string>> rows{{"block", "max_rel_err"}};
  for (const auto& b : r.blocks) rows.push_back({b.block, format_double(b.max_rel_err, precision)});
  return emit_rows(rows, f);
}

std::string emit_report(const std::vector<ConvergenceRow>& rows_in, Format f, int precision) {
  std::vector<std::vector<std::string>> rows{{"n", "ell_n", "target", "abs_err"}};
  for (const auto& r : rows_in)
    rows.push_back({std::to_string(r.n), format_double(r.ell_n, precision), to_string(r.target),
                    format_double(r.abs_err, precision)});
  return emit_rows(rows, f);
}

std::string emit_report(const IllPosednessReport& r, Format f, int precision) {
  std::vector<std::vector<std::string>> rows{{"n", "drho_dt_start", "drho_dt_mean"}};
  for (const auto& row : r.truncated)
    rows.push_back({std::to_string(row.n), format_double(row.drho_dt_start, precision),
                    format_double(row.drho_dt_mean, precision)});
  if (f == Format::Csv) return csv(rows);

  std::ostringstream os;
  os << "hamiltonian: " << print_expr(r.hamiltonian) << '\n';
  os << "X_h: " << to_string(r.field) << '\n';
  os << "start: " << to_string(r.start) << '\n';
  os << "d/dt rho: " << print_expr(r.drho_dt) << '\n';
  for (const auto& [k, rate] : r.dv_dt)
    os << "d/dt v" << k << ": " << print_expr(rate) << '\n';
  os << "chain-rule residual: " << print_expr(r.chain_rule_residual) << '\n';
  os << "consistent: " << (r.consistent ? "yes" : "no") << '\n';
  os << "truncated flows (horizon " << format_double(r.horizon, precision) << ", step "
     << format_double(r.step, precision) << "):\n";
  os << table(rows);
  return os.str();
}

namespace {

struct Options {
  std::uint64_t seed = 0;
  unsigned trials = 100;
  std::string format = "text";
  int precision = 12;
  std::string file;
  std::vector<std::string> positional;
  std::string d1, d2, at, mu, ham;
  unsigned n = 6;
  double h = 1e-4;
  std::vector<std::uint64_t> ns{10, 100, 1000};
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--trials", o.trials, "number of random trials");
  sub->add_option("--format", o.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  sub->add_option("--precision", o.precision, "digits for float output");
  sub->add_option("--file", o.file, "read the first DSL argument from a file ('-' for stdin)");
}

void set_log_level() {
  const char* env = std::getenv("LOG_LEVEL");
  std::string level = env ? env : "error";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

class Runner {
 public:
  Runner(Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  void dispatch(const std::string& verb);

 private:
  std::string arg(std::size_t i, const char* what) {
    if (i == 0 && !o_.file.empty()) {
      if (o_.file == "-") return {std::istreambuf_iterator<char>(in_), {}};
      std::ifstream f(o_.file);
      if (!f) throw DomainError("cannot read " + o_.file);
      return {std::istreambuf_iterator<char>(f), {}};
    }
    const std::size_t idx = o_.file.empty() ? i : i - 1;
    if (idx >= o_.positional.size()) throw SyntaxError(0, std::string("missing ") + what);
    if (o_.positional[idx] == "-") return {std::istreambuf_iterator<char>(in_), {}};
    return o_.positional[idx];
  }
  Expression expr_arg(std::size_t i) { return parse_expr(arg(i, "expression")); }
  Point at() {
    if (o_.at.empty()) throw SyntaxError(0, "missing --at point");
    return parse_point(o_.at);
  }
  BracketSpec spec() {
    if (o_.d1.empty() || o_.d2.empty()) throw SyntaxError(0, "missing --d1/--d2 field");
    BracketSpec b(parse_field(o_.d1), parse_field(o_.d2));
    spdlog::debug("bracket fields {} | {} commuting={}", to_string(b.d1()), to_string(b.d2()),
                  b.commuting());
    return b;
  }
  Format format() const { return o_.format == "csv" ? Format::Csv : Format::Text; }

  Options& o_;
  std::istream& in_;
  std::ostream& out_;
};

void Runner::dispatch(const std::string& verb) {
  if (verb == "eval") {
    out_ << to_string(eval(expr_arg(0), at())) << '\n';
  } else if (verb == "grad") {
    const DualVector d = gradient(expr_arg(0), at());
    out_ << "v: " << to_string(d.vpart) << "\nx: " << to_string(d.xpart) << '\n';
  } else if (verb == "hess") {
    const HessianSymbol h = hessian(expr_arg(0), at());
    out_ << "vv: " << to_string(h.vv) << "\nvx: " << to_string(h.vx)
         << "\nxx: " << to_string(h.xx) << '\n';
  } else if (verb == "delta") {
    const Expression d = delta_ell(expr_arg(0));
    if (o_.at.empty())
      out_ << print_expr(d) << '\n';
    else
      out_ << to_string(eval(d, at())) << '\n';
  } else if (verb == "bracket") {
    const BracketSpec b = spec();
    const Expression v = bracket(b, expr_arg(0), expr_arg(1));
    if (o_.at.empty())
      out_ << print_expr(v) << '\n';
    else
      out_ << to_string(eval(v, at())) << '\n';
  } else if (verb == "hamfield") {
    out_ << to_string(hamiltonian_field(spec(), expr_arg(0))) << '\n';
  } else if (verb == "axioms") {
    const AxiomReport r = check_axioms(spec(), o_.trials, o_.seed);
    out_ << emit_report(r, format());
    r.raise_if_failed();
  } else if (verb == "order") {
    out_ << to_string(order_at(parse_field(arg(0, "field")), at())) << '\n';
  } else if (verb == "tensor") {
    out_ << to_string(tensor_at(spec(), at())) << '\n';
  } else if (verb == "witness") {
    const Witness w = queer_witness(spec(), at());
    out_ << "h: " << print_expr(w.h) << "\nf: " << print_expr(w.f)
         << "\nvalue: " << to_string(w.value) << '\n';
  } else if (verb == "sharp") {
    if (o_.mu.empty()) throw SyntaxError(0, "missing --mu dual vector");
    const DualVector mu = parse_dual(o_.mu);
    const KinematicVector k = sharp(tensor_at(spec(), at()), mu);
    out_ << "v: " << to_string(k.vpart) << "\nx: " << to_string(k.xpart) << '\n';
  } else if (verb == "truncate") {
    out_ << to_string(truncate(expr_arg(0), o_.n).poly) << '\n';
  } else if (verb == "fdcheck") {
    out_ << emit_report(fd_check(expr_arg(0), at(), o_.n, o_.h), format(), o_.precision);
  } else if (verb == "ellconv") {
    out_ << emit_report(ell_convergence(parse_operator(arg(0, "operator")), o_.ns), format(),
                        o_.precision);
  } else if (verb == "demo") {
    const std::string which = arg(0, "demo name");
    if (which == "no-extension") {
      const ObstructionResult r = extension_obstruction_demo();
      out_ << "lhs: " << to_string(r.lhs) << "\nrhs: " << to_string(r.rhs) << '\n';
    } else if (which == "ill-posed") {
      if (o_.d1.empty()) o_.d1 = "field(queer=1)";
      if (o_.d2.empty()) o_.d2 = "field(dx=1)";
      const Expression h = parse_expr(o_.ham.empty() ? "0-x" : o_.ham);
      const Point start = o_.at.empty() ? Point(SeqComb::unit(1), 0) : at();
      out_ << emit_report(ill_posedness_demo(spec(), h, start), format(), o_.precision);
    } else {
      throw SyntaxError(0, "unknown demo '" + which + "' (expected ill-posed or no-extension)");
    }
  }
}

}  // namespace

Result run(const std::vector<std::string>& args, std::istream& in) {
  set_log_level();
  Result result;
  std::ostringstream out;
  Options o;

  CLI::App app{"Queer Poisson bracket engine on l2 x R", "qpb"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> verbs{
      {"eval", "evaluate EXPR at --at"},
      {"grad", "differential of EXPR at --at"},
      {"hess", "Hessian blocks of EXPR at --at"},
      {"delta", "apply delta_ell to EXPR"},
      {"bracket", "bracket of F and G for fields --d1, --d2"},
      {"hamfield", "Hamiltonian field of H"},
      {"axioms", "random Poisson axiom check"},
      {"order", "order of FIELD at --at"},
      {"tensor", "Poisson tensor at --at"},
      {"witness", "queerness witness at --at"},
      {"sharp", "sharp map of the tensor at --at applied to --mu"},
      {"truncate", "restriction of EXPR to the first --n coordinates"},
      {"fdcheck", "finite-difference check of the jets of EXPR"},
      {"ellconv", "diagonal convergence of ell for OPER"},
      {"demo", "canned demos: ill-posed, no-extension"}};
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    sub->add_option("args", o.positional, "DSL arguments");
    sub->add_option("--d1", o.d1, "first field literal");
    sub->add_option("--d2", o.d2, "second field literal");
    sub->add_option("--at", o.at, "point literal");
    sub->add_option("--mu", o.mu, "dual vector literal");
    sub->add_option("--ham", o.ham, "Hamiltonian for demo ill-posed");
    sub->add_option("--n", o.n, "truncation size");
    sub->add_option("--step", o.h, "finite-difference step h");
    sub->add_option("--ns", o.ns, "truncation sizes")->delimiter(',');
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.err = "UsageError " + std::string(e.what()) + "\n";
    result.exit_code = 2;
    return result;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    Runner(o, in, out).dispatch(verb);
    result.out = out.str();
  } catch (const Error& e) {
    result.out = out.str();
    result.err = e.code() + " " + e.what() + "\n";
    result.exit_code = dynamic_cast<const SyntaxError*>(&e) ? 2 : 1;
  } catch (const std::exception& e) {
    result.out = out.str();
    result.err = std::string("InternalError ") + e.what() + "\n";
    result.exit_code = 1;
  }
  return result;
}

}  // namespace qpb::cli
