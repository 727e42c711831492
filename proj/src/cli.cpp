#include "ellsurf/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ellsurf/catalog.hpp"
#include "ellsurf/config.hpp"
#include "ellsurf/report_json.hpp"

namespace ellsurf {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownKey:
    case ErrorKind::BadField:
    case ErrorKind::NotPrime:
    case ErrorKind::NotIrreducible:
      return kExitParse;
    case ErrorKind::CharTooSmall:
    case ErrorKind::NotMinimalizable:
    case ErrorKind::UnsupportedModel:
    case ErrorKind::EulerNotTwelveDivisible:
    case ErrorKind::PlaceBudgetExceeded:
    case ErrorKind::InsufficientCounts:
    case ErrorKind::TruncationInsufficient:
      return kExitUnsupported;
    default:
      return kExitInternal;
  }
}

Mutation parse_mutation(const FieldCtx& ctx, std::string_view spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() < 3 || parts.size() > 4)
    throw Error(ErrorKind::ParseError, "mutation '" + std::string(spec) + "' is not FIELD:PLACE:DELTA[:ORBIT]");
  auto integer = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "mutation '" + std::string(spec) + "': '" + s + "' is not an integer");
    }
  };
  Mutation mu;
  mu.field = parse_mutation_field(parts[0]);
  mu.place = parse_place(ctx, parts[1]);
  mu.delta = integer(parts[2]);
  if (parts.size() == 4) mu.component = integer(parts[3]);
  return mu;
}

namespace {

struct Inputs {
  std::string config_path;
  std::string fixture;
  bool json = false;
  std::optional<int> nmax;
  std::optional<int> assume_rank;
  std::uint64_t seed = 1;
  std::optional<int> place_cap;
  int threads = 1;
  std::vector<std::string> mutations;
};

void add_source(CLI::App* cmd, Inputs& in) {
  cmd->add_option("config", in.config_path, "Surface configuration file");
  cmd->add_option("--fixture", in.fixture, "Built-in catalog fixture instead of a file");
  cmd->add_flag("--json", in.json, "Machine-readable output");
  cmd->add_option("--threads", in.threads, "Threads for the place scan")->check(CLI::Range(1, 256));
  cmd->add_option("--place-cap", in.place_cap, "Largest place degree scanned")->check(CLI::Range(1, 64));
}

void add_pipeline(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--nmax", in.nmax, "Point counts N_1..N_n")->check(CLI::Range(1, 64));
  cmd->add_option("--assume-rank", in.assume_rank, "Mordell-Weil rank to use instead of the declared one")->check(CLI::Range(0, 1000));
  cmd->add_option("--seed", in.seed, "Seed for the randomized basis-independence check");
  cmd->add_option("--mutate", in.mutations, "Fault injection FIELD:PLACE:DELTA[:ORBIT]");
}

Config load(const Inputs& in) {
  if (in.config_path.empty() == in.fixture.empty())
    throw Error(ErrorKind::ParseError, "give exactly one of a config file or --fixture NAME");
  std::string text;
  if (!in.fixture.empty()) {
    try {
      text = catalog_entry(in.fixture).config_text;
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  } else {
    std::ifstream f(in.config_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::ParseError, "cannot read " + in.config_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  Config c = parse_config(text);
  if (in.nmax) c.limits.n_max = *in.nmax;
  if (in.place_cap) c.limits.place_degree_cap = *in.place_cap;
  return c;
}

std::string describe(const WeierstrassModel& m) {
  const auto& ctx = m.ctx;
  std::string field = ctx.degree() == 1 ? "F_" + std::to_string(ctx.p()) : "F_" + std::to_string(ctx.q());
  return "y^2 = x^3 + (" + fq::to_string(ctx, m.A) + ") x + (" + fq::to_string(ctx, m.B) + ") over " + field;
}

void print_fibers(std::ostream& out, const FieldCtx& ctx, const std::vector<FiberData>& bad) {
  out << std::left << std::setw(24) << "place" << std::setw(5) << "deg" << std::setw(7) << "type" << std::setw(10) << "split"
      << std::setw(6) << "c_v" << std::setw(5) << "m_v" << std::setw(5) << "e_v" << std::setw(5) << "f_v" << "a_v\n";
  for (const auto& f : bad) {
    std::string split = f.type == Kodaira::In || f.type == Kodaira::Ins ? (f.split ? "split" : "nonsplit") : "-";
    if (f.type == Kodaira::I0s) split = std::to_string(f.cubic_roots) + " roots";
    out << std::left << std::setw(24) << to_string(ctx, f.place) << std::setw(5) << f.d_v << std::setw(7) << kodaira_name(f.type, f.n)
        << std::setw(10) << split << std::setw(6) << to_string(f.c_v) << std::setw(5) << f.m_v << std::setw(5) << f.e_v << std::setw(5)
        << f.f_v << to_string(f.a_v) << "\n";
  }
}

void print_invariants(std::ostream& out, const SurfaceInvariants& inv) {
  out << "e = " << inv.e << ", chi = " << inv.chi << ", b2 = " << inv.b2 << ", deg cond = " << inv.deg_cond << ", deg L = " << inv.deg_L
      << ", m = " << inv.m << ", alpha = " << inv.alpha << ", chi(Lie) = " << inv.chi_lie << "\n";
}

int cmd_analyze(const Inputs& in, std::ostream& out) {
  const Config c = load(in);
  const WeierstrassModel model = build_model(c);
  const auto bad = bad_fibers(model);
  const SurfaceInvariants inv = global_invariants(bad);
  if (in.json) {
    out << analysis_json(model, inv, bad).dump(2) << "\n";
    return kExitOk;
  }
  out << describe(model) << "\n\n";
  print_fibers(out, model.ctx, bad);
  out << "\n";
  print_invariants(out, inv);
  return kExitOk;
}

Report run(const Inputs& in) {
  const Config c = load(in);
  const WeierstrassModel model = build_model(c);
  VerifyOptions opt;
  opt.limits = c.limits;
  opt.threads = in.threads;
  opt.assume_rank = in.assume_rank;
  opt.seed = in.seed;
  for (const auto& s : in.mutations) opt.mutations.push_back(parse_mutation(model.ctx, s));
  return run_verification(model, c.metadata, opt);
}

std::string snapshot_text(const Snapshot& s) {
  if (std::holds_alternative<SpecialValue>(s)) return std::get<SpecialValue>(s).to_string();
  if (std::holds_alternative<RatPoly>(s)) return std::get<RatPoly>(s).to_string();
  if (std::holds_alternative<Rational>(s)) return to_string(std::get<Rational>(s));
  return "-";
}

int cmd_verify(const Inputs& in, std::ostream& out) {
  const Report r = run(in);
  if (in.json) {
    out << report_text(r);
    return r.failed() ? kExitCheckFailed : kExitOk;
  }
  out << describe(r.model) << "\n";
  print_invariants(out, r.inv);
  if (r.p2_counts) out << "P2 = " << r.p2_counts->to_string() << "\n";
  if (r.L) out << "L  = " << r.L->to_string() << " (" << r.l_route << ")\n";
  out << "\n";
  int counts[4] = {0, 0, 0, 0};
  for (const auto& c : r.checks) {
    ++counts[static_cast<int>(c.status)];
    out << std::left << std::setw(13) << to_string(c.status) << std::setw(20) << c.name;
    if (!std::holds_alternative<std::monostate>(c.lhs) || !std::holds_alternative<std::monostate>(c.rhs))
      out << snapshot_text(c.lhs) << "  vs  " << snapshot_text(c.rhs) << (c.sign_agrees ? "" : "  (signs differ)");
    if (!c.details.empty()) out << "  | " << c.details;
    out << "\n";
  }
  out << "\npredicted [Br] = " << (r.predicted_br ? to_string(*r.predicted_br) : "n/a (" + r.br_note + ")")
      << ", predicted [Sha] = " << (r.predicted_sha ? to_string(*r.predicted_sha) : "n/a (" + r.sha_note + ")") << "\n";
  out << "result: " << (r.failed() ? "FAIL" : "PASS") << " (" << counts[0] << " PASS, " << counts[1] << " FAIL, " << counts[2]
      << " CONDITIONAL, " << counts[3] << " SKIPPED)\n";
  return r.failed() ? kExitCheckFailed : kExitOk;
}

int cmd_report(const Inputs& in, std::ostream& out) {
  out << report_text(run(in));
  return kExitOk;
}

int cmd_catalog(bool json, std::ostream& out) {
  if (json) {
    Json arr = Json::array();
    for (const auto& e : catalog())
      arr.push_back(Json{{"name", e.name},
                         {"description", e.description},
                         {"config", e.config_text},
                         {"expected",
                          {{"P2", e.p2}, {"L", e.L}, {"predicted_br", e.predicted_br}, {"predicted_sha", e.predicted_sha}, {"digest", e.digest}}}});
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& e : catalog()) {
    out << e.name << ": " << e.description << "\n";
    out << "  P2 = " << e.p2 << "\n  L = " << e.L << "\n";
    out << "  predicted [Br] = " << (e.predicted_br.empty() ? "n/a" : e.predicted_br)
        << ", predicted [Sha] = " << (e.predicted_sha.empty() ? "n/a" : e.predicted_sha) << "\n";
    out << "  report sha256 = " << e.digest << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of the zeta-function, Artin-Tate and BSD identities for elliptic surfaces over finite fields", "ellsurf"};
  app.require_subcommand(1);
  Inputs analyze_in, verify_in, report_in;
  bool catalog_json = false;
  auto* analyze = app.add_subcommand("analyze", "Fiber table and invariants");
  add_source(analyze, analyze_in);
  auto* verify = app.add_subcommand("verify", "Run every check; exit 4 on any FAIL");
  add_source(verify, verify_in);
  add_pipeline(verify, verify_in);
  auto* report = app.add_subcommand("report", "Emit the JSON report");
  add_source(report, report_in);
  add_pipeline(report, report_in);
  auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in fixtures with expected results");
  catalog_cmd->add_flag("--json", catalog_json, "Machine-readable output");

  std::vector<std::string> argv_store{"ellsurf"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  try {
    if (analyze->parsed()) return cmd_analyze(analyze_in, out);
    if (verify->parsed()) return cmd_verify(verify_in, out);
    if (report->parsed()) return cmd_report(report_in, out);
    return cmd_catalog(catalog_json, out);
  } catch (const Error& e) {
    err << "ellsurf: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "ellsurf: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ellsurf
