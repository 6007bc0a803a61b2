// conicmin: minimise ternary quadratic forms over Z[t1,t2], construct
// Mestre conics, verify transformation logs, and run the plane-curve
// diagnostics.
#include "CLI11.hpp"

#include "conicmin/analysis.hpp"
#include "conicmin/conic_io.hpp"
#include "conicmin/mestre.hpp"
#include "conicmin/minimise.hpp"
#include "conicmin/poly_gcd.hpp"
#include "conicmin/poly_io.hpp"
#include "conicmin/search.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace conicmin;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;

Rat parse_rational(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

RationalFunction parse_value(const std::string& text, const VarList& vars) {
  // rational constant "p/q" or polynomial syntax over vars
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return RationalFunction(parse_poly(text.substr(0, slash), vars),
                            parse_poly(text.substr(slash + 1), vars));
  }
  return RationalFunction(parse_poly(text, vars));
}

std::string describe_factorization(const Factorization& f) {
  std::ostringstream out;
  bool first = true;
  if (f.unit < 0) out << "-1";
  if (f.unit < 0) first = false;
  for (const auto& [p, e] : f.content_factors) {
    if (!first) out << " * ";
    out << p.get_str();
    if (e > 1) out << "^" << e;
    first = false;
  }
  for (const auto& [q, e] : f.poly_factors) {
    if (!first) out << " * ";
    out << "(" << q.str() << ")";
    if (e > 1) out << "^" << e;
    first = false;
  }
  if (first) out << "1";
  return out.str();
}

void print_state(std::ostream& out, const Conic& L) {
  out << "conic: " << L.str() << "\n";
  out << "delta: " << L.delta().str() << "\n";
  auto split = delta_split(L);
  out << "content: " << split.content.get_str()
      << "  odd part: " << split.odd_content.get_str() << "\n";
  try {
    FactorBudget b;
    b.units = 10'000'000;
    out << "content primes:";
    for (const auto& [p, e] : factor_integer(split.content, b))
      out << " " << p.get_str() << (e > 1 ? "^" + std::to_string(e) : "");
    out << "\n";
  } catch (const FactorBudgetError&) {
    out << "content primes: (budget exceeded)\n";
  }
  try {
    FactorBudget b;
    b.units = 10'000'000;
    out << "delta factored: " << describe_factorization(factor_bivariate(L.delta(), b))
        << "\n";
  } catch (const FactorBudgetError&) {
    out << "delta factored: (budget exceeded)\n";
  }
  out << "delta1: " << split.delta1.str() << "\n";
  out << "delta2: " << split.delta2.str() << "\n";
  auto stats = degree_stats(L);
  out << "diag deg: " << stats.diag_deg << "  degree score: " << stats.deg_score << "\n";
  try {
    out << "node score: " << node_score(L) << "\n";
  } catch (const FactorBudgetError&) {
    out << "node score: (budget exceeded)\n";
  }
}

std::vector<MultiPoly> delta2_factors(const Conic& L) {
  std::vector<MultiPoly> pis;
  FactorBudget b;
  DeltaParts parts = delta_parts(L, b);
  for (const auto& [pi, e] : parts.factors.poly_factors) pis.push_back(pi);
  return pis;
}

// ---------------------------------------------------------- minimise

struct MinimiseArgs {
  std::string input;
  std::string out_prefix;
  std::string score = "slope";
  std::string random_prob = "0";
  uint64_t seed = 0;
  long long max_steps = 100000;
  double timeout = 0;
  bool interleave = false;
  long long factor_budget = 50'000'000;
  int jobs = 1;
  long long target_d = 0;
  double step_timeout = 0;
};

int cmd_minimise(const MinimiseArgs& args) {
  Conic input = read_conic_file(args.input);
  if (input.vars().size() != 2)
    throw ParseError("minimisation needs a two-variable coefficient ring, got " +
                     std::to_string(input.vars().size()));
  SearchConfig cfg;
  auto kind = score_kind_from_name(args.score);
  if (!kind) {
    std::cerr << "unknown score kind: " << args.score << "\n";
    return kExitParse;
  }
  cfg.score_kind = *kind;
  cfg.random_prob = parse_rational(args.random_prob);
  cfg.seed = args.seed;
  cfg.max_steps = args.max_steps;
  cfg.timeout_seconds = args.timeout;
  cfg.interleave = args.interleave;
  cfg.factor_budget = args.factor_budget;
  cfg.jobs = args.jobs;
  cfg.step_timeout_seconds = args.step_timeout;

  std::string prefix = args.out_prefix;
  if (prefix.empty()) {
    prefix = args.input;
    auto dot = prefix.rfind(".conic");
    if (dot != std::string::npos && dot == prefix.size() - 6) prefix.resize(dot);
    prefix += ".min";
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream transcript;
  SearchOutcome out = minimisation_search(input, cfg, &transcript);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // artifacts
  write_conic_file(prefix + ".conic", out.conic);
  write_log_file(prefix + ".log", LogFile{input, out.log, out.conic});
  {
    std::ofstream ts(prefix + ".transcript");
    ts << transcript.str();
  }
  {
    std::ofstream mf(prefix + ".manifest");
    mf << "input: " << args.input << "\n"
       << "score: " << score_kind_name(cfg.score_kind) << "\n"
       << "random_prob: " << cfg.random_prob.get_str() << "\n"
       << "seed: " << cfg.seed << "\n"
       << "max_steps: " << cfg.max_steps << "\n"
       << "timeout: " << cfg.timeout_seconds << "\n"
       << "interleave: " << (cfg.interleave ? 1 : 0) << "\n"
       << "factor_budget: " << cfg.factor_budget << "\n"
       << "jobs: " << cfg.jobs << "\n"
       << "outcome: " << (out.success ? "success" : "fail: " + out.fail_reason) << "\n"
       << "steps: " << out.stats.steps << "\n"
       << "depth: " << out.stats.depth << "\n"
       << "wall_seconds: " << wall << "\n"
       << "out_conic: " << prefix << ".conic\n"
       << "out_log: " << prefix << ".log\n"
       << "out_transcript: " << prefix << ".transcript\n";
  }

  // replay check before reporting success
  Conic replayed = verify_log(input, out.log);
  if (replayed != out.conic) {
    std::cerr << "internal error: log does not replay\n";
    return kExitFail;
  }

  std::cout << (out.success ? "success" : "fail: " + out.fail_reason) << "\n";
  std::cout << "steps: " << out.stats.steps << "  depth: " << out.stats.depth << "\n";
  print_state(std::cout, out.conic);

  if (out.success) {
    auto diag = diagonalise(out.conic);
    std::cout << "diagonal form: alpha = " << diag.alpha.str()
              << ", beta = " << diag.beta.str() << ", gamma = " << diag.gamma.str() << "\n";
    if (args.target_d != 0) {
      // normalized (1, beta/alpha, gamma/alpha); candidate q from the
      // negated gamma ratio, square parts stripped
      RationalFunction beta_ratio = diag.beta / diag.alpha;
      RationalFunction gamma_ratio = diag.gamma / diag.alpha;
      RationalFunction d(MultiPoly::constant(out.conic.vars(), Int((long)args.target_d)));
      RationalFunction y = -beta_ratio / d;
      std::cout << "beta/(-D): " << y.str() << "\n";
      auto strip_squares = [](const MultiPoly& p) {
        MultiPoly r = MultiPoly::constant(p.vars(), 1);
        for (const auto& [a, m] : squarefree_decomposition(
                 normalize_sign(p.primitive_part())))
          if (m % 2 == 1) r = r * a;
        return r;
      };
      MultiPoly qcand = strip_squares(gamma_ratio.num()) * strip_squares(gamma_ratio.den());
      std::cout << "gamma candidate q (square-free reduced): " << (-qcand).str() << "\n";
    }
  }
  return out.success ? kExitSuccess : kExitFail;
}

// --------------------------------------------------------------- step

int cmd_step(const std::string& input, std::istream& in, std::ostream& out) {
  Conic start = read_conic_file(input);
  if (start.vars().size() != 2)
    throw ParseError("the stepper needs a two-variable coefficient ring");
  struct Snapshot {
    Conic conic;
    TransformLog log;
  };
  std::vector<Snapshot> stack{{start, {}}};

  out << "interactive minimisation; commands: show r d p<i> perm<i> swap1 swap2 undo "
         "save <prefix> quit\n";
  print_state(out, stack.back().conic);

  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream cmd(line);
    std::string op;
    cmd >> op;
    if (op.empty()) continue;
    const Conic& cur = stack.back().conic;
    try {
      if (op == "quit" || op == "q") break;
      if (op == "show") {
        print_state(out, cur);
        auto pis = delta2_factors(cur);
        for (size_t i = 0; i < pis.size(); ++i)
          out << "  p" << (i + 1) << ": minimise at " << pis[i].str() << "\n";
        auto perms = best_permutation(cur);
        for (size_t i = 0; i < perms.size(); ++i)
          out << "  perm" << (i + 1) << ": (" << perms[i].perm[0] << perms[i].perm[1]
              << perms[i].perm[2] << ")\n";
        continue;
      }
      if (op == "undo") {
        if (stack.size() > 1) stack.pop_back();
        print_state(out, stack.back().conic);
        continue;
      }
      if (op == "save") {
        std::string prefix;
        cmd >> prefix;
        if (prefix.empty()) {
          out << "usage: save <prefix>\n";
          continue;
        }
        write_conic_file(prefix + ".conic", cur);
        write_log_file(prefix + ".log", LogFile{start, stack.back().log, cur});
        out << "wrote " << prefix << ".conic and " << prefix << ".log\n";
        continue;
      }
      std::optional<Snapshot> next;
      if (op == "r") {
        auto r = rational_minimisation(cur);
        next = Snapshot{r.conic, stack.back().log};
        next->log.append(r.log);
      } else if (op == "d") {
        auto r = degree_minimisation(cur);
        next = Snapshot{r.conic, stack.back().log};
        next->log.append(r.log);
      } else if (op[0] == 'p' && op.size() > 1) {
        size_t i = (size_t)std::stoul(op.substr(1));
        auto pis = delta2_factors(cur);
        if (i < 1 || i > pis.size()) {
          out << "no such factor; `show` lists them\n";
          continue;
        }
        auto r = polynomial_minimisation(
            cur, PrimeElement::polynomial(pis[i - 1], /*certify=*/false));
        next = Snapshot{r.conic, stack.back().log};
        next->log.append(r.log);
      } else if (op.rfind("perm", 0) == 0 && op.size() > 4) {
        size_t i = (size_t)std::stoul(op.substr(4));
        auto perms = best_permutation(cur);
        if (i < 1 || i > perms.size()) {
          out << "no such permutation; `show` lists them\n";
          continue;
        }
        next = Snapshot{perms[i - 1].conic, stack.back().log};
        next->log.append(make_transform_step("permute", perms[i - 1].matrix,
                                             RationalFunction::one(cur.vars()),
                                             perms[i - 1].conic));
      } else if (op == "swap1" || op == "swap2") {
        auto [m, lg] = swap_affine_patch(cur, op == "swap1" ? 0 : 1);
        next = Snapshot{m, stack.back().log};
        next->log.append(lg);
      } else {
        out << "unknown command '" << op << "'\n";
        continue;
      }
      stack.push_back(std::move(*next));
      print_state(out, stack.back().conic);
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return kExitSuccess;
}

// -------------------------------------------------------------- verify

int cmd_verify(const std::string& path) {
  LogFile lf = read_log_file(path);
  try {
    Conic result = verify_log(lf.source, lf.log);
    if (result != lf.target) {
      std::cout << "FAIL: replay does not reach the recorded target\n";
      return kExitFail;
    }
  } catch (const ReplayError& e) {
    std::cout << "FAIL: " << e.what() << "\n";
    return kExitFail;
  }
  std::cout << "OK: " << lf.log.size() << " steps replay from source to target\n";
  return kExitSuccess;
}

// -------------------------------------------------------------- mestre

int cmd_mestre(const std::string& kind, const std::vector<std::string>& ic_vals,
               const std::vector<std::string>& ek_vals, const std::string& vars_opt,
               const std::string& output) {
  Conic result = [&]() -> Conic {
    if (kind == "raw" || kind == "ic") {
      IgusaClebsch ic = IgusaClebsch::formal();
      if (!ic_vals.empty()) {
        if (ic_vals.size() != 4)
          throw ParseError("--ic needs exactly four values I2,I4,I6,I10");
        VarList vars = vars_opt.empty() ? VarList{"g", "h"} : [&] {
          VarList v;
          std::string cur;
          for (char c : vars_opt + ",") {
            if (c == ',') {
              if (!cur.empty()) v.push_back(cur);
              cur.clear();
            } else if (c != ' ') {
              cur += c;
            }
          }
          return v;
        }();
        ic = IgusaClebsch{parse_value(ic_vals[0], vars), parse_value(ic_vals[1], vars),
                          parse_value(ic_vals[2], vars), parse_value(ic_vals[3], vars)};
      }
      if (kind == "raw") return mestre_conic(ic).conic;
      // reuse the verified chain by substitution
      const Conic& t4 = ic_simplified_conic();
      if (ic_vals.empty()) return t4;
      std::map<std::string, RationalFunction> sub{
          {"I2", ic.i2}, {"I4", ic.i4}, {"I6", ic.i6}, {"I10", ic.i10}};
      const VarList& target = ic.i2.vars();
      std::array<MultiPoly, 6> c;
      MultiPoly den = MultiPoly::constant(target, 1);
      std::array<RationalFunction, 6> vals;
      for (size_t i = 0; i < 6; ++i) {
        vals[i] = substitute(t4.coeffs()[i], sub);
        den = (vals[i].den() * den).divided_exact(poly_gcd(den, vals[i].den())).value();
      }
      for (size_t i = 0; i < 6; ++i)
        c[i] = (vals[i] * RationalFunction(den)).as_polynomial();
      return Conic(target, c);
    }
    if (kind == "rm") {
      if (ek_vals.empty()) return rm_simplified_conic();
      if (ek_vals.size() != 5) throw ParseError("--ek needs A,A1,B,B1,B2");
      const Conic& t3 = rm_simplified_conic();
      VarList vars = vars_opt.empty() ? VarList{"g", "h"} : VarList{};
      if (vars.empty()) {
        std::string cur;
        for (char c : vars_opt + ",") {
          if (c == ',') {
            if (!cur.empty()) vars.push_back(cur);
            cur.clear();
          } else if (c != ' ') {
            cur += c;
          }
        }
      }
      std::map<std::string, RationalFunction> sub{{"A", parse_value(ek_vals[0], vars)},
                                                  {"A1", parse_value(ek_vals[1], vars)},
                                                  {"B", parse_value(ek_vals[2], vars)},
                                                  {"B1", parse_value(ek_vals[3], vars)},
                                                  {"B2", parse_value(ek_vals[4], vars)}};
      std::array<MultiPoly, 6> c;
      MultiPoly den = MultiPoly::constant(vars, 1);
      std::array<RationalFunction, 6> vals;
      for (size_t i = 0; i < 6; ++i) {
        vals[i] = substitute(t3.coeffs()[i], sub);
        den = (vals[i].den() * den).divided_exact(poly_gcd(den, vals[i].den())).value();
      }
      for (size_t i = 0; i < 6; ++i)
        c[i] = (vals[i] * RationalFunction(den)).as_polynomial();
      return Conic(vars, c);
    }
    throw ParseError("unknown mestre kind '" + kind + "' (raw|ic|rm)");
  }();

  if (output.empty()) {
    std::cout << write_conic(result);
  } else {
    write_conic_file(output, result);
    std::cout << "wrote " << output << "\n";
  }
  return kExitSuccess;
}

// ------------------------------------------------------------- analyze

MultiPoly resolve_poly(const std::string& text, const VarList& vars) {
  if (text == "@lambda21") return lambda21_fixture();
  if (text == "@q21") return q21_fixture();
  if (text == "@lambda40") return lambda40_fixture();
  if (text == "@q40") return q40_candidate();
  return parse_poly(text, vars);
}

int cmd_analyze(const std::string& expr, const std::string& with_expr) {
  const VarList& vars = gh_vars();
  MultiPoly f = resolve_poly(expr, vars);
  std::cout << "polynomial: " << f.str() << "\n";

  if (!with_expr.empty()) {
    MultiPoly g = resolve_poly(with_expr, vars);
    auto rep = resultant_report(f, g);
    std::cout << "Res_g = " << describe_factorization(rep.res_g_factored) << "\n";
    std::cout << "Res_h = " << describe_factorization(rep.res_h_factored) << "\n";
    return kExitSuccess;
  }

  auto classes = singular_points(f);
  if (classes.empty()) {
    std::cout << "singular points: none\n";
    return kExitSuccess;
  }
  std::cout << "singular points (" << classes.size() << " classes):\n";
  for (const auto& c : classes) {
    std::cout << "  " << c.g_condition.str() << " = 0  and  " << c.h_condition.str()
              << " = 0";
    if (c.pairing) std::cout << "  [pairing: " << c.pairing->str() << "]";
    std::cout << "\n";
  }
  auto basis = quadratic_ansatz(classes, vars);
  std::cout << "quadratic ansatz space: dimension " << basis.size() << "\n";
  for (const auto& q : basis) std::cout << "  " << q.str() << "\n";
  return kExitSuccess;
}

// ------------------------------------------------------------ fixtures

int cmd_fixtures() {
  std::cout << "lambda21: " << lambda21_fixture().str() << "\n";
  std::cout << "q21: " << q21_fixture().str() << "\n";
  std::cout << "lambda40: " << lambda40_fixture().str() << "\n";
  std::cout << "q40 candidate: " << q40_candidate().str() << "\n";
  std::cout << "q_D table:\n";
  for (const auto& [d, q] : qd_table()) std::cout << "  " << d << ": " << q.str() << "\n";
  std::cout << "p_D table (m, n coordinates):\n";
  for (const auto& [d, p] : pd_table()) std::cout << "  " << d << ": " << p.str() << "\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact minimisation of ternary quadratic forms over Z[t1,t2]"};
  app.require_subcommand(1);

  MinimiseArgs margs;
  auto* minimise_cmd = app.add_subcommand("minimise", "search for a minimal model");
  minimise_cmd->add_option("input", margs.input, "conic file")->required();
  minimise_cmd->add_option("--score", margs.score, "slope|node|alternating")
      ->envname("CONICMIN_SCORE");
  minimise_cmd->add_option("--random-prob", margs.random_prob, "randomization probability")
      ->envname("CONICMIN_RANDOM_PROB");
  minimise_cmd->add_option("--seed", margs.seed, "rng seed")->envname("CONICMIN_SEED");
  minimise_cmd->add_option("--max-steps", margs.max_steps, "search step budget")
      ->envname("CONICMIN_MAX_STEPS");
  minimise_cmd->add_option("--timeout", margs.timeout, "wall-clock timeout, seconds")
      ->envname("CONICMIN_TIMEOUT");
  minimise_cmd->add_flag("--interleave", margs.interleave,
                         "rational+degree pass after each child");
  minimise_cmd->add_option("--factor-budget", margs.factor_budget,
                           "work budget per factorization")
      ->envname("CONICMIN_FACTOR_BUDGET");
  minimise_cmd->add_option("--jobs", margs.jobs, "parallel child evaluation")
      ->envname("CONICMIN_JOBS");
  minimise_cmd->add_option("--step-timeout", margs.step_timeout,
                           "per-minimisation-call deadline, seconds (0: off)")
      ->envname("CONICMIN_STEP_TIMEOUT");
  minimise_cmd->add_option("--target-d", margs.target_d,
                           "report the diagonal against X^2 - D Y^2 - q Z^2");
  minimise_cmd->add_option("-o,--out-prefix", margs.out_prefix, "artifact path prefix");

  std::string step_input;
  auto* step_cmd = app.add_subcommand("step", "interactive human-directed minimisation");
  step_cmd->add_option("input", step_input, "conic file")->required();

  std::string verify_input;
  auto* verify_cmd = app.add_subcommand("verify", "replay a transform log");
  verify_cmd->add_option("input", verify_input, "log file")->required();

  std::string mestre_kind = "ic", mestre_vars, mestre_out;
  std::vector<std::string> mestre_ic, mestre_ek;
  auto* mestre_cmd = app.add_subcommand("mestre", "construct Mestre conics");
  mestre_cmd->add_option("--kind", mestre_kind, "raw|ic|rm");
  mestre_cmd->add_option("--ic", mestre_ic, "I2 I4 I6 I10 values")->expected(4);
  mestre_cmd->add_option("--ek", mestre_ek, "A A1 B B1 B2 values")->expected(5);
  mestre_cmd->add_option("--vars", mestre_vars, "variables of the supplied values");
  mestre_cmd->add_option("-o,--output", mestre_out, "output conic file");

  std::string analyze_expr, analyze_with;
  auto* analyze_cmd = app.add_subcommand("analyze", "plane-curve diagnostics");
  analyze_cmd->add_option("poly", analyze_expr, "polynomial or @fixture")->required();
  analyze_cmd->add_option("--with", analyze_with, "second polynomial for resultants");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "dump the stored constants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (minimise_cmd->parsed()) return cmd_minimise(margs);
    if (step_cmd->parsed()) return cmd_step(step_input, std::cin, std::cout);
    if (verify_cmd->parsed()) return cmd_verify(verify_input);
    if (mestre_cmd->parsed())
      return cmd_mestre(mestre_kind, mestre_ic, mestre_ek, mestre_vars, mestre_out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_expr, analyze_with);
    if (fixtures_cmd->parsed()) return cmd_fixtures();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitParse;
}
