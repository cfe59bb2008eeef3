// Command-line front end: weighted-norm evaluation, level functions, cone
// ratio suprema, weight conditions, adversarial test functions, and the
// end-to-end inequality verifier. Reports are JSON (single source of
// truth); --csv writes a tabular projection. Exit codes: 0 computed,
// 1 usage error, 2 verdict infinite / certificate fails.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentz/conditions.hpp"
#include "lorentz/cones.hpp"
#include "lorentz/fourier.hpp"
#include "lorentz/kernels.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/numeric.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/stepfn.hpp"
#include "lorentz/weight.hpp"

using nlohmann::json;
using namespace lorentz;

namespace {

json jnum(double v) {
  if (std::isfinite(v)) return v;
  return v > 0.0 ? json("inf") : json("-inf");
}

json jgrid(const GridSpec& g) {
  return {{"t_min", g.t_min}, {"t_max", g.t_max}, {"per_decade", g.per_decade}};
}

json jreport(const ConditionReport& r) {
  return {{"lower", jnum(r.lower)},
          {"upper", jnum(r.upper)},
          {"value", jnum(r.value())},
          {"verdict", to_string(r.verdict)},
          {"note", r.note}};
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) +
                                  ": expected a comma-separated number list");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

AveragingOp parse_averaging(const std::string& s) {
  if (s.empty()) return AveragingOp{};
  std::vector<std::pair<double, double>> iv;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto nums = parse_doubles(part, "--averaging");
    if (nums.size() != 2)
      throw std::invalid_argument(
          "--averaging: each interval needs exactly \"a,b\"");
    iv.emplace_back(nums[0], nums[1]);
  }
  return AveragingOp{std::move(iv)};
}

std::vector<ModPiece> parse_pieces(const std::string& s) {
  std::vector<ModPiece> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto nums = parse_doubles(part, "--pieces");
    if (nums.size() != 5)
      throw std::invalid_argument(
          "--pieces: each piece needs \"x0,x1,amp,m,theta\"");
    out.push_back({nums[0], nums[1], nums[2],
                   static_cast<long long>(std::llround(nums[3])), nums[4]});
  }
  return out;
}

// step function from --breaks / --values / optional --tail "c,a,b"
StepFunction parse_step(const std::string& breaks, const std::string& values,
                        const std::string& tail) {
  const auto bp = parse_doubles(breaks, "--breaks");
  const auto val = parse_doubles(values, "--values");
  std::optional<Tail> t;
  if (!tail.empty()) {
    const auto tn = parse_doubles(tail, "--tail");
    if (tn.size() != 3)
      throw std::invalid_argument("--tail: expected \"c,a,b\"");
    t = Tail{tn[0], tn[1], tn[2]};
  }
  return StepFunction(bp, val, t);
}

ModulatedStep random_step(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int np = 1 + static_cast<int>(rng() % 5);
  std::vector<ModPiece> pieces;
  double x = 0.0;
  for (int j = 0; j < np; ++j) {
    const double gap = 0.05 * uni(rng);
    const double len = 0.02 + 0.8 * uni(rng) / np;
    if (x + gap + len > 1.0) break;
    pieces.push_back({x + gap, x + gap + len, 0.1 + 2.0 * uni(rng),
                      static_cast<long long>(rng() % 41) - 20,
                      6.283185307179586 * (uni(rng) - 0.5)});
    x += gap + len;
  }
  if (pieces.empty()) pieces.push_back({0.0, 0.5, 1.0, 0, 0.0});
  return ModulatedStep{pieces};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text << "\n";
}

void write_csv(const std::string& path,
               const std::vector<std::vector<std::string>>& rows) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open csv file: " + path);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      f << row[i] << (i + 1 < row.size() ? "," : "");
    f << "\n";
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Common {
  GridSpec grid;
  std::string out;
  std::string csv;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--t-min", c.grid.t_min, "grid lower end")
      ->capture_default_str();
  cmd->add_option("--t-max", c.grid.t_max, "grid upper end")
      ->capture_default_str();
  cmd->add_option("--per-decade", c.grid.per_decade,
                  "grid points per decade (>= 8)")
      ->capture_default_str();
  cmd->add_option("--out", c.out, "JSON report path (default: stdout)");
  cmd->add_option("--csv", c.csv, "also write a CSV projection here");
}

void check_grid(const GridSpec& g) {
  if (g.per_decade < 8)
    throw std::invalid_argument("grid density must be at least 8 per decade");
  if (!(g.t_min > 0.0) || !(g.t_max > g.t_min))
    throw std::invalid_argument("grid needs 0 < t-min < t-max");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Lorentz-space toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; command-line flags override it");

  int rc = 0;
  json report;
  std::vector<std::vector<std::string>> csv_rows;
  Common common;

  // ---------------------------------------------------------------- norm
  auto* norm = app.add_subcommand(
      "norm", "weighted functional of a step function (lambda/gamma/theta)");
  struct {
    std::string which = "lambda", breaks, values, tail, w = "1";
    double p = 1.0;
  } norm_args;
  norm->add_option("--which", norm_args.which,
                   "functional: lambda | gamma | theta")
      ->capture_default_str();
  norm->add_option("--breaks", norm_args.breaks, "step breakpoints, ascending")
      ->required();
  norm->add_option("--values", norm_args.values, "step values per cell")
      ->required();
  norm->add_option("--tail", norm_args.tail, "analytic tail \"c,a,b\"");
  norm->add_option("--w", norm_args.w, "weight expression")
      ->capture_default_str();
  norm->add_option("--p", norm_args.p, "exponent p > 0")->required();
  add_common(norm, common);
  norm->callback([&] {
    check_grid(common.grid);
    const StepFunction f =
        parse_step(norm_args.breaks, norm_args.values, norm_args.tail);
    const Weight w = parse_weight(norm_args.w);
    NormValue nv;
    if (norm_args.which == "lambda")
      nv = lambda_norm(f, norm_args.p, w);
    else if (norm_args.which == "gamma")
      nv = gamma_norm(f, norm_args.p, w);
    else if (norm_args.which == "theta")
      nv = theta_norm(rearrange(f), norm_args.p, w, common.grid);
    else
      throw std::invalid_argument("--which must be lambda, gamma, or theta");
    report = {{"command", "norm"},
              {"which", norm_args.which},
              {"p", norm_args.p},
              {"w", w.to_expr()},
              {"lower", jnum(nv.lower)},
              {"upper", jnum(nv.upper)},
              {"value", jnum(nv.value())},
              {"verdict", to_string(nv.verdict)},
              {"note", nv.note},
              {"grid", jgrid(common.grid)}};
    csv_rows = {{"which", "p", "lower", "upper", "verdict"},
                {norm_args.which, fmt(norm_args.p), fmt(nv.lower),
                 fmt(nv.upper), to_string(nv.verdict)}};
    if (nv.verdict == Verdict::Infinite) rc = 2;
  });

  // --------------------------------------------------------------- level
  auto* level = app.add_subcommand(
      "level", "level function of a weight (derivative of the least concave "
               "majorant of its cumulative)");
  struct {
    std::string w;
  } level_args;
  level->add_option("--w", level_args.w, "weight expression")->required();
  add_common(level, common);
  level->callback([&] {
    check_grid(common.grid);
    const Weight w = parse_weight(level_args.w);
    const LevelWeight lv = level_weight(w, common.grid);
    report = {{"command", "level"},
              {"w", w.to_expr()},
              {"level", lv.weight.to_expr()},
              {"exact", lv.exact},
              {"note", lv.note},
              {"grid", jgrid(common.grid)}};
    csv_rows = {{"w", "level", "exact"},
                {w.to_expr(), lv.weight.to_expr(), lv.exact ? "1" : "0"}};
  });

  // ---------------------------------------------------------------- cone
  auto* cone = app.add_subcommand(
      "cone", "bracket the ratio supremum over a quasi-concave cone by its "
              "two-parameter kernel sections");
  struct {
    double alpha = 2.0, beta = 0.0, xi = 0.0, p = 1.0, q = 1.0;
    std::string u, v;
    int samples = 12;
    unsigned long long seed = 1;
  } cone_args;
  cone->add_option("--alpha", cone_args.alpha)->capture_default_str();
  cone->add_option("--beta", cone_args.beta)->capture_default_str();
  cone->add_option("--xi", cone_args.xi)->capture_default_str();
  cone->add_option("--u", cone_args.u, "numerator weight expression")
      ->required();
  cone->add_option("--v", cone_args.v, "denominator weight expression")
      ->required();
  cone->add_option("--p", cone_args.p)->capture_default_str();
  cone->add_option("--q", cone_args.q)->capture_default_str();
  cone->add_option("--samples", cone_args.samples,
                   "random cone elements cross-checked against the bracket")
      ->capture_default_str();
  cone->add_option("--seed", cone_args.seed)->capture_default_str();
  add_common(cone, common);
  cone->callback([&] {
    check_grid(common.grid);
    const Weight u = parse_weight(cone_args.u);
    const Weight v = parse_weight(cone_args.v);
    const ConeParams pr{cone_args.alpha, cone_args.beta, cone_args.xi};
    const RatioBounds rb =
        ratio_supremum_bounds(pr, u, v, cone_args.p, cone_args.q, {},
                              common.grid, cone_args.samples,
                              cone_args.seed);
    report = {{"command", "cone"},
              {"alpha", cone_args.alpha},
              {"beta", cone_args.beta},
              {"xi", cone_args.xi},
              {"u", u.to_expr()},
              {"v", v.to_expr()},
              {"p", cone_args.p},
              {"q", cone_args.q},
              {"lower", jnum(rb.lower)},
              {"upper", jnum(rb.upper)},
              {"factor", jnum(rb.factor)},
              {"sampled", rb.sampled},
              {"verdict", to_string(rb.verdict)},
              {"note", rb.note},
              {"seed", cone_args.seed},
              {"grid", jgrid(common.grid)}};
    csv_rows = {{"lower", "upper", "factor", "verdict"},
                {fmt(rb.lower), fmt(rb.upper), fmt(rb.factor),
                 to_string(rb.verdict)}};
    if (rb.verdict == Verdict::Infinite) rc = 2;
  });

  // ----------------------------------------------------------- condition
  auto* cond = app.add_subcommand("condition",
                                  "weight conditions and admissibility");
  cond->require_subcommand(1);
  struct {
    std::string u = "1", w = "1";
    double p = 1.0, q = 2.0;
    double r = 1.0, s = 2.0, alpha = 0.0, beta = 0.0;
    bool p_set = false, q_set = false;
  } ca;

  auto add_uw = [&](CLI::App* c, bool need_q) {
    c->add_option("--u", ca.u, "left-hand weight expression")->required();
    c->add_option("--w", ca.w, "right-hand weight expression")->required();
    c->add_option("--p", ca.p, "exponent p")->required();
    if (need_q) c->add_option("--q", ca.q, "exponent q")->required();
    add_common(c, common);
  };

  auto cond_report = [&](const char* name, const ConditionReport& r) {
    report = jreport(r);
    report["command"] = std::string("condition ") + name;
    report["u"] = parse_weight(ca.u).to_expr();
    report["w"] = parse_weight(ca.w).to_expr();
    report["p"] = ca.p;
    report["grid"] = jgrid(common.grid);
    csv_rows = {{"condition", "lower", "upper", "verdict"},
                {name, fmt(r.lower), fmt(r.upper), to_string(r.verdict)}};
    if (r.verdict == Verdict::Infinite) rc = 2;
  };

  auto* cxy = cond->add_subcommand(
      "cxy", "two-parameter square-mean condition (the q = 2 constant)");
  add_uw(cxy, false);
  cxy->callback([&] {
    check_grid(common.grid);
    cond_report("cxy", c_xy(parse_weight(ca.u), parse_weight(ca.w), ca.p,
                            common.grid));
  });

  auto* comega = cond->add_subcommand(
      "comega", "profile-ratio condition over dilations (q >= 2)");
  add_uw(comega, true);
  comega->callback([&] {
    check_grid(common.grid);
    cond_report("comega", c_omega(parse_weight(ca.u), parse_weight(ca.w),
                                  ca.p, ca.q, common.grid));
    report["q"] = ca.q;
  });

  auto* nolevel = cond->add_subcommand(
      "nolevel", "level-function-free sufficient condition");
  add_uw(nolevel, true);
  nolevel->callback([&] {
    check_grid(common.grid);
    cond_report("nolevel", nolevel_condition(parse_weight(ca.u),
                                             parse_weight(ca.w), ca.p, ca.q,
                                             common.grid));
    report["q"] = ca.q;
  });

  auto* bhc = cond->add_subcommand(
      "bhc", "box-type necessary condition");
  add_uw(bhc, true);
  bhc->callback([&] {
    check_grid(common.grid);
    cond_report("bhc", bhc_condition(parse_weight(ca.u), parse_weight(ca.w),
                                     ca.p, ca.q, common.grid));
    report["q"] = ca.q;
  });

  auto* hardy = cond->add_subcommand(
      "hardy-dual", "dual Hardy condition through the level function");
  add_uw(hardy, true);
  hardy->callback([&] {
    check_grid(common.grid);
    cond_report("hardy-dual",
                hardy_dual_condition(parse_weight(ca.u), parse_weight(ca.w),
                                     ca.p, ca.q, common.grid));
    report["q"] = ca.q;
  });

  auto* llogl = cond->add_subcommand(
      "llogl", "logarithmic growth condition on the left-hand weight");
  llogl->add_option("--u", ca.u, "left-hand weight expression")->required();
  llogl->add_option("--q", ca.q, "exponent q >= 2")->required();
  add_common(llogl, common);
  llogl->callback([&] {
    check_grid(common.grid);
    const ConditionReport r =
        llogl_condition(parse_weight(ca.u), ca.q, common.grid);
    report = jreport(r);
    report["command"] = "condition llogl";
    report["u"] = parse_weight(ca.u).to_expr();
    report["q"] = ca.q;
    report["grid"] = jgrid(common.grid);
    csv_rows = {{"condition", "lower", "upper", "verdict"},
                {"llogl", fmt(r.lower), fmt(r.upper), to_string(r.verdict)}};
    if (r.verdict == Verdict::Infinite) rc = 2;
  });

  auto* lz = cond->add_subcommand(
      "lz", "index admissibility for maps between Lorentz-Zygmund scales");
  lz->add_option("--r", ca.r, "domain primary index")->required();
  lz->add_option("--p", ca.p, "domain secondary index (default: r)");
  lz->add_option("--alpha", ca.alpha, "domain log exponent")
      ->capture_default_str();
  lz->add_option("--s", ca.s, "target primary index")->required();
  lz->add_option("--q", ca.q, "target secondary index (default: s)");
  lz->add_option("--beta", ca.beta, "target log exponent")
      ->capture_default_str();
  add_common(lz, common);
  lz->callback([&] {
    const double p_eff = lz->count("--p") ? ca.p : ca.r;
    const double q_eff = lz->count("--q") ? ca.q : ca.s;
    const LZReport r =
        lz_admissible(ca.r, p_eff, ca.alpha, ca.s, q_eff, ca.beta);
    std::string reason;
    for (const auto& v : r.violated)
      reason += (reason.empty() ? "" : "; ") + v;
    report = {{"command", "condition lz"},
              {"r", ca.r},
              {"p", p_eff},
              {"alpha", ca.alpha},
              {"s", ca.s},
              {"q", q_eff},
              {"beta", ca.beta},
              {"admissible", r.admissible},
              {"nontrivial", r.nontrivial},
              {"satisfied", r.satisfied},
              {"violated", r.violated},
              {"reason", reason.empty() ? "admissible" : reason}};
    csv_rows = {{"admissible", "nontrivial"},
                {r.admissible ? "1" : "0", r.nontrivial ? "1" : "0"}};
    if (!r.admissible) rc = 2;
  });

  // ------------------------------------------------------------- testfun
  auto* testfun = app.add_subcommand(
      "testfun", "build the adversarial test function for a profile scale z "
                 "and averaging operator, and check its certificates");
  struct {
    double z = 4.0, eps = 0.0;
    std::string averaging;
    long long half_width = 1 << 16;
    double y_max = 2000.0;
    long long table_cap = 4096;
  } tf_args;
  testfun->add_option("--z", tf_args.z, "profile scale (>= 1)")->required();
  testfun->add_option("--averaging", tf_args.averaging,
                      "intervals \"a1,b1;a2,b2\" (default: identity)");
  testfun->add_option("--eps", tf_args.eps,
                      "slack budget (default: 1e-3 of the leading "
                      "coefficient scale)");
  testfun->add_option("--half-width", tf_args.half_width,
                      "coefficient window half-width around each frequency")
      ->capture_default_str();
  testfun->add_option("--y-max", tf_args.y_max,
                      "check certificates for integer y up to this")
      ->capture_default_str();
  testfun->add_option("--table-cap", tf_args.table_cap,
                      "ranked magnitudes included in the report")
      ->capture_default_str();
  add_common(testfun, common);
  testfun->callback([&] {
    const AveragingOp A = parse_averaging(tf_args.averaging);
    const double eps = tf_args.eps > 0.0
                           ? tf_args.eps
                           : 1e-3 / (4.0 * std::max(tf_args.z, 3.0));
    const TestFunction tf = testfun_full(tf_args.z, A, eps);
    const StarRanking rank =
        windowed_rearrangement(tf.g, tf_args.half_width);
    const auto checks = check_star_bounds(tf, rank, tf_args.y_max);

    json jpieces = json::array();
    for (const ModPiece& p : tf.g.pieces())
      jpieces.push_back({{"x0", p.x0},
                         {"x1", p.x1},
                         {"amplitude", p.amplitude},
                         {"m", p.m},
                         {"theta", p.theta}});
    json jchecks = json::array();
    bool all_pass = true;
    for (const BoundCheck& c : checks) {
      all_pass = all_pass && c.pass();
      jchecks.push_back({{"label", c.label},
                         {"checked", c.checked},
                         {"verified", c.verified},
                         {"unverifiable", c.unverifiable},
                         {"violations", c.violations},
                         {"worst_ratio", jnum(c.worst_ratio)},
                         {"pass", c.pass()}});
    }
    json jstar = json::array();
    csv_rows = {{"y", "magnitude"}};
    const long long cap =
        std::min(tf_args.table_cap, static_cast<long long>(rank.count));
    for (long long y = 0; y < cap; ++y) {
      const double v = rank.star(static_cast<double>(y) + 0.5);
      jstar.push_back(v);
      csv_rows.push_back({std::to_string(y), fmt(v)});
    }
    report = {{"command", "testfun"},
              {"kind", tf.kind},
              {"z", tf.z},
              {"z_effective", tf.z_effective},
              {"constant", tf.constant},
              {"eps", tf.eps},
              {"pieces", jpieces},
              {"bound_checks", jchecks},
              {"ranking",
               {{"count", rank.count},
                {"tail_bound", rank.tail_bound},
                {"windows", rank.windows},
                {"star_prefix", jstar},
                {"star_prefix_cap", cap}}},
              {"kernel", kernels::kernel_name(kernels::select_kernel())},
              {"pass", all_pass}};
    if (!all_pass) rc = 2;
  });

  // -------------------------------------------------------------- verify
  auto* verify = app.add_subcommand(
      "verify", "empirical max of ||f_hat|| / ||f|| over a function suite, "
                "against the theoretical ceiling and floor");
  struct {
    std::string u, w, form = "gamma-gamma";
    double p = 1.0, q = 2.0;
    std::string suite = "random:100+adversarial";
    long long N = 65536;
    unsigned long long seed = 1;
    std::string zs = "4,16,64,256";
    std::string averaging;
    long long half_width = 1 << 17;
    double eps = 0.0;
  } va;
  verify->add_option("--u", va.u, "left-hand weight expression")->required();
  verify->add_option("--w", va.w, "right-hand weight expression")->required();
  verify->add_option("--p", va.p)->required();
  verify->add_option("--q", va.q)->required();
  verify->add_option("--form", va.form,
                     "gamma-gamma | gamma-lambda | lambda-lambda")
      ->capture_default_str();
  verify->add_option("--suite", va.suite,
                     "\"random:K\", \"adversarial\", or both joined by +")
      ->capture_default_str();
  verify->add_option("--N", va.N, "dense table half-size for random entries")
      ->capture_default_str();
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->add_option("--zs", va.zs, "adversarial profile scales")
      ->capture_default_str();
  verify->add_option("--averaging", va.averaging,
                     "averaging intervals for the adversarial entries");
  verify->add_option("--half-width", va.half_width,
                     "window half-width for adversarial entries")
      ->capture_default_str();
  verify->add_option("--eps", va.eps,
                     "adversarial slack (default: scale-tied)");
  add_common(verify, common);
  verify->callback([&] {
    check_grid(common.grid);
    const Weight u = parse_weight(va.u);
    const Weight w = parse_weight(va.w);
    InequalityForm form;
    if (va.form == "gamma-gamma")
      form = InequalityForm::GammaGamma;
    else if (va.form == "gamma-lambda")
      form = InequalityForm::GammaLambda;
    else if (va.form == "lambda-lambda")
      form = InequalityForm::LambdaLambda;
    else
      throw std::invalid_argument(
          "--form must be gamma-gamma, gamma-lambda, or lambda-lambda");

    std::vector<ModulatedStep> random_suite;
    std::vector<TestFunction> adversarial;
    std::stringstream ss(va.suite);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
      if (tok.rfind("random", 0) == 0) {
        long long k = 100;
        const auto colon = tok.find(':');
        if (colon != std::string::npos)
          k = std::stoll(tok.substr(colon + 1));
        std::mt19937_64 rng(va.seed);
        for (long long i = 0; i < k; ++i)
          random_suite.push_back(random_step(rng));
      } else if (tok == "adversarial") {
        const AveragingOp A = parse_averaging(va.averaging);
        for (double z : parse_doubles(va.zs, "--zs")) {
          const double eps =
              va.eps > 0.0 ? va.eps : 1e-3 / (4.0 * std::max(z, 3.0));
          adversarial.push_back(testfun_full(z, A, eps));
        }
      } else {
        throw std::invalid_argument("--suite: unknown token \"" + tok + "\"");
      }
    }

    const VerifyReport rep =
        verify_inequality(u, w, va.p, va.q, form, random_suite, adversarial,
                          va.N, va.half_width, common.grid);
    json jentries = json::array();
    csv_rows = {{"label", "lhs_lower", "lhs_upper", "rhs", "ratio_lower",
                 "ratio_upper"}};
    for (const SuiteRatio& e : rep.entries) {
      jentries.push_back({{"label", e.label},
                          {"lhs_lower", jnum(e.lhs_lower)},
                          {"lhs_upper", jnum(e.lhs_upper)},
                          {"rhs", jnum(e.rhs)},
                          {"ratio_lower", jnum(e.ratio_lower)},
                          {"ratio_upper", jnum(e.ratio_upper)}});
      csv_rows.push_back({e.label, fmt(e.lhs_lower), fmt(e.lhs_upper),
                          fmt(e.rhs), fmt(e.ratio_lower),
                          fmt(e.ratio_upper)});
    }
    report = {{"command", "verify"},
              {"form", form_name(rep.form)},
              {"u", u.to_expr()},
              {"w", w.to_expr()},
              {"p", rep.p},
              {"q", rep.q},
              {"max_ratio_lower", jnum(rep.max_ratio_lower)},
              {"max_ratio_upper", jnum(rep.max_ratio_upper)},
              {"argmax", rep.argmax},
              {"ceiling_kind", rep.ceiling_kind},
              {"ceiling", jnum(rep.ceiling)},
              {"ceiling_verdict", to_string(rep.ceiling_verdict)},
              {"ceiling_respected", rep.ceiling_respected},
              {"floor", jnum(rep.floor)},
              {"floor_slack", jnum(rep.floor_slack)},
              {"entries", jentries},
              {"note", rep.note},
              {"N", va.N},
              {"seed", va.seed},
              {"half_width", va.half_width},
              {"kernel", kernels::kernel_name(kernels::select_kernel())},
              {"grid", jgrid(common.grid)}};
    if (rep.ceiling_verdict == Verdict::Infinite ||
        (std::isfinite(rep.ceiling) && !rep.ceiling_respected))
      rc = 2;
  });

  // ------------------------------------------------------------- jt-check
  auto* jt = app.add_subcommand(
      "jt-check", "second-mean comparison of the coefficient rearrangement "
                  "against the averaged profile of |f|");
  struct {
    std::string pieces, zs = "1,4,16,64";
    long long N = 65536;
  } jt_args;
  jt->add_option("--pieces", jt_args.pieces,
                 "modulated pieces \"x0,x1,amp,m,theta;...\"")
      ->required();
  jt->add_option("--zs", jt_args.zs, "comparison endpoints")
      ->capture_default_str();
  jt->add_option("--N", jt_args.N, "dense table half-size")
      ->capture_default_str();
  add_common(jt, common);
  jt->callback([&] {
    const ModulatedStep f{parse_pieces(jt_args.pieces)};
    const JTReport r =
        jt_check(f, parse_doubles(jt_args.zs, "--zs"), jt_args.N);
    json jr = json::array();
    csv_rows = {{"z", "ratio"}};
    for (std::size_t i = 0; i < r.zs.size(); ++i) {
      jr.push_back({{"z", r.zs[i]}, {"ratio", jnum(r.ratios[i])}});
      csv_rows.push_back({fmt(r.zs[i]), fmt(r.ratios[i])});
    }
    report = {{"command", "jt-check"},
              {"constant", r.constant},
              {"max_ratio", jnum(r.max_ratio)},
              {"arg_z", r.arg_z},
              {"ratios", jr},
              {"tail_bound", r.tail_bound},
              {"precondition_ok", r.precondition_ok},
              {"pass", r.pass},
              {"note", r.note},
              {"N", jt_args.N},
              {"kernel", kernels::kernel_name(kernels::select_kernel())}};
    if (!r.pass) rc = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const WeightParseError& e) {
    std::cerr << "weight expression error at position " << e.pos << ": "
              << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    write_text(common.out, report.dump(2));
    if (csv_rows.size() > 1) write_csv(common.csv, csv_rows);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
