#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "report.hpp"

#include "garnier/error.hpp"
#include "garnier/linear_ode.hpp"
#include "garnier/monodromy.hpp"
#include "garnier/params.hpp"
#include "garnier/solutions.hpp"

using namespace garnier;
using report::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNonGeneric = 2, kVerify = 3, kNumeric = 4 };

struct RunConfig {
  std::string params;
  int solution = 0;
  int order = 6;
  std::uint64_t seed = 1;
  double tol_series = 1e-9;
  std::optional<double> tol_monodromy;
  double tol_integrator = 1e-10;
  std::string equation = "second";
  std::optional<double> t;
  std::string out;
};

struct Result {
  json body;
  int status = kOk;
};

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnsupportedLimit:
    case ErrorKind::NotASingularity:
      return kUsage;
    case ErrorKind::NonGenericParams:
    case ErrorKind::GammaPole:
    case ErrorKind::DegenerateLambda:
    case ErrorKind::ZeroConstantTerm:
    case ErrorKind::SingularTime:
      return kNonGeneric;
    default:
      return kNumeric;
  }
}

Params params_of(const RunConfig& c) {
  if (!c.params.empty()) return report::params_from_text(c.params);
  return sample_params(c.seed, 0.05, [](const Params& p) { return closed_forms_generic(p); });
}

int require_solution(const RunConfig& c) {
  if (c.solution < 1 || c.solution > 8) throw Error(ErrorKind::InvalidArgument, "--solution must be in 1..8");
  return c.solution;
}

IntegratorOptions integrator(const RunConfig& c) {
  IntegratorOptions o;
  o.rtol = c.tol_integrator;
  o.atol = c.tol_integrator * 1e-3;
  return o;
}

json header(const std::string& command, const Params& p) { return {{"command", command}, {"params", report::to_json(p)}}; }

Result cmd_expand(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  require_generic(p);
  const auto e = expand_solution(p, idx, c.order);
  json j = header("expand", p);
  j["expansion"] = report::to_json(e);
  return {j};
}

Result cmd_verify(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  require_generic(p);
  const auto e = expand_solution(p, idx, c.order);
  const auto r = residual_report(e);
  const auto d = convergence_diagnostic(e);
  json j = header("verify", p);
  j["solution"] = idx;
  j["order"] = c.order;
  j["residual"] = report::to_json(r);
  j["convergence"] = {{"rho", d.rho}, {"fit_quality", d.fit_quality}};
  j["tolerance"] = c.tol_series;
  j["passed"] = r.relative < c.tol_series;
  return {j, r.relative < c.tol_series ? kOk : kVerify};
}

Result cmd_monodromy_closed(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  const double tol = c.tol_monodromy.value_or(1e-10);
  const auto t = closed_form_monodromy(p, idx);
  const auto r = group_identities(t, idx);
  double worst = r.cyclic;
  for (const auto& [name, v] : r.commutators) worst = std::max(worst, v);
  json j = header("monodromy-closed", p);
  j["monodromy"] = report::to_json(t);
  j["identities"] = report::to_json(r);
  j["tolerance"] = tol;
  j["passed"] = worst < tol;
  return {j, worst < tol ? kOk : kVerify};
}

// Loops from a common base above every finite singularity, ordered by the
// argument of (s - base); the product N_inf N_last ... N_first is the identity.
struct LoopSet {
  std::vector<std::pair<std::string, Matrix2>> loops;
  Matrix2 product = Matrix2::Identity();
};

std::string point_label(cplx s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", s.real(), s.imag());
  return buf;
}

LoopSet loops_from(const RationalODE& ode, std::vector<cplx> pts, cplx base, const IntegratorOptions& opt) {
  std::sort(pts.begin(), pts.end(), [&](cplx a, cplx b) { return std::arg(a - base) < std::arg(b - base); });
  std::vector<LoopPath> paths;
  for (cplx s : pts) paths.push_back(loop_around(ode, s, base));
  paths.push_back(loop_around_infinity(ode, base));
  for (const auto& l : paths) check_loop(ode, l);

  LoopSet out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Matrix2 N = numeric_monodromy(ode, paths[i], opt);
    out.loops.emplace_back(point_label(pts[i]), N);
    out.product = N * out.product;
  }
  const Matrix2 Ni = numeric_monodromy(ode, paths.back(), opt);
  out.loops.emplace_back("infinity", Ni);
  out.product = Ni * out.product;
  return out;
}

LoopSet numeric_loops(const RationalODE& ode, const IntegratorOptions& opt) {
  const std::vector<cplx>& pts = ode.singularities();
  double top = 0.0, extent = 1.0;
  for (cplx s : pts) {
    top = std::max(top, s.imag());
    extent = std::max(extent, std::abs(s));
  }
  double gap = extent;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = i + 1; k < pts.size(); ++k) gap = std::min(gap, std::abs(pts[i] - pts[k]));
  cplx centre = 0.0;
  for (cplx s : pts) centre += s;
  if (!pts.empty()) centre /= double(pts.size());
  // the radial tails may graze another point; a few other bases are tried
  for (double lift : {1.0, 2.0, 0.6, 3.0})
    for (double shift : {0.0, 0.37, -0.41}) {
      const cplx base(centre.real() + shift * gap, top + lift * std::max(0.5 * gap, 0.25));
      try {
        return loops_from(ode, pts, base, opt);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PathTooClose) throw;
      }
    }
  throw Error(ErrorKind::PathTooClose, "no admissible common base point for " + ode.name);
}

json invariants(const Matrix2& m) {
  Eigen::ComplexEigenSolver<Matrix2> es(m);
  return {{"matrix", report::to_json(m)},
          {"trace", report::to_json(m.trace())},
          {"det", report::to_json(m.determinant())},
          {"eigenvalues", json::array({report::to_json(es.eigenvalues()(0)), report::to_json(es.eigenvalues()(1))})}};
}

double cyclic_of(const Matrix2& prod) { return (prod - Matrix2::Identity()).cwiseAbs().maxCoeff(); }

Result cmd_monodromy_numeric(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  const double tol = c.tol_monodromy.value_or(1e-7);
  const RationalODE ode = limit_equation({parse_stage(c.equation), idx}, p);
  const LoopSet ls = numeric_loops(ode, integrator(c));
  json loops = json::object();
  for (const auto& [name, m] : ls.loops) loops[name] = invariants(m);
  const double cyc = cyclic_of(ls.product);
  json j = header("monodromy-numeric", p);
  j["equation"] = report::to_json(ode);
  j["loops"] = loops;
  j["cyclic_residual"] = cyc;
  j["tolerance"] = tol;
  j["passed"] = cyc < tol;
  return {j, cyc < tol ? kOk : kVerify};
}

// Limit equation of Gauss or Kummer type against its closed form.
CompareReport compare_limit(const RationalODE& ode, const IntegratorOptions& opt, json& extra) {
  const auto alpha = ode.constant("alpha"), gamma = ode.constant("gamma"), beta = ode.constant("beta");
  if (!alpha || !gamma) throw Error(ErrorKind::UnsupportedLimit, ode.name + " has no closed form to compare with");
  const cplx gauge = ode.constant("gauge").value_or(0.0);
  if (beta) {
    const GaussMonodromy g = gauss_monodromy_matrices({*alpha, *beta, *gamma});
    const cplx base(0.5, 0.5);
    Matrix2 N0 = numeric_monodromy(ode, loop_around(ode, 0.0, base), opt);
    Matrix2 N1 = numeric_monodromy(ode, loop_around(ode, 1.0, base), opt);
    Matrix2 Ni = numeric_monodromy(ode, loop_around_infinity(ode, base), opt);
    // undo psi = x^gauge y
    N0 *= e2pi(-gauge);
    Ni *= e2pi(gauge);
    extra["numeric"] = {{"M0", report::to_json(N0)}, {"M1", report::to_json(N1)}, {"Minf", report::to_json(Ni)}};
    extra["closed"] = {{"M0", report::to_json(g.M0)}, {"M1", report::to_json(g.M1)}, {"Minf", report::to_json(g.Minf)}};
    extra["numeric_cyclic_residual"] = cyclic_of(Ni * N1 * N0);
    return compare_monodromy({{"M0", N0}, {"M1", N1}, {"Minf", Ni}}, {{"M0", g.M0}, {"M1", g.M1}, {"Minf", g.Minf}});
  }
  const KummerMonodromy k = kummer_monodromy_matrices({*alpha, *gamma});
  const Matrix2 N0 = numeric_monodromy(ode, loop_around(ode, 0.0, cplx(0.0, 1.0)), opt);
  const Matrix2 Ni = numeric_monodromy(ode, loop_around_infinity(ode, cplx(0.0, 1.0)), opt);
  extra["numeric"] = {{"M0", report::to_json(N0)}, {"Minf", report::to_json(Ni)}};
  extra["closed"] = {{"M0", report::to_json(k.M0)}, {"Minf", report::to_json(k.Minf)}};
  return compare_monodromy({{"M0", N0}, {"Minf", Ni}}, {{"M0", k.M0}, {"Minf", k.Minf}});
}

CompareReport trace_det_report(const std::vector<std::pair<std::string, Matrix2>>& got,
                               const std::vector<std::pair<std::string, Matrix2>>& want) {
  CompareReport r;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& [name, m] = got[i];
    const Matrix2& w = want[i].second;
    const double dt = std::abs(m.trace() - w.trace()) / std::max(1.0, std::abs(w.trace()));
    const double dd = std::abs(m.determinant() - w.determinant()) / std::max(1.0, std::abs(w.determinant()));
    r.items.emplace_back("tr(" + name + ")", dt);
    r.items.emplace_back("det(" + name + ")", dd);
  }
  for (const auto& [name, v] : r.items)
    if (v >= r.max_deviation) {
      r.max_deviation = v;
      r.worst = name;
    }
  return r;
}

// first circle in the list that clears every singular point
Matrix2 first_admissible(const RationalODE& ode, const std::vector<LoopPath>& tries, const IntegratorOptions& opt) {
  for (const auto& l : tries) {
    try {
      check_loop(ode, l);
    } catch (const Error&) {
      continue;
    }
    return numeric_monodromy(ode, l, opt);
  }
  throw Error(ErrorKind::PathTooClose, "no admissible loop for the full equation");
}

// Full equation at t1 = t2 = t against the closed-form tuple of the solution:
// one loop around {0, t2} and one around {t2, 1}, each free of the other points.
CompareReport compare_full(const Params& p, int idx, const RunConfig& c, json& extra) {
  const double t = *c.t;
  if (!(t > 0.0 && t < 0.5)) throw Error(ErrorKind::InvalidArgument, "--t must be in (0, 0.5)");
  const auto e = expand_solution(p, idx, c.order);
  const auto g = to_garnier_coords(e, t, t);
  const RationalODE ode = lg2_coefficients(g, p);
  const MonodromyTuple m = closed_form_monodromy(p, idx);
  const auto opt = integrator(c);

  std::vector<LoopPath> inner, outer;
  for (double r : {5.0, 3.0, 8.0, 2.0, 12.0, 1.5, 20.0}) {
    LoopPath a;
    a.center = t / 2;
    a.radius = std::min(r * t, 0.3);
    a.base = a.center + cplx(0.0, a.radius);
    inner.push_back(a);
  }
  for (double f : {0.5, 0.35, 0.65, 0.25, 0.75}) {
    // left edge of the circle at f t, right edge past 1
    LoopPath b;
    const double left = f * t, right = 1.0 + 0.5 * (1.0 - t);
    b.center = 0.5 * (left + right);
    b.radius = 0.5 * (right - left);
    b.base = b.center + cplx(0.0, b.radius);
    outer.push_back(b);
  }
  const Matrix2 Na = first_admissible(ode, inner, opt), Nb = first_admissible(ode, outer, opt);
  extra["equation"] = report::to_json(ode);
  extra["garnier"] = {{"lambda1", report::to_json(g.lambda1)}, {"lambda2", report::to_json(g.lambda2)},
                      {"mu1", report::to_json(g.mu1)},         {"mu2", report::to_json(g.mu2)},
                      {"K1", report::to_json(g.K1)},           {"K2", report::to_json(g.K2)}};
  extra["numeric"] = {{"Mt2*M0", invariants(Na)}, {"M1*Mt2", invariants(Nb)}};
  return trace_det_report({{"Mt2*M0", Na}, {"M1*Mt2", Nb}}, {{"Mt2*M0", m.Mt2 * m.M0}, {"M1*Mt2", m.M1 * m.Mt2}});
}

Result cmd_compare(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  const double tol = c.tol_monodromy.value_or(1e-6);
  json j = header("compare", p);
  json extra = json::object();
  CompareReport r;
  if (c.t) {
    r = compare_full(p, idx, c, extra);
    j["mode"] = "full";
    j["t"] = *c.t;
    j["order"] = c.order;
  } else {
    const RationalODE ode = limit_equation({parse_stage(c.equation), idx}, p);
    r = compare_limit(ode, integrator(c), extra);
    j["mode"] = "limit";
    j["equation_name"] = ode.name;
  }
  j["solution"] = idx;
  j["details"] = extra;
  j["comparison"] = report::to_json(r);
  j["tolerance"] = tol;
  j["passed"] = r.max_deviation < tol;
  return {j, r.max_deviation < tol ? kOk : kVerify};
}

Result cmd_limits(const RunConfig& c) {
  const int idx = require_solution(c);
  const Params p = params_of(c);
  const RationalODE ode = limit_equation({parse_stage(c.equation), idx}, p);
  json defects = json::array();
  for (cplx a : ode.apparent)
    defects.push_back({{"point", report::to_json(a)}, {"defect", report::to_json(apparent_defect(ode, a))}});
  json j = header("limits", p);
  j["solution"] = idx;
  j["stage"] = to_string(parse_stage(c.equation));
  j["equation"] = report::to_json(ode);
  j["apparent_defects"] = defects;
  return {j};
}

Result cmd_sample_params(const RunConfig& c) {
  const Params p = params_of(c);
  const GenericReport g = check_generic(p);
  json j = header("sample-params", p);
  j["seed"] = c.seed;
  j["generic"] = g.ok();
  j["closed_forms_generic"] = closed_forms_generic(p);
  if (!g.ok()) return {j, kNonGeneric};
  return {j};
}

void emit(const json& j, const std::string& out) {
  const std::string text = report::dump(j) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Series, monodromy and limit equations of the degenerate Garnier system G(1112)"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub, bool needs_solution) {
    sub->add_option("--params", cfg.params, "Params as inline JSON or a file path");
    sub->add_option("--seed", cfg.seed, "Seed for the parameter sampler when --params is absent");
    sub->add_option("--out", cfg.out, "Write the JSON report here instead of stdout");
    if (needs_solution) sub->add_option("--solution", cfg.solution, "Solution index 1..8")->required();
  };
  const auto order = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "Truncation order N")->check(CLI::PositiveNumber);
  };
  const auto mono = [&](CLI::App* sub) {
    sub->add_option("--tol-monodromy", cfg.tol_monodromy, "Tolerance of the monodromy checks")
        ->check(CLI::PositiveNumber);
  };
  const auto equation = [&](CLI::App* sub) {
    sub->add_option("--equation", cfg.equation, "Limit stage")->check(CLI::IsMember({"first", "second", "third"}));
    sub->add_option("--tol-integrator", cfg.tol_integrator, "Relative tolerance of the integrator")
        ->check(CLI::PositiveNumber);
  };

  auto* expand = app.add_subcommand("expand", "Series expansion of one solution");
  common(expand, true);
  order(expand);
  auto* verify = app.add_subcommand("verify", "Residual of the truncated expansion");
  common(verify, true);
  order(verify);
  verify->add_option("--tol-series", cfg.tol_series, "Relative residual tolerance")->check(CLI::PositiveNumber);
  auto* closed = app.add_subcommand("monodromy-closed", "Closed-form monodromy and group identities");
  common(closed, true);
  mono(closed);
  auto* numeric = app.add_subcommand("monodromy-numeric", "Numeric loops of a limit equation");
  common(numeric, true);
  mono(numeric);
  equation(numeric);
  auto* compare = app.add_subcommand("compare", "Numeric loops against the closed forms");
  common(compare, true);
  mono(compare);
  equation(compare);
  order(compare);
  compare->add_option("--t", cfg.t, "Compare the full equation at t1 = t2 = t instead of a limit equation");
  auto* limits = app.add_subcommand("limits", "Coefficients and constants of a limit equation");
  common(limits, true);
  equation(limits);
  auto* sample = app.add_subcommand("sample-params", "Draw a generic parameter tuple");
  common(sample, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Result r;
    if (*expand) r = cmd_expand(cfg);
    else if (*verify) r = cmd_verify(cfg);
    else if (*closed) r = cmd_monodromy_closed(cfg);
    else if (*numeric) r = cmd_monodromy_numeric(cfg);
    else if (*compare) r = cmd_compare(cfg);
    else if (*limits) r = cmd_limits(cfg);
    else r = cmd_sample_params(cfg);
    emit(r.body, cfg.out);
    return r.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
}
