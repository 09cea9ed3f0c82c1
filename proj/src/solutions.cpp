#include "garnier/solutions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>
#include <string>

#include "garnier/error.hpp"

namespace garnier {

namespace {

using Mat84 = Eigen::Matrix<cplx, 8, 4>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;

constexpr int kMaxPad = 12;

std::array<LaurentSeries, 4> as_laurent(const std::array<BiSeries, 4>& z, int storage) {
  std::array<LaurentSeries, 4> out;
  for (int v = 0; v < 4; ++v) out[v] = LaurentSeries::truncated(z[v].truncated(storage));
  return out;
}

std::array<LaurentSeries, 8> assemble(const SolutionId& id, const std::array<LaurentSeries, 4>& z,
                                      const Gradients<LaurentSeries>& g) {
  const int a = id.depole_t1 ? -1 : 0;  // q1 = t1^a Q1
  const int b = id.depole_s2 ? 1 : 0;   // q2 = s2^b Q2
  const LaurentSeries q1 = z[kQ1].shifted(a, 0), p1 = z[kP1].shifted(-a, 0);
  const LaurentSeries q2 = z[kQ2].shifted(0, b), p2 = z[kP2].shifted(0, -b);
  const LaurentSeries sm1 = LaurentSeries::monomial(0, 1) - 1.0;
  std::array<LaurentSeries, 8> e;
  e[0] = (q1.euler(Var::T1) + g.dP1[kP1].shifted(1, 0)).shifted(-a, 0);
  e[1] = (q2.euler(Var::T1) + g.dP1[kP2].shifted(1, 0)).shifted(0, -b);
  e[2] = (p1.euler(Var::T1) - g.dP1[kQ1].shifted(1, 0)).shifted(a, 0);
  e[3] = (p2.euler(Var::T1) - g.dP1[kQ2].shifted(1, 0)).shifted(0, b);
  e[4] = (sm1 * q1.euler(Var::S2) - g.dP2[kP1]).shifted(-a, 0);
  e[5] = (sm1 * q2.euler(Var::S2) - g.dP2[kP2]).shifted(0, -b);
  e[6] = (sm1 * p1.euler(Var::S2) + g.dP2[kQ1]).shifted(a, 0);
  e[7] = (sm1 * p2.euler(Var::S2) + g.dP2[kQ2]).shifted(0, b);
  return e;
}

std::array<LaurentSeries, 4> originals(const SolutionId& id, const std::array<LaurentSeries, 4>& z) {
  const int a = id.depole_t1 ? -1 : 0;
  const int b = id.depole_s2 ? 1 : 0;
  return {z[kQ1].shifted(a, 0), z[kQ2].shifted(0, b), z[kP1].shifted(-a, 0), z[kP2].shifted(0, -b)};
}

std::array<LaurentSeries, 8> equations_symbolic(const HamiltonianPolys& hp, const SolutionId& id,
                                                const std::array<LaurentSeries, 4>& z) {
  const auto x = originals(id, z);
  Gradients<LaurentSeries> g;
  for (int v = 0; v < 4; ++v) {
    g.dP1[v] = evaluate(hp.dP1[v], x);
    g.dP2[v] = evaluate(hp.dP2[v], x);
  }
  return assemble(id, z, g);
}

std::array<LaurentSeries, 8> equations_hand(const Params& p, const SolutionId& id,
                                            const std::array<LaurentSeries, 4>& z) {
  const auto x = originals(id, z);
  const LaurentSeries t1 = LaurentSeries::monomial(1, 0), s1 = LaurentSeries::monomial(-1, 0),
                      s2 = LaurentSeries::monomial(0, 1);
  const auto g = hand_gradients<LaurentSeries>(p, x[kQ1], x[kQ2], x[kP1], x[kP2], t1, s1, s2);
  return assemble(id, z, g);
}

int min_prec(const std::array<LaurentSeries, 8>& e) {
  int m = LaurentSeries::kExact;
  for (const auto& s : e) m = std::min(m, s.prec());
  return m;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SolutionId solution_id(int index) {
  if (index < 1 || index > 8) {
    throw Error(ErrorKind::InvalidArgument, "solution index must be in 1..8, got " + std::to_string(index));
  }
  SolutionId id;
  id.index = index;
  id.depole_t1 = index >= 5;
  id.depole_s2 = index == 3 || index == 4 || index == 7 || index == 8;
  return id;
}

std::array<cplx, 4> seed_values(const Params& p, const SolutionId& id) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu, eta = p.eta;
  switch (id.index) {
    case 1: return {eta / ai, (ai + a1) / ai, 0.0, -nu * ai / (ai + a1)};
    case 2: return {-eta / ai, (ai - a1) / ai, 0.0, -(ai + nu) * ai / (ai - a1)};
    case 3: return {-eta / a1, a2 / (a0 + a2), 0.0, 0.0};
    // the order-0 equations force P2 = a2 - a0 here
    case 4: return {-eta / a1, a2 / (a2 - a0), 0.0, a2 - a0};
    case 5: return {(ai + a0 + a2) / ai, 0.0, -nu * ai / (ai + a0 + a2), 0.0};
    case 6: return {(ai - a0 - a2) / ai, 0.0, -(nu + ai) * ai / (ai - a0 - a2), 0.0};
    case 7: return {(ai + a0 - a2) / ai, a2 / ai, -(nu + a2) * ai / (ai + a0 - a2), ai};
    case 8: return {(ai - a0 + a2) / ai, -a2 / ai, -(nu + a2 + ai) * ai / (ai - a0 + a2), -ai};
  }
  throw Error(ErrorKind::InvalidArgument, "bad solution index");
}

SolutionExpansion make_expansion(const Params& p, const SolutionId& id, const std::array<BiSeries, 4>& z) {
  SolutionExpansion e;
  e.id = id;
  e.params = p;
  e.order = z[0].order();
  e.q1 = PoleSeries{z[kQ1], id.depole_t1, false, false, false};
  e.p1 = PoleSeries{z[kP1], false, false, false, id.depole_t1};
  e.q2 = PoleSeries{z[kQ2], false, false, id.depole_s2, false};
  e.p2 = PoleSeries{z[kP2], false, id.depole_s2, false, false};
  return e;
}

std::array<LaurentSeries, 8> depoled_equations(const Params& p, const SolutionId& id,
                                               const std::array<LaurentSeries, 4>& z, GradientRoute route) {
  if (route == GradientRoute::Hand) return equations_hand(p, id, z);
  return equations_symbolic(hamiltonian_polys(p), id, z);
}

SolutionExpansion expand_solution(const Params& p, int index, int order, const ExpandOptions& opt) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "expansion order must be at least 1");
  require_generic(p);
  const SolutionId id = solution_id(index);
  const HamiltonianPolys hp = hamiltonian_polys(p);
  std::mt19937_64 rng(opt.probe_seed);

  std::array<BiSeries, 4> z;
  const auto s = seed_values(p, id);
  for (int v = 0; v < 4; ++v) z[v] = BiSeries::constant(s[v], order);

  int pad = 3;
  for (int m = 1; m <= order; ++m) {
    std::array<BiSeries, 4> base;
    std::array<LaurentSeries, 8> e0;
    for (;;) {
      for (int v = 0; v < 4; ++v) base[v] = z[v].truncated(m + pad);
      if (opt.random_probe_base) {
        for (int v = 0; v < 4; ++v)
          for (int k = 0; k <= m; ++k) base[v].at(m - k, k) = cplx(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
      }
      e0 = equations_symbolic(hp, id, as_laurent(base, m + pad));
      if (min_prec(e0) >= m) break;
      if (++pad > kMaxPad) throw Error(ErrorKind::NumericOverflow, "could not reach the precision for order " + std::to_string(m));
    }

    std::array<std::array<LaurentSeries, 8>, 4> probe;
    for (int v = 0; v < 4; ++v) {
      auto moved = base;
      for (int k = 0; k <= m; ++k) moved[v].at(m - k, k) += 1.0;
      probe[v] = equations_symbolic(hp, id, as_laurent(moved, m + pad));
    }

    std::vector<Mat84> As(m + 1);
    for (int k = 0; k <= m; ++k) {
      const int j = m - k;
      for (int eq = 0; eq < 8; ++eq)
        for (int v = 0; v < 4; ++v) As[k](eq, v) = probe[v][eq].coeff(j, k) - e0[eq].coeff(j, k);
      const Eigen::JacobiSVD<Mat84> svd(As[k]);
      const auto sv = svd.singularValues();
      if (sv(3) <= 1e-10 * sv(0)) {
        throw Error(ErrorKind::NonGenericParams, "singular linear system for t1^" + std::to_string(j) + " s2^" +
                                                     std::to_string(k) + " (resonant parameters)");
      }
    }

    // the first pass solves from the probe base, the later ones refine
    for (int pass = 0; pass < 3; ++pass) {
      if (pass > 0) {
        for (int v = 0; v < 4; ++v) base[v] = z[v].truncated(m + pad);
        e0 = equations_symbolic(hp, id, as_laurent(base, m + pad));
      }
      for (int k = 0; k <= m; ++k) {
        const int j = m - k;
        const Mat84& A = As[k];
        Vec8 r;
        for (int eq = 0; eq < 8; ++eq) r(eq) = e0[eq].coeff(j, k);
        Vec4 delta;
        if (opt.ordering == SolverOrdering::Natural) {
          delta = A.colPivHouseholderQr().solve(-r);
        } else {
          // rows and unknowns in reverse order through a different factorisation
          const Mat84 Ar = A.colwise().reverse().rowwise().reverse();
          const Vec8 rr = r.reverse();
          const Vec4 dr = Ar.completeOrthogonalDecomposition().solve(-rr);
          delta = dr.reverse();
        }
        const double mismatch = (A * delta + r).norm();
        if (pass == 0 && mismatch > 1e-7 * std::max(1.0, r.norm())) {
          throw Error(ErrorKind::NonGenericParams, "inconsistent linear system for t1^" + std::to_string(j) + " s2^" +
                                                       std::to_string(k));
        }
        for (int v = 0; v < 4; ++v) z[v].at(j, k) = base[v].coeff(j, k) + delta(v);
      }
    }
  }
  return make_expansion(p, id, z);
}

ResidualReport residual_report(const SolutionExpansion& e, int through) {
  ResidualReport rep;
  rep.through = through >= 0 ? through : e.order - 1;
  const auto z = e.depoled();
  for (const auto& s : z) rep.scale = std::max(rep.scale, s.max_abs());
  if (rep.through < 0) return rep;
  std::array<LaurentSeries, 8> eqs;
  for (int pad = 2;; ++pad) {
    eqs = equations_hand(e.params, e.id, as_laurent(z, std::max(e.order, rep.through) + pad));
    if (min_prec(eqs) >= rep.through) break;
    if (pad > kMaxPad) throw Error(ErrorKind::NumericOverflow, "residual precision not reached");
  }
  for (const auto& s : eqs) {
    for (int d = 0; d <= rep.through; ++d)
      for (int k = 0; k <= d; ++k) rep.absolute = std::max(rep.absolute, std::abs(s.coeff(d - k, k)));
  }
  rep.relative = rep.absolute / rep.scale;
  return rep;
}

SolutionExpansion truncate_coefficients(const SolutionExpansion& e, int keep) {
  auto z = e.depoled();
  for (auto& s : z) s = s.truncated(std::max(0, keep)).truncated(e.order);
  return make_expansion(e.params, e.id, z);
}

ConvergenceDiagnostic convergence_diagnostic(const BiSeries& s) {
  std::vector<double> m, y;
  for (int d = 0; d <= s.order(); ++d) {
    const double c = s.max_abs_at_degree(d);
    if (c > 0.0) {
      m.push_back(d);
      y.push_back(std::log(c));
    }
  }
  ConvergenceDiagnostic out;
  const auto n = static_cast<double>(m.size());
  if (m.size() < 2) return out;
  double sm = 0, sy = 0, smm = 0, smy = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    sm += m[i];
    sy += y[i];
    smm += m[i] * m[i];
    smy += m[i] * y[i];
  }
  out.slope = (n * smy - sm * sy) / (n * smm - sm * sm);
  out.intercept = (sy - out.slope * sm) / n;
  double ss = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double r = y[i] - out.intercept - out.slope * m[i];
    ss += r * r;
  }
  out.fit_quality = std::sqrt(ss / n);
  out.rho = std::exp(-out.slope);
  return out;
}

ConvergenceDiagnostic convergence_diagnostic(const SolutionExpansion& e) {
  // one series whose degree-d block carries the largest coefficient of the four
  BiSeries merged(e.order);
  for (const auto& s : e.depoled()) {
    for (int d = 0; d <= e.order; ++d) {
      const double c = s.max_abs_at_degree(d);
      if (c > std::abs(merged.coeff(d, 0))) merged.at(d, 0) = c;
    }
  }
  return convergence_diagnostic(merged);
}

GarnierCoords to_garnier_coords(const SolutionExpansion& e, cplx t1, cplx t2, KConvention conv) {
  if (t1 == 0.0) throw Error(ErrorKind::SingularTime, "t1 = 0");
  if (t2 == 0.0 || t2 == 1.0) throw Error(ErrorKind::SingularTime, "t2 in {0, 1}");
  const cplx s2 = t2 / (t2 - 1.0);
  const cplx q1 = evaluate(e.q1, t1, s2), q2 = evaluate(e.q2, t1, s2);
  const cplx p1 = evaluate(e.p1, t1, s2), p2 = evaluate(e.p2, t1, s2);

  // (l1-1)(l2-1) = A and (l1-t2)(l2-t2) = B fix the symmetric functions
  const cplx A = -t1 * (t2 - 1.0) * q1;
  const cplx B = (t2 - 1.0) * (t2 - 1.0) * q2;
  const cplx sigma = (A - B) / (t2 - 1.0) + t2 + 1.0;
  const cplx prod = A + sigma - 1.0;
  const cplx disc = std::sqrt(sigma * sigma - 4.0 * prod);
  cplx l1 = 0.5 * (sigma + disc), l2 = 0.5 * (sigma - disc);
  if (std::abs(l1 - l2) < 1e-12) throw Error(ErrorKind::DegenerateLambda, "lambda1 = lambda2");
  const double g1 = std::arg(l1 - 1.0), g2 = std::arg(l2 - 1.0);
  if (g2 < g1 || (g2 == g1 && std::abs(l2 - 1.0) < std::abs(l1 - 1.0))) std::swap(l1, l2);

  GarnierCoords g;
  g.t1 = t1;
  g.t2 = t2;
  g.lambda1 = l1;
  g.lambda2 = l2;
  g.mu1 = q1 * p1 / (l1 - 1.0) + q2 * p2 / (l1 - t2);
  g.mu2 = q1 * p1 / (l2 - 1.0) + q2 * p2 / (l2 - t2);

  const HamiltonianValues h = hamiltonians_eval(e.params, {q1, q2, p1, p2, t1, s2});
  cplx dq1_dt1, dq2_dt1, dq1_dt2, dq2_dt2;
  if (conv == KConvention::FixedLambda) {
    dq1_dt1 = -q1 / t1;
    dq2_dt1 = 0.0;
    dq1_dt2 = -q1 / (t2 - 1.0);
    dq2_dt2 = -(l1 + l2 - 2.0 * t2) / ((t2 - 1.0) * (t2 - 1.0)) - 2.0 * q2 / (t2 - 1.0);
  } else {
    const cplx ds2_dt2 = -1.0 / ((t2 - 1.0) * (t2 - 1.0));
    dq1_dt1 = evaluate_partial(e.q1, Var::T1, t1, s2);
    dq2_dt1 = evaluate_partial(e.q2, Var::T1, t1, s2);
    dq1_dt2 = evaluate_partial(e.q1, Var::S2, t1, s2) * ds2_dt2;
    dq2_dt2 = evaluate_partial(e.q2, Var::S2, t1, s2) * ds2_dt2;
  }
  g.K1 = -h.H1 / (t1 * t1) - (p1 * dq1_dt1 + p2 * dq2_dt1);
  g.K2 = -h.H2 / ((t2 - 1.0) * (t2 - 1.0)) - (p1 * dq1_dt2 + p2 * dq2_dt2);
  return g;
}

}  // namespace garnier
