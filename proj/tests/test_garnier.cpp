#include <cmath>
#include <random>

#include "doctest.h"
#include "garnier/error.hpp"
#include "garnier/hamiltonian.hpp"
#include "garnier/linear_ode.hpp"
#include "garnier/params.hpp"
#include "garnier/solutions.hpp"

using namespace garnier;

namespace {

// rational point used by the sympy oracles in tests/oracles
Params oracle_point() { return Params::with_fuchs(1.0 / 7, 2.0 / 9, 3.0 / 11, 2.0 / 13, 0.75); }

bool throws_kind(ErrorKind k, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

std::array<cplx, 6> random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<cplx, 6> x;
  for (auto& v : x) v = cplx(u(rng), u(rng));
  x[kT1] += 0.5;
  return x;
}

SolutionExpansion constant_expansion(const Params& p, cplx q1, cplx q2, cplx p1, cplx p2) {
  return make_expansion(p, solution_id(1),
                        {BiSeries::constant(q1, 1), BiSeries::constant(q2, 1), BiSeries::constant(p1, 1),
                         BiSeries::constant(p2, 1)});
}

// defect scaled by the size of the terms it cancels
double scaled_defect(const RationalODE& ode, cplx l) {
  const cplx qm1 = ode.Q().coefficient(l, 1), q0 = ode.Q().regular_part(l), p0 = ode.P().regular_part(l);
  const double sc = std::max({1.0, std::abs(q0), std::abs(qm1 * qm1), std::abs(p0 * qm1)});
  return std::abs(apparent_defect(ode, l)) / sc;
}

}  // namespace

TEST_CASE("genericity checks") {
  CHECK(check_generic(sample_params(3)).ok());
  CHECK(check_generic(oracle_point()).ok());

  // a1 + aInf = 1 - 2nu - a0 - a2; nu = -1/5 with these values lands near 1
  const Params bad = Params::with_fuchs(1.0 / 7, 2.0 / 9, 3.0 / 11, -0.2, 0.75);
  CHECK_FALSE(check_generic(bad).ok());
  CHECK(throws_kind(ErrorKind::NonGenericParams, [&] { expand_solution(bad, 1, 3); }));

  Params p = sample_params(4);
  p.eta = 0.0;
  CHECK_FALSE(check_generic(p).ok());
  p = sample_params(4);
  p.alphaInf += 1e-6;
  CHECK_FALSE(check_generic(p).ok());
  p = Params::with_fuchs(0.2, 1.01, 0.3, 0.1, 1.0);
  CHECK_FALSE(check_generic(p).ok());

  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { solution_id(0); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { solution_id(9); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { expand_solution(sample_params(1), 1, 0); }));
}

TEST_CASE("sampler is reproducible and honours the extra predicate") {
  const Params a = sample_params(17), b = sample_params(17);
  CHECK(a.alpha0 == b.alpha0);
  CHECK(a.eta == b.eta);
  const Params c = sample_params(17, 0.05, [](const Params& p) { return p.nu.real() > 0.5; });
  CHECK(c.nu.real() > 0.5);
  CHECK(check_generic(c).ok());
}

TEST_CASE("hamiltonians evaluate") {
  const Params p = sample_params(5);
  // everything vanishes at q = p = 0
  const HamiltonianValues z = hamiltonians_eval(p, {0.0, 0.0, 0.0, 0.0, 0.3, 0.2});
  CHECK(std::abs(z.H1) == 0.0);
  CHECK(std::abs(z.H2) == 0.0);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_point(rng);
    const HamiltonianValues h = hamiltonians_eval(p, {x[0], x[1], x[2], x[3], x[4], x[5]});
    const cplx s1 = 1.0 / x[kT1];
    const auto sc = scaled_hamiltonians<cplx>(p, x[0], x[1], x[2], x[3], x[4], s1, x[5]);
    CHECK(std::abs(h.H1 - sc.P1 / (s1 * s1)) < 1e-12 * std::max(1.0, std::abs(h.H1)));
    CHECK(std::abs(h.H2 - sc.P2 / (x[5] * (x[5] - 1.0))) < 1e-12 * std::max(1.0, std::abs(h.H2)));

    const HamiltonianPolys hp = hamiltonian_polys(p);
    std::array<cplx, 6> xs = x;
    CHECK(std::abs(evaluate(hp.P1, xs) - sc.P1) < 1e-12 * std::max(1.0, std::abs(sc.P1)));
    CHECK(std::abs(evaluate(hp.P2, xs) - sc.P2) < 1e-12 * std::max(1.0, std::abs(sc.P2)));
  }

  CHECK(throws_kind(ErrorKind::SingularTime, [&] { hamiltonians_eval(p, {1.0, 1.0, 1.0, 1.0, 0.3, 0.0}); }));
  CHECK(throws_kind(ErrorKind::SingularTime, [&] { hamiltonians_eval(p, {1.0, 1.0, 1.0, 1.0, 0.3, 1.0}); }));
  CHECK(throws_kind(ErrorKind::SingularTime, [&] { hamiltonians_eval(p, {1.0, 1.0, 1.0, 1.0, 0.0, 0.5}); }));
}

TEST_CASE("symbolic, hand and finite-difference gradients agree") {
  const Params p = sample_params(6);
  const HamiltonianPolys hp = hamiltonian_polys(p);
  std::mt19937_64 rng(21);
  const double h = 1e-6;
  for (int trial = 0; trial < 4; ++trial) {
    const auto x = random_point(rng);
    const cplx s1 = 1.0 / x[kT1];
    const auto g = hand_gradients<cplx>(p, x[0], x[1], x[2], x[3], x[4], s1, x[5]);
    for (int v = 0; v < 4; ++v) {
      const cplx sym1 = evaluate(hp.dP1[v], x), sym2 = evaluate(hp.dP2[v], x);
      CHECK(std::abs(sym1 - g.dP1[v]) < 1e-11 * std::max(1.0, std::abs(sym1)));
      CHECK(std::abs(sym2 - g.dP2[v]) < 1e-11 * std::max(1.0, std::abs(sym2)));

      auto xp = x, xm = x;
      xp[v] += h;
      xm[v] -= h;
      const cplx fd1 = (evaluate(hp.P1, xp) - evaluate(hp.P1, xm)) / (2.0 * h);
      const cplx fd2 = (evaluate(hp.P2, xp) - evaluate(hp.P2, xm)) / (2.0 * h);
      CHECK(std::abs(fd1 - g.dP1[v]) < 1e-6 * std::max(1.0, std::abs(fd1)));
      CHECK(std::abs(fd2 - g.dP2[v]) < 1e-6 * std::max(1.0, std::abs(fd2)));
    }
  }
}

TEST_CASE("exact oracle values at the rational point") {
  const Params p = oracle_point();
  CHECK(std::abs(p.alphaInf - 491.0 / 9009.0) < 1e-15);

  const auto z1 = expand_solution(p, 1, 4).depoled();
  CHECK(std::abs(z1[kQ2].coeff(2, 0)) < 1e-12);
  CHECK(std::abs(z1[kQ2].coeff(1, 1) - (-367624257.0 / 50478728.0)) < 1e-12);
  CHECK(std::abs(z1[kQ2].coeff(0, 2) - (-0.44381392895970846737)) < 1e-12);
  CHECK(std::abs(z1[kP1].coeff(2, 0)) < 1e-12);
  CHECK(std::abs(z1[kP1].coeff(0, 2)) < 1e-12);
  CHECK(std::abs(z1[kP1].coeff(1, 1) - (-209657.0 / 11732058.0)) < 1e-12);

  const auto z2 = expand_solution(p, 2, 4).depoled();
  CHECK(std::abs(z2[kQ1].coeff(0, 1) - 28128161061.0 / 3872956936.0) < 1e-12);
  CHECK(std::abs(z2[kQ1].coeff(0, 2) - 1.1334340707811590) < 1e-12);
  CHECK(std::abs(z2[kQ2].coeff(0, 1) - 1041783743.0 / 484119617.0) < 1e-12);
  CHECK(std::abs(z2[kQ2].coeff(0, 2) - 0.33583231726849156) < 1e-12);
  CHECK(std::abs(z2[kP1].coeff(1, 1) - 181556579.0 / 4639421241.0) < 1e-12);
  CHECK(std::abs(z2[kP2].coeff(0, 1) - 63838253378084.0 / 1843673525224713.0) < 1e-12);
  CHECK(std::abs(z2[kP2].coeff(1, 1) - (-273990996279.0 / 18009021003416.0)) < 1e-12);
  CHECK(std::abs(z2[kP2].coeff(0, 2) - 0.023825998536978389) < 1e-12);

  const auto z6 = expand_solution(p, 6, 4).depoled();
  CHECK(std::abs(z6[kQ1].coeff(1, 0) - (-6330642318.0 / 4331851919.0)) < 1e-12);
  CHECK(std::abs(z6[kQ1].coeff(2, 0) - 0.52207397873454726) < 1e-12);
  CHECK(std::abs(z6[kQ1].coeff(1, 1) - 66471744339.0 / 69309630704.0) < 1e-12);
  CHECK(std::abs(z6[kQ2].coeff(0, 1) - 2457.0 / 491.0) < 1e-12);
  CHECK(std::abs(z6[kP1].coeff(1, 0) - (-2038842596283.0 / 1493757914249296.0)) < 1e-12);
  CHECK(std::abs(z6[kP1].coeff(1, 1) - (-17424468730305.0 / 746878957124648.0)) < 1e-12);
  CHECK(std::abs(z6[kP2].coeff(1, 0) - (-2764821.0 / 74897072.0)) < 1e-12);
  CHECK(std::abs(z6[kP2].coeff(2, 0) - 0.0047061685327496974) < 1e-12);
}

TEST_CASE("solution (4) needs P2 = a2 - a0 at order zero") {
  const Params p = sample_params(8);
  const SolutionId id = solution_id(4);
  auto s = seed_values(p, id);
  const auto good = make_expansion(p, id,
                                   {BiSeries::constant(s[0], 1), BiSeries::constant(s[1], 1),
                                    BiSeries::constant(s[2], 1), BiSeries::constant(s[3], 1)});
  CHECK(residual_report(good, 0).absolute < 1e-12);
  s[kP2] = p.alpha0 - p.alpha2;
  const auto flipped = make_expansion(p, id,
                                      {BiSeries::constant(s[0], 1), BiSeries::constant(s[1], 1),
                                       BiSeries::constant(s[2], 1), BiSeries::constant(s[3], 1)});
  CHECK(residual_report(flipped, 0).absolute > 1e-3);
}

TEST_CASE("solver ordering and probe base do not change the answer") {
  for (int idx = 1; idx <= 8; ++idx) {
    const Params p = sample_params(30 + idx);
    const auto a = expand_solution(p, idx, 5).depoled();
    const auto b = expand_solution(p, idx, 5, {SolverOrdering::Reversed, false, 0}).depoled();
    const auto c = expand_solution(p, idx, 5, {SolverOrdering::Natural, true, 77}).depoled();
    for (int v = 0; v < 4; ++v) {
      const double scale = std::max(1.0, a[v].max_abs());
      CHECK((a[v] - b[v]).max_abs() < 1e-12 * scale);
      CHECK((a[v] - c[v]).max_abs() < 1e-12 * scale);
    }
  }
}

TEST_CASE("residuals vanish at order 6") {
  for (int idx = 1; idx <= 8; ++idx) {
    for (std::uint64_t seed : {101, 202, 303}) {
      const auto e = expand_solution(sample_params(seed), idx, 6);
      CAPTURE(idx);
      CAPTURE(seed);
      CHECK(residual_norm(e) < 1e-9);
      for (int v = 0; v < 4; ++v) CHECK(e.depoled()[v].all_finite());
    }
  }
}

TEST_CASE("symbolic and hand gradient routes give the same equations") {
  const Params p = sample_params(44);
  for (int idx : {1, 4, 5, 8}) {
    const auto e = expand_solution(p, idx, 4);
    const auto z = e.depoled();
    std::array<LaurentSeries, 4> zs;
    for (int v = 0; v < 4; ++v) zs[v] = LaurentSeries::truncated(z[v]);
    const auto a = depoled_equations(p, e.id, zs, GradientRoute::Symbolic);
    const auto b = depoled_equations(p, e.id, zs, GradientRoute::Hand);
    for (int i = 0; i < 8; ++i)
      for (int d = 0; d <= 3; ++d)
        for (int k = 0; k <= d; ++k) CHECK(std::abs(a[i].coeff(d - k, k) - b[i].coeff(d - k, k)) < 1e-11);
  }
}

TEST_CASE("residual catches perturbed coefficients") {
  const Params p = sample_params(55);
  const auto e = expand_solution(p, 1, 6);
  auto z = e.depoled();
  z[kQ1].at(1, 1) += 1e-3;
  const auto bad = make_expansion(p, e.id, z);
  CHECK(residual_norm(bad) >= 1e-4);

  // keeping only low orders leaves the higher equations unsatisfied
  CHECK(residual_norm(truncate_coefficients(e, 2)) > 1e-6);
}

TEST_CASE("convergence diagnostic on model series") {
  BiSeries flat(8), geo(8);
  for (int d = 0; d <= 8; ++d)
    for (int k = 0; k <= d; ++k) {
      flat.at(d - k, k) = 1.0;
      geo.at(d - k, k) = std::pow(2.0, d);
    }
  const auto f = convergence_diagnostic(flat);
  CHECK(std::abs(f.rho - 1.0) < 1e-12);
  CHECK(f.fit_quality < 1e-12);
  const auto g = convergence_diagnostic(geo);
  CHECK(std::abs(g.rho - 0.5) < 1e-12);

  for (int idx = 1; idx <= 8; ++idx) {
    const auto c = convergence_diagnostic(expand_solution(sample_params(66), idx, 8));
    CHECK(std::isfinite(c.rho));
    CHECK(c.rho > 0.0);
  }
}

TEST_CASE("canonical transformation to Garnier coordinates") {
  const Params p = sample_params(77);
  const cplx t1(0.02, 0.01), t2(0.03, -0.01);

  const auto zero = to_garnier_coords(constant_expansion(p, 0.0, 0.0, 0.3, 0.4), t1, t2);
  const bool has1 = std::abs(zero.lambda1 - 1.0) < 1e-12 || std::abs(zero.lambda2 - 1.0) < 1e-12;
  const bool hast2 = std::abs(zero.lambda1 - t2) < 1e-12 || std::abs(zero.lambda2 - t2) < 1e-12;
  CHECK(has1);
  CHECK(hast2);

  for (int idx = 1; idx <= 8; ++idx) {
    const auto e = expand_solution(p, idx, 6);
    const auto g = to_garnier_coords(e, t1, t2);
    const cplx s2 = t2 / (t2 - 1.0);
    const cplx q1 = evaluate(e.q1, t1, s2), q2 = evaluate(e.q2, t1, s2);
    CHECK(std::abs((g.lambda1 - 1.0) * (g.lambda2 - 1.0) + t1 * (t2 - 1.0) * q1) < 1e-10 * std::max(1.0, std::abs(q1)));
    CHECK(std::abs((g.lambda1 - t2) * (g.lambda2 - t2) - (t2 - 1.0) * (t2 - 1.0) * q2) <
          1e-10 * std::max(1.0, std::abs(q2)));
  }

  // at fixed times the map (q, p) -> (lambda, mu) preserves dp^dq
  const cplx x0[4] = {cplx(0.7, 0.2), cplx(1.3, -0.4), cplx(0.5, 0.1), cplx(-0.3, 0.6)};
  auto image = [&](const cplx* x) {
    const auto g = to_garnier_coords(constant_expansion(p, x[0], x[1], x[2], x[3]), t1, t2);
    return std::array<cplx, 4>{g.lambda1, g.lambda2, g.mu1, g.mu2};
  };
  cplx J[4][4];
  const double h = 1e-6;
  for (int c = 0; c < 4; ++c) {
    cplx xp[4], xm[4];
    for (int i = 0; i < 4; ++i) xp[i] = xm[i] = x0[i];
    xp[c] += h;
    xm[c] -= h;
    const auto fp = image(xp), fm = image(xm);
    for (int r = 0; r < 4; ++r) J[r][c] = (fp[r] - fm[r]) / (2.0 * h);
  }
  // coordinates ordered (q1, q2, p1, p2) and (l1, l2, m1, m2): Omega = [[0, -I], [I, 0]]
  auto omega = [](int i, int j) -> double {
    if (i >= 2 && j == i - 2) return 1.0;
    if (i < 2 && j == i + 2) return -1.0;
    return 0.0;
  };
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += J[a][i] * omega(a, b) * J[b][j];
      worst = std::max(worst, std::abs(s - omega(i, j)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("fixed-lambda K convention makes lambda apparent") {
  for (int idx = 1; idx <= 8; ++idx) {
    const Params p = sample_params(88);
    const auto e = expand_solution(p, idx, 8);
    const cplx t1(1e-3, 0.0), t2(1e-3, 0.0);
    const auto g = to_garnier_coords(e, t1, t2, KConvention::FixedLambda);
    const RationalODE ode = lg2_coefficients(g, p);
    CAPTURE(idx);
    CHECK(scaled_defect(ode, g.lambda1) < 1e-10);
    CHECK(scaled_defect(ode, g.lambda2) < 1e-10);

    const auto h = to_garnier_coords(e, t1, t2, KConvention::AlongSolution);
    const RationalODE bad = lg2_coefficients(h, p);
    CHECK(std::max(scaled_defect(bad, h.lambda1), scaled_defect(bad, h.lambda2)) > 1e-6);
  }
}

TEST_CASE("time singularities in coordinate transform") {
  const auto e = expand_solution(sample_params(9), 1, 3);
  CHECK(throws_kind(ErrorKind::SingularTime, [&] { to_garnier_coords(e, 0.0, 0.1); }));
  CHECK(throws_kind(ErrorKind::SingularTime, [&] { to_garnier_coords(e, 0.1, 1.0); }));
  CHECK(throws_kind(ErrorKind::SingularTime, [&] { to_garnier_coords(e, 0.1, 0.0); }));
}
