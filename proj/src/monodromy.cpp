#include "garnier/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "garnier/error.hpp"

namespace garnier {

namespace {

const cplx I(0.0, 1.0);

double max_abs(const Matrix2& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const XMatrix2& m) { return static_cast<double>(m.cwiseAbs().maxCoeff()); }

XMatrix2 xdiag(xcplx a, xcplx b) {
  XMatrix2 m;
  m << a, 0.0L, 0.0L, b;
  return m;
}

template <class M>
double commutator(const M& a, const M& b) {
  return max_abs(M(a * b - b * a));
}

template <class M>
IdentityReport identities(const M& M0, const M& Mt2, const M& M1, const M& Minf, const M& S1, const M& S2,
                          const M& expT1, int index) {
  IdentityReport r;
  const M Id = M::Identity();
  if (index <= 4) {
    r.cyclic = max_abs(M(Minf * M1 * Mt2 * M0 - Id));
  } else {
    r.cyclic = max_abs(M(Minf * Mt2 * M0 * S1 * S2 * expT1 - Id));
  }
  if (index <= 2) {
    r.commutators = {{"[M1,Minf]", commutator(M1, Minf)}};
  } else if (index <= 4) {
    r.commutators = {{"[M0,Mt2]", commutator(M0, Mt2)}};
  } else {
    r.commutators = {{"[M0,Minf]", commutator(M0, Minf)},
                     {"[M0,Mt2]", commutator(M0, Mt2)},
                     {"[Mt2,Minf]", commutator(Mt2, Minf)}};
  }
  r.stokes_deviation = std::max(max_abs(M(S1 - Id)), max_abs(M(S2 - Id)));
  r.stokes_trivial = r.stokes_deviation == 0.0;
  return r;
}

// Dormand-Prince 5(4) on a complex 2x2 state over a real parameter.
template <class F>
Matrix2 dopri(const F& f, double s0, double s1, Matrix2 y, const IntegratorOptions& opt) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = s1 - s0;
  double s = s0, h = span / 64.0;
  Matrix2 k1 = f(s, y);
  long steps = 0;
  while (s < s1) {
    if (++steps > opt.max_steps) throw Error(ErrorKind::StepFailure, "step budget exhausted");
    if (s + h > s1) h = s1 - s;
    const Matrix2 k2 = f(s + c2 * h, y + h * (a21 * k1));
    const Matrix2 k3 = f(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Matrix2 k4 = f(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix2 k5 = f(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix2 k6 = f(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix2 yn = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix2 k7 = f(s + h, yn);
    const Matrix2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(yn(i)));
      en = std::max(en, std::abs(err(i)) / sc);
    }
    if (!std::isfinite(en)) en = 1e10;
    if (en <= 1.0) {
      s += h;
      y = yn;
      k1 = k7;
    }
    const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= fac;
    if (h < 1e-14 * span && s < s1) throw Error(ErrorKind::StepFailure, "step size underflow");
  }
  return y;
}

Matrix2 transport_arc(const RationalODE& ode, cplx center, double radius, double th0, double th1, const Matrix2& y0,
                      const IntegratorOptions& opt) {
  const double dir = th1 > th0 ? 1.0 : -1.0;
  const double span = std::abs(th1 - th0);
  const auto f = [&](double s, const Matrix2& y) {
    const double th = th0 + dir * s;
    const cplx e = std::exp(I * th);
    const cplx x = center + radius * e;
    const cplx dx = dir * I * radius * e;
    Matrix2 A;
    A << 0.0, 1.0, -ode.Q()(x), -ode.P()(x);
    return Matrix2(dx * (A * y));
  };
  return dopri(f, 0.0, span, y0, opt);
}

double smallest_gap(const RationalODE& ode) {
  const auto& s = ode.singularities();
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) g = std::min(g, std::abs(s[i] - s[j]));
  return g;
}

}  // namespace

GaussParams gauss_params_for(const Params& p, int index) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu;
  switch (index) {
    case 1: return {nu, 1.0 - a0 - a2 - nu, 1.0 - a0};
    case 2: return {nu + a1, nu + ai, 1.0 - a0};
    case 3: return {nu, nu + ai, 1.0 - a0 - a2};
    case 4: return {nu + a2, nu + ai + a2, 1.0 - a0 + a2};
  }
  throw Error(ErrorKind::InvalidArgument, "Gauss data exists for solutions 1..4 only");
}

KummerParams kummer_params_for(const Params& p, int index) {
  const cplx a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu;
  switch (index) {
    case 5: return {nu, 2.0 * nu + a1};
    case 6: return {nu + ai, 2.0 * nu + 2.0 * ai + a1};
    case 7: return {nu + a2, 2.0 * nu + 2.0 * a2 + a1};
    case 8: return {nu + a2 + ai, 2.0 * nu + 2.0 * a2 + 2.0 * ai + a1};
  }
  throw Error(ErrorKind::InvalidArgument, "Kummer data exists for solutions 5..8 only");
}

MonodromyTuple closed_form_monodromy(const Params& p, int index, TupleVariant variant) {
  solution_id(index);
  const bool printed = variant == TupleVariant::AsPrinted;
  require_generic(p);
  const xcplx e0 = e2pi_x(p.alpha0), e1 = e2pi_x(p.alpha1), e2 = e2pi_x(p.alpha2);
  const xcplx en = e2pi_x(p.nu), eni = e2pi_x(xcplx(p.nu) + xcplx(p.alphaInf));
  const xcplx one = 1.0L;
  const XMatrix2 id = XMatrix2::Identity();
  MonodromyTuple t;
  t.solution = index;
  ExtendedTuple x;
  x.expT1 = xdiag(one, e1);
  if (index <= 4) {
    GaussParams gp = gauss_params_for(p, index);
    if (printed && index == 4) gp = {p.nu, p.nu + p.alphaInf, 1.0 - p.alpha2};
    const GaussConnectionX c = gauss_connection_matrices_x(gp);
    const XMatrix2 C01i = c.C01.inverse(), C0ii = c.C0inf.inverse();
    x.S1 = x.S2 = id;
    x.M0 = xdiag(one, e0);
    if (index <= 2) {
      x.Mt2 = C01i * xdiag(one, e2) * c.C01;
      x.M1 = C0ii * (index == 1 ? xdiag(one, e1) : xdiag(e1, one)) * c.C0inf;
    } else {
      x.Mt2 = index == 4 && !printed ? xdiag(e2, one) : xdiag(one, e2);
      x.M1 = C01i * xdiag(one, e1) * c.C01;
    }
    x.Minf = C0ii * xdiag(en, eni) * c.C0inf;
    t.connections = {{"C01", to_double(c.C01)}, {"C0inf", to_double(c.C0inf)}};
  } else {
    const KummerParams k = kummer_params_for(p, index);
    const XMatrix2 C = kummer_connection_matrix_x(k);
    const XMatrix2 Ci = C.inverse();
    const KummerStokesX s = kummer_stokes_matrices_x(k);
    XMatrix2 d0 = xdiag(one, e0), dt2 = xdiag(one, e2), dinf = xdiag(en, eni);
    if (index == 6 || (index == 8 && !printed)) dinf = xdiag(eni, en);
    if (index == 7 || (index == 8 && !printed)) dt2 = xdiag(e2, one);
    if (index == 8 && printed) d0 = xdiag(e0, one);
    x.M0 = C * d0 * Ci;
    x.Mt2 = C * dt2 * Ci;
    x.Minf = C * dinf * Ci;
    x.S1 = s.S1;
    x.S2 = s.S2;
    x.M1 = s.S1 * s.S2 * x.expT1;
    t.connections = {{"C", to_double(C)}};
  }
  t.M0 = to_double(x.M0);
  t.Mt2 = to_double(x.Mt2);
  t.M1 = to_double(x.M1);
  t.Minf = to_double(x.Minf);
  t.S1 = to_double(x.S1);
  t.S2 = to_double(x.S2);
  t.expT1 = to_double(x.expT1);
  for (const auto& m : {t.M0, t.Mt2, t.M1, t.Minf, t.S1, t.S2})
    if (!m.allFinite()) throw Error(ErrorKind::NumericOverflow, "closed-form monodromy overflowed");
  t.extended = x;
  return t;
}

LoopPath loop_around(const RationalODE& ode, cplx point, std::optional<cplx> base) {
  double gap = std::numeric_limits<double>::infinity();
  for (cplx s : ode.singularities())
    if (std::abs(s - point) > 1e-12) gap = std::min(gap, std::abs(s - point));
  LoopPath l;
  l.center = point;
  l.radius = std::min(0.5 * gap, 0.3);
  l.base = base ? *base : point + l.radius;
  return l;
}

LoopPath loop_around_infinity(const RationalODE& ode, std::optional<cplx> base) {
  double m = 1.0;
  for (cplx s : ode.singularities()) m = std::max(m, std::abs(s));
  LoopPath l;
  l.center = 0.0;
  l.radius = 10.0 * m;
  l.positive = false;
  l.base = base ? *base : cplx(l.radius);
  return l;
}

std::vector<cplx> discretize(const LoopPath& loop) {
  std::vector<cplx> pts;
  const cplx d = loop.base - loop.center;
  const double th0 = std::abs(d) > 0.0 ? std::arg(d) : 0.0;
  const cplx entry = loop.center + loop.radius * std::exp(I * th0);
  const int nt = std::max(8, loop.segments / 4);
  for (int i = 0; i <= nt; ++i) pts.push_back(loop.base + (entry - loop.base) * (static_cast<double>(i) / nt));
  const double dir = loop.positive ? 1.0 : -1.0;
  for (int i = 1; i <= loop.segments; ++i)
    pts.push_back(loop.center + loop.radius * std::exp(I * (th0 + dir * 2.0 * kPi * i / loop.segments)));
  return pts;
}

void check_loop(const RationalODE& ode, const LoopPath& loop) {
  if (!(loop.radius > 0.0)) throw Error(ErrorKind::PathTooClose, "loop radius must be positive");
  double margin = 0.25 * smallest_gap(ode);
  if (!std::isfinite(margin)) margin = 0.25 * std::min(1.0, loop.radius);
  if (ode.is_singular(loop.base, margin)) throw Error(ErrorKind::PathTooClose, "base point at a singularity");
  const auto pts = discretize(loop);
  // chord sag of the circle discretization
  const double sag = loop.radius * (1.0 - std::cos(kPi / loop.segments));
  for (cplx s : ode.singularities()) {
    for (cplx x : pts) {
      if (std::abs(x - s) < margin + sag) throw Error(ErrorKind::PathTooClose, "loop passes too close to a singularity");
    }
  }
}

Matrix2 transport_segment(const RationalODE& ode, cplx a, cplx b, const Matrix2& y0, const IntegratorOptions& opt) {
  if (a == b) return y0;
  const cplx d = b - a;
  const auto f = [&](double s, const Matrix2& y) {
    const cplx x = a + s * d;
    Matrix2 A;
    A << 0.0, 1.0, -ode.Q()(x), -ode.P()(x);
    return Matrix2(d * (A * y));
  };
  return dopri(f, 0.0, 1.0, y0, opt);
}

Matrix2 numeric_monodromy(const RationalODE& ode, const LoopPath& loop, const IntegratorOptions& opt) {
  check_loop(ode, loop);
  const cplx d = loop.base - loop.center;
  const double th0 = std::abs(d) > 0.0 ? std::arg(d) : 0.0;
  const cplx entry = loop.center + loop.radius * std::exp(I * th0);
  const double th1 = th0 + (loop.positive ? 2.0 : -2.0) * kPi;
  const bool tail = std::abs(entry - loop.base) > 1e-14 * std::max(1.0, loop.radius);
  Matrix2 y = Matrix2::Identity();
  if (tail) y = transport_segment(ode, loop.base, entry, y, opt);
  y = transport_arc(ode, loop.center, loop.radius, th0, th1, y, opt);
  if (tail) y = transport_segment(ode, entry, loop.base, y, opt);
  return y;
}

std::vector<std::pair<std::string, Matrix2>> labeled(const MonodromyTuple& t) {
  return {{"M0", t.M0}, {"Mt2", t.Mt2}, {"M1", t.M1}, {"Minf", t.Minf}};
}

CompareReport compare_monodromy(const std::vector<std::pair<std::string, Matrix2>>& a,
                                const std::vector<std::pair<std::string, Matrix2>>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "matrix sets differ in size");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first) throw Error(ErrorKind::InvalidArgument, "matrix labels differ");
  CompareReport r;
  const auto note = [&](const std::string& what, cplx x, cplx y) {
    const double d = std::abs(x - y) / std::max(1.0, std::abs(y));
    r.items.emplace_back(what, d);
    if (d > r.max_deviation || r.worst.empty()) {
      r.max_deviation = std::max(r.max_deviation, d);
      r.worst = what;
    }
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string& n = a[i].first;
    const Matrix2 &x = a[i].second, &y = b[i].second;
    note("tr(" + n + ")", x.trace(), y.trace());
    note("det(" + n + ")", x.determinant(), y.determinant());
    const Eigen::Vector2cd ex = Eigen::ComplexEigenSolver<Matrix2>(x, false).eigenvalues();
    const Eigen::Vector2cd ey = Eigen::ComplexEigenSolver<Matrix2>(y, false).eigenvalues();
    const double scale = std::max(1.0, std::max(std::abs(ey(0)), std::abs(ey(1))));
    const double straight = std::max(std::abs(ex(0) - ey(0)), std::abs(ex(1) - ey(1)));
    const double crossed = std::max(std::abs(ex(0) - ey(1)), std::abs(ex(1) - ey(0)));
    const double d = std::min(straight, crossed) / scale;
    r.items.emplace_back("eig(" + n + ")", d);
    if (d > r.max_deviation) {
      r.max_deviation = d;
      r.worst = "eig(" + n + ")";
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      note("tr(" + a[i].first + "*" + a[j].first + ")", (a[i].second * a[j].second).trace(),
           (b[i].second * b[j].second).trace());
  return r;
}

CompareReport compare_monodromy(const MonodromyTuple& a, const MonodromyTuple& b) {
  return compare_monodromy(labeled(a), labeled(b));
}

double commutator_norm(const Matrix2& a, const Matrix2& b) { return max_abs(Matrix2(a * b - b * a)); }

IdentityReport group_identities(const MonodromyTuple& t, int index) {
  solution_id(index);
  if (t.extended) {
    const ExtendedTuple& x = *t.extended;
    return identities(x.M0, x.Mt2, x.M1, x.Minf, x.S1, x.S2, x.expT1, index);
  }
  return identities(t.M0, t.Mt2, t.M1, t.Minf, t.S1, t.S2, t.expT1, index);
}

bool closed_forms_generic(const Params& p, double margin) {
  try {
    for (int idx = 1; idx <= 4; ++idx) require_gauss_generic(gauss_params_for(p, idx), margin);
    for (int idx = 5; idx <= 8; ++idx) require_kummer_generic(kummer_params_for(p, idx), margin);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace garnier
