#include "garnier/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "garnier/error.hpp"

namespace garnier {

namespace {

constexpr cplx I{0.0, 1.0};

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
const xcplx IL{0.0L, 1.0L};

// B_2k / (2k (2k - 1)) for k = 1..12
constexpr std::array<long double, 12> kStirling = {
    1.0L / 12.0L,        -1.0L / 360.0L,         1.0L / 1260.0L,          -1.0L / 1680.0L,
    1.0L / 1188.0L,      -691.0L / 360360.0L,    1.0L / 156.0L,           -3617.0L / 122400.0L,
    43867.0L / 244188.0L, -174611.0L / 125400.0L, 77683.0L / 5796.0L,     -236364091.0L / 1506960.0L,
};

// Gamma for Re z >= 0.5: shift up to |w| >= 30, Stirling there, divide back.
xcplx gamma_right(xcplx z) {
  xcplx w = z, prod = 1.0L;
  while (std::abs(w) < 30.0L) {
    prod *= w;
    w += 1.0L;
  }
  const xcplx w2 = 1.0L / (w * w);
  xcplx corr = 0.0L, pw = 1.0L / w;
  for (long double c : kStirling) {
    corr += c * pw;
    pw *= w2;
  }
  const xcplx lg = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2.0L * kPiL) + corr;
  return std::exp(lg) / prod;
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Quad-precision complex accumulator for the confluent series.
struct Q {
  __float128 re, im;
};
Q qmk(cplx v) { return {static_cast<__float128>(v.real()), static_cast<__float128>(v.imag())}; }
Q operator+(Q a, Q b) { return {a.re + b.re, a.im + b.im}; }
Q operator*(Q a, Q b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Q operator/(Q a, Q b) {
  const __float128 d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
double qabs(Q a) { return std::hypot(static_cast<double>(a.re), static_cast<double>(a.im)); }
cplx qto(Q a) { return {static_cast<double>(a.re), static_cast<double>(a.im)}; }

struct ValDer {
  cplx v, d;
};

// Direct Gauss series and its derivative.
ValDer series2f1(cplx a, cplx b, cplx c, cplx w) {
  cplx term = 1.0, sum = 1.0, dsum = 0.0;
  int small = 0;
  for (int n = 0; n < 20000; ++n) {
    const cplx ratio = (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1));
    // derivative term: (n+1) * term_{n+1} / w  = ratio * (n+1) * term
    dsum += ratio * double(n + 1) * term;
    term *= ratio * w;
    sum += term;
    if (term == 0.0) break;
    small = std::abs(term) <= 1e-17 * std::abs(sum) ? small + 1 : 0;
    if (small >= 2) break;
    if (n == 19999) throw Error(ErrorKind::OutOfRegion, "2F1 series did not converge");
  }
  return {sum, dsum};
}

// One Taylor step of the hypergeometric ODE from x0 by h.
ValDer taylor_step(cplx a, cplx b, cplx c, cplx x0, ValDer f, cplx h) {
  const cplx A0 = x0 * (1.0 - x0), A1 = 1.0 - 2.0 * x0;
  const double A2 = -1.0;
  const cplx B0 = c - (a + b + 1.0) * x0, B1 = -(a + b + 1.0);
  const cplx ab = a * b;
  // u_n = y_n h^n
  cplx u0 = f.v, u1 = f.d * h;
  cplx val = u0 + u1, der = u1;
  int small = 0;
  for (int n = 0; n < 2000; ++n) {
    const double dn = n;
    const cplx u2 = -((A1 * dn + B0) * (dn + 1.0) * u1 * h + (A2 * dn * (dn - 1.0) + B1 * dn - ab) * u0 * h * h) /
                    (A0 * (dn + 2.0) * (dn + 1.0));
    val += u2;
    der += (dn + 2.0) * u2;
    u0 = u1;
    u1 = u2;
    small = std::abs(u2) <= 1e-17 * std::abs(val) ? small + 1 : 0;
    if (small >= 3) break;
  }
  return {val, der / h};
}

// Analytic continuation along the ray from 0.45 x/|x| to x.
cplx continue2f1(cplx a, cplx b, cplx c, cplx x) {
  cplx x0 = 0.45 * x / std::abs(x);
  ValDer f = series2f1(a, b, c, x0);
  for (int it = 0; it < 100000; ++it) {
    const cplx dx = x - x0;
    const double len = std::abs(dx);
    if (len == 0.0) return f.v;
    const double r = std::min(std::abs(x0), std::abs(1.0 - x0));
    const double h = std::min(len, 0.5 * r);
    const cplx step = dx / len * h;
    f = taylor_step(a, b, c, x0, f, step);
    x0 = h == len ? x : x0 + step;
  }
  throw Error(ErrorKind::OutOfRegion, "2F1 continuation did not reach the target");
}

constexpr double kTransformMargin = 1e-3;

bool poles_clear(std::initializer_list<cplx> args) {
  return std::all_of(args.begin(), args.end(),
                     [](cplx z) { return distance_to_nonpositive_integers(z) >= kTransformMargin; });
}

cplx f2(cplx a, cplx b, cplx c, cplx w) { return series2f1(a, b, c, w).v; }

// Sum of (p)_s (q)_s / s! w^s stopped before the smallest term starts growing.
cplx asym_sum(cplx p, cplx q, cplx w) {
  cplx sum = 1.0, term = 1.0;
  double prev = 1.0;
  for (int s = 0; s < 400; ++s) {
    const cplx next = term * (p + double(s)) * (q + double(s)) / double(s + 1) * w;
    const double m = std::abs(next);
    if (m > prev) break;
    sum += next;
    term = next;
    prev = m;
    if (m <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

void check_matrix(const Matrix2& m, const char* what) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!finite(m(i, j))) throw Error(ErrorKind::NumericOverflow, std::string("non-finite entry in ") + what);
}

}  // namespace

cplx clog(cplx x) {
  if (x.imag() == 0.0 && x.real() < 0.0) return {std::log(-x.real()), kPi};
  return std::log(x);
}

cplx cpow(cplx x, cplx a) {
  if (x == 0.0) {
    if (a == 0.0) return 1.0;
    if (a.real() > 0.0) return 0.0;
    throw Error(ErrorKind::EvalAtPole, "0 raised to a power with non-positive real part");
  }
  return std::exp(a * clog(x));
}

cplx e2pi(cplx a) { return std::exp(2.0 * kPi * I * a); }

double distance_to_integers(cplx z) { return std::abs(z - std::round(z.real())); }

double distance_to_nonpositive_integers(cplx z) {
  return std::abs(z - std::min(0.0, std::round(z.real())));
}

xcplx gamma_x(xcplx z) {
  if (distance_to_nonpositive_integers(cplx(z)) < 1e-12) {
    throw Error(ErrorKind::GammaPole, "Gamma at a non-positive integer");
  }
  if (z.real() < 0.5L) return kPiL / (std::sin(kPiL * z) * gamma_right(1.0L - z));
  return gamma_right(z);
}

xcplx rgamma_x(xcplx z) {
  if (distance_to_nonpositive_integers(cplx(z)) < 1e-15) return 0.0L;
  if (z.real() < 0.5L) return std::sin(kPiL * z) * gamma_right(1.0L - z) / kPiL;
  return 1.0L / gamma_right(z);
}

xcplx e2pi_x(xcplx a) { return std::exp(2.0L * kPiL * IL * a); }

cplx gamma(cplx z) { return cplx(gamma_x(xcplx(z))); }

cplx rgamma(cplx z) { return cplx(rgamma_x(xcplx(z))); }

Matrix2 to_double(const XMatrix2& m) { return m.unaryExpr([](const xcplx& v) { return cplx(v); }); }

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
  if (x.imag() == 0.0 && x.real() >= 1.0) {
    throw Error(ErrorKind::CutViolation, "2F1 argument on the cut [1, inf)");
  }
  if (distance_to_nonpositive_integers(c) < 1e-12) {
    throw Error(ErrorKind::NonGenericParams, "2F1 with c a non-positive integer");
  }
  if (std::abs(x) <= 0.5) return f2(a, b, c, x);

  struct Candidate {
    double size;
    std::function<std::optional<cplx>()> eval;
  };
  std::vector<Candidate> cands;
  const cplx one = 1.0;

  cands.push_back({std::abs(x), [&]() -> std::optional<cplx> { return f2(a, b, c, x); }});
  cands.push_back({std::abs(x / (x - one)), [&]() -> std::optional<cplx> {
                     return cpow(one - x, -a) * f2(a, c - b, c, x / (x - one));
                   }});
  cands.push_back({std::abs(one - x), [&]() -> std::optional<cplx> {
                     if (!poles_clear({c - a - b, a + b - c})) return std::nullopt;
                     const cplx w = one - x;
                     return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b) * f2(a, b, a + b - c + 1.0, w) +
                            gamma(c) * gamma(a + b - c) * rgamma(a) * rgamma(b) * cpow(w, c - a - b) *
                                f2(c - a, c - b, c - a - b + 1.0, w);
                   }});
  cands.push_back({1.0 / std::abs(x), [&]() -> std::optional<cplx> {
                     if (!poles_clear({b - a, a - b})) return std::nullopt;
                     const cplx w = one / x;
                     return gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a) * cpow(-x, -a) *
                                f2(a, a - c + 1.0, a - b + 1.0, w) +
                            gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b) * cpow(-x, -b) *
                                f2(b, b - c + 1.0, b - a + 1.0, w);
                   }});
  cands.push_back({1.0 / std::abs(one - x), [&]() -> std::optional<cplx> {
                     if (!poles_clear({b - a, a - b})) return std::nullopt;
                     const cplx w = one / (one - x);
                     return gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a) * cpow(one - x, -a) *
                                f2(a, c - b, a - b + 1.0, w) +
                            gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b) * cpow(one - x, -b) *
                                f2(b, c - a, b - a + 1.0, w);
                   }});
  if (x.real() > 0.0) {
    // invalid on the negative real axis
    cands.push_back({std::abs(one - one / x), [&]() -> std::optional<cplx> {
                       if (!poles_clear({c - a - b, a + b - c})) return std::nullopt;
                       const cplx w = one - one / x;
                       return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b) * cpow(x, -a) *
                                  f2(a, a - c + 1.0, a + b - c + 1.0, w) +
                              gamma(c) * gamma(a + b - c) * rgamma(a) * rgamma(b) * cpow(one - x, c - a - b) *
                                  cpow(x, a - c) * f2(c - a, one - a, c - a - b + 1.0, w);
                     }});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& l, const Candidate& r) { return l.size < r.size; });
  for (const auto& cand : cands) {
    if (cand.size > 0.75) break;
    if (auto v = cand.eval()) {
      if (finite(*v)) return *v;
    }
  }
  return continue2f1(a, b, c, x);
}

cplx hyp1f1(cplx a, cplx c, cplx z) {
  if (distance_to_nonpositive_integers(c) < 1e-12) {
    throw Error(ErrorKind::NonGenericParams, "1F1 with c a non-positive integer");
  }
  if (z == 0.0) return 1.0;
  if (z.real() < 0.0) return std::exp(z) * hyp1f1(c - a, c, -z);
  if (std::abs(z) >= 35.0) {
    const cplx phase = std::exp((z.imag() >= 0.0 ? 1.0 : -1.0) * kPi * I * a);
    const cplx big = std::exp(z) * cpow(z, a - c) * rgamma(a) * asym_sum(1.0 - a, c - a, 1.0 / z);
    const cplx rest = phase * cpow(z, -a) * rgamma(c - a) * asym_sum(a, a - c + 1.0, -1.0 / z);
    return gamma(c) * (big + rest);
  }
  const Q qa = qmk(a), qc = qmk(c), qz = qmk(z);
  Q term{1, 0}, sum{1, 0};
  int small = 0;
  for (int n = 0; n < 4000; ++n) {
    const Q qn{static_cast<__float128>(n), 0};
    const Q qn1{static_cast<__float128>(n + 1), 0};
    term = term * (qa + qn) / ((qc + qn) * qn1) * qz;
    sum = sum + term;
    if (term.re == 0 && term.im == 0) break;
    small = (n > std::abs(z) && qabs(term) <= 1e-30 * qabs(sum)) ? small + 1 : 0;
    if (small >= 2) break;
  }
  return qto(sum);
}

Row2 gauss_basis(const GaussParams& p, GaussPoint at, cplx x) {
  const cplx a = p.alpha, b = p.beta, c = p.gamma;
  Row2 r;
  switch (at) {
    case GaussPoint::Zero:
      r << hyp2f1(a, b, c, x), cpow(x, 1.0 - c) * hyp2f1(a + 1.0 - c, b + 1.0 - c, 2.0 - c, x);
      break;
    case GaussPoint::One: {
      const cplx w = 1.0 - x;
      r << hyp2f1(a, b, a + b - c + 1.0, w), cpow(w, c - a - b) * hyp2f1(c - a, c - b, c + 1.0 - a - b, w);
      break;
    }
    case GaussPoint::Infinity: {
      const cplx w = 1.0 / x;
      r << cpow(x, -a) * hyp2f1(a, a - c + 1.0, a + 1.0 - b, w), cpow(x, -b) * hyp2f1(b, b - c + 1.0, b + 1.0 - a, w);
      break;
    }
  }
  return r;
}

void require_gauss_generic(const GaussParams& p, double margin) {
  const std::pair<cplx, const char*> checks[] = {
      {p.gamma, "gamma"}, {p.gamma - p.alpha - p.beta, "gamma-alpha-beta"}, {p.alpha - p.beta, "alpha-beta"}};
  for (const auto& [v, name] : checks) {
    if (distance_to_integers(v) < margin) {
      throw Error(ErrorKind::NonGenericParams, std::string("Gauss parameter ") + name + " too close to an integer");
    }
  }
}

GaussConnectionX gauss_connection_matrices_x(const GaussParams& p, double margin) {
  require_gauss_generic(p, margin);
  const xcplx a = p.alpha, b = p.beta, c = p.gamma;
  const auto G = [](xcplx z) { return gamma_x(z); };
  const auto R = [](xcplx z) { return rgamma_x(z); };
  const auto E = [](xcplx z) { return std::exp(kPiL * IL * z); };
  const xcplx one = 1.0L, two = 2.0L;
  GaussConnectionX out;
  out.C01 << G(c) * G(c - a - b) * R(c - a) * R(c - b), G(two - c) * G(c - a - b) * R(one - a) * R(one - b),
      G(c) * G(a + b - c) * R(a) * R(b), G(two - c) * G(a + b - c) * R(one + a - c) * R(one + b - c);
  out.C0inf << E(a) * G(c) * G(b - a) * R(b) * R(c - a), E(a - c + one) * G(two - c) * G(b - a) * R(one - a) * R(one - c + b),
      E(b) * G(c) * G(a - b) * R(a) * R(c - b), E(b - c + one) * G(two - c) * G(a - b) * R(one - b) * R(one - c + a);
  out.Cinf1 << G(one + a - b) * G(c - a - b) * R(c - b) * R(one - b), G(one + b - a) * G(c - a - b) * R(c - a) * R(one - a),
      E(c - a - b) * G(one + a - b) * G(a + b - c) * R(one + a - c) * R(a),
      E(c - a - b) * G(one + b - a) * G(a + b - c) * R(one + b - c) * R(b);
  return out;
}

GaussConnection gauss_connection_matrices(const GaussParams& p, double margin) {
  const GaussConnectionX x = gauss_connection_matrices_x(p, margin);
  GaussConnection out{to_double(x.C01), to_double(x.C0inf), to_double(x.Cinf1)};
  check_matrix(out.C01, "C01");
  check_matrix(out.C0inf, "C0inf");
  check_matrix(out.Cinf1, "Cinf1");
  return out;
}

GaussMonodromy gauss_monodromy_matrices(const GaussParams& p, double margin) {
  const GaussConnection con = gauss_connection_matrices(p, margin);
  const cplx a = p.alpha, b = p.beta, c = p.gamma;
  GaussMonodromy m;
  m.M0 << 1.0, 0.0, 0.0, e2pi(-c);
  Matrix2 d1, dinf;
  d1 << 1.0, 0.0, 0.0, e2pi(c - a - b);
  dinf << e2pi(a), 0.0, 0.0, e2pi(b);
  m.M1 = con.C01.inverse() * d1 * con.C01;
  m.Minf = con.C0inf.inverse() * dinf * con.C0inf;
  return m;
}

void require_kummer_generic(const KummerParams& p, double margin) {
  if (distance_to_integers(p.gamma) < margin) {
    throw Error(ErrorKind::NonGenericParams, "Kummer parameter gamma too close to an integer");
  }
}

Row2 kummer_basis_zero(const KummerParams& p, cplx z) {
  const cplx a = p.alpha, c = p.gamma;
  Row2 r;
  r << hyp1f1(a, c, z), cpow(z, 1.0 - c) * hyp1f1(a + 1.0 - c, 2.0 - c, z);
  return r;
}

Row2 kummer_basis_infinity(const KummerParams& p, cplx z) {
  const cplx a = p.alpha, c = p.gamma;
  Row2 r;
  r << cpow(z, -a) * asym_sum(a, a + 1.0 - c, -1.0 / z),
      std::exp(z) * cpow(z, a - c) * asym_sum(c - a, 1.0 - a, 1.0 / z);
  return r;
}

XMatrix2 kummer_connection_matrix_x(const KummerParams& p, double margin) {
  require_kummer_generic(p, margin);
  const xcplx a = p.alpha, c = p.gamma, one = 1.0L, two = 2.0L;
  XMatrix2 C;
  C << gamma_x(c) * std::exp(a * kPiL * IL) * rgamma_x(c - a),
      gamma_x(two - c) * std::exp(kPiL * IL * (one + a - c)) * rgamma_x(one - a), gamma_x(c) * rgamma_x(a),
      gamma_x(two - c) * rgamma_x(one + a - c);
  return C;
}

Matrix2 kummer_connection_matrix(const KummerParams& p, double margin) {
  const Matrix2 C = to_double(kummer_connection_matrix_x(p, margin));
  check_matrix(C, "Kummer connection");
  return C;
}

KummerStokesX kummer_stokes_matrices_x(const KummerParams& p) {
  const xcplx a = p.alpha, c = p.gamma, one = 1.0L, two = 2.0L;
  KummerStokesX s;
  s.S1 << one, 0.0L, -two * kPiL * IL * std::exp(kPiL * IL * (c - two * a)) * rgamma_x(a) * rgamma_x(one + a - c), one;
  s.S2 << one, -two * kPiL * IL * std::exp(kPiL * IL * (4.0L * a - two * c)) * rgamma_x(one - a) * rgamma_x(c - a), 0.0L,
      one;
  return s;
}

KummerStokes kummer_stokes_matrices(const KummerParams& p) {
  const KummerStokesX x = kummer_stokes_matrices_x(p);
  return {to_double(x.S1), to_double(x.S2)};
}

KummerMonodromy kummer_monodromy_matrices(const KummerParams& p, double margin) {
  const Matrix2 C = kummer_connection_matrix(p, margin);
  const KummerStokes s = kummer_stokes_matrices(p);
  KummerMonodromy m;
  Matrix2 d0;
  d0 << 1.0, 0.0, 0.0, e2pi(-p.gamma);
  m.M0 = C * d0 * C.inverse();
  m.expTinf << e2pi(p.alpha), 0.0, 0.0, e2pi(p.gamma - p.alpha);
  m.Minf = s.S1 * s.S2 * m.expTinf;
  return m;
}

}  // namespace garnier
