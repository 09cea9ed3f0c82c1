#include "garnier/linear_ode.hpp"

#include <algorithm>

#include "garnier/error.hpp"

namespace garnier {

namespace {

constexpr double kSameRoot = 1e-12;
constexpr double kCollide = 1e-10;

bool near(cplx a, cplx b, double tol = kSameRoot) { return std::abs(a - b) < tol; }

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

std::array<cplx, 2> quadratic_roots(cplx b, cplx c) {
  // r^2 + b r + c = 0, the larger-modulus root first computed stably
  const cplx d = std::sqrt(b * b - 4.0 * c);
  const cplx q = -0.5 * (b + (std::real(std::conj(b) * d) >= 0.0 ? d : -d));
  std::array<cplx, 2> r;
  if (q == 0.0) {
    r = {0.0, 0.0};
  } else {
    r = {q, c / q};
  }
  if (std::real(r[1]) < std::real(r[0]) || (std::real(r[1]) == std::real(r[0]) && std::imag(r[1]) < std::imag(r[0])))
    std::swap(r[0], r[1]);
  return r;
}

}  // namespace

cplx Rational::operator()(cplx x) const {
  cplx s = constant;
  for (const auto& t : poles) s += t.coeff / ipow(x - t.at, t.order);
  return s;
}

cplx Rational::derivative(cplx x) const {
  cplx s = 0.0;
  for (const auto& t : poles) s -= static_cast<double>(t.order) * t.coeff / ipow(x - t.at, t.order + 1);
  return s;
}

cplx Rational::coefficient(cplx a, int order) const {
  cplx s = 0.0;
  for (const auto& t : poles)
    if (t.order == order && near(t.at, a)) s += t.coeff;
  return s;
}

cplx Rational::regular_part(cplx a) const {
  cplx s = constant;
  for (const auto& t : poles)
    if (!near(t.at, a)) s += t.coeff / ipow(a - t.at, t.order);
  return s;
}

void Rational::add(cplx at, int order, cplx coeff) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "pole order must be 1 or 2");
  if (coeff == 0.0) return;
  for (auto& t : poles) {
    if (t.at == at && t.order == order) {
      t.coeff += coeff;
      return;
    }
  }
  poles.push_back({at, order, coeff});
}

void Rational::add_product(cplx c, const std::vector<cplx>& roots) {
  std::vector<std::pair<cplx, int>> grouped;
  for (cplx r : roots) {
    bool merged = false;
    for (auto& [a, m] : grouped) {
      if (a == r) {
        ++m;
        merged = true;
      } else if (near(a, r, kCollide)) {
        throw Error(ErrorKind::CollidingSingularities, "partial fraction roots within 1e-10");
      }
    }
    if (!merged) grouped.emplace_back(r, 1);
  }
  for (const auto& [a, m] : grouped) {
    if (m > 2) throw Error(ErrorKind::InvalidArgument, "root multiplicity above 2");
    cplx g = c, dlog = 0.0;
    for (const auto& [b, mb] : grouped) {
      if (b == a) continue;
      g /= ipow(a - b, mb);
      dlog -= static_cast<double>(mb) / (a - b);
    }
    if (m == 1) {
      add(a, 1, g);
    } else {
      add(a, 2, g);
      add(a, 1, g * dlog);
    }
  }
}

RationalODE::RationalODE(Rational P, Rational Q) : P_(std::move(P)), Q_(std::move(Q)) {
  for (const Rational* r : {&P_, &Q_}) {
    for (const auto& t : r->poles) {
      if (t.order != 1 && t.order != 2) throw Error(ErrorKind::InvalidArgument, "pole order must be 1 or 2");
      bool seen = false;
      for (cplx s : sing_) {
        if (s == t.at) {
          seen = true;
        } else if (near(s, t.at, kCollide)) {
          throw Error(ErrorKind::CollidingSingularities, "pole locations within 1e-10");
        }
      }
      if (!seen) sing_.push_back(t.at);
    }
  }
}

bool RationalODE::is_singular(cplx x, double tol) const {
  return std::any_of(sing_.begin(), sing_.end(), [&](cplx s) { return near(s, x, tol); });
}

std::optional<cplx> RationalODE::constant(const std::string& key) const {
  for (const auto& [k, v] : constants)
    if (k == key) return v;
  return std::nullopt;
}

RationalODE lg2_coefficients(const GarnierCoords& g, const Params& p) {
  const std::array<cplx, 5> pts{0.0, 1.0, g.t2, g.lambda1, g.lambda2};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (near(pts[i], pts[j], kCollide)) throw Error(ErrorKind::CollidingSingularities, "0, 1, t2, lambda1, lambda2 must be distinct");

  Rational P, Q;
  P.add(0.0, 1, 1.0 - p.alpha0);
  P.add(1.0, 2, p.eta * g.t1);
  P.add(1.0, 1, 2.0 - p.alpha1);
  P.add(g.t2, 1, 1.0 - p.alpha2);
  P.add(g.lambda1, 1, -1.0);
  P.add(g.lambda2, 1, -1.0);

  Q.add_product(p.kappa(), {0.0, 1.0});
  Q.add_product(-g.t1 * g.K1, {0.0, 1.0, 1.0});
  Q.add_product(-g.t2 * (g.t2 - 1.0) * g.K2, {0.0, 1.0, g.t2});
  Q.add_product(g.lambda1 * (g.lambda1 - 1.0) * g.mu1, {0.0, 1.0, g.lambda1});
  Q.add_product(g.lambda2 * (g.lambda2 - 1.0) * g.mu2, {0.0, 1.0, g.lambda2});

  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "lg2";
  ode.constants = {{"t1", g.t1}, {"t2", g.t2}, {"lambda1", g.lambda1}, {"lambda2", g.lambda2},
                   {"mu1", g.mu1}, {"mu2", g.mu2}, {"K1", g.K1}, {"K2", g.K2}};
  ode.apparent = {g.lambda1, g.lambda2};
  return ode;
}

const char* to_string(LimitStage s) {
  switch (s) {
    case LimitStage::First: return "first";
    case LimitStage::Second: return "second";
    case LimitStage::Third: return "third";
  }
  return "?";
}

LimitStage parse_stage(const std::string& s) {
  if (s == "first") return LimitStage::First;
  if (s == "second") return LimitStage::Second;
  if (s == "third") return LimitStage::Third;
  throw Error(ErrorKind::InvalidArgument, "unknown limit stage '" + s + "'");
}

RationalODE gauss_ode(const GaussParams& g, const std::string& variable) {
  Rational P, Q;
  P.add(0.0, 1, g.gamma);
  P.add(1.0, 1, g.alpha + g.beta + 1.0 - g.gamma);
  Q.add_product(g.alpha * g.beta, {0.0, 1.0});
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "gauss";
  ode.variable = variable;
  ode.constants = {{"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}};
  return ode;
}

RationalODE kummer_ode(const KummerParams& k, const std::string& variable) {
  Rational P, Q;
  P.add(0.0, 1, k.gamma);
  P.constant = -1.0;
  Q.add(0.0, 1, -k.alpha);
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "kummer";
  ode.variable = variable;
  ode.constants = {{"alpha", k.alpha}, {"gamma", k.gamma}};
  return ode;
}

namespace {

RationalODE first_1(const Params& p) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu;
  const cplx b0 = (ai + a1) / ai, k2 = nu * (1.0 - a0 - a2 - nu), m2 = -nu * a1 / ai;
  Rational P, Q;
  P.add(0.0, 1, 2.0 - a0 - a2);
  P.add(1.0, 1, 1.0 - a1);
  P.add(b0, 1, -1.0);
  Q.add_product(p.kappa() - k2, {0.0, 1.0});
  Q.add(0.0, 2, k2);
  Q.add_product(m2, {0.0, 1.0, b0});
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "first(1)";
  ode.constants = {{"b0", b0}, {"k2", k2}, {"m2", m2}};
  ode.apparent = {b0};
  return ode;
}

RationalODE third_1(const Params& p) {
  const cplx a1 = p.alpha1;
  Rational P, Q;
  P.add(0.0, 1, 1.0 + a1);
  P.add(a1, 1, -1.0);
  P.constant = -1.0;
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "third(1)";
  ode.variable = "z";
  ode.substitution = "x - 1 = eta t1 / z";
  ode.apparent = {a1};
  return ode;
}

RationalODE first_5(const Params& p) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu;
  const cplx b0 = (a0 + a2) / (-ai), k1 = nu * (nu + a1 - 1.0), m1 = nu * (a0 + a2) / ai;
  Rational P, Q;
  P.add(0.0, 1, 1.0 - a0 - a2);
  P.add(1.0, 1, 2.0 - a1);
  P.add(b0, 1, -1.0);
  Q.add_product(p.kappa(), {0.0, 1.0});
  Q.add_product(-k1, {0.0, 1.0, 1.0});
  Q.add_product(m1, {0.0, 1.0, b0});
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "first(5)";
  ode.constants = {{"b0", b0}, {"k1", k1}, {"m1", m1}};
  ode.apparent = {b0};
  return ode;
}

RationalODE second_5(const Params& p) {
  const cplx a0 = p.alpha0, a2 = p.alpha2;
  const cplx xl = a0 / (a0 + a2);
  Rational P, Q;
  P.add(0.0, 1, 1.0 - a0);
  P.add(1.0, 1, 1.0 - a2);
  P.add(xl, 1, -1.0);
  RationalODE ode(std::move(P), std::move(Q));
  ode.name = "second(5)";
  ode.variable = "xi";
  ode.substitution = "x = t2 xi";
  ode.constants = {{"xi_lambda2", xl}};
  ode.apparent = {xl};
  return ode;
}

// psi = (x - a)^s y turns the equation of y into the one of psi
RationalODE gauged(const RationalODE& ode, cplx a, cplx s) {
  Rational P = ode.P(), Q = ode.Q();
  P.add(a, 1, -2.0 * s);
  Q.add(a, 2, s * (s + 1.0));
  for (const auto& t : ode.P().poles) {
    if (t.at == a) {
      if (t.order != 1) throw Error(ErrorKind::InvalidArgument, "gauge at a double pole of P");
      Q.add(a, 2, -s * t.coeff);
    } else if (t.order == 1) {
      Q.add_product(-s * t.coeff, {t.at, a});
    } else {
      Q.add_product(-s * t.coeff, {t.at, t.at, a});
    }
  }
  Q.add(a, 1, -s * ode.P().constant);
  RationalODE out(std::move(P), std::move(Q));
  out.variable = ode.variable;
  out.constants = ode.constants;
  out.apparent = ode.apparent;
  return out;
}

RationalODE labeled(RationalODE ode, const std::string& name, const std::string& sub,
                    std::vector<std::pair<std::string, cplx>> extra) {
  ode.name = name;
  ode.substitution = sub;
  for (auto& e : extra) ode.constants.push_back(std::move(e));
  return ode;
}

}  // namespace

RationalODE limit_equation(const LimitEquationId& id, const Params& p) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf, nu = p.nu;
  const auto unsupported = [&]() {
    return Error(ErrorKind::UnsupportedLimit, std::string(to_string(id.stage)) + " limit of solution " +
                                                  std::to_string(id.solution) + " is not implemented");
  };
  solution_id(id.solution);
  switch (id.solution) {
    case 1:
      if (id.stage == LimitStage::First) return first_1(p);
      if (id.stage == LimitStage::Second)
        return labeled(gauss_ode({nu, 1.0 - a0 - a2 - nu, 1.0 - a0}, "xi"), "second(1)", "x = t2 xi",
                       {{"k2", nu * (1.0 - a0 - a2 - nu)}});
      return third_1(p);
    case 2:
      if (id.stage == LimitStage::Second)
        return labeled(gauss_ode({nu + a1, nu + ai, 1.0 - a0}, "xi"), "second(2)", "x = t2 xi", {});
      throw unsupported();
    case 3:
      if (id.stage == LimitStage::First) return labeled(gauss_ode({nu, nu + ai, 1.0 - a0 - a2}), "first(3)", "", {});
      throw unsupported();
    case 4:
      if (id.stage == LimitStage::First)
        return labeled(gauged(gauss_ode({nu + a2, nu + ai + a2, 1.0 - a0 + a2}), 0.0, a2), "first(4)",
                       "psi = x^a2 y, y of Gauss type", {{"gauge", a2}});
      throw unsupported();
    case 5:
      if (id.stage == LimitStage::First) return first_5(p);
      if (id.stage == LimitStage::Second) return second_5(p);
      return labeled(kummer_ode({nu, 2.0 * nu + a1}), "third(5)", "x - 1 = eta t1 / z, psi = (z/eta)^nu psi3", {});
    case 6:
      if (id.stage == LimitStage::Third)
        return labeled(kummer_ode({nu + ai, 2.0 * nu + 2.0 * ai + a1}), "third(6)", "x - 1 = eta t1 / z", {});
      throw unsupported();
    case 7:
      if (id.stage == LimitStage::Third)
        return labeled(kummer_ode({nu + a2, 2.0 * nu + 2.0 * a2 + a1}), "third(7)", "x - 1 = eta t1 / z", {});
      throw unsupported();
    case 8:
      if (id.stage == LimitStage::Third)
        return labeled(kummer_ode({nu + a2 + ai, 2.0 * nu + 2.0 * a2 + 2.0 * ai + a1}), "third(8)",
                       "x - 1 = eta t1 / z", {});
      throw unsupported();
  }
  throw unsupported();
}

LocalExponents local_exponents(const RationalODE& ode, cplx point) {
  cplx at = point;
  bool found = false;
  for (cplx s : ode.singularities()) {
    if (near(s, point)) {
      at = s;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::NotASingularity, "point is not a singularity of the equation");

  const cplx p2 = ode.P().coefficient(at, 2), p1 = ode.P().coefficient(at, 1);
  const cplx q2 = ode.Q().coefficient(at, 2);
  LocalExponents out;
  if (p2 == 0.0) {
    out.rho = quadratic_roots(p1 - 1.0, q2);
    return out;
  }
  out.irregular = true;
  out.rank = 1;
  out.tau = {0.0, p2};
  out.rho = {0.0, 2.0 - p1};
  return out;
}

LocalExponents local_exponents_infinity(const RationalODE& ode) {
  cplx pres = 0.0, qres = 0.0, qinf = 0.0;
  for (const auto& t : ode.P().poles)
    if (t.order == 1) pres += t.coeff;
  for (const auto& t : ode.Q().poles) {
    if (t.order == 1) {
      qres += t.coeff;
      qinf += t.coeff * t.at;
    } else {
      qinf += t.coeff;
    }
  }
  const cplx pc = ode.P().constant, qc = ode.Q().constant;
  LocalExponents out;
  if (pc == 0.0 && qc == 0.0) {
    if (std::abs(qres) > 1e-12 * std::max(1.0, std::abs(qinf)))
      throw Error(ErrorKind::InvalidArgument, "half-integer rank at infinity is not handled");
    out.rho = quadratic_roots(1.0 - pres, qinf);
    return out;
  }
  // psi ~ exp(tau x) x^{-rho}
  out.irregular = true;
  out.rank = 1;
  const auto tau = quadratic_roots(pc, qc);
  for (int i = 0; i < 2; ++i) {
    out.tau[i] = tau[i];
    out.rho[i] = (pres * tau[i] + qres) / (2.0 * tau[i] + pc);
  }
  return out;
}

RiemannScheme riemann_scheme(const RationalODE& ode) {
  RiemannScheme s;
  for (cplx a : ode.singularities()) s.push_back({false, a, local_exponents(ode, a)});
  s.push_back({true, 0.0, local_exponents_infinity(ode)});
  return s;
}

std::function<Matrix2(cplx)> as_first_order(const RationalODE& ode) {
  return [ode](cplx x) {
    if (ode.is_singular(x)) throw Error(ErrorKind::EvalAtSingularity, "companion matrix evaluated at a pole");
    Matrix2 A;
    A << 0.0, 1.0, -ode.Q()(x), -ode.P()(x);
    return A;
  };
}

cplx apparent_defect(const RationalODE& ode, cplx point) {
  const cplx p2 = ode.P().coefficient(point, 2), p1 = ode.P().coefficient(point, 1);
  const cplx q2 = ode.Q().coefficient(point, 2);
  if (p2 != 0.0 || q2 != 0.0 || std::abs(p1 + 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "point does not have the apparent-singularity shape");
  const cplx qm1 = ode.Q().coefficient(point, 1);
  const cplx P0 = ode.P().regular_part(point), Q0 = ode.Q().regular_part(point);
  return (P0 + qm1) * qm1 + Q0;
}

}  // namespace garnier
