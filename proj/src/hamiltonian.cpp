#include "garnier/hamiltonian.hpp"

#include <algorithm>
#include <vector>

#include "garnier/error.hpp"

namespace garnier {

Poly Poly::constant(cplx c) {
  Poly p;
  p.add(Exps{}, c);
  return p;
}

Poly Poly::variable(Slot v, int power) {
  Poly p;
  Exps e{};
  e[v] = power;
  p.add(e, 1.0);
  return p;
}

void Poly::add(const Exps& e, cplx c) {
  if (c == 0.0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Poly Poly::derivative(Slot v) const {
  Poly r;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exps f = e;
    f[v] -= 1;
    r.add(f, c * static_cast<double>(e[v]));
  }
  return r;
}

int Poly::max_degree(Slot v) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e[v]);
  return m;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b.terms_) r.add(e, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b.terms_) r.add(e, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Poly::Exps e;
      for (int i = 0; i < 6; ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  }
  return r;
}

Poly operator*(cplx s, const Poly& a) {
  Poly r;
  for (const auto& [e, c] : a.terms_) r.add(e, s * c);
  return r;
}

cplx evaluate(const Poly& p, const std::array<cplx, 6>& x) {
  cplx sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx m = c;
    for (int i = 0; i < 6; ++i) {
      if (e[i] >= 0) {
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      } else {
        for (int k = 0; k < -e[i]; ++k) m /= x[i];
      }
    }
    sum += m;
  }
  return sum;
}

LaurentSeries evaluate(const Poly& p, const std::array<LaurentSeries, 4>& z) {
  // powers[v][k] = z[v]^k, built lazily
  std::array<std::vector<LaurentSeries>, 4> powers;
  for (int v = 0; v < 4; ++v) powers[v].push_back(LaurentSeries::constant(1.0));
  auto power = [&](int v, int k) -> const LaurentSeries& {
    while (static_cast<int>(powers[v].size()) <= k) powers[v].push_back(powers[v].back() * z[v]);
    return powers[v][k];
  };

  LaurentSeries sum = LaurentSeries::constant(0.0);
  for (const auto& [e, c] : p.terms()) {
    LaurentSeries m = LaurentSeries::monomial(e[kT1], e[kS2], c);
    for (int v = 0; v < 4; ++v) {
      if (e[v] < 0) throw Error(ErrorKind::InvalidArgument, "negative phase-space exponent");
      if (e[v] > 0) m = m * power(v, e[v]);
    }
    sum = sum + m;
  }
  return sum;
}

HamiltonianPolys hamiltonian_polys(const Params& p) {
  const Poly q1 = Poly::variable(kQ1), q2 = Poly::variable(kQ2), p1 = Poly::variable(kP1), p2 = Poly::variable(kP2);
  const Poly t1 = Poly::variable(kT1), s1 = Poly::variable(kT1, -1), s2 = Poly::variable(kS2);
  const Scaled<Poly> h = scaled_hamiltonians(p, q1, q2, p1, p2, t1, s1, s2);
  HamiltonianPolys out;
  out.P1 = h.P1;
  out.P2 = h.P2;
  for (Slot v : {kQ1, kQ2, kP1, kP2}) {
    out.dP1[v] = h.P1.derivative(v);
    out.dP2[v] = h.P2.derivative(v);
  }
  return out;
}

HamiltonianValues hamiltonians_eval(const Params& p, const PhaseState& s) {
  if (s.t1 == 0.0) throw Error(ErrorKind::SingularTime, "t1 = 0");
  if (std::abs(s.s2) < 1e-300 || s.s2 == 1.0) throw Error(ErrorKind::SingularTime, "s2 in {0, 1}");
  const cplx s1 = 1.0 / s.t1;
  const Scaled<cplx> h = scaled_hamiltonians<cplx>(p, s.q1, s.q2, s.p1, s.p2, s.t1, s1, s.s2);
  return {h.P1 * s.t1 * s.t1, h.P2 / (s.s2 * (s.s2 - 1.0))};
}

}  // namespace garnier
