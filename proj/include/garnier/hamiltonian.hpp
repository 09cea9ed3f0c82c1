#pragma once

#include <array>
#include <map>

#include "garnier/params.hpp"
#include "garnier/series.hpp"

namespace garnier {

// Variable slots of the phase space polynomials.
enum Slot { kQ1 = 0, kQ2 = 1, kP1 = 2, kP2 = 3, kT1 = 4, kS2 = 5 };

/// Sparse polynomial in (q1, q2, p1, p2, t1, s2). The t1 exponent may be
/// negative, which is how s1 = 1/t1 enters.
class Poly {
 public:
  using Exps = std::array<int, 6>;

  Poly() = default;
  static Poly constant(cplx c);
  static Poly variable(Slot v, int power = 1);

  const std::map<Exps, cplx>& terms() const { return terms_; }
  Poly derivative(Slot v) const;
  int max_degree(Slot v) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& a);
  friend Poly operator+(const Poly& a, cplx c) { return a + constant(c); }
  friend Poly operator-(const Poly& a, cplx c) { return a - constant(c); }
  Poly operator-() const { return cplx(-1.0) * *this; }

 private:
  void add(const Exps& e, cplx c);
  std::map<Exps, cplx> terms_;
};

cplx evaluate(const Poly& p, const std::array<cplx, 6>& x);

/// Evaluate with series for q1..p2; t1 and s2 are applied as exact monomials.
LaurentSeries evaluate(const Poly& p, const std::array<LaurentSeries, 4>& z);

/// The scaled Hamiltonians P1 = s1^2 H1 and P2 = s2 (s2 - 1) H2 and their
/// symbolic gradients, indexed by slot (q1, q2, p1, p2).
struct HamiltonianPolys {
  Poly P1, P2;
  std::array<Poly, 4> dP1, dP2;
};
HamiltonianPolys hamiltonian_polys(const Params& p);

/// Second transcription: the polynomials written out directly as generic
/// expressions over any ring T with the usual operators.
template <class T>
struct Scaled {
  T P1, P2;
};

template <class T>
Scaled<T> scaled_hamiltonians(const Params& p, const T& q1, const T& q2, const T& p1, const T& p2, const T& t1,
                              const T& s1, const T& s2) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, eta = p.eta, kap = p.kappa();
  const cplx A = a0 + a2 - 1.0, B = a0 + a1 - 1.0;
  const T w = s2 * (s2 - 1.0) * t1;
  T P1 = q1 * q1 * (q1 - s1) * p1 * p1 + 2.0 * q1 * q1 * q2 * p1 * p2 + q1 * q2 * (q2 - s2) * p2 * p2 -
         (A * q1 * q1 + a1 * q1 * (q1 - s1) + eta * (q1 - s1) + eta * s1 * q2) * p1 -
         (B * q1 * q2 + a2 * q1 * (q2 - s2) - eta * (s2 - 1.0) * q2) * p2 + kap * q1;
  T P2 = q1 * q1 * q2 * p1 * p1 + 2.0 * q1 * q2 * (q2 - s2) * p1 * p2 + (q2 * (q2 - 1.0) * (q2 - s2) + w * q1 * q2) * p2 * p2 -
         (B * q1 * q2 + a2 * q1 * (q2 - s2) - eta * (s2 - 1.0) * q2) * p1 -
         ((a0 - 1.0) * q2 * (q2 - 1.0) + a1 * q2 * (q2 - s2) + a2 * (q2 - 1.0) * (q2 - s2) + w * (a2 * q1 + eta * q2)) * p2 +
         kap * q2;
  return {P1, P2};
}

/// Hand-differentiated gradients of P1, P2, indexed (q1, q2, p1, p2).
template <class T>
struct Gradients {
  std::array<T, 4> dP1, dP2;
};

template <class T>
Gradients<T> hand_gradients(const Params& p, const T& q1, const T& q2, const T& p1, const T& p2, const T& t1,
                            const T& s1, const T& s2) {
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, eta = p.eta, kap = p.kappa();
  const cplx A = a0 + a2 - 1.0, B = a0 + a1 - 1.0;
  const T w = s2 * (s2 - 1.0) * t1;
  Gradients<T> g;
  g.dP1[kP1] = 2.0 * q1 * q1 * (q1 - s1) * p1 + 2.0 * q1 * q1 * q2 * p2 -
               (A * q1 * q1 + a1 * q1 * (q1 - s1) + eta * (q1 - s1) + eta * s1 * q2);
  g.dP1[kP2] = 2.0 * q1 * q1 * q2 * p1 + 2.0 * q1 * q2 * (q2 - s2) * p2 -
               (B * q1 * q2 + a2 * q1 * (q2 - s2) - eta * (s2 - 1.0) * q2);
  g.dP1[kQ1] = (3.0 * q1 * q1 - 2.0 * s1 * q1) * p1 * p1 + 4.0 * q1 * q2 * p1 * p2 + q2 * (q2 - s2) * p2 * p2 -
               (2.0 * A * q1 + a1 * (2.0 * q1 - s1) + eta) * p1 - (B * q2 + a2 * (q2 - s2)) * p2 + kap;
  g.dP1[kQ2] = 2.0 * q1 * q1 * p1 * p2 + q1 * (2.0 * q2 - s2) * p2 * p2 - eta * s1 * p1 -
               (B * q1 + a2 * q1 - eta * (s2 - 1.0)) * p2;

  g.dP2[kP1] = 2.0 * q1 * q1 * q2 * p1 + 2.0 * q1 * q2 * (q2 - s2) * p2 -
               (B * q1 * q2 + a2 * q1 * (q2 - s2) - eta * (s2 - 1.0) * q2);
  g.dP2[kP2] = 2.0 * q1 * q2 * (q2 - s2) * p1 + 2.0 * (q2 * (q2 - 1.0) * (q2 - s2) + w * q1 * q2) * p2 -
               ((a0 - 1.0) * q2 * (q2 - 1.0) + a1 * q2 * (q2 - s2) + a2 * (q2 - 1.0) * (q2 - s2) +
                w * (a2 * q1 + eta * q2));
  g.dP2[kQ1] = 2.0 * q1 * q2 * p1 * p1 + 2.0 * q2 * (q2 - s2) * p1 * p2 + w * q2 * p2 * p2 -
               (B * q2 + a2 * (q2 - s2)) * p1 - a2 * w * p2;
  g.dP2[kQ2] = q1 * q1 * p1 * p1 + 2.0 * q1 * (2.0 * q2 - s2) * p1 * p2 +
               (3.0 * q2 * q2 - 2.0 * (1.0 + s2) * q2 + s2 + w * q1) * p2 * p2 - (B * q1 + a2 * q1 - eta * (s2 - 1.0)) * p1 -
               ((a0 - 1.0) * (2.0 * q2 - 1.0) + a1 * (2.0 * q2 - s2) + a2 * (2.0 * q2 - 1.0 - s2) + eta * w) * p2 + kap;
  return g;
}

struct PhaseState {
  cplx q1, q2, p1, p2, t1, s2;
};

struct HamiltonianValues {
  cplx H1, H2;
};

/// H1 = P1 / s1^2 and H2 = P2 / (s2 (s2 - 1)). Throws SingularTime when
/// t1 = 0 or s2 is 0 or 1.
HamiltonianValues hamiltonians_eval(const Params& p, const PhaseState& s);

}  // namespace garnier
