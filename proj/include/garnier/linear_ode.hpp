#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "garnier/params.hpp"
#include "garnier/solutions.hpp"
#include "garnier/specfun.hpp"

namespace garnier {

struct PoleTerm {
  cplx at;
  int order = 1;  // 1 or 2
  cplx coeff;
};

/// sum_i coeff_i / (x - at_i)^order_i + constant
struct Rational {
  std::vector<PoleTerm> poles;
  cplx constant = 0.0;

  cplx operator()(cplx x) const;
  cplx derivative(cplx x) const;
  /// Coefficient of (x - a)^-order; zero when absent.
  cplx coefficient(cplx a, int order) const;
  /// Value at a of everything except the terms located at a.
  cplx regular_part(cplx a) const;

  void add(cplx at, int order, cplx coeff);
  /// Adds c / prod (x - r) in partial fractions. Repeated roots must be
  /// bitwise equal (at most twice); near-equal ones raise
  /// CollidingSingularities.
  void add_product(cplx c, const std::vector<cplx>& roots);
};

/// psi'' + P(x) psi' + Q(x) psi = 0
class RationalODE {
 public:
  RationalODE() = default;
  /// Throws CollidingSingularities when two distinct pole locations are
  /// within 1e-10, InvalidArgument for pole orders outside {1, 2}.
  RationalODE(Rational P, Rational Q);

  const Rational& P() const { return P_; }
  const Rational& Q() const { return Q_; }

  /// Distinct finite singular points in order of first appearance.
  const std::vector<cplx>& singularities() const { return sing_; }
  bool is_singular(cplx x, double tol = 1e-12) const;

  std::string name;
  std::string variable = "x";
  std::string substitution;  // change of variable from the x of the full equation, if any
  std::vector<std::pair<std::string, cplx>> constants;
  std::vector<cplx> apparent;  // points expected to carry exponents {0, 2}

  std::optional<cplx> constant(const std::string& key) const;

 private:
  Rational P_, Q_;
  std::vector<cplx> sing_;
};

/// The linear equation of the isomonodromic family at the given Garnier data.
RationalODE lg2_coefficients(const GarnierCoords& g, const Params& p);

enum class LimitStage { First, Second, Third };

struct LimitEquationId {
  LimitStage stage = LimitStage::First;
  int solution = 1;
};

const char* to_string(LimitStage s);
/// "first" / "second" / "third"; InvalidArgument otherwise.
LimitStage parse_stage(const std::string& s);

/// Limit equations. Implemented: all three stages for solutions 1 and 5, the
/// Gauss stage for 2, 3, 4 (Second, First, First) and the Kummer stage
/// (Third) for 6, 7, 8. Anything else raises UnsupportedLimit.
RationalODE limit_equation(const LimitEquationId& id, const Params& p);

/// Gauss equation x(1-x)y'' + (c - (a+b+1)x)y' - ab y = 0 in normal form.
RationalODE gauss_ode(const GaussParams& g, const std::string& variable = "x");
/// Kummer equation z y'' + (c - z) y' - a y = 0 in normal form.
RationalODE kummer_ode(const KummerParams& k, const std::string& variable = "z");

struct LocalExponents {
  bool irregular = false;
  int rank = 0;                 // Poincare rank when irregular
  std::array<cplx, 2> rho{};    // exponents; at infinity psi ~ x^{-rho}
  std::array<cplx, 2> tau{};    // exponential data, paired with rho
};

/// Regular singular points: roots of r(r-1) + p0 r + q0. At infinity the
/// pullback x = 1/u is used. Rank-one irregular points (double pole of P at a
/// finite point, nonzero constant in P at infinity) return the formal
/// exponential factors and the paired exponents. Throws NotASingularity.
LocalExponents local_exponents(const RationalODE& ode, cplx point);
LocalExponents local_exponents_infinity(const RationalODE& ode);

struct SchemeEntry {
  bool at_infinity = false;
  cplx point;
  LocalExponents exps;
};
using RiemannScheme = std::vector<SchemeEntry>;
RiemannScheme riemann_scheme(const RationalODE& ode);

/// Companion matrix A(x) = [[0, 1], [-Q, -P]]; the returned function throws
/// EvalAtSingularity within 1e-12 of a pole.
std::function<Matrix2(cplx)> as_first_order(const RationalODE& ode);

/// At a point with exponents {0, 2} (P residue -1, Q at most a simple pole)
/// the Frobenius recursion forces (P0 + Q_{-1}) Q_{-1} + Q0 = 0 for the
/// absence of a logarithm. Returns the left-hand side.
cplx apparent_defect(const RationalODE& ode, cplx point);

}  // namespace garnier
