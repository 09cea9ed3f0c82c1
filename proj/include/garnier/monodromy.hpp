#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "garnier/linear_ode.hpp"
#include "garnier/params.hpp"
#include "garnier/specfun.hpp"

namespace garnier {

struct ExtendedTuple {
  XMatrix2 M0, Mt2, M1, Minf;
  XMatrix2 S1, S2, expT1;
};

struct MonodromyTuple {
  int solution = 0;
  Matrix2 M0, Mt2, M1, Minf;
  Matrix2 S1, S2, expT1;
  std::vector<std::pair<std::string, Matrix2>> connections;
  // the long double products the matrices above were rounded from
  std::optional<ExtendedTuple> extended;
};

/// AsPrinted keeps the literal tables for solutions 4 and 8, which break the
/// cyclic relation; Consistent uses Gauss data (nu+a2, nu+aInf+a2, 1-a0+a2)
/// with Mt2 = diag(e(a2), 1) for 4 and the cores diag(1, e(a0)),
/// diag(e(a2), 1), diag(e(nu+aInf), e(nu)) for 8. Only the consistent form matches
/// loops of the full equation.
enum class TupleVariant { Consistent, AsPrinted };

/// Closed-form monodromy of solution `index`: diagonal cores conjugated by
/// Gauss connection matrices (1..4, trivial Stokes data) or by the Kummer
/// connection matrix with Kummer Stokes matrices (5..8).
/// Throws NonGenericParams.
MonodromyTuple closed_form_monodromy(const Params& p, int index, TupleVariant variant = TupleVariant::Consistent);

/// True when the closed forms of all eight solutions can be built at this
/// margin. Meant as the `extra` predicate of sample_params.
bool closed_forms_generic(const Params& p, double margin = kGenericMargin);

/// Gauss and Kummer parameters feeding the closed form of each solution.
GaussParams gauss_params_for(const Params& p, int index);
KummerParams kummer_params_for(const Params& p, int index);

/// Closed loop used for transport. The path runs from `base` radially to the
/// circle |x - center| = radius, once around it and back; when `base` is on
/// the circle the tails vanish. Orientation false runs clockwise.
struct LoopPath {
  cplx base;
  cplx center;
  double radius = 0.3;
  bool positive = true;
  int segments = 512;  // only used for the distance check
};

/// Default radius min(0.5 * nearest gap, 0.3), base on the circle at
/// angle 0 unless a common base point is given.
LoopPath loop_around(const RationalODE& ode, cplx point, std::optional<cplx> base = std::nullopt);
/// Clockwise circle of radius 10 * max(1, largest singular modulus) about 0.
LoopPath loop_around_infinity(const RationalODE& ode, std::optional<cplx> base = std::nullopt);

/// Points along the path, `segments` per circle plus the tails.
std::vector<cplx> discretize(const LoopPath& loop);

/// Throws PathTooClose when the path comes closer to a singularity than
/// 0.25 * (smallest gap between singularities), or the base point is singular.
void check_loop(const RationalODE& ode, const LoopPath& loop);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  long max_steps = 1000000;
};

/// Fundamental matrix transported along the straight segment a -> b.
Matrix2 transport_segment(const RationalODE& ode, cplx a, cplx b, const Matrix2& y0,
                          const IntegratorOptions& opt = {});

/// Monodromy matrix of the loop in the basis fixed by Y(base) = I.
/// Throws PathTooClose or StepFailure.
Matrix2 numeric_monodromy(const RationalODE& ode, const LoopPath& loop, const IntegratorOptions& opt = {});

struct CompareReport {
  double max_deviation = 0.0;
  std::string worst;  // which invariant
  std::vector<std::pair<std::string, double>> items;
};

/// Conjugation invariants of labeled matrix sets: traces, determinants,
/// eigenvalue multisets and traces of pairwise products. Labels must match.
CompareReport compare_monodromy(const std::vector<std::pair<std::string, Matrix2>>& a,
                                const std::vector<std::pair<std::string, Matrix2>>& b);
CompareReport compare_monodromy(const MonodromyTuple& a, const MonodromyTuple& b);

std::vector<std::pair<std::string, Matrix2>> labeled(const MonodromyTuple& t);

struct IdentityReport {
  double cyclic = 0.0;
  std::vector<std::pair<std::string, double>> commutators;  // the listed ones
  bool stokes_trivial = false;
  double stokes_deviation = 0.0;
};

/// Cyclic relation residual and the commutators listed for the solution,
/// taken from the extended matrices when the tuple carries them.
IdentityReport group_identities(const MonodromyTuple& t, int index);

double commutator_norm(const Matrix2& a, const Matrix2& b);

}  // namespace garnier
