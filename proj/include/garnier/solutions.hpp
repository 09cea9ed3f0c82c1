#pragma once

#include <array>
#include <cstdint>

#include "garnier/hamiltonian.hpp"
#include "garnier/params.hpp"
#include "garnier/series.hpp"

namespace garnier {

/// Pole profile of one of the eight solutions. With depole_t1 the unknowns are
/// q1 = Q1/t1 and p1 = t1 P1; with depole_s2 they are q2 = s2 Q2 and
/// p2 = P2/s2. (Q1, Q2, P1, P2) are holomorphic at the origin.
struct SolutionId {
  int index = 1;
  bool depole_t1 = false;
  bool depole_s2 = false;
};

/// Throws InvalidArgument unless 1 <= index <= 8.
SolutionId solution_id(int index);

/// Constant terms of (Q1, Q2, P1, P2).
std::array<cplx, 4> seed_values(const Params& p, const SolutionId& id);

struct SolutionExpansion {
  SolutionId id;
  Params params;
  int order = 0;
  PoleSeries q1, q2, p1, p2;

  std::array<BiSeries, 4> depoled() const { return {q1.base, q2.base, p1.base, p2.base}; }
};

/// Wraps depoled series (Q1, Q2, P1, P2) into an expansion with the right
/// pole flags.
SolutionExpansion make_expansion(const Params& p, const SolutionId& id, const std::array<BiSeries, 4>& z);

enum class SolverOrdering { Natural, Reversed };

struct ExpandOptions {
  SolverOrdering ordering = SolverOrdering::Natural;
  // probe around random values instead of zero for the unknowns being solved
  bool random_probe_base = false;
  std::uint64_t probe_seed = 0;
};

/// Order-by-order solve of the depoled Hamiltonian system. Each total degree m
/// gives, per monomial t1^j s2^k, eight linear equations in the four
/// unknown coefficients; they are solved in the least-squares sense and must
/// be consistent and of full rank (NonGenericParams otherwise).
SolutionExpansion expand_solution(const Params& p, int index, int order, const ExpandOptions& opt = {});

enum class GradientRoute { Symbolic, Hand };

/// The eight equations with the depole factors divided out, as series. The
/// gradients come either from symbolic differentiation of the polynomial
/// table or from the hand transcription.
std::array<LaurentSeries, 8> depoled_equations(const Params& p, const SolutionId& id,
                                               const std::array<LaurentSeries, 4>& z, GradientRoute route);

struct ResidualReport {
  double absolute = 0.0;  // max coefficient over all equations through `through`
  double scale = 1.0;     // max(1, largest coefficient of the expansion)
  double relative = 0.0;
  int through = 0;
};

/// Residual of the Hamiltonian system through total degree order-1 (or
/// `through` if >= 0). Uses the hand-differentiated gradients.
ResidualReport residual_report(const SolutionExpansion& e, int through = -1);
inline double residual_norm(const SolutionExpansion& e) { return residual_report(e).relative; }

/// Zero every coefficient above total degree `keep`, leaving the order alone.
SolutionExpansion truncate_coefficients(const SolutionExpansion& e, int keep);

struct ConvergenceDiagnostic {
  double rho = 0.0;          // exp(-slope)
  double slope = 0.0;
  double intercept = 0.0;
  double fit_quality = 0.0;  // rms residual of the log-linear fit
};

/// Fit log max_{j+k=m} |c_jk| against m for m = 0..order.
ConvergenceDiagnostic convergence_diagnostic(const BiSeries& s);
/// Same fit on the largest coefficient per degree across (Q1, Q2, P1, P2).
ConvergenceDiagnostic convergence_diagnostic(const SolutionExpansion& e);

struct GarnierCoords {
  cplx lambda1, lambda2, mu1, mu2, K1, K2, t1, t2;
};

/// How the time derivatives of q_j in the H <-> K relations are taken.
/// FixedLambda differentiates the canonical transformation at fixed
/// (lambda, mu); AlongSolution differentiates the series q_j(t1, t2).
enum class KConvention { FixedLambda, AlongSolution };

GarnierCoords to_garnier_coords(const SolutionExpansion& e, cplx t1, cplx t2,
                                KConvention conv = KConvention::FixedLambda);

}  // namespace garnier
