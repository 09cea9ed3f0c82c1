#pragma once

#include <complex>

#include <Eigen/Dense>

#include "garnier/series.hpp"

namespace garnier {

using Matrix2 = Eigen::Matrix2cd;
using Row2 = Eigen::RowVector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGenericMargin = 0.05;

struct GaussParams {
  cplx alpha, beta, gamma;
};

struct KummerParams {
  cplx alpha, gamma;
};

/// Principal logarithm with arg in (-pi, pi]; the negative real axis maps to
/// +pi regardless of the sign of a zero imaginary part.
cplx clog(cplx x);
/// x^a = exp(a log x) on the principal branch.
cplx cpow(cplx x, cplx a);
/// e^{2 pi i a}
cplx e2pi(cplx a);

double distance_to_integers(cplx z);
double distance_to_nonpositive_integers(cplx z);

/// Throws GammaPole within 1e-12 of a non-positive integer.
cplx gamma(cplx z);
/// 1/Gamma(z), entire (exactly zero at the poles of Gamma).
cplx rgamma(cplx z);

/// Gauss series continued to the plane cut along [1, inf).
cplx hyp2f1(cplx a, cplx b, cplx c, cplx x);
inline cplx hyp2f1(const GaussParams& p, cplx x) { return hyp2f1(p.alpha, p.beta, p.gamma, x); }

/// Confluent series 1F1(a; c; z).
cplx hyp1f1(cplx a, cplx c, cplx z);
inline cplx hyp1f1(const KummerParams& p, cplx z) { return hyp1f1(p.alpha, p.gamma, z); }

enum class GaussPoint { Zero, One, Infinity };

/// The fundamental row (psi_1, psi_2) at the given singular point.
Row2 gauss_basis(const GaussParams& p, GaussPoint at, cplx x);

/// Throws NonGenericParams unless gamma, gamma-alpha-beta and alpha-beta keep
/// at least `margin` from the integers.
void require_gauss_generic(const GaussParams& p, double margin = kGenericMargin);

struct GaussConnection {
  Matrix2 C01, C0inf, Cinf1;
};
GaussConnection gauss_connection_matrices(const GaussParams& p, double margin = kGenericMargin);

struct GaussMonodromy {
  Matrix2 M0, M1, Minf;
};
GaussMonodromy gauss_monodromy_matrices(const GaussParams& p, double margin = kGenericMargin);

void require_kummer_generic(const KummerParams& p, double margin = kGenericMargin);

/// (1F1(a, c; z), z^{1-c} 1F1(a+1-c, 2-c; z))
Row2 kummer_basis_zero(const KummerParams& p, cplx z);
/// (phi_1(e^{-pi i} z), phi_2(z)) from the asymptotic series at infinity,
/// each summed up to its smallest term.
Row2 kummer_basis_infinity(const KummerParams& p, cplx z);

Matrix2 kummer_connection_matrix(const KummerParams& p, double margin = kGenericMargin);

struct KummerStokes {
  Matrix2 S1, S2;
};
KummerStokes kummer_stokes_matrices(const KummerParams& p);

// Extended precision (x87 long double) versions. The double API above rounds
// these; the closed-form monodromy assembles its products here.
using xcplx = std::complex<long double>;
using XMatrix2 = Eigen::Matrix<xcplx, 2, 2>;

xcplx gamma_x(xcplx z);
xcplx rgamma_x(xcplx z);
xcplx e2pi_x(xcplx a);

struct GaussConnectionX {
  XMatrix2 C01, C0inf, Cinf1;
};
GaussConnectionX gauss_connection_matrices_x(const GaussParams& p, double margin = kGenericMargin);
XMatrix2 kummer_connection_matrix_x(const KummerParams& p, double margin = kGenericMargin);
struct KummerStokesX {
  XMatrix2 S1, S2;
};
KummerStokesX kummer_stokes_matrices_x(const KummerParams& p);

Matrix2 to_double(const XMatrix2& m);

struct KummerMonodromy {
  Matrix2 M0, Minf, expTinf;
};
KummerMonodromy kummer_monodromy_matrices(const KummerParams& p, double margin = kGenericMargin);

}  // namespace garnier
