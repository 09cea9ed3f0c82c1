#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "garnier/series.hpp"

namespace garnier {

struct Params {
  cplx alpha0, alpha1, alpha2, alphaInf, nu, eta;

  /// alphaInf is fixed by the Fuchs relation a0 + a1 + a2 + aInf = 1 - 2 nu.
  static Params with_fuchs(cplx a0, cplx a1, cplx a2, cplx nu, cplx eta);

  cplx kappa() const { return nu * (nu + alphaInf); }
  cplx fuchs_residual() const { return alpha0 + alpha1 + alpha2 + alphaInf - (1.0 - 2.0 * nu); }
};

struct GenericReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Every parameter combination that puts a denominator of the series
/// coefficients at an integer, plus the Fuchs residual and eta = 0.
GenericReport check_generic(const Params& p, double margin = 0.05);

/// Throws NonGenericParams listing the violations.
void require_generic(const Params& p, double margin = 0.05);

/// Seeded sampler: a0, a1, a2, nu uniform in the disc |z - (0.3+0.1i)| <= 0.5,
/// aInf from Fuchs, eta uniform in |eta| <= 1 with |eta| >= 0.1. Redraws until
/// check_generic passes and `extra` (if given) accepts.
Params sample_params(std::uint64_t seed, double margin = 0.05,
                     const std::function<bool(const Params&)>& extra = nullptr);

}  // namespace garnier
