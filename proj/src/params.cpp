#include "garnier/params.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "garnier/error.hpp"
#include "garnier/specfun.hpp"

namespace garnier {

Params Params::with_fuchs(cplx a0, cplx a1, cplx a2, cplx nu, cplx eta) {
  return {a0, a1, a2, 1.0 - 2.0 * nu - a0 - a1 - a2, nu, eta};
}

GenericReport check_generic(const Params& p, double margin) {
  GenericReport r;
  const cplx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2, ai = p.alphaInf;
  const std::pair<const char*, cplx> combos[] = {
      {"α1", a1},
      {"α∞", ai},
      {"α1+α∞", a1 + ai},
      {"α1−α∞", a1 - ai},
      {"α0+α2", a0 + a2},
      {"α0−α2", a0 - a2},
      {"α0+α2+α∞", a0 + a2 + ai},
      {"α0+α2−α∞", a0 + a2 - ai},
      {"α0−α2+α∞", a0 - a2 + ai},
      {"α0−α2−α∞", a0 - a2 - ai},
  };
  for (const auto& [name, v] : combos) {
    if (distance_to_integers(v) < margin) r.violations.push_back(std::string(name) + " ∈ ℤ");
  }
  const double fr = std::abs(p.fuchs_residual());
  if (fr > 1e-12) {
    std::ostringstream os;
    os << "Fuchs relation residual " << fr;
    r.violations.push_back(os.str());
  }
  if (std::abs(p.eta) < 1e-12) r.violations.push_back("η = 0");
  return r;
}

void require_generic(const Params& p, double margin) {
  const GenericReport r = check_generic(p, margin);
  if (r.ok()) return;
  std::string msg;
  for (const auto& v : r.violations) msg += (msg.empty() ? "" : "; ") + v;
  throw Error(ErrorKind::NonGenericParams, msg);
}

namespace {

// 53-bit uniform in [0, 1) straight from the engine, so the draws do not
// depend on the standard library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

cplx disc(std::mt19937_64& rng, cplx centre, double radius) {
  const double r = radius * std::sqrt(unit(rng));
  const double th = 2.0 * kPi * unit(rng);
  return centre + std::polar(r, th);
}

}  // namespace

Params sample_params(std::uint64_t seed, double margin, const std::function<bool(const Params&)>& extra) {
  std::mt19937_64 rng(seed);
  const cplx centre(0.3, 0.1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const cplx a0 = disc(rng, centre, 0.5);
    const cplx a1 = disc(rng, centre, 0.5);
    const cplx a2 = disc(rng, centre, 0.5);
    const cplx nu = disc(rng, centre, 0.5);
    cplx eta;
    do {
      eta = disc(rng, 0.0, 1.0);
    } while (std::abs(eta) < 0.1);
    const Params p = Params::with_fuchs(a0, a1, a2, nu, eta);
    if (!check_generic(p, margin).ok()) continue;
    if (extra && !extra(p)) continue;
    return p;
  }
  throw Error(ErrorKind::NonGenericParams, "sampler found no generic parameters");
}

}  // namespace garnier
