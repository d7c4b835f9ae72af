#pragma once

#include <array>
#include <functional>
#include <vector>

#include "boltspec/kernel.hpp"
#include "boltspec/quadrature.hpp"
#include "boltspec/spectral_field.hpp"

namespace boltspec {

/// Parameters of the exact self-similar reference solution for Maxwell
/// molecules in d=2 (unit mass, unit temperature). The closed form is
/// normalized for the angular base b0 = 1/(2 pi), i.e. unit total cross
/// section; t0 shifts the internal clock so the profile starts strictly
/// inside the admissible range K >= 1/2.
struct BkwParams {
  double t0 = 0.0;
  double width(double t) const;  // internal parameter K(t)
};

/// Pointwise value of the reference profile at time t (plus t0 offset).
double bkw(double t, double v1, double v2, const BkwParams& p);

/// Direct physical-space quadrature of the truncated collision operator:
/// nested radius x q-angle x sigma-angle sums of the gain-minus-loss
/// integrand, with post-collision velocities wrapped periodically into
/// the box.
std::vector<double> direct_qr(const std::function<double(double, double)>& g,
                              const std::function<double(double, double)>& f,
                              const KernelSpec& spec, double z,
                              const Domain& dom,
                              const std::vector<std::array<double, 2>>& points,
                              const QuadratureRule& quad);

/// Same operator applied to trig-polynomial inputs, evaluated on the
/// uniform M x M grid. Shifted band-limited fields are evaluated exactly
/// through their coefficients, which keeps the route independent of the
/// weight-table path while avoiding per-point sums.
std::vector<double> direct_qr_spectral(const SpectralField& g,
                                       const SpectralField& f,
                                       const KernelSpec& spec, double z, int M,
                                       const QuadratureRule& quad);

/// Projection of direct_qr_spectral(g,f) onto the mode lattice.
SpectralField direct_qr_projected(const SpectralField& g,
                                  const SpectralField& f,
                                  const KernelSpec& spec, double z,
                                  const QuadratureRule& quad);

struct BkwVerification {
  double max_residual = 0.0;   // |d/dt bkw - Q^R(bkw,bkw)| over samples
  double mass_drift = 0.0;     // max |mass(t) - mass(t_first)|
  double energy_drift = 0.0;
  double min_value = 0.0;
};

/// Residual test that gates the reference solution: finite-difference
/// time derivative of the profile against the direct operator, sampled in
/// (t, v). The profile is accepted for convergence studies only when the
/// residual is below tolerance.
BkwVerification verify_bkw(const BkwParams& p, const KernelSpec& spec,
                           const Domain& dom,
                           const std::vector<double>& sample_times,
                           const QuadratureRule& quad);

}  // namespace boltspec
