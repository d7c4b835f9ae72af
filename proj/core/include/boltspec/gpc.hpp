#pragma once

#include <vector>

#include "boltspec/collision.hpp"
#include "boltspec/kernel.hpp"
#include "boltspec/quadrature.hpp"
#include "boltspec/spectral_field.hpp"

namespace boltspec {

/// Orthonormal Legendre chaos basis on [-1,1] under the uniform density
/// 1/2: Psi_k(z) = sqrt(2k+1) P_k(z), via the three-term recurrence.
double legendre_psi(int k, double z);

/// Triple-product tensor S[k][i][j] = int lambda(z) Psi_k Psi_i Psi_j
/// pi(z) dz; fully symmetric in (k,i,j).
struct STensor {
  int order = 0;
  std::vector<double> entries;  // (K+1)^3, [k][i][j]

  double operator()(int k, int i, int j) const {
    const int n = order + 1;
    return entries[(static_cast<size_t>(k) * n + i) * n + j];
  }
  double& at(int k, int i, int j) {
    const int n = order + 1;
    return entries[(static_cast<size_t>(k) * n + i) * n + j];
  }
};

/// Quadrature build of the tensor; quad.z_nodes must integrate degree
/// 3K + deg(lambda) exactly for polynomial factors.
STensor build_s_tensor(const RandomFactor& lambda, int K,
                       const QuadratureRule& quad);

/// Chaos expansion of a velocity field: modes[k] holds the coefficient
/// field paired with Psi_k(z).
struct GpcField {
  int order = 0;
  std::vector<SpectralField> modes;

  GpcField() = default;
  GpcField(const Domain& dom, int K);
  const Domain& domain() const { return modes.at(0).domain; }
};

/// Galerkin collision term of the coupled chaos system:
/// out^k = sum_{i,j} S[k][i][j] * bilinear(G, F^i, F^j). The velocity
/// contraction for each (i,j) pair is computed once and reused across k.
GpcField gpc_collision_rhs(const WeightTable& G, const STensor& S,
                           const GpcField& F);

/// Pointwise-in-z reconstruction sum_k Psi_k(z) F^k.
SpectralField reconstruct(const GpcField& F, double z);

struct GpcStatistics {
  SpectralField mean;
  std::vector<double> variance_field;  // on the M x M uniform grid
  int grid_M = 0;
};

/// Mean is the k=0 mode; variance is the grid-pointwise sum of squared
/// higher-mode field values (variance is quadratic, so coefficient-space
/// shortcuts would alias).
GpcStatistics gpc_statistics(const GpcField& F, int grid_M = 0);

}  // namespace boltspec
