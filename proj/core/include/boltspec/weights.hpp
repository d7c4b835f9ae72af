#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boltspec/kernel.hpp"
#include "boltspec/quadrature.hpp"
#include "boltspec/spectral_field.hpp"

namespace boltspec {

/// Precomputed collision weights G(l,m) on the mode-pair lattice,
/// stored at lambda = 1 (the z-dependence factors into the gPC tensor).
struct WeightTable {
  Domain domain;
  std::vector<cplx> entries;  // [l_index * lattice + m_index]
  uint64_t kernel_hash = 0;
  double quad_tol = 0.0;

  int lattice() const { return domain.lattice_size(); }
  cplx& at(int lidx, int midx) {
    return entries[static_cast<size_t>(lidx) * lattice() + midx];
  }
  const cplx& at(int lidx, int midx) const {
    return entries[static_cast<size_t>(lidx) * lattice() + midx];
  }
  int mode_index(int n1, int n2) const {
    return (n1 + domain.N) * domain.modes_per_dim() + (n2 + domain.N);
  }

  /// Max |G(l,-l)| over the lattice; vanishes analytically.
  double diagonal_residual() const;
  /// Max |conj(G(l,m)) - G(-l,-m)|.
  double conjugation_residual() const;
};

/// Assemble the weight table by nested quadrature (radial x q-angle x
/// sigma-angle for d=2). The inner sigma sweep depends on the mode pair
/// only through s = l + m and is computed once per s.
WeightTable precompute_weights(const KernelSpec& spec, const Domain& dom,
                               const QuadratureRule& quad);

/// Binary cache: header {magic, version, d, N, L, R, kernel_hash, quad
/// sizes} then entries in lexicographic (l,m) order, little-endian
/// complex doubles.
void save_weights(const WeightTable& table, const std::string& path,
                  const QuadratureRule& quad);
WeightTable load_weights(const std::string& path, uint64_t expected_hash);

/// Load the table from cache_dir when a file with a matching parameter
/// hash exists there, otherwise build and save it. An empty cache_dir
/// just builds.
WeightTable cached_weights(const KernelSpec& spec, const Domain& dom,
                           const QuadratureRule& quad,
                           const std::string& cache_dir);

}  // namespace boltspec
