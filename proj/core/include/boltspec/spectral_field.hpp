#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "boltspec/domain.hpp"
#include "boltspec/quadrature.hpp"

namespace boltspec {

using cplx = std::complex<double>;

/// Multi-index lattice {-N,...,N}^d in lexicographic order: for d=2 the
/// index (n1,n2) sits at (n1+N)*(2N+1) + (n2+N).
std::vector<std::array<int, 2>> mode_lattice(const Domain& dom);

/// Complex Fourier coefficients of a truncated expansion
/// f_N(v) = sum_n c_n exp(i pi n.v / L) on the box lattice.
struct SpectralField {
  Domain domain;
  std::vector<cplx> coeffs;  // lexicographic over the lattice
  bool real_valued = false;

  SpectralField() = default;
  explicit SpectralField(const Domain& dom, bool real = false)
      : domain(dom), coeffs(dom.lattice_size()), real_valued(real) {}

  int side() const { return domain.modes_per_dim(); }
  int index(int n1, int n2) const {
    return (n1 + domain.N) * side() + (n2 + domain.N);
  }
  cplx& at(int n1, int n2) { return coeffs[index(n1, n2)]; }
  const cplx& at(int n1, int n2) const { return coeffs[index(n1, n2)]; }

  /// Mass functional (2L)^d * c_0.
  double mass() const { return domain.cell_volume() * at(0, 0).real(); }

  /// Max |c_n - conj(c_{-n})| over the lattice.
  double hermitian_defect() const;

  /// Truncate (or zero-pad) onto a lattice with N' modes per direction.
  SpectralField resampled(int N_target) const;
};

/// Project a pointwise initial condition onto the mode lattice by the
/// trapezoid rule on the uniform M^d grid: c_n = (2L)^{-d} sum f(v_j) w_j
/// exp(-i pi n.v_j/L). Exact for band-limited data once M is past the
/// anti-aliasing bound.
SpectralField project_initial(const std::function<double(double, double)>& f0,
                              const Domain& dom, int grid_M);

/// Truncated Fourier sum at arbitrary points.
std::vector<cplx> evaluate_field(const SpectralField& f,
                                 const std::vector<std::array<double, 2>>& pts);

/// Separable evaluation on the uniform M x M grid (row-major, v1 slow).
std::vector<cplx> evaluate_on_grid(const SpectralField& f, int M);

struct FieldNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double neg_l2 = 0.0;
  double neg_l1 = 0.0;
};

/// L2/H1 via Parseval with the (2L)^{d/2} volume factor; L1 and the
/// negative-part norms via the oversampled grid (the clipped field is not
/// band-limited).
FieldNorms norms(const SpectralField& f, int grid_M = 0);

/// Sobolev seminorm-sum H^k from coefficients.
double hk_norm(const SpectralField& f, int k);

double l2_norm(const SpectralField& f);

/// L2 distance on the common lattice; the smaller field is zero-padded.
double l2_distance(const SpectralField& a, const SpectralField& b);

}  // namespace boltspec
