#pragma once

#include <cmath>
#include <stdexcept>

namespace boltspec {

/// Truncation geometry of the velocity discretization: periodic box
/// [-L,L]^d, collision truncation radius R, and N Fourier modes per
/// signed direction (mode lattice {-N,...,N}^d).
struct Domain {
  int d = 2;
  double L = 0.0;
  double R = 0.0;
  int N = 0;

  Domain() = default;
  Domain(int d_, double L_, double R_, int N_) : d(d_), L(L_), R(R_), N(N_) {
    if (d != 2 && d != 3)
      throw std::invalid_argument("Domain: only d=2 and d=3 are supported");
    if (!(L >= R && R > 0.0))
      throw std::invalid_argument("Domain: requires L >= R > 0");
    if (N < 0) throw std::invalid_argument("Domain: N must be nonnegative");
  }

  /// Anti-aliasing construction from a support radius S: R = 2S and
  /// L at least (3+sqrt(2))/2 * S. A larger L may be passed explicitly.
  static Domain from_support(int d, double S, int N, double L = 0.0) {
    if (S <= 0.0) throw std::invalid_argument("Domain: S must be positive");
    const double L_min = 0.5 * (3.0 + std::sqrt(2.0)) * S;
    double L_eff = (L == 0.0) ? L_min : L;
    if (L_eff < L_min * (1.0 - 1e-12))
      throw std::invalid_argument("Domain: L < (3+sqrt(2))/2 * S");
    return Domain(d, L_eff, 2.0 * S, N);
  }

  int modes_per_dim() const { return 2 * N + 1; }
  int lattice_size() const {
    int n = 1;
    for (int i = 0; i < d; ++i) n *= modes_per_dim();
    return n;
  }
  double cell_volume() const { return std::pow(2.0 * L, d); }

  bool same_as(const Domain& o) const {
    return d == o.d && N == o.N && L == o.L && R == o.R;
  }
};

}  // namespace boltspec
