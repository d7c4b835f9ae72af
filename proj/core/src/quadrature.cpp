#include "boltspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boltspec {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n,
                                                                   double a,
                                                                   double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: requires a < b");

  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-node initial guess, Newton iteration on P_n.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  // Map [-1,1] -> [a,b].
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = xm + xl * x[i];
    w[i] *= xl;
  }
  return {x, w};
}

std::pair<std::vector<double>, double> uniform_circle(int n_theta) {
  if (n_theta < 4) throw std::invalid_argument("uniform_circle: n_theta >= 4");
  std::vector<double> angles(n_theta);
  for (int j = 0; j < n_theta; ++j)
    angles[j] = 2.0 * std::numbers::pi * j / n_theta;
  return {angles, 2.0 * std::numbers::pi / n_theta};
}

QuadratureRule QuadratureRule::make(const Domain& dom, int K, int n_r,
                                    int n_theta, int n_sigma, int n_z,
                                    int grid_M) {
  QuadratureRule q;
  // The weight integrands oscillate with total phase up to
  // osc = pi*sqrt(2)*N*R/L per dimension, so the defaults scale with it.
  // Measured convergence thresholds (worst extreme-mode entries): radial
  // ~0.8*osc, uniform circle ~2*osc, sigma ~1.1*osc; margins on top.
  const double osc =
      std::numbers::pi * std::sqrt(2.0) * dom.N * dom.R / dom.L;
  q.n_r = n_r > 0 ? n_r : std::max(24, static_cast<int>(0.8 * osc) + 10);
  q.n_theta =
      n_theta > 0 ? n_theta : std::max(32, static_cast<int>(2.0 * osc) + 16);
  q.n_sigma =
      n_sigma > 0 ? n_sigma : std::max(32, static_cast<int>(1.1 * osc) + 10);
  q.n_z = n_z > 0 ? n_z : 2 * K + 2;
  q.grid_M = grid_M > 0 ? grid_M : 4 * (2 * dom.N + 1);

  auto [rn, rw] = gauss_legendre(q.n_r, 0.0, dom.R);
  for (int i = 0; i < q.n_r; ++i) rw[i] *= rn[i];  // polar Jacobian, d=2
  q.radial_nodes = std::move(rn);
  q.radial_weights = std::move(rw);

  auto [tn, tw] = uniform_circle(q.n_theta);
  q.theta_nodes = std::move(tn);
  q.theta_weight = tw;

  auto [sn, sw] =
      gauss_legendre(q.n_sigma, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  q.sigma_nodes = std::move(sn);
  q.sigma_weights = std::move(sw);

  auto [zn, zw] = gauss_legendre(q.n_z, -1.0, 1.0);
  for (auto& w : zw) w *= 0.5;  // uniform density on [-1,1]
  q.z_nodes = std::move(zn);
  q.z_weights = std::move(zw);
  return q;
}

}  // namespace boltspec
