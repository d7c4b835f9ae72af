#pragma once

#include <utility>
#include <vector>

#include "boltspec/domain.hpp"

namespace boltspec {

/// Gauss-Legendre rule with n points on [a,b]; exact for polynomials of
/// degree <= 2n-1. Nodes ascending, weights positive.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n,
                                                                   double a,
                                                                   double b);

/// Uniform angles 2*pi*j/n on the circle with common weight 2*pi/n.
/// Spectrally accurate for smooth periodic integrands.
std::pair<std::vector<double>, double> uniform_circle(int n_theta);

/// The fixed integration rules shared by weight precomputation,
/// projections, oracles and the gPC tensor.
///
/// radial_*: Gauss-Legendre on [0,R] with the polar Jacobian r folded
///   into the weights (d=2), so sums against radial_weights integrate
///   over the ball in polar form.
/// theta_*: uniform angles for the q-hat direction (periodic, smooth).
/// sigma_*: Gauss-Legendre on the relative angle [-pi/2, pi/2]; the
///   symmetrized angular kernel vanishes outside that half-circle, and
///   the indicator would destroy a trapezoid rule's accuracy, so the
///   sigma rule integrates over the support only.
/// z_*: Gauss-Legendre on [-1,1] with the uniform density 1/2 folded in
///   (weights sum to 1).
/// grid_M: points per dimension of the uniform tensor grid on [-L,L]^d
///   used for projections and grid-quadrature norms; trapezoid weight
///   (2L/M)^d.
struct QuadratureRule {
  std::vector<double> radial_nodes, radial_weights;
  std::vector<double> theta_nodes;
  double theta_weight = 0.0;
  std::vector<double> sigma_nodes, sigma_weights;
  std::vector<double> z_nodes, z_weights;
  int grid_M = 0;
  int n_r = 0, n_theta = 0, n_sigma = 0, n_z = 0;

  static QuadratureRule make(const Domain& dom, int K = 0, int n_r = 0,
                             int n_theta = 0, int n_sigma = 0, int n_z = 0,
                             int grid_M = 0);
};

}  // namespace boltspec
