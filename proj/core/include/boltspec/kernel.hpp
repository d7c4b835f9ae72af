#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "boltspec/domain.hpp"
#include "boltspec/quadrature.hpp"

namespace boltspec {

enum class KineticForm { HardPower, ModifiedSoft };

/// Multiplicative random factor lambda(z) of the separable kernel
/// b(cos theta, z) = b0_sym(cos theta) * lambda(z).
struct RandomFactor {
  enum class Type { Constant, Affine, Custom };
  Type type = Type::Constant;
  double eps = 0.0;                          // Affine: lambda(z) = 1 + eps*z
  std::function<double(double)> custom;      // Custom: smooth on [-1,1]
  std::string tag;                           // identifies Custom in hashes

  static RandomFactor constant() { return RandomFactor{}; }
  static RandomFactor affine(double eps);
  static RandomFactor make_custom(std::function<double(double)> f,
                                  std::string tag);

  double operator()(double z) const;
  /// k-th z-derivative; exact for Constant/Affine, central finite
  /// differences with h=1e-4 for Custom.
  double derivative(int k, double z) const;
  int degree() const;  // polynomial degree, or -1 for Custom
};

/// Collision kernel B(|q|, cos theta, z) = Phi(|q|) b0(cos theta) lambda(z).
/// The angular part is used in its symmetrized, cutoff form: vanishing for
/// cos theta < 0, doubled on the front half-circle.
struct KernelSpec {
  KineticForm kinetic_form = KineticForm::HardPower;
  double gamma = 0.0;
  std::function<double(double)> angular_base;  // b0(cos theta) >= 0
  std::string angular_tag;
  RandomFactor random_factor;
  bool symmetrized = true;
  double R = 0.0;

  /// Maxwell molecules: Phi == 1, b0 == 1/(2 pi), lambda as given.
  static KernelSpec maxwell(double R, RandomFactor rf = RandomFactor::constant());
  static KernelSpec hard_power(double gamma, double R,
                               RandomFactor rf = RandomFactor::constant());
  static KernelSpec modified_soft(double gamma, double R, int d = 2,
                                  RandomFactor rf = RandomFactor::constant());

  uint64_t hash(const Domain& dom, const QuadratureRule& quad) const;
};

/// Kinetic part Phi(|q|): |q|^gamma (hard) or (1+|q|)^gamma (modified soft).
double eval_phi(const KernelSpec& spec, double q_mag);

/// Symmetrized angular kernel lambda(z) * [b0(c) + b0(-c)] * 1_{c >= 0}.
double eval_b_sym(const KernelSpec& spec, double cos_theta, double z);

/// Symmetrized angular base without the random factor (lambda == 1).
double eval_b_sym_base(const KernelSpec& spec, double cos_theta);

struct AssumptionReport {
  double cutoff_integral = 0.0;  // sphere integral of b_sym at lambda = 1
  double C_b = 0.0;              // sup over samples of |d^k/dz^k b|, k <= r
  bool positive = false;         // min sampled b_sym (front half) > 0
};

/// Numerical check of the kernel assumptions: Grad cutoff, uniform bound on
/// z-derivatives up to order r, strict positivity on the support.
AssumptionReport check_assumptions(const KernelSpec& spec, int r,
                                   int n_samples = 256);

/// Upper bound for the gain-term ratio ||Q(g,f)||_2 / (||g||_1 ||f||_2):
/// (geometry constant)^(1/2) * sup_z |b(.,z)|_{L1(S^1)} * sup_{[0,R]} Phi.
/// The geometry constant absorbs the periodization/change-of-variables
/// factor; it was measured over random field ensembles and frozen with
/// margin.
double bilinear_bound_constant(const KernelSpec& spec);

}  // namespace boltspec
