#include "boltspec/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boltspec {

RandomFactor RandomFactor::affine(double eps) {
  if (!(std::abs(eps) < 1.0))
    throw std::invalid_argument("RandomFactor: affine requires |eps| < 1");
  RandomFactor rf;
  rf.type = Type::Affine;
  rf.eps = eps;
  return rf;
}

RandomFactor RandomFactor::make_custom(std::function<double(double)> f,
                                       std::string tag) {
  RandomFactor rf;
  rf.type = Type::Custom;
  rf.custom = std::move(f);
  rf.tag = std::move(tag);
  return rf;
}

double RandomFactor::operator()(double z) const {
  switch (type) {
    case Type::Constant: return 1.0;
    case Type::Affine: return 1.0 + eps * z;
    case Type::Custom: return custom(z);
  }
  return 1.0;
}

double RandomFactor::derivative(int k, double z) const {
  if (k < 0) throw std::invalid_argument("RandomFactor: derivative order < 0");
  if (k == 0) return (*this)(z);
  switch (type) {
    case Type::Constant: return 0.0;
    case Type::Affine: return k == 1 ? eps : 0.0;
    case Type::Custom: {
      // Central stencils, h = 1e-4; lambda is smooth by assumption.
      const double h = 1e-4;
      if (k == 1) return (custom(z + h) - custom(z - h)) / (2.0 * h);
      if (k == 2)
        return (custom(z + h) - 2.0 * custom(z) + custom(z - h)) / (h * h);
      // Higher orders by recursive differencing of the (k-2)-nd derivative.
      auto dk2 = [&](double y) {
        return (custom(y + h) - 2.0 * custom(y) + custom(y - h)) / (h * h);
      };
      if (k == 3) return (dk2(z + h) - dk2(z - h)) / (2.0 * h);
      if (k == 4) return (dk2(z + h) - 2.0 * dk2(z) + dk2(z - h)) / (h * h);
      throw std::invalid_argument(
          "RandomFactor: finite-difference derivatives supported to order 4");
    }
  }
  return 0.0;
}

int RandomFactor::degree() const {
  switch (type) {
    case Type::Constant: return 0;
    case Type::Affine: return 1;
    case Type::Custom: return -1;
  }
  return 0;
}

static std::function<double(double)> constant_angular(double c) {
  return [c](double) { return c; };
}

KernelSpec KernelSpec::maxwell(double R, RandomFactor rf) {
  KernelSpec s;
  s.kinetic_form = KineticForm::HardPower;
  s.gamma = 0.0;
  s.angular_base = constant_angular(1.0 / (2.0 * std::numbers::pi));
  s.angular_tag = "constant:1/(2pi)";
  s.random_factor = std::move(rf);
  s.R = R;
  return s;
}

KernelSpec KernelSpec::hard_power(double gamma, double R, RandomFactor rf) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("KernelSpec: hard power requires 0<=gamma<=1");
  KernelSpec s = maxwell(R, std::move(rf));
  s.gamma = gamma;
  return s;
}

KernelSpec KernelSpec::modified_soft(double gamma, double R, int d,
                                     RandomFactor rf) {
  if (!(gamma < 0.0 && gamma > -double(d)))
    throw std::invalid_argument(
        "KernelSpec: modified soft requires -d < gamma < 0");
  KernelSpec s = maxwell(R, std::move(rf));
  s.kinetic_form = KineticForm::ModifiedSoft;
  s.gamma = gamma;
  return s;
}

double eval_phi(const KernelSpec& spec, double q_mag) {
  if (q_mag < 0.0) throw std::domain_error("eval_phi: negative |q|");
  switch (spec.kinetic_form) {
    case KineticForm::HardPower:
      return spec.gamma == 0.0 ? 1.0 : std::pow(q_mag, spec.gamma);
    case KineticForm::ModifiedSoft:
      return std::pow(1.0 + q_mag, spec.gamma);
  }
  return 1.0;
}

double eval_b_sym_base(const KernelSpec& spec, double cos_theta) {
  if (cos_theta < 0.0) return 0.0;
  return spec.angular_base(cos_theta) + spec.angular_base(-cos_theta);
}

double eval_b_sym(const KernelSpec& spec, double cos_theta, double z) {
  if (!spec.symmetrized)
    throw std::invalid_argument("eval_b_sym: spec must be symmetrized");
  if (cos_theta < 0.0) return 0.0;
  return spec.random_factor(z) * eval_b_sym_base(spec, cos_theta);
}

AssumptionReport check_assumptions(const KernelSpec& spec, int r,
                                   int n_samples) {
  if (r < 0) throw std::invalid_argument("check_assumptions: r < 0");
  AssumptionReport rep;

  // Cutoff: integral of b_sym over the circle at lambda = 1, via
  // Gauss-Legendre in theta over the supported quarter (counted twice).
  auto [tn, tw] = gauss_legendre(64, 0.0, 0.5 * std::numbers::pi);
  double cut = 0.0;
  for (size_t i = 0; i < tn.size(); ++i)
    cut += tw[i] * eval_b_sym_base(spec, std::cos(tn[i]));
  rep.cutoff_integral = 2.0 * cut;
  if (!std::isfinite(rep.cutoff_integral))
    throw std::runtime_error("check_assumptions: cutoff integral not finite");

  // C_b = sup over sampled (cos theta, z) of |d^k/dz^k b|, k <= r;
  // the separable form factors the sup into b0_sym * lambda derivatives.
  double min_b = std::numeric_limits<double>::infinity();
  double C_b = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double c = double(i) / (n_samples - 1);  // cos theta in [0,1]
    const double bb = eval_b_sym_base(spec, c);
    for (int j = 0; j < n_samples; ++j) {
      const double z = -1.0 + 2.0 * double(j) / (n_samples - 1);
      const double lam = spec.random_factor(z);
      min_b = std::min(min_b, bb * lam);
      for (int k = 0; k <= r; ++k)
        C_b = std::max(C_b, std::abs(bb * spec.random_factor.derivative(k, z)));
    }
  }
  rep.C_b = C_b;
  rep.positive = min_b > 0.0;
  if (!std::isfinite(C_b))
    throw std::runtime_error("check_assumptions: derivative bound not finite");
  return rep;
}

double bilinear_bound_constant(const KernelSpec& spec) {
  // Geometry factor of the gain-term estimate, measured over random
  // coefficient ensembles on the box lattice and frozen with margin.
  constexpr double geometry = 8.0;

  // sup_z of the angular L1 norm: separable, so cutoff integral times
  // the sampled sup of lambda.
  const AssumptionReport rep = check_assumptions(spec, 0);
  double sup_lambda = 0.0;
  for (int j = 0; j <= 256; ++j)
    sup_lambda =
        std::max(sup_lambda, spec.random_factor(-1.0 + 2.0 * j / 256.0));

  double phi_max = 0.0;
  for (int j = 0; j <= 256; ++j)
    phi_max = std::max(phi_max, eval_phi(spec, spec.R * j / 256.0));

  return std::sqrt(geometry) * rep.cutoff_integral * sup_lambda * phi_max;
}

uint64_t KernelSpec::hash(const Domain& dom, const QuadratureRule& quad) const {
  // FNV-1a over the parameters that determine the weight table.
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  auto mix_d = [&](double x) { mix(&x, sizeof x); };
  auto mix_i = [&](int64_t x) { mix(&x, sizeof x); };
  auto mix_s = [&](const std::string& s) { mix(s.data(), s.size()); };
  mix_i(static_cast<int64_t>(kinetic_form));
  mix_d(gamma);
  mix_s(angular_tag);
  mix_i(static_cast<int64_t>(random_factor.type));
  mix_d(random_factor.eps);
  mix_s(random_factor.tag);
  mix_i(dom.d);
  mix_i(dom.N);
  mix_d(dom.L);
  mix_d(dom.R);
  mix_i(quad.n_r);
  mix_i(quad.n_theta);
  mix_i(quad.n_sigma);
  return h;
}

}  // namespace boltspec
