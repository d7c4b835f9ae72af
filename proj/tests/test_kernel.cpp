#include <cmath>
#include <numbers>

#include "boltspec/kernel.hpp"
#include "doctest.h"

using namespace boltspec;

TEST_CASE("Maxwell kernel: constant kinetic part, unit cross section") {
  const KernelSpec spec = KernelSpec::maxwell(6.0);
  CHECK(eval_phi(spec, 0.0) == 1.0);
  CHECK(eval_phi(spec, 3.7) == 1.0);
  // Symmetrized angular part: doubled on the front half, zero behind.
  CHECK(eval_b_sym_base(spec, 0.5) ==
        doctest::Approx(1.0 / std::numbers::pi));
  CHECK(eval_b_sym_base(spec, -0.5) == 0.0);
  // Total cross section: integral over the circle equals one.
  const AssumptionReport rep = check_assumptions(spec, 2);
  CHECK(rep.cutoff_integral == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.positive);
}

TEST_CASE("kinetic form factories validate their exponent ranges") {
  CHECK_NOTHROW(KernelSpec::hard_power(1.0, 4.0));
  CHECK_THROWS_AS(KernelSpec::hard_power(-0.5, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::hard_power(1.5, 4.0), std::invalid_argument);
  CHECK_NOTHROW(KernelSpec::modified_soft(-1.0, 4.0));
  CHECK_THROWS_AS(KernelSpec::modified_soft(0.5, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::modified_soft(-2.5, 4.0, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_phi(KernelSpec::maxwell(4.0), -1.0), std::domain_error);
}

TEST_CASE("hard and modified-soft kinetic parts") {
  const KernelSpec hard = KernelSpec::hard_power(0.5, 4.0);
  CHECK(eval_phi(hard, 4.0) == doctest::Approx(2.0));
  const KernelSpec soft = KernelSpec::modified_soft(-1.0, 4.0);
  CHECK(eval_phi(soft, 1.0) == doctest::Approx(0.5));
  CHECK(eval_phi(soft, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("affine random factor: range check and exact derivatives") {
  CHECK_THROWS_AS(RandomFactor::affine(1.0), std::invalid_argument);
  CHECK_THROWS_AS(RandomFactor::affine(-1.5), std::invalid_argument);
  const RandomFactor rf = RandomFactor::affine(0.5);
  CHECK(rf(0.6) == doctest::Approx(1.3));
  CHECK(rf.derivative(1, 0.3) == 0.5);
  CHECK(rf.derivative(2, 0.3) == 0.0);
  CHECK(rf.degree() == 1);
}

TEST_CASE("custom random factor: finite-difference derivatives") {
  const RandomFactor rf = RandomFactor::make_custom(
      [](double z) { return std::exp(0.3 * z); }, "exp03");
  CHECK(rf.derivative(1, 0.2) ==
        doctest::Approx(0.3 * std::exp(0.06)).epsilon(1e-7));
  CHECK(rf.derivative(2, 0.2) ==
        doctest::Approx(0.09 * std::exp(0.06)).epsilon(1e-5));
  CHECK(rf.degree() == -1);
  CHECK_THROWS_AS(rf.derivative(5, 0.0), std::invalid_argument);
}

TEST_CASE("z-derivative bound reflects the random factor") {
  const KernelSpec flat = KernelSpec::maxwell(4.0);
  const KernelSpec wobbly =
      KernelSpec::maxwell(4.0, RandomFactor::affine(0.9));
  const AssumptionReport a = check_assumptions(flat, 1, 64);
  const AssumptionReport b = check_assumptions(wobbly, 1, 64);
  CHECK(b.C_b > a.C_b);
  CHECK(b.positive);  // 1 - 0.9 > 0 on [-1,1]
}

TEST_CASE("parameter hash separates configurations") {
  const Domain dom = Domain::from_support(2, 3.0, 4);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const uint64_t h1 = KernelSpec::maxwell(dom.R).hash(dom, quad);
  const uint64_t h2 = KernelSpec::maxwell(dom.R).hash(dom, quad);
  CHECK(h1 == h2);
  CHECK(KernelSpec::hard_power(0.5, dom.R).hash(dom, quad) != h1);
  const Domain dom2 = Domain::from_support(2, 3.0, 5);
  CHECK(KernelSpec::maxwell(dom.R).hash(dom2, QuadratureRule::make(dom2)) !=
        h1);
}

TEST_CASE("gain-bound constant is positive and scales with the kernel") {
  const double c1 = bilinear_bound_constant(KernelSpec::maxwell(4.0));
  const double c2 = bilinear_bound_constant(
      KernelSpec::maxwell(4.0, RandomFactor::affine(0.5)));
  CHECK(c1 > 0.0);
  CHECK(c2 == doctest::Approx(1.5 * c1).epsilon(1e-10));
}
