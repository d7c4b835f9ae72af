#include <cmath>
#include <numbers>

#include "boltspec/oracle.hpp"
#include "doctest.h"

using namespace boltspec;

TEST_CASE("reference profile: shape, positivity, invariants") {
  const BkwParams p{2.0};

  SUBCASE("internal width parameter") {
    CHECK(p.width(0.0) ==
          doctest::Approx(1.0 - 0.5 * std::exp(-0.25)).epsilon(1e-15));
    CHECK(p.width(1e6) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("strict positivity inside the admissible range") {
    for (double t : {0.0, 0.5, 2.0, 10.0})
      for (double v1 : {0.0, 0.7, 1.9, 3.4, 5.0})
        for (double v2 : {0.0, 1.3, 2.6, 4.8})
          CHECK(bkw(t, v1, v2, p) > 0.0);
  }

  SUBCASE("mass and energy are constant in time") {
    // Quadrature over a box that captures the Gaussian tails.
    const double L = 9.0;
    const int M = 360;
    const double h = 2.0 * L / M;
    auto moments = [&](double t) {
      double mass = 0.0, energy = 0.0;
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
          const double v1 = -L + (i + 0.5) * h, v2 = -L + (j + 0.5) * h;
          const double f = bkw(t, v1, v2, p);
          mass += f;
          energy += (v1 * v1 + v2 * v2) * f;
        }
      return std::array<double, 2>{mass * h * h, energy * h * h};
    };
    const auto m0 = moments(0.0);
    CHECK(m0[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m0[1] == doctest::Approx(2.0).epsilon(1e-8));
    for (double t : {0.5, 2.0, 6.0}) {
      const auto mt = moments(t);
      CHECK(std::abs(mt[0] - m0[0]) < 1e-10);
      CHECK(std::abs(mt[1] - m0[1]) < 1e-8);
    }
  }
}

TEST_CASE("direct operator annihilates constants") {
  const Domain dom = Domain::from_support(2, 3.0, 3);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  auto cfun = [](double, double) { return 0.4; };
  const std::vector<std::array<double, 2>> pts = {
      {0.0, 0.0}, {1.1, -2.0}, {-3.0, 0.5}};
  const auto vals = direct_qr(cfun, cfun, spec, 0.0, dom, pts, quad);
  for (double v : vals) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("pointwise and coefficient-space direct routes agree") {
  const Domain dom = Domain::from_support(2, 3.0, 3);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const double L = dom.L;
  const double pi = std::numbers::pi;
  auto f0 = [L, pi](double v1, double v2) {
    return 0.5 + 0.3 * std::cos(pi * (v1 + 2.0 * v2) / L) +
           0.15 * std::sin(pi * (2.0 * v1 - v2) / L);
  };
  const SpectralField f = project_initial(f0, dom, quad.grid_M);

  const int M = 12;
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      pts.push_back({-L + 2.0 * L * i / M, -L + 2.0 * L * j / M});
  const auto pointwise = direct_qr(f0, f0, spec, 0.0, dom, pts, quad);
  const auto spectral = direct_qr_spectral(f, f, spec, 0.0, M, quad);
  REQUIRE(spectral.size() == pointwise.size());
  double scale = 0.0;
  for (double v : pointwise) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < pts.size(); ++i)
    CHECK(std::abs(pointwise[i] - spectral[i]) < 1e-9 * std::max(1.0, scale));
}

TEST_CASE("random factor scales the direct operator linearly") {
  const Domain dom = Domain::from_support(2, 3.0, 3);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const KernelSpec spec = KernelSpec::maxwell(dom.R, RandomFactor::affine(0.5));
  const double L = dom.L;
  auto f0 = [L](double v1, double v2) {
    return 0.5 + 0.3 * std::cos(std::numbers::pi * (v1 + v2) / L);
  };
  const std::vector<std::array<double, 2>> pts = {{0.7, -1.3}, {2.0, 2.0}};
  const auto at_half = direct_qr(f0, f0, spec, -1.0, dom, pts, quad);  // 0.5
  const auto at_one = direct_qr(f0, f0, spec, 0.0, dom, pts, quad);    // 1.0
  for (size_t i = 0; i < pts.size(); ++i)
    CHECK(at_half[i] == doctest::Approx(0.5 * at_one[i]).epsilon(1e-12));
}

TEST_CASE("reference solution residual gate") {
  const Domain dom = Domain::from_support(2, 6.0, 6);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const BkwParams p{2.0};

  SUBCASE("the exact profile passes") {
    const KernelSpec spec = KernelSpec::maxwell(dom.R);
    const BkwVerification v = verify_bkw(p, spec, dom, {0.0, 1.0}, quad);
    CHECK(v.max_residual < 1e-4);
    CHECK(v.mass_drift < 1e-10);
    CHECK(v.energy_drift < 1e-8);
    CHECK(v.min_value > 0.0);
  }

  SUBCASE("a doubled cross section is caught") {
    const KernelSpec wrong = KernelSpec::maxwell(
        dom.R, RandomFactor::make_custom([](double) { return 2.0; }, "x2"));
    const BkwVerification v = verify_bkw(p, wrong, dom, {0.0}, quad);
    CHECK(v.max_residual > 1e-3);
  }
}
