#include <cmath>
#include <numbers>

#include "boltspec/run_config.hpp"
#include "doctest.h"

using namespace boltspec;

TEST_CASE("JSON parsing and defaults") {
  const RunConfig c = RunConfig::from_json_text(R"({
    "domain": {"S": 3.0, "N": 6},
    "kernel": {"kinetic": "maxwell"},
    "solver": {"dt": 0.02, "t_final": 0.4}
  })");
  CHECK(c.d == 2);
  CHECK(c.N == 6);
  CHECK(c.R == doctest::Approx(6.0));
  CHECK(c.L >= (3.0 + std::sqrt(2.0)) / 2.0 * 3.0 - 1e-12);
  CHECK(c.solver.dt == 0.02);
  CHECK(c.solver.t_final == 0.4);
  CHECK(c.kinetic == "maxwell");
  CHECK(c.K == 0);

  const Domain dom = c.make_domain();
  CHECK(dom.N == 6);
  CHECK(dom.L == c.L);
  const KernelSpec spec = c.make_kernel();
  CHECK(spec.R == c.R);
}

TEST_CASE("explicit box geometry and quadrature overrides") {
  const RunConfig c = RunConfig::from_json_text(R"({
    "domain": {"L": 10.0, "R": 8.0, "N": 4},
    "quad": {"n_r": 40, "n_theta": 50, "grid_M": 30}
  })");
  const QuadratureRule q = c.make_quadrature(c.make_domain());
  CHECK(q.radial_nodes.size() == 40);
  CHECK(q.theta_nodes.size() == 50);
  CHECK(q.grid_M == 30);
}

TEST_CASE("uncertainty block and the random kernel factor") {
  const RunConfig c = RunConfig::from_json_text(R"({
    "domain": {"S": 3.0, "N": 4},
    "kernel": {"lambda": {"type": "affine", "eps": 0.4}},
    "uq": {"K": 3, "mode": "collocation", "n_collocation": 5}
  })");
  CHECK(c.K == 3);
  CHECK(c.uq_mode == UqMode::Collocation);
  CHECK(c.n_collocation == 5);
  CHECK(c.lambda(0.5) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(c.make_kernel().random_factor.eps == 0.4);
}

TEST_CASE("initial-condition selection") {
  SUBCASE("default reference profile") {
    const RunConfig c = RunConfig::from_json_text(R"({
      "domain": {"S": 3.0, "N": 4}
    })");
    CHECK(c.initial == InitialKind::Bkw);
    CHECK(c.bkw_t0 == 2.0);
    CHECK(c.initial_fn()(0.3, -0.2) > 0.0);
  }

  SUBCASE("anisotropic Gaussian with unit mass normalization") {
    const RunConfig c = RunConfig::from_json_text(R"({
      "domain": {"S": 3.0, "N": 4},
      "initial": {"type": "gaussian", "T1": 0.4, "T2": 1.0}
    })");
    CHECK(c.initial == InitialKind::Gaussian);
    auto f = c.initial_fn();
    const double peak = 1.0 / (2.0 * std::numbers::pi * std::sqrt(0.4));
    CHECK(f(0.0, 0.0) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(f(1.0, 0.0) ==
          doctest::Approx(peak * std::exp(-0.5 / 0.4)).epsilon(1e-12));
  }

  SUBCASE("harmonic perturbation integrates to unit mass") {
    const RunConfig c = RunConfig::from_json_text(R"({
      "domain": {"S": 3.0, "N": 4},
      "initial": {"type": "harmonic", "amplitude": 0.5, "k1": 1, "k2": 0}
    })");
    auto f = c.initial_fn();
    const int M = 200;
    double mass = 0.0;
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        mass += f(-c.L + 2.0 * c.L * i / M, -c.L + 2.0 * c.L * j / M);
    mass *= (2.0 * c.L / M) * (2.0 * c.L / M);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rejected configurations") {
  auto rejects = [](const char* text) {
    CHECK_THROWS_AS(RunConfig::from_json_text(text), ConfigError);
  };

  // box smaller than the truncation radius
  rejects(R"({"domain": {"L": 5.0, "R": 8.0, "N": 4}})");
  // support radius with an undersized box
  rejects(R"({"domain": {"S": 3.0, "L": 4.0, "N": 4}})");
  // affine factor that can change sign
  rejects(R"({"domain": {"S": 3.0, "N": 4},
              "kernel": {"lambda": {"type": "affine", "eps": 1.3}}})");
  // unknown kinetic form
  rejects(R"({"domain": {"S": 3.0, "N": 4}, "kernel": {"kinetic": "bogus"}})");
  // three dimensions are out of scope
  rejects(R"({"domain": {"S": 3.0, "N": 4, "d": 3}})");
  // nonpositive solver step
  rejects(R"({"domain": {"S": 3.0, "N": 4}, "solver": {"dt": -0.1}})");
  // malformed JSON
  rejects("{nope");
}
