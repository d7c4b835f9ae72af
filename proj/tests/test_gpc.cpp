#include <cmath>
#include <random>

#include "boltspec/gpc.hpp"
#include "boltspec/weights.hpp"
#include "doctest.h"

using namespace boltspec;

TEST_CASE("normalized Legendre basis values") {
  CHECK(legendre_psi(0, -0.3) == 1.0);
  CHECK(legendre_psi(0, 0.8) == 1.0);
  CHECK(legendre_psi(1, 0.5) == doctest::Approx(std::sqrt(3.0) * 0.5));
  // P2(z) = (3z^2 - 1)/2
  CHECK(legendre_psi(2, 0.5) ==
        doctest::Approx(std::sqrt(5.0) * 0.5 * (3.0 * 0.25 - 1.0)));
  CHECK_THROWS_AS(legendre_psi(-1, 0.0), std::invalid_argument);
}

TEST_CASE("basis orthonormality under the uniform density") {
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      auto [zn, zw] = gauss_legendre(10, -1.0, 1.0);
      double s = 0.0;
      for (size_t q = 0; q < zn.size(); ++q)
        s += 0.5 * zw[q] * legendre_psi(i, zn[q]) * legendre_psi(j, zn[q]);
      CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
    }
}

TEST_CASE("triple-product tensor: identities and symmetry") {
  const Domain dom = Domain::from_support(2, 3.0, 2);
  const QuadratureRule quad = QuadratureRule::make(dom, 3);

  SUBCASE("constant factor gives the orthonormality slice") {
    const STensor S = build_s_tensor(RandomFactor::constant(), 3, quad);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        CHECK(std::abs(S(0, i, j) - (i == j ? 1.0 : 0.0)) < 1e-14);
  }

  SUBCASE("affine factor: first moment entry") {
    const double eps = 0.37;
    const STensor S = build_s_tensor(RandomFactor::affine(eps), 3, quad);
    CHECK(S(0, 0, 1) == doctest::Approx(eps / std::sqrt(3.0)).epsilon(1e-13));
  }

  SUBCASE("quadratic custom factor: mean value entry") {
    const RandomFactor z2 =
        RandomFactor::make_custom([](double z) { return z * z; }, "z^2");
    const QuadratureRule q6 =
        QuadratureRule::make(dom, 2, 0, 0, 0, 6);  // degree 3K+2 = 8 < 2*6
    const STensor S = build_s_tensor(z2, 2, q6);
    CHECK(S(0, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }

  SUBCASE("full permutation symmetry") {
    const STensor S = build_s_tensor(RandomFactor::affine(0.6), 4, quad);
    for (int k = 0; k <= 4; ++k)
      for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
          CHECK(S(k, i, j) == S(k, j, i));
          CHECK(S(k, i, j) == S(i, k, j));
          CHECK(S(k, i, j) == S(j, i, k));
        }
  }
}

TEST_CASE("chaos collision term") {
  const Domain dom = Domain::from_support(2, 3.0, 2);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const QuadratureRule quad = QuadratureRule::make(dom, 2);
  const WeightTable G = precompute_weights(spec, dom, quad);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rnd = [&](SpectralField& f) {
    for (int n1 = 0; n1 <= dom.N; ++n1)
      for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
        if (n1 == 0 && n2 < 0) continue;
        const cplx c(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
        f.at(n1, n2) = c;
        f.at(-n1, -n2) = std::conj(c);
      }
  };

  SUBCASE("order zero reduces to the deterministic term") {
    const STensor S = build_s_tensor(RandomFactor::constant(), 0, quad);
    GpcField F(dom, 0);
    rnd(F.modes[0]);
    const GpcField out = gpc_collision_rhs(G, S, F);
    const SpectralField q = collision_rhs(G, F.modes[0]);
    for (size_t i = 0; i < q.coeffs.size(); ++i)
      CHECK(std::abs(out.modes[0].coeffs[i] - q.coeffs[i]) < 1e-13);
  }

  SUBCASE("only mode zero populated, constant factor") {
    const STensor S = build_s_tensor(RandomFactor::constant(), 2, quad);
    GpcField F(dom, 2);
    rnd(F.modes[0]);
    const GpcField out = gpc_collision_rhs(G, S, F);
    const SpectralField q = collision_rhs(G, F.modes[0]);
    // Odd-symmetric z integrands are only round-off zeros in the tensor,
    // so higher coefficients vanish to round-off rather than exactly.
    for (size_t i = 0; i < q.coeffs.size(); ++i) {
      CHECK(std::abs(out.modes[0].coeffs[i] - q.coeffs[i]) < 1e-13);
      CHECK(std::abs(out.modes[1].coeffs[i]) < 1e-13);
      CHECK(std::abs(out.modes[2].coeffs[i]) < 1e-13);
    }
  }

  SUBCASE("every chaos coefficient conserves mass") {
    const STensor S = build_s_tensor(RandomFactor::affine(0.5), 3, quad);
    GpcField F(dom, 3);
    for (auto& m : F.modes) rnd(m);
    const GpcField out = gpc_collision_rhs(G, S, F);
    for (const auto& m : out.modes) CHECK(std::abs(m.at(0, 0)) < 1e-12);
  }

  SUBCASE("order mismatch is rejected") {
    const STensor S = build_s_tensor(RandomFactor::constant(), 2, quad);
    GpcField F(dom, 3);
    CHECK_THROWS_AS(gpc_collision_rhs(G, S, F), std::invalid_argument);
  }
}

TEST_CASE("reconstruction") {
  const Domain dom = Domain::from_support(2, 3.0, 2);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  GpcField F(dom, 3);
  for (auto& m : F.modes)
    for (int n1 = 0; n1 <= dom.N; ++n1)
      for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
        if (n1 == 0 && n2 < 0) continue;
        const cplx c(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
        m.at(n1, n2) = c;
        m.at(-n1, -n2) = std::conj(c);
      }

  SUBCASE("order zero is the identity") {
    GpcField F0(dom, 0);
    F0.modes[0] = F.modes[0];
    const SpectralField r = reconstruct(F0, 0.77);
    for (size_t i = 0; i < r.coeffs.size(); ++i)
      CHECK(r.coeffs[i] == F0.modes[0].coeffs[i]);
  }

  SUBCASE("odd basis functions vanish at the origin") {
    GpcField F1(dom, 1);
    F1.modes[0] = F.modes[0];
    F1.modes[1] = F.modes[0];
    const SpectralField r = reconstruct(F1, 0.0);
    for (size_t i = 0; i < r.coeffs.size(); ++i)
      CHECK(std::abs(r.coeffs[i] - F.modes[0].coeffs[i]) < 1e-15);
  }

  SUBCASE("quadrature projection round trip recovers the modes") {
    auto [zn, zw] = gauss_legendre(6, -1.0, 1.0);
    for (int k = 0; k <= 3; ++k) {
      SpectralField acc(dom, true);
      for (size_t q = 0; q < zn.size(); ++q) {
        const SpectralField r = reconstruct(F, zn[q]);
        const double w = 0.5 * zw[q] * legendre_psi(k, zn[q]);
        for (size_t i = 0; i < acc.coeffs.size(); ++i)
          acc.coeffs[i] += w * r.coeffs[i];
      }
      for (size_t i = 0; i < acc.coeffs.size(); ++i)
        CHECK(std::abs(acc.coeffs[i] - F.modes[k].coeffs[i]) < 1e-12);
    }
  }

  SUBCASE("reconstruction of Hermitian modes is real on the grid") {
    const SpectralField r = reconstruct(F, 0.41);
    CHECK(r.hermitian_defect() < 1e-12);
  }

  SUBCASE("z outside the interval is rejected") {
    CHECK_THROWS_AS(reconstruct(F, 1.5), std::domain_error);
  }
}

TEST_CASE("statistics: mean, variance, and the sampling cross-check") {
  const Domain dom = Domain::from_support(2, 3.0, 2);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  GpcField F(dom, 3);
  for (auto& m : F.modes)
    for (int n1 = 0; n1 <= dom.N; ++n1)
      for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
        if (n1 == 0 && n2 < 0) continue;
        const cplx c(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
        m.at(n1, n2) = c;
        m.at(-n1, -n2) = std::conj(c);
      }

  SUBCASE("order zero has no variance") {
    GpcField F0(dom, 0);
    F0.modes[0] = F.modes[0];
    const GpcStatistics st = gpc_statistics(F0);
    for (double v : st.variance_field) CHECK(v == 0.0);
  }

  SUBCASE("variance equals the quadrature second moment minus mean^2") {
    const int M = 16;
    const GpcStatistics st = gpc_statistics(F, M);
    auto [zn, zw] = gauss_legendre(16, -1.0, 1.0);
    const auto mean_vals = evaluate_on_grid(st.mean, M);
    for (size_t idx : {size_t(0), size_t(37), size_t(200)}) {
      double m2 = 0.0;
      for (size_t q = 0; q < zn.size(); ++q) {
        const auto vals = evaluate_on_grid(reconstruct(F, zn[q]), M);
        m2 += 0.5 * zw[q] * vals[idx].real() * vals[idx].real();
      }
      const double var = m2 - mean_vals[idx].real() * mean_vals[idx].real();
      CHECK(st.variance_field[idx] == doctest::Approx(var).epsilon(1e-10));
    }
  }
}
