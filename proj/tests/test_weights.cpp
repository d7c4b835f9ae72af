#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "boltspec/weights.hpp"
#include "doctest.h"

using namespace boltspec;

namespace {

// Independent brute-force evaluation of one weight entry: plain nested
// loops over a polar q grid and the sigma angle, no shared code with the
// production sweep.
cplx brute_entry(const KernelSpec& spec, const Domain& dom, int l1, int l2,
                 int m1, int m2, int n) {
  const double pi = std::numbers::pi;
  auto [rn, rw] = gauss_legendre(n, 0.0, dom.R);
  auto [sn, sw] = gauss_legendre(n, -0.5 * pi, 0.5 * pi);
  cplx acc = 0.0;
  for (int ir = 0; ir < n; ++ir) {
    const double r = rn[ir];
    for (int it = 0; it < n; ++it) {
      const double phi = 2.0 * pi * it / n;
      const double q1 = r * std::cos(phi), q2 = r * std::sin(phi);
      cplx inner = 0.0;
      for (int iu = 0; iu < n; ++iu) {
        const double u = sn[iu];
        const double s1 = r * std::cos(phi + u), s2 = r * std::sin(phi + u);
        const double phase = 0.5 * pi / dom.L *
                             ((l1 + m1) * (q1 - s1) + (l2 + m2) * (q2 - s2));
        inner += sw[iu] * eval_b_sym_base(spec, std::cos(u)) *
                 (std::exp(cplx(0.0, phase)) - 1.0);
      }
      acc += rw[ir] * r * (2.0 * pi / n) * eval_phi(spec, r) *
             std::exp(cplx(0.0, -pi / dom.L * (m1 * q1 + m2 * q2))) * inner;
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("weight table matches brute-force entries") {
  const Domain dom = Domain::from_support(2, 3.0, 3);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const WeightTable G = precompute_weights(spec, dom, quad);

  const int checks[][4] = {{0, 0, 1, 0},  {1, 2, -1, 1}, {3, -3, 2, 2},
                           {-2, 1, 3, 0}, {0, 3, 0, -2}, {2, 2, -3, -3}};
  for (const auto& c : checks) {
    const cplx ref = brute_entry(spec, dom, c[0], c[1], c[2], c[3], 64);
    const cplx got = G.at(G.mode_index(c[0], c[1]), G.mode_index(c[2], c[3]));
    CAPTURE(c[0]);
    CAPTURE(c[1]);
    CHECK(std::abs(ref - got) < 1e-9);
  }
}

TEST_CASE("weight table identities: vanishing diagonal, conjugation") {
  const Domain dom = Domain::from_support(2, 3.0, 3);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const WeightTable G = precompute_weights(spec, dom, QuadratureRule::make(dom));
  CHECK(G.diagonal_residual() == 0.0);
  CHECK(G.conjugation_residual() == 0.0);
  CHECK(G.quad_tol < 1e-7);
}

TEST_CASE("hard-power kernel table also passes the refinement gate") {
  const Domain dom = Domain::from_support(2, 3.0, 2);
  const KernelSpec spec = KernelSpec::hard_power(0.5, dom.R);
  const WeightTable G = precompute_weights(spec, dom, QuadratureRule::make(dom));
  CHECK(G.diagonal_residual() == 0.0);
  const cplx ref = brute_entry(spec, dom, 1, 1, -1, 2, 80);
  CHECK(std::abs(ref - G.at(G.mode_index(1, 1), G.mode_index(-1, 2))) < 1e-6);
}

TEST_CASE("binary cache round trip and hash gating") {
  namespace fs = std::filesystem;
  const Domain dom = Domain::from_support(2, 3.0, 2);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const QuadratureRule quad = QuadratureRule::make(dom);
  const WeightTable G = precompute_weights(spec, dom, quad);
  const std::string path =
      (fs::temp_directory_path() / "boltspec_test_weights.bin").string();
  save_weights(G, path, quad);

  const WeightTable G2 = load_weights(path, G.kernel_hash);
  REQUIRE(G2.entries.size() == G.entries.size());
  for (size_t i = 0; i < G.entries.size(); ++i)
    CHECK(G2.entries[i] == G.entries[i]);
  CHECK(G2.domain.same_as(G.domain));
  CHECK(G2.quad_tol == G.quad_tol);

  CHECK_THROWS_AS(load_weights(path, G.kernel_hash + 1), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("cached_weights builds once and reloads after") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "boltspec_test_cache";
  fs::remove_all(dir);
  const Domain dom = Domain::from_support(2, 3.0, 2);
  const KernelSpec spec = KernelSpec::maxwell(dom.R);
  const QuadratureRule quad = QuadratureRule::make(dom);

  const WeightTable a = cached_weights(spec, dom, quad, dir.string());
  REQUIRE(fs::exists(dir));
  size_t files = 0;
  for (auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  const WeightTable b = cached_weights(spec, dom, quad, dir.string());
  for (size_t i = 0; i < a.entries.size(); ++i)
    CHECK(a.entries[i] == b.entries[i]);
  fs::remove_all(dir);
}

TEST_CASE("precompute rejects unsupported inputs") {
  const Domain d3(3, 3.0, 2.0, 2);
  CHECK_THROWS_AS(
      precompute_weights(KernelSpec::maxwell(2.0), d3,
                         QuadratureRule::make(Domain(2, 3.0, 2.0, 2))),
      std::invalid_argument);
}
