#include "boltspec/spectral_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boltspec {

std::vector<std::array<int, 2>> mode_lattice(const Domain& dom) {
  if (dom.d != 2)
    throw std::invalid_argument("mode_lattice: only d=2 implemented");
  std::vector<std::array<int, 2>> out;
  out.reserve(dom.lattice_size());
  for (int n1 = -dom.N; n1 <= dom.N; ++n1)
    for (int n2 = -dom.N; n2 <= dom.N; ++n2) out.push_back({n1, n2});
  return out;
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int n1 = -domain.N; n1 <= domain.N; ++n1)
    for (int n2 = -domain.N; n2 <= domain.N; ++n2)
      worst = std::max(worst,
                       std::abs(at(n1, n2) - std::conj(at(-n1, -n2))));
  return worst;
}

SpectralField SpectralField::resampled(int N_target) const {
  Domain dt(domain.d, domain.L, domain.R, N_target);
  SpectralField out(dt, real_valued);
  const int Nc = std::min(domain.N, N_target);
  for (int n1 = -Nc; n1 <= Nc; ++n1)
    for (int n2 = -Nc; n2 <= Nc; ++n2) out.at(n1, n2) = at(n1, n2);
  return out;
}

// One-dimensional phase table E[j][n] = exp(-i pi n v_j / L) for the
// uniform grid v_j = -L + 2L j / M.
static std::vector<cplx> phase_table(const Domain& dom, int M, double sign) {
  const int side = dom.modes_per_dim();
  std::vector<cplx> E(static_cast<size_t>(M) * side);
  for (int j = 0; j < M; ++j) {
    const double v = -dom.L + 2.0 * dom.L * j / M;
    for (int n = -dom.N; n <= dom.N; ++n)
      E[static_cast<size_t>(j) * side + (n + dom.N)] =
          std::exp(cplx(0.0, sign * std::numbers::pi * n * v / dom.L));
  }
  return E;
}

SpectralField project_initial(const std::function<double(double, double)>& f0,
                              const Domain& dom, int grid_M) {
  const int M = grid_M > 0 ? grid_M : 4 * (2 * dom.N + 1);
  const int side = dom.modes_per_dim();
  SpectralField out(dom, true);

  std::vector<double> samples(static_cast<size_t>(M) * M);
  for (int j1 = 0; j1 < M; ++j1) {
    const double v1 = -dom.L + 2.0 * dom.L * j1 / M;
    for (int j2 = 0; j2 < M; ++j2) {
      const double v2 = -dom.L + 2.0 * dom.L * j2 / M;
      const double s = f0(v1, v2);
      if (!std::isfinite(s))
        throw std::runtime_error("project_initial: nonfinite sample");
      samples[static_cast<size_t>(j1) * M + j2] = s;
    }
  }

  const auto E = phase_table(dom, M, -1.0);
  // Separable contraction: first over j2, then over j1; prefactor
  // (2L)^{-d} * w_j with w_j = (2L/M)^d collapses to 1/M^d.
  std::vector<cplx> tmp(static_cast<size_t>(M) * side);
  for (int j1 = 0; j1 < M; ++j1)
    for (int n2 = 0; n2 < side; ++n2) {
      cplx acc = 0.0;
      for (int j2 = 0; j2 < M; ++j2)
        acc += samples[static_cast<size_t>(j1) * M + j2] *
               E[static_cast<size_t>(j2) * side + n2];
      tmp[static_cast<size_t>(j1) * side + n2] = acc;
    }
  const double scale = 1.0 / (static_cast<double>(M) * M);
  for (int n1 = 0; n1 < side; ++n1)
    for (int n2 = 0; n2 < side; ++n2) {
      cplx acc = 0.0;
      for (int j1 = 0; j1 < M; ++j1)
        acc += E[static_cast<size_t>(j1) * side + n1] *
               tmp[static_cast<size_t>(j1) * side + n2];
      out.coeffs[static_cast<size_t>(n1) * side + n2] = acc * scale;
    }
  return out;
}

std::vector<cplx> evaluate_field(const SpectralField& f,
                                 const std::vector<std::array<double, 2>>& pts) {
  const Domain& dom = f.domain;
  const int side = dom.modes_per_dim();
  std::vector<cplx> out(pts.size());
  std::vector<cplx> p1(side), p2(side);
  for (size_t ip = 0; ip < pts.size(); ++ip) {
    const double v1 = pts[ip][0], v2 = pts[ip][1];
    const cplx a1 = std::exp(cplx(0.0, std::numbers::pi * v1 / dom.L));
    const cplx a2 = std::exp(cplx(0.0, std::numbers::pi * v2 / dom.L));
    p1[0] = std::exp(cplx(0.0, -std::numbers::pi * dom.N * v1 / dom.L));
    p2[0] = std::exp(cplx(0.0, -std::numbers::pi * dom.N * v2 / dom.L));
    for (int k = 1; k < side; ++k) {
      p1[k] = p1[k - 1] * a1;
      p2[k] = p2[k - 1] * a2;
    }
    cplx acc = 0.0;
    for (int n1 = 0; n1 < side; ++n1) {
      cplx row = 0.0;
      const cplx* c = &f.coeffs[static_cast<size_t>(n1) * side];
      for (int n2 = 0; n2 < side; ++n2) row += c[n2] * p2[n2];
      acc += p1[n1] * row;
    }
    out[ip] = acc;
  }
  return out;
}

std::vector<cplx> evaluate_on_grid(const SpectralField& f, int M) {
  const Domain& dom = f.domain;
  const int side = dom.modes_per_dim();
  const auto E = phase_table(dom, M, +1.0);
  std::vector<cplx> tmp(static_cast<size_t>(side) * M);
  for (int n1 = 0; n1 < side; ++n1)
    for (int j2 = 0; j2 < M; ++j2) {
      cplx acc = 0.0;
      const cplx* c = &f.coeffs[static_cast<size_t>(n1) * side];
      for (int n2 = 0; n2 < side; ++n2)
        acc += c[n2] * E[static_cast<size_t>(j2) * side + n2];
      tmp[static_cast<size_t>(n1) * M + j2] = acc;
    }
  std::vector<cplx> out(static_cast<size_t>(M) * M);
  for (int j1 = 0; j1 < M; ++j1)
    for (int j2 = 0; j2 < M; ++j2) {
      cplx acc = 0.0;
      for (int n1 = 0; n1 < side; ++n1)
        acc += E[static_cast<size_t>(j1) * side + n1] *
               tmp[static_cast<size_t>(n1) * M + j2];
      out[static_cast<size_t>(j1) * M + j2] = acc;
    }
  return out;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return std::sqrt(f.domain.cell_volume() * s);
}

double hk_norm(const SpectralField& f, int k) {
  const Domain& dom = f.domain;
  const double kap = std::numbers::pi / dom.L;
  double s = 0.0;
  for (int n1 = -dom.N; n1 <= dom.N; ++n1)
    for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
      const double a = kap * n1 * (kap * n1), b = kap * n2 * (kap * n2);
      double w = 0.0;
      // sum over derivative multi-indices |nu| <= k of the symbol
      // prod (pi n_i/L)^{2 nu_i}
      for (int k1 = 0; k1 <= k; ++k1)
        for (int k2 = 0; k1 + k2 <= k; ++k2)
          w += std::pow(a, k1) * std::pow(b, k2);
      s += w * std::norm(f.at(n1, n2));
    }
  return std::sqrt(dom.cell_volume() * s);
}

FieldNorms norms(const SpectralField& f, int grid_M) {
  const Domain& dom = f.domain;
  const int M = grid_M > 0 ? grid_M : 4 * (2 * dom.N + 1);
  FieldNorms out;
  out.l2 = l2_norm(f);
  out.h1 = hk_norm(f, 1);

  const auto vals = evaluate_on_grid(f, M);
  const double w = dom.cell_volume() / (static_cast<double>(M) * M);
  double l1 = 0.0, n1 = 0.0, n2 = 0.0;
  for (const auto& c : vals) {
    const double x = c.real();
    l1 += std::abs(x);
    const double m = std::max(-x, 0.0);
    n1 += m;
    n2 += m * m;
  }
  out.l1 = w * l1;
  out.neg_l1 = w * n1;
  out.neg_l2 = std::sqrt(w * n2);
  return out;
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  const SpectralField* big = &a;
  const SpectralField* small = &b;
  if (big->domain.N < small->domain.N) std::swap(big, small);
  const Domain& dom = big->domain;
  double s = 0.0;
  for (int n1 = -dom.N; n1 <= dom.N; ++n1)
    for (int n2 = -dom.N; n2 <= dom.N; ++n2) {
      cplx d = big->at(n1, n2);
      if (std::abs(n1) <= small->domain.N && std::abs(n2) <= small->domain.N)
        d -= small->at(n1, n2);
      s += std::norm(d);
    }
  return std::sqrt(dom.cell_volume() * s);
}

}  // namespace boltspec
