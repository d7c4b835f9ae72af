#include "boltspec/gpc.hpp"

#include <cmath>
#include <stdexcept>

namespace boltspec {

double legendre_psi(int k, double z) {
  if (k < 0) throw std::invalid_argument("legendre_psi: negative order");
  double pm1 = 1.0, p = z;
  if (k == 0) return 1.0;
  for (int n = 1; n < k; ++n) {
    const double pn1 = ((2.0 * n + 1.0) * z * p - n * pm1) / (n + 1.0);
    pm1 = p;
    p = pn1;
  }
  return std::sqrt(2.0 * k + 1.0) * p;
}

STensor build_s_tensor(const RandomFactor& lambda, int K,
                       const QuadratureRule& quad) {
  if (K < 0) throw std::invalid_argument("build_s_tensor: negative order");
  const int n = K + 1;
  STensor S;
  S.order = K;
  S.entries.assign(static_cast<size_t>(n) * n * n, 0.0);

  const int nq = static_cast<int>(quad.z_nodes.size());
  std::vector<double> psi(static_cast<size_t>(nq) * n);
  for (int q = 0; q < nq; ++q)
    for (int k = 0; k < n; ++k)
      psi[static_cast<size_t>(q) * n + k] = legendre_psi(k, quad.z_nodes[q]);

  for (int q = 0; q < nq; ++q) {
    const double w = quad.z_weights[q] * lambda(quad.z_nodes[q]);
    const double* pq = &psi[static_cast<size_t>(q) * n];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= i; ++j) {
          const double v = w * pq[k] * pq[i] * pq[j];
          S.at(k, i, j) += v;
        }
  }
  // Fill the remaining permutations from the lower wedge k >= i >= j.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= i; ++j) {
        const double v = S(k, i, j);
        S.at(k, j, i) = v;
        S.at(i, k, j) = v;
        S.at(i, j, k) = v;
        S.at(j, k, i) = v;
        S.at(j, i, k) = v;
      }
  return S;
}

GpcField::GpcField(const Domain& dom, int K) : order(K) {
  if (K < 0) throw std::invalid_argument("GpcField: negative order");
  modes.reserve(K + 1);
  for (int k = 0; k <= K; ++k) modes.emplace_back(dom, true);
}

GpcField gpc_collision_rhs(const WeightTable& G, const STensor& S,
                           const GpcField& F) {
  if (S.order != F.order)
    throw std::invalid_argument("gpc_collision_rhs: order mismatch");
  const int K = F.order;
  GpcField out(F.domain(), K);

  for (int i = 0; i <= K; ++i)
    for (int j = 0; j <= K; ++j) {
      bool used = false;
      for (int k = 0; k <= K && !used; ++k) used = S(k, i, j) != 0.0;
      if (!used) continue;
      const SpectralField bij = collision_bilinear(G, F.modes[i], F.modes[j]);
      for (int k = 0; k <= K; ++k) {
        const double s = S(k, i, j);
        if (s == 0.0) continue;
        auto& ck = out.modes[k].coeffs;
        for (size_t n = 0; n < ck.size(); ++n) ck[n] += s * bij.coeffs[n];
      }
    }
  return out;
}

SpectralField reconstruct(const GpcField& F, double z) {
  if (z < -1.0 || z > 1.0)
    throw std::domain_error("reconstruct: z outside [-1,1]");
  SpectralField out(F.domain(), true);
  for (int k = 0; k <= F.order; ++k) {
    const double psi = legendre_psi(k, z);
    const auto& ck = F.modes[k].coeffs;
    for (size_t n = 0; n < ck.size(); ++n) out.coeffs[n] += psi * ck[n];
    out.real_valued = out.real_valued && F.modes[k].real_valued;
  }
  return out;
}

GpcStatistics gpc_statistics(const GpcField& F, int grid_M) {
  const Domain& dom = F.domain();
  if (grid_M <= 0) grid_M = 4 * (2 * dom.N + 1);
  GpcStatistics st;
  st.mean = F.modes[0];
  st.grid_M = grid_M;
  st.variance_field.assign(static_cast<size_t>(grid_M) * grid_M, 0.0);
  for (int k = 1; k <= F.order; ++k) {
    const auto vals = evaluate_on_grid(F.modes[k], grid_M);
    for (size_t i = 0; i < vals.size(); ++i)
      st.variance_field[i] += vals[i].real() * vals[i].real();
  }
  return st;
}

}  // namespace boltspec
