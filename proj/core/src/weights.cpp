#include "boltspec/weights.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace boltspec {

double WeightTable::diagonal_residual() const {
  const int n = lattice();
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    worst = std::max(worst, std::abs(at(l, n - 1 - l)));
  return worst;
}

double WeightTable::conjugation_residual() const {
  const int n = lattice();
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      worst = std::max(worst,
                       std::abs(std::conj(at(l, m)) - at(n - 1 - l, n - 1 - m)));
  return worst;
}

namespace {

struct QNode {
  double q1, q2, r;
  double weight;  // radial (with Jacobian) x uniform-angle weight
};

// Direct evaluation of one entry G(l,m) by the nested rule; used for the
// refinement check against an independently doubled rule.
cplx direct_entry(const KernelSpec& spec, const Domain& dom, int l1, int l2,
                  int m1, int m2, const QuadratureRule& quad) {
  const double piL = std::numbers::pi / dom.L;
  cplx acc = 0.0;
  for (size_t ir = 0; ir < quad.radial_nodes.size(); ++ir) {
    const double r = quad.radial_nodes[ir];
    const double phi_r = eval_phi(spec, r);
    for (size_t it = 0; it < quad.theta_nodes.size(); ++it) {
      const double phi = quad.theta_nodes[it];
      const double q1 = r * std::cos(phi), q2 = r * std::sin(phi);
      cplx inner = 0.0;
      for (size_t iu = 0; iu < quad.sigma_nodes.size(); ++iu) {
        const double u = quad.sigma_nodes[iu];
        const double s1x = std::cos(phi + u), s1y = std::sin(phi + u);
        const double b = eval_b_sym_base(spec, std::cos(u));
        const double w1 = q1 - r * s1x, w2 = q2 - r * s1y;
        const cplx br =
            std::exp(cplx(0.0, 0.5 * piL * ((l1 + m1) * w1 + (l2 + m2) * w2))) -
            1.0;
        inner += quad.sigma_weights[iu] * b * br;
      }
      acc += quad.radial_weights[ir] * quad.theta_weight * phi_r *
             std::exp(cplx(0.0, -piL * (m1 * q1 + m2 * q2))) * inner;
    }
  }
  return acc;
}

}  // namespace

WeightTable precompute_weights(const KernelSpec& spec, const Domain& dom,
                               const QuadratureRule& quad) {
  if (dom.d != 2)
    throw std::invalid_argument("precompute_weights: only d=2 implemented");
  if (!spec.symmetrized)
    throw std::invalid_argument("precompute_weights: kernel must be symmetrized");

  const int N = dom.N;
  const int side = 2 * N + 1;
  const int lat = side * side;
  const int srange = 4 * N + 1;  // s component in [-2N, 2N]
  const double piL = std::numbers::pi / dom.L;

  WeightTable table;
  table.domain = dom;
  table.entries.assign(static_cast<size_t>(lat) * lat, cplx(0.0));
  table.kernel_hash = spec.hash(dom, quad);

  // Flatten the polar q grid.
  const int nq = quad.n_r * quad.n_theta;
  std::vector<QNode> qs(nq);
  for (int ir = 0; ir < quad.n_r; ++ir)
    for (int it = 0; it < quad.n_theta; ++it) {
      QNode& n = qs[ir * quad.n_theta + it];
      n.r = quad.radial_nodes[ir];
      n.q1 = n.r * std::cos(quad.theta_nodes[it]);
      n.q2 = n.r * std::sin(quad.theta_nodes[it]);
      n.weight = quad.radial_weights[ir] * quad.theta_weight;
    }

  const int ns = quad.n_sigma;
  // sigma-angle kernel factor: Phi(r) enters per node; b0_sym(cos u) is
  // independent of the q direction.
  std::vector<double> bsig(ns);
  for (int iu = 0; iu < ns; ++iu)
    bsig[iu] =
        quad.sigma_weights[iu] * eval_b_sym_base(spec, std::cos(quad.sigma_nodes[iu]));
  double bsig_total = 0.0;
  for (int iu = 0; iu < ns; ++iu) bsig_total += bsig[iu];

  // Per (q-node, sigma-node): transfer vector w = q - r*sigma and the phase
  // steps exp(i pi w_i /(2L)) used to chain powers over s.
  std::vector<cplx> stepA(static_cast<size_t>(nq) * ns),
      stepB(static_cast<size_t>(nq) * ns), startB(static_cast<size_t>(nq) * ns),
      startA(static_cast<size_t>(nq) * ns);
  std::vector<double> kfac(static_cast<size_t>(nq) * ns);
  for (int iq = 0; iq < nq; ++iq) {
    const QNode& n = qs[iq];
    const double phi = std::atan2(n.q2, n.q1);
    const double phi_r = eval_phi(spec, n.r);
    for (int iu = 0; iu < ns; ++iu) {
      const double u = quad.sigma_nodes[iu];
      const double w1 = n.q1 - n.r * std::cos(phi + u);
      const double w2 = n.q2 - n.r * std::sin(phi + u);
      const size_t id = static_cast<size_t>(iq) * ns + iu;
      stepA[id] = std::exp(cplx(0.0, 0.5 * piL * w1));
      stepB[id] = std::exp(cplx(0.0, 0.5 * piL * w2));
      startA[id] = std::exp(cplx(0.0, -0.5 * piL * w1 * 2 * N));
      startB[id] = std::exp(cplx(0.0, -0.5 * piL * w2 * 2 * N));
      kfac[id] = phi_r * bsig[iu];
    }
  }

  // q-phase tables exp(-i pi m_i q_i / L) for the outer contraction.
  std::vector<cplx> E1(static_cast<size_t>(side) * nq),
      E2(static_cast<size_t>(side) * nq);
  for (int iq = 0; iq < nq; ++iq) {
    for (int m = -N; m <= N; ++m) {
      E1[static_cast<size_t>(m + N) * nq + iq] =
          std::exp(cplx(0.0, -piL * m * qs[iq].q1));
      E2[static_cast<size_t>(m + N) * nq + iq] =
          std::exp(cplx(0.0, -piL * m * qs[iq].q2));
    }
  }

  std::vector<cplx> powA(static_cast<size_t>(nq) * ns);
  std::vector<cplx> Hrow(static_cast<size_t>(srange) * nq);
  std::vector<cplx> T(nq), U(nq);

  auto contract_row = [&](int s1, int s2) {
    // G(l, m) for l + m = s; fill the conjugate pair (-l,-m) as well.
    for (int iq = 0; iq < nq; ++iq)
      T[iq] =
          qs[iq].weight * Hrow[static_cast<size_t>(iq) * srange + s2 + 2 * N];
    const int m1lo = std::max(-N, s1 - N), m1hi = std::min(N, s1 + N);
    const int m2lo = std::max(-N, s2 - N), m2hi = std::min(N, s2 + N);
    for (int m1 = m1lo; m1 <= m1hi; ++m1) {
      const cplx* e1 = &E1[static_cast<size_t>(m1 + N) * nq];
      for (int iq = 0; iq < nq; ++iq) U[iq] = T[iq] * e1[iq];
      for (int m2 = m2lo; m2 <= m2hi; ++m2) {
        const cplx* e2 = &E2[static_cast<size_t>(m2 + N) * nq];
        cplx acc = 0.0;
        for (int iq = 0; iq < nq; ++iq) acc += U[iq] * e2[iq];
        const int l1 = s1 - m1, l2 = s2 - m2;
        const int lidx = (l1 + N) * side + (l2 + N);
        const int midx = (m1 + N) * side + (m2 + N);
        table.entries[static_cast<size_t>(lidx) * lat + midx] = acc;
        const int lidx_c = (-l1 + N) * side + (-l2 + N);
        const int midx_c = (-m1 + N) * side + (-m2 + N);
        table.entries[static_cast<size_t>(lidx_c) * lat + midx_c] =
            std::conj(acc);
      }
    }
  };

  // Chain powers of the s1 phase; for each s1 >= 0 build the inner sweep
  // H(s, q) = sum_sigma kfac * (exp(i pi s.w/(2L)) - 1) over all s2 at
  // once, then contract against the q phases. s1 < 0 follows from the
  // conjugation symmetry of the real kernel; s = 0 vanishes identically.
  for (size_t id = 0; id < powA.size(); ++id) powA[id] = startA[id];
  for (int s1 = -2 * N; s1 <= 2 * N; ++s1) {
    if (s1 >= 0) {
      std::fill(Hrow.begin(), Hrow.end(), cplx(0.0));
      for (int iq = 0; iq < nq; ++iq) {
        const double loss = eval_phi(spec, qs[iq].r) * bsig_total;
        cplx* hq = &Hrow[static_cast<size_t>(iq) * srange];
        for (int iu = 0; iu < ns; ++iu) {
          const size_t id = static_cast<size_t>(iq) * ns + iu;
          cplx t = powA[id] * kfac[id] * startB[id];
          const cplx bstep = stepB[id];
          for (int s2i = 0; s2i < srange; ++s2i) {
            hq[s2i] += t;
            t *= bstep;
          }
        }
        for (int s2i = 0; s2i < srange; ++s2i) hq[s2i] -= loss;
      }
      const int s2start = (s1 == 0) ? 1 : -2 * N;
      for (int s2 = s2start; s2 <= 2 * N; ++s2) contract_row(s1, s2);
    }
    if (s1 < 2 * N)
      for (size_t id = 0; id < powA.size(); ++id) powA[id] *= stepA[id];
  }

  // G(l,-l) = 0 holds exactly (the bracket vanishes at s = 0); pin it.
  for (int l = 0; l < lat; ++l)
    table.entries[static_cast<size_t>(l) * lat + (lat - 1 - l)] = cplx(0.0);

  // Refinement spot check: re-evaluate a spread of entries with a doubled
  // rule and record the worst change.
  {
    QuadratureRule fine = QuadratureRule::make(
        dom, 0, 2 * quad.n_r, 2 * quad.n_theta, 2 * quad.n_sigma);
    double worst = 0.0;
    int worst_l = 0, worst_m = 0;
    const int stride = std::max(1, lat / 5);
    for (int li = 0; li < lat; li += stride)
      for (int mi = 0; mi < lat; mi += stride) {
        const int l1 = li / side - N, l2 = li % side - N;
        const int m1 = mi / side - N, m2 = mi % side - N;
        const cplx ref = direct_entry(spec, dom, l1, l2, m1, m2, fine);
        const double diff =
            std::abs(ref - table.entries[static_cast<size_t>(li) * lat + mi]);
        if (diff > worst) {
          worst = diff;
          worst_l = li;
          worst_m = mi;
        }
      }
    table.quad_tol = worst;
    if (worst > 1e-7)
      throw std::runtime_error(
          "precompute_weights: quadrature refinement check failed at (l,m)=(" +
          std::to_string(worst_l) + "," + std::to_string(worst_m) +
          "), change " + std::to_string(worst));
  }
  return table;
}

namespace {
constexpr uint32_t kMagic = 0x42535754;  // "BSWT"
constexpr uint32_t kVersion = 1;
}  // namespace

void save_weights(const WeightTable& table, const std::string& path,
                  const QuadratureRule& quad) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_weights: cannot open " + path);
  auto put = [&out](const void* p, size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  uint32_t u;
  u = kMagic; put(&u, 4);
  u = kVersion; put(&u, 4);
  u = static_cast<uint32_t>(table.domain.d); put(&u, 4);
  u = static_cast<uint32_t>(table.domain.N); put(&u, 4);
  put(&table.domain.L, 8);
  put(&table.domain.R, 8);
  put(&table.kernel_hash, 8);
  u = static_cast<uint32_t>(quad.n_r); put(&u, 4);
  u = static_cast<uint32_t>(quad.n_theta); put(&u, 4);
  u = static_cast<uint32_t>(quad.n_sigma); put(&u, 4);
  put(&table.quad_tol, 8);
  put(table.entries.data(), table.entries.size() * sizeof(cplx));
  if (!out) throw std::runtime_error("save_weights: write failed " + path);
}

WeightTable load_weights(const std::string& path, uint64_t expected_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_weights: cannot open " + path);
  auto get = [&in, &path](void* p, size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in) throw std::runtime_error("load_weights: truncated file " + path);
  };
  uint32_t magic, version, d, N, n_r, n_theta, n_sigma;
  get(&magic, 4);
  get(&version, 4);
  if (magic != kMagic || version != kVersion)
    throw std::runtime_error("load_weights: bad header in " + path);
  get(&d, 4);
  get(&N, 4);
  double L, R;
  get(&L, 8);
  get(&R, 8);
  WeightTable table;
  get(&table.kernel_hash, 8);
  if (table.kernel_hash != expected_hash)
    throw std::runtime_error("load_weights: kernel hash mismatch in " + path);
  get(&n_r, 4);
  get(&n_theta, 4);
  get(&n_sigma, 4);
  get(&table.quad_tol, 8);
  table.domain = Domain(static_cast<int>(d), L, R, static_cast<int>(N));
  const size_t lat = static_cast<size_t>(table.domain.lattice_size());
  table.entries.resize(lat * lat);
  get(table.entries.data(), table.entries.size() * sizeof(cplx));
  return table;
}

WeightTable cached_weights(const KernelSpec& spec, const Domain& dom,
                           const QuadratureRule& quad,
                           const std::string& cache_dir) {
  if (cache_dir.empty()) return precompute_weights(spec, dom, quad);
  std::ostringstream name;
  name << cache_dir << "/weights_" << std::hex << spec.hash(dom, quad)
       << ".bin";
  const std::string path = name.str();
  const uint64_t hash = spec.hash(dom, quad);
  if (std::filesystem::exists(path)) {
    try {
      return load_weights(path, hash);
    } catch (const std::exception&) {
      // stale or corrupt cache: fall through and rebuild
    }
  }
  WeightTable table = precompute_weights(spec, dom, quad);
  std::filesystem::create_directories(cache_dir);
  save_weights(table, path, quad);
  return table;
}

}  // namespace boltspec
