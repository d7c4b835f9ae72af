#include "boltspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boltspec {

double BkwParams::width(double t) const {
  return 1.0 - 0.5 * std::exp(-(t + t0) / 8.0);
}

double bkw(double t, double v1, double v2, const BkwParams& p) {
  if (t + p.t0 < 0.0) throw std::domain_error("bkw: negative time");
  const double K = p.width(t);
  const double r2 = v1 * v1 + v2 * v2;
  return std::exp(-0.5 * r2 / K) / (2.0 * std::numbers::pi * K * K) *
         (2.0 * K - 1.0 + (1.0 - K) * r2 / (2.0 * K));
}

namespace {

inline double wrap(double x, double L) {
  return x - 2.0 * L * std::floor((x + L) / (2.0 * L));
}

}  // namespace

std::vector<double> direct_qr(const std::function<double(double, double)>& g,
                              const std::function<double(double, double)>& f,
                              const KernelSpec& spec, double z,
                              const Domain& dom,
                              const std::vector<std::array<double, 2>>& points,
                              const QuadratureRule& quad) {
  const double L = dom.L;
  const double lam = spec.random_factor(z);
  std::vector<double> out(points.size(), 0.0);

  for (size_t ip = 0; ip < points.size(); ++ip) {
    const double v1 = points[ip][0], v2 = points[ip][1];
    const double fv = f(wrap(v1, L), wrap(v2, L));
    double acc = 0.0;
    for (int ir = 0; ir < quad.n_r; ++ir) {
      const double r = quad.radial_nodes[ir];
      const double wr = quad.radial_weights[ir] * eval_phi(spec, r);
      for (int it = 0; it < quad.n_theta; ++it) {
        const double phi = quad.theta_nodes[it];
        const double q1 = r * std::cos(phi), q2 = r * std::sin(phi);
        const double loss = g(wrap(v1 - q1, L), wrap(v2 - q2, L)) * fv;
        double inner = 0.0;
        for (int iu = 0; iu < quad.n_sigma; ++iu) {
          const double u = quad.sigma_nodes[iu];
          const double b = eval_b_sym_base(spec, std::cos(u));
          const double s1 = r * std::cos(phi + u), s2 = r * std::sin(phi + u);
          const double gp = g(wrap(v1 - 0.5 * (q1 + s1), L),
                              wrap(v2 - 0.5 * (q2 + s2), L));
          const double fp = f(wrap(v1 - 0.5 * (q1 - s1), L),
                              wrap(v2 - 0.5 * (q2 - s2), L));
          inner += quad.sigma_weights[iu] * b * (gp * fp - loss);
        }
        acc += wr * quad.theta_weight * inner;
      }
    }
    out[ip] = lam * acc;
  }
  return out;
}

namespace {

// Values on the uniform grid of the field shifted by a: coefficients pick
// up the phase exp(-i pi n.a/L), exact for trig polynomials.
std::vector<cplx> shifted_grid_values(const SpectralField& fld, double a1,
                                      double a2, int M) {
  const Domain& dom = fld.domain;
  const int side = dom.modes_per_dim();
  SpectralField sh(dom, false);
  std::vector<cplx> p1(side), p2(side);
  const cplx s1 = std::exp(cplx(0.0, -std::numbers::pi * a1 / dom.L));
  const cplx s2 = std::exp(cplx(0.0, -std::numbers::pi * a2 / dom.L));
  p1[0] = std::exp(cplx(0.0, std::numbers::pi * dom.N * a1 / dom.L));
  p2[0] = std::exp(cplx(0.0, std::numbers::pi * dom.N * a2 / dom.L));
  for (int k = 1; k < side; ++k) {
    p1[k] = p1[k - 1] * s1;
    p2[k] = p2[k - 1] * s2;
  }
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      sh.coeffs[static_cast<size_t>(i) * side + j] =
          fld.coeffs[static_cast<size_t>(i) * side + j] * p1[i] * p2[j];
  return evaluate_on_grid(sh, M);
}

}  // namespace

std::vector<double> direct_qr_spectral(const SpectralField& g,
                                       const SpectralField& f,
                                       const KernelSpec& spec, double z, int M,
                                       const QuadratureRule& quad) {
  const Domain& dom = g.domain;
  if (!dom.same_as(f.domain))
    throw std::invalid_argument("direct_qr_spectral: domain mismatch");
  const double lam = spec.random_factor(z);
  const size_t ngrid = static_cast<size_t>(M) * M;
  std::vector<double> out(ngrid, 0.0);

  const auto f_vals = evaluate_on_grid(f, M);
  for (int ir = 0; ir < quad.n_r; ++ir) {
    const double r = quad.radial_nodes[ir];
    const double wr = quad.radial_weights[ir] * eval_phi(spec, r);
    for (int it = 0; it < quad.n_theta; ++it) {
      const double phi = quad.theta_nodes[it];
      const double q1 = r * std::cos(phi), q2 = r * std::sin(phi);
      const auto g_loss = shifted_grid_values(g, q1, q2, M);
      double bsum = 0.0;
      std::vector<double> gain(ngrid, 0.0);
      for (int iu = 0; iu < quad.n_sigma; ++iu) {
        const double u = quad.sigma_nodes[iu];
        const double wb =
            quad.sigma_weights[iu] * eval_b_sym_base(spec, std::cos(u));
        bsum += wb;
        const double s1 = r * std::cos(phi + u), s2 = r * std::sin(phi + u);
        const auto g_gain =
            shifted_grid_values(g, 0.5 * (q1 + s1), 0.5 * (q2 + s2), M);
        const auto f_gain =
            shifted_grid_values(f, 0.5 * (q1 - s1), 0.5 * (q2 - s2), M);
        for (size_t i = 0; i < ngrid; ++i)
          gain[i] += wb * (g_gain[i].real() * f_gain[i].real() -
                           g_gain[i].imag() * f_gain[i].imag());
      }
      const double wq = wr * quad.theta_weight;
      for (size_t i = 0; i < ngrid; ++i)
        out[i] += wq * (gain[i] - bsum * g_loss[i].real() * f_vals[i].real() +
                        bsum * g_loss[i].imag() * f_vals[i].imag());
    }
  }
  for (auto& x : out) x *= lam;
  return out;
}

SpectralField direct_qr_projected(const SpectralField& g,
                                  const SpectralField& f,
                                  const KernelSpec& spec, double z,
                                  const QuadratureRule& quad) {
  const Domain& dom = g.domain;
  // Output modes reach 2N; M > 3N keeps aliases away from the kept box.
  const int M = 4 * dom.N + 4;
  const auto vals = direct_qr_spectral(g, f, spec, z, M, quad);
  auto fn = [&](double v1, double v2) {
    const int j1 =
        static_cast<int>(std::lround((v1 + dom.L) * M / (2.0 * dom.L))) % M;
    const int j2 =
        static_cast<int>(std::lround((v2 + dom.L) * M / (2.0 * dom.L))) % M;
    return vals[static_cast<size_t>(j1) * M + j2];
  };
  return project_initial(fn, dom, M);
}

BkwVerification verify_bkw(const BkwParams& p, const KernelSpec& spec,
                           const Domain& dom,
                           const std::vector<double>& sample_times,
                           const QuadratureRule& quad) {
  BkwVerification rep;
  const double h = 1e-4;

  // Sample points concentrated where the profile lives.
  std::vector<std::array<double, 2>> pts;
  for (double x : {0.0, 0.7, 1.5, 2.4, 3.3})
    for (double y : {0.0, 1.1, 2.2})
      pts.push_back({x, y});

  double mass0 = 0.0, energy0 = 0.0;
  bool first = true;
  const int Mg = 192;
  const double wcell = dom.cell_volume() / (static_cast<double>(Mg) * Mg);
  rep.min_value = std::numeric_limits<double>::infinity();

  for (double t : sample_times) {
    auto ft = [&](double v1, double v2) { return bkw(t, v1, v2, p); };
    const auto q_vals = direct_qr(ft, ft, spec, 0.0, dom, pts, quad);
    for (size_t i = 0; i < pts.size(); ++i) {
      const double dfdt = (bkw(t + h, pts[i][0], pts[i][1], p) -
                           bkw(t - h, pts[i][0], pts[i][1], p)) /
                          (2.0 * h);
      rep.max_residual = std::max(rep.max_residual, std::abs(dfdt - q_vals[i]));
    }
    double mass = 0.0, energy = 0.0;
    for (int j1 = 0; j1 < Mg; ++j1) {
      const double v1 = -dom.L + 2.0 * dom.L * j1 / Mg;
      for (int j2 = 0; j2 < Mg; ++j2) {
        const double v2 = -dom.L + 2.0 * dom.L * j2 / Mg;
        const double val = ft(v1, v2);
        rep.min_value = std::min(rep.min_value, val);
        mass += val;
        energy += (v1 * v1 + v2 * v2) * val;
      }
    }
    mass *= wcell;
    energy *= wcell;
    if (first) {
      mass0 = mass;
      energy0 = energy;
      first = false;
    }
    rep.mass_drift = std::max(rep.mass_drift, std::abs(mass - mass0));
    rep.energy_drift = std::max(rep.energy_drift, std::abs(energy - energy0));
  }
  return rep;
}

}  // namespace boltspec
