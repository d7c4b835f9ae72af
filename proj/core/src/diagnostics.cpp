#include "boltspec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "boltspec/solver.hpp"
#include "boltspec/weights.hpp"

namespace boltspec {

DiagnosticsRecord diagnose(const SpectralField& f, double t, int grid_M) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = f.mass();
  const FieldNorms n = norms(f, grid_M);
  rec.l1 = n.l1;
  rec.l2 = n.l2;
  rec.h1 = n.h1;
  rec.neg_l2 = n.neg_l2;
  return rec;
}

DiagnosticsRecord diagnose(const GpcField& F, double t, int grid_M) {
  DiagnosticsRecord rec = diagnose(F.modes[0], t, grid_M);
  rec.mode_mass.reserve(F.order + 1);
  for (const auto& m : F.modes) rec.mode_mass.push_back(m.mass());
  return rec;
}

std::vector<double> default_z_grid(int n) {
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = std::cos(std::numbers::pi * i / (n - 1));
  return z;
}

namespace {

// D[l][k] = d^l/dz^l P_k(z) for l = 0..r, k = 0..K, from the l-times
// differentiated three-term recurrence.
std::vector<std::vector<double>> legendre_derivatives(int K, int r, double z) {
  std::vector<std::vector<double>> D(r + 1, std::vector<double>(K + 1, 0.0));
  D[0][0] = 1.0;
  if (K >= 1) {
    D[0][1] = z;
    if (r >= 1) D[1][1] = 1.0;
  }
  for (int l = 0; l <= r; ++l)
    for (int k = 1; k < K; ++k) {
      const double lower = (l >= 1) ? l * D[l - 1][k] : 0.0;
      D[l][k + 1] =
          ((2.0 * k + 1.0) * (z * D[l][k] + lower) - k * D[l][k - 1]) /
          (k + 1.0);
    }
  return D;
}

MixedNormReport::Entry entry_from(const FieldNorms& n) {
  return {n.l1, n.l2, n.h1};
}

void take_sup(MixedNormReport::Entry& e, const MixedNormReport::Entry& x) {
  e.l1 = std::max(e.l1, x.l1);
  e.l2 = std::max(e.l2, x.l2);
  e.h1 = std::max(e.h1, x.h1);
}

MixedNormReport assemble_report(
    int r, const std::vector<MixedNormReport::Entry>& per_order) {
  MixedNormReport rep;
  rep.r = r;
  rep.per_order = per_order;
  for (const auto& e : per_order) {
    rep.total.l1 += e.l1;
    rep.total.l2 += e.l2;
    rep.total.h1 += e.h1;
  }
  return rep;
}

}  // namespace

MixedNormReport mixed_norms(const GpcField& F, int r,
                            const std::vector<double>& z_grid) {
  if (r < 0) throw std::invalid_argument("mixed_norms: negative order");
  if (r > F.order)
    throw std::invalid_argument(
        "mixed_norms: derivative order exceeds the chaos expansion order");
  const std::vector<double> zg = z_grid.empty() ? default_z_grid() : z_grid;
  const int K = F.order;
  std::vector<MixedNormReport::Entry> per(r + 1);

  for (double z : zg) {
    const auto D = legendre_derivatives(K, r, z);
    for (int l = 0; l <= r; ++l) {
      SpectralField g(F.domain(), true);
      for (int k = 0; k <= K; ++k) {
        const double c = std::sqrt(2.0 * k + 1.0) * D[l][k];
        if (c == 0.0) continue;
        for (size_t n = 0; n < g.coeffs.size(); ++n)
          g.coeffs[n] += c * F.modes[k].coeffs[n];
      }
      take_sup(per[l], entry_from(norms(g)));
    }
  }
  return assemble_report(r, per);
}

namespace {

std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> w(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) w[i] /= (x[i] - x[j]);
  return w;
}

// Polynomial differentiation matrix on the node set.
std::vector<double> diff_matrix(const std::vector<double>& x,
                                const std::vector<double>& w) {
  const int n = static_cast<int>(x.size());
  std::vector<double> D(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        const double dij = (w[j] / w[i]) / (x[i] - x[j]);
        D[static_cast<size_t>(i) * n + j] = dij;
        diag -= dij;
      }
    D[static_cast<size_t>(i) * n + i] = diag;
  }
  return D;
}

// Barycentric evaluation weights c_i(z): p(z) = sum_i c_i p(x_i).
std::vector<double> eval_weights(const std::vector<double>& x,
                                 const std::vector<double>& w, double z) {
  const int n = static_cast<int>(x.size());
  std::vector<double> c(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (z == x[i]) {
      c[i] = 1.0;
      return c;
    }
  double denom = 0.0;
  for (int i = 0; i < n; ++i) {
    c[i] = w[i] / (z - x[i]);
    denom += c[i];
  }
  for (int i = 0; i < n; ++i) c[i] /= denom;
  return c;
}

}  // namespace

MixedNormReport mixed_norms_collocation(
    const std::vector<SpectralField>& states,
    const std::vector<double>& z_nodes, int r,
    const std::vector<double>& z_grid) {
  const int n = static_cast<int>(z_nodes.size());
  if (states.size() != z_nodes.size())
    throw std::invalid_argument("mixed_norms_collocation: size mismatch");
  if (n == 0) throw std::invalid_argument("mixed_norms_collocation: no nodes");
  if (r < 0 || r >= n)
    throw std::invalid_argument(
        "mixed_norms_collocation: derivative order exceeds node resolution");
  const std::vector<double> zg = z_grid.empty() ? default_z_grid() : z_grid;
  const auto w = barycentric_weights(z_nodes);
  const auto D = diff_matrix(z_nodes, w);

  // deriv[l][i] = l-th derivative of the interpolant at node i, as a
  // coefficient field; obtained by repeated application of D.
  std::vector<std::vector<SpectralField>> deriv(r + 1);
  deriv[0] = states;
  for (int l = 1; l <= r; ++l) {
    deriv[l].reserve(n);
    for (int i = 0; i < n; ++i) {
      SpectralField g(states[0].domain, true);
      for (int j = 0; j < n; ++j) {
        const double dij = D[static_cast<size_t>(i) * n + j];
        if (dij == 0.0) continue;
        for (size_t m = 0; m < g.coeffs.size(); ++m)
          g.coeffs[m] += dij * deriv[l - 1][j].coeffs[m];
      }
      deriv[l].push_back(std::move(g));
    }
  }

  std::vector<MixedNormReport::Entry> per(r + 1);
  for (double z : zg) {
    const auto c = eval_weights(z_nodes, w, z);
    for (int l = 0; l <= r; ++l) {
      SpectralField g(states[0].domain, true);
      for (int i = 0; i < n; ++i) {
        if (c[i] == 0.0) continue;
        for (size_t m = 0; m < g.coeffs.size(); ++m)
          g.coeffs[m] += c[i] * deriv[l][i].coeffs[m];
      }
      take_sup(per[l], entry_from(norms(g)));
    }
  }
  return assemble_report(r, per);
}

InitialConditionsReport check_initial_conditions(
    const std::function<double(double, double)>& f0, int d, double L, double R,
    const std::vector<int>& N_list, int grid_M) {
  if (N_list.empty())
    throw std::invalid_argument("check_initial_conditions: empty N list");
  const int maxN = *std::max_element(N_list.begin(), N_list.end());
  const int M = (grid_M > 0) ? grid_M : 4 * (2 * maxN + 1);

  // Reference functionals of the unprojected data, on the same grid that
  // the per-N norms use, so the comparisons are quadrature-consistent.
  double mass_ref = 0.0, l1_ref = 0.0, l2_ref = 0.0;
  const double wcell = std::pow(2.0 * L, d) / (static_cast<double>(M) * M);
  for (int i = 0; i < M; ++i) {
    const double v1 = -L + 2.0 * L * i / M;
    for (int j = 0; j < M; ++j) {
      const double v2 = -L + 2.0 * L * j / M;
      const double val = f0(v1, v2);
      mass_ref += val;
      l1_ref += std::abs(val);
      l2_ref += val * val;
    }
  }
  mass_ref *= wcell;
  l1_ref *= wcell;
  l2_ref = std::sqrt(l2_ref * wcell);

  InitialConditionsReport rep;
  rep.l2_ok = true;
  for (int N : N_list) {
    const Domain dom(d, L, R, N);
    const SpectralField fN = project_initial(f0, dom, M);
    const FieldNorms n = norms(fN, M);
    InitialConditionRow row;
    row.N = N;
    row.mass_gap = fN.mass() - mass_ref;
    row.l2_ratio = n.l2 / l2_ref;
    row.l1_ratio = n.l1 / l1_ref;
    row.neg_l2 = n.neg_l2;
    rep.l2_ok = rep.l2_ok && row.l2_ratio <= 1.0 + 1e-12;
    rep.rows.push_back(row);
  }

  for (size_t i = 0; i < rep.rows.size(); ++i) {
    bool tail_ok = true;
    for (size_t j = i; j < rep.rows.size(); ++j)
      tail_ok = tail_ok && rep.rows[j].l1_ratio <= 2.0;
    if (tail_ok) {
      rep.located_N0 = rep.rows[i].N;
      break;
    }
  }
  rep.neg_decreasing = rep.rows.size() >= 2;
  for (size_t i = 1; i < rep.rows.size(); ++i)
    rep.neg_decreasing = rep.neg_decreasing &&
                         rep.rows[i].neg_l2 <= 1.1 * rep.rows[i - 1].neg_l2;
  if (rep.rows.size() >= 2)
    rep.neg_decreasing =
        rep.neg_decreasing && rep.rows.back().neg_l2 <= rep.rows.front().neg_l2;
  return rep;
}

NegativePartStudy negative_part_study(
    const std::function<double(double, double)>& f0, const KernelSpec& spec,
    double L, const std::vector<int>& N_list, const SolverConfig& cfg,
    const std::string& weight_cache_dir) {
  NegativePartStudy study;
  std::vector<double> finals;
  for (int N : N_list) {
    const Domain dom(2, L, spec.R, N);
    const QuadratureRule quad = QuadratureRule::make(dom);
    const WeightTable G = cached_weights(spec, dom, quad, weight_cache_dir);
    const SpectralField f0N = project_initial(f0, dom, quad.grid_M);
    const Trajectory traj = run_deterministic(f0N, G, cfg);
    if (traj.blew_up) throw BlowUpError(traj.blow_up_t, 0.0);
    for (size_t s = 0; s < traj.times.size(); ++s)
      study.rows.push_back({N, traj.times[s], traj.diagnostics[s].neg_l2});
    finals.push_back(traj.diagnostics.back().neg_l2);
  }
  study.final_nonincreasing = finals.size() >= 2;
  for (size_t i = 1; i < finals.size(); ++i)
    study.final_nonincreasing =
        study.final_nonincreasing && finals[i] <= 1.1 * finals[i - 1];
  return study;
}

namespace {

ConvergenceStudy assemble_convergence(const std::vector<int>& N_list,
                                      const std::vector<double>& errors) {
  ConvergenceStudy study;
  study.errors_decreasing = true;
  study.order_increasing = true;
  for (size_t i = 0; i < N_list.size(); ++i) {
    ConvergenceRow row;
    row.N = N_list[i];
    row.l2_error = errors[i];
    if (i > 0) {
      study.errors_decreasing =
          study.errors_decreasing && errors[i] < errors[i - 1];
      if (errors[i] > 0.0 && errors[i - 1] > 0.0)
        row.fitted_order = std::log(errors[i - 1] / errors[i]) /
                           std::log(static_cast<double>(N_list[i]) /
                                    static_cast<double>(N_list[i - 1]));
      if (i > 1)
        study.order_increasing =
            study.order_increasing &&
            row.fitted_order > study.rows[i - 1].fitted_order;
    }
    study.rows.push_back(row);
  }
  return study;
}

}  // namespace

ConvergenceStudy convergence_study_bkw(const BkwParams& p,
                                       const KernelSpec& spec, double L,
                                       const std::vector<int>& N_list,
                                       const SolverConfig& cfg,
                                       const std::string& weight_cache_dir) {
  std::vector<double> errors;
  for (int N : N_list) {
    const Domain dom(2, L, spec.R, N);
    const QuadratureRule quad = QuadratureRule::make(dom);
    const WeightTable G = cached_weights(spec, dom, quad, weight_cache_dir);
    auto at0 = [&](double v1, double v2) { return bkw(0.0, v1, v2, p); };
    auto atT = [&](double v1, double v2) {
      return bkw(cfg.t_final, v1, v2, p);
    };
    const SpectralField f0N = project_initial(at0, dom, quad.grid_M);
    const Trajectory traj = run_deterministic(f0N, G, cfg);
    if (traj.blew_up) throw BlowUpError(traj.blow_up_t, 0.0);
    const SpectralField refN = project_initial(atT, dom, quad.grid_M);
    errors.push_back(l2_distance(traj.final_state(), refN));
  }
  return assemble_convergence(N_list, errors);
}

ConvergenceStudy convergence_study_self(
    const std::function<double(double, double)>& f0, const KernelSpec& spec,
    double L, const std::vector<int>& N_list, int N_ref,
    const SolverConfig& cfg, const std::string& weight_cache_dir) {
  const int maxN = *std::max_element(N_list.begin(), N_list.end());
  if (N_ref < maxN)
    throw std::invalid_argument(
        "convergence_study_self: reference resolution below the tested ones");

  auto solve = [&](int N) {
    const Domain dom(2, L, spec.R, N);
    const QuadratureRule quad = QuadratureRule::make(dom);
    const WeightTable G = cached_weights(spec, dom, quad, weight_cache_dir);
    const SpectralField f0N = project_initial(f0, dom, quad.grid_M);
    const Trajectory traj = run_deterministic(f0N, G, cfg);
    if (traj.blew_up) throw BlowUpError(traj.blow_up_t, 0.0);
    return traj.final_state();
  };

  const SpectralField ref = solve(N_ref);
  std::vector<double> errors;
  for (int N : N_list)
    errors.push_back(l2_distance(solve(N), ref.resampled(N)));
  return assemble_convergence(N_list, errors);
}

std::string format_csv_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

constexpr const char* kCsvHeader = "N,t,mass,l1,l2,h1,neg_l2,error\n";

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << kCsvHeader;
  return out;
}

void write_row(std::ofstream& out, int N, double t, double mass, double l1,
               double l2, double h1, double neg_l2, double error) {
  out << N << ',' << format_csv_value(t) << ',' << format_csv_value(mass)
      << ',' << format_csv_value(l1) << ',' << format_csv_value(l2) << ','
      << format_csv_value(h1) << ',' << format_csv_value(neg_l2) << ','
      << format_csv_value(error) << '\n';
}

}  // namespace

void write_trajectory_csv(const std::string& path, int N,
                          const std::vector<double>& times,
                          const std::vector<DiagnosticsRecord>& records) {
  auto out = open_csv(path);
  for (size_t i = 0; i < times.size(); ++i) {
    const auto& r = records[i];
    write_row(out, N, times[i], r.mass, r.l1, r.l2, r.h1, r.neg_l2, 0.0);
  }
}

void write_convergence_csv(const std::string& path,
                           const ConvergenceStudy& study) {
  auto out = open_csv(path);
  for (const auto& r : study.rows)
    write_row(out, r.N, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, r.l2_error);
}

void write_negative_part_csv(const std::string& path,
                             const NegativePartStudy& study) {
  auto out = open_csv(path);
  for (const auto& r : study.rows)
    write_row(out, r.N, r.t, 0.0, 0.0, 0.0, 0.0, r.neg_l2, 0.0);
}

}  // namespace boltspec
