// Command line front end: config ingestion, weight-cache management,
// experiment subcommands, CSV result emission.
//
// Exit codes: 0 success, 1 usage/config error, 2 assertion failure,
// 3 solver blow-up.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "boltspec/diagnostics.hpp"
#include "boltspec/gpc.hpp"
#include "boltspec/oracle.hpp"
#include "boltspec/run_config.hpp"
#include "boltspec/solver.hpp"
#include "boltspec/weights.hpp"

namespace {

using namespace boltspec;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitBlowUp = 3;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  bool force = false;
  int threads = 1;
};

// Content-addressed cache name: the hash covers kernel, domain and
// quadrature, so different experiments never collide on one file.
std::string weights_path(const CliOptions& opt, const RunConfig& cfg, int N,
                         uint64_t hash) {
  std::ostringstream ss;
  ss << opt.out_dir << "/weights_d" << cfg.d << "_N" << N << "_" << std::hex
     << hash << ".bin";
  return ss.str();
}

RunConfig load_config(const CliOptions& opt) {
  RunConfig cfg = RunConfig::from_json_file(opt.config_path);
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  return cfg;
}

/// Load the cached table when its header hash matches, otherwise build
/// and save it. Refuses to clobber a mismatched cache unless forced.
WeightTable ensure_weights(const CliOptions& opt, const RunConfig& cfg,
                           const KernelSpec& spec, const Domain& dom,
                           const QuadratureRule& quad, bool verbose) {
  const uint64_t hash = spec.hash(dom, quad);
  const std::string path = weights_path(opt, cfg, dom.N, hash);
  if (fs::exists(path)) {
    try {
      WeightTable G = load_weights(path, hash);
      if (verbose) std::cout << "weights: cache hit " << path << "\n";
      return G;
    } catch (const std::exception& e) {
      if (!opt.force)
        throw std::runtime_error(std::string("weights: cache mismatch at ") +
                                 path + " (" + e.what() +
                                 "); rerun with --force to rebuild");
      if (verbose)
        std::cout << "weights: cache mismatch, rebuilding (--force)\n";
    }
  }
  const auto start = std::chrono::steady_clock::now();
  WeightTable G = precompute_weights(spec, dom, quad);
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - start;
  fs::create_directories(fs::path(path).parent_path());
  save_weights(G, path, quad);
  if (verbose)
    std::cout << "weights: " << G.lattice() << "^2 entries in " << dt.count()
              << " s, diagonal residual " << G.diagonal_residual() << "\n";
  return G;
}

std::pair<std::vector<double>, std::vector<double>> collocation_rule(
    const RunConfig& cfg) {
  const int n = cfg.n_collocation > 0 ? cfg.n_collocation
                                      : std::max(1, cfg.K);
  auto [nodes, weights] = gauss_legendre(n, -1.0, 1.0);
  for (auto& w : weights) w *= 0.5;  // uniform density on [-1,1]
  return {nodes, weights};
}

void dump_final_state(const std::string& path, const SpectralField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "n1,n2,re,im\n";
  const int N = f.domain.N;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      out << n1 << ',' << n2 << ','
          << format_csv_value(f.at(n1, n2).real()) << ','
          << format_csv_value(f.at(n1, n2).imag()) << '\n';
}

int cmd_weights(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  const Domain dom = cfg.make_domain();
  const QuadratureRule quad = cfg.make_quadrature(dom);
  const KernelSpec spec = cfg.make_kernel();
  ensure_weights(opt, cfg, spec, dom, quad, true);
  return kExitOk;
}

int cmd_run(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  const Domain dom = cfg.make_domain();
  const QuadratureRule quad = cfg.make_quadrature(dom);
  const KernelSpec spec = cfg.make_kernel();
  const WeightTable G = ensure_weights(opt, cfg, spec, dom, quad, true);
  fs::create_directories(cfg.out_dir);
  const SpectralField f0 = project_initial(cfg.initial_fn(), dom, quad.grid_M);

  if (cfg.K == 0) {
    const Trajectory traj = run_deterministic(f0, G, cfg.solver);
    write_trajectory_csv(cfg.out_dir + "/trajectory.csv", dom.N, traj.times,
                         traj.diagnostics);
    dump_final_state(cfg.out_dir + "/final_state.csv", traj.final_state());
    double drift = 0.0;
    const double m0 = traj.diagnostics.front().mass;
    for (const auto& rec : traj.diagnostics)
      drift = std::max(drift, std::abs(rec.mass - m0) / std::abs(m0));
    std::cout << "run: " << traj.times.size() << " snapshots, relative mass "
              << "drift " << drift << "\n";
    if (traj.blew_up) {
      std::cerr << "run: blow-up at t = " << traj.blow_up_t
                << "; last snapshot saved\n";
      return kExitBlowUp;
    }
    return kExitOk;
  }

  if (cfg.uq_mode == UqMode::Galerkin) {
    const STensor S = build_s_tensor(cfg.lambda, cfg.K, quad);
    GpcField F0(dom, cfg.K);
    F0.modes[0] = f0;
    const GpcTrajectory traj = run_gpc(F0, G, S, cfg.solver);
    write_trajectory_csv(cfg.out_dir + "/trajectory.csv", dom.N, traj.times,
                         traj.diagnostics);
    dump_final_state(cfg.out_dir + "/final_state.csv",
                     traj.final_state().modes[0]);
    double drift = 0.0;
    const auto& m0 = traj.diagnostics.front().mode_mass;
    for (const auto& rec : traj.diagnostics)
      for (size_t k = 0; k < m0.size(); ++k)
        drift = std::max(drift, std::abs(rec.mode_mass[k] - m0[k]));
    std::cout << "run: chaos order " << cfg.K << ", max per-coefficient mass "
              << "drift " << drift << "\n";
    if (traj.blew_up) {
      std::cerr << "run: blow-up at t = " << traj.blow_up_t << "\n";
      return kExitBlowUp;
    }
    return kExitOk;
  }

  // Collocation ensemble; the mean trajectory is the Gauss-weighted
  // combination of the per-node runs.
  const auto [z_nodes, z_weights] = collocation_rule(cfg);
  auto f0_param = [&](double) { return f0; };
  const CollocationResult res =
      run_collocation(f0_param, z_nodes, G, cfg.lambda, cfg.solver);
  bool any_blow = false;
  for (size_t i = 0; i < res.trajectories.size(); ++i)
    if (res.trajectories[i].blew_up) {
      any_blow = true;
      std::cerr << "run: node z = " << z_nodes[i] << " blew up at t = "
                << res.trajectories[i].blow_up_t << "\n";
    }
  const size_t n_snap = res.trajectories.front().times.size();
  std::vector<DiagnosticsRecord> mean_diag;
  for (size_t s = 0; s < n_snap; ++s) {
    SpectralField mean(dom, true);
    for (size_t i = 0; i < z_nodes.size(); ++i) {
      if (res.trajectories[i].states.size() <= s) continue;
      for (size_t n = 0; n < mean.coeffs.size(); ++n)
        mean.coeffs[n] +=
            z_weights[i] * res.trajectories[i].states[s].coeffs[n];
    }
    mean_diag.push_back(diagnose(mean, res.trajectories.front().times[s]));
  }
  write_trajectory_csv(cfg.out_dir + "/trajectory.csv", dom.N,
                       res.trajectories.front().times, mean_diag);
  std::cout << "run: " << z_nodes.size() << " collocation nodes\n";
  return any_blow ? kExitBlowUp : kExitOk;
}

int cmd_convergence(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  if (cfg.N_list.empty()) {
    std::cerr << "convergence: config must provide convergence.N_list\n";
    return kExitUsage;
  }
  const KernelSpec spec = cfg.make_kernel();
  fs::create_directories(cfg.out_dir);

  ConvergenceStudy study;
  if (cfg.reference == "bkw") {
    // Gate the reference profile before trusting it.
    const Domain vdom(cfg.d, cfg.L, cfg.R, cfg.N);
    const QuadratureRule vquad =
        QuadratureRule::make(vdom, 0, 32, 32, 32, 0, 0);
    const BkwVerification ver = verify_bkw(
        cfg.bkw_params(), spec, vdom, {0.0, cfg.solver.t_final}, vquad);
    std::cout << "convergence: reference residual " << ver.max_residual
              << "\n";
    if (ver.max_residual > 1e-4) {
      std::cerr << "convergence: reference profile rejected (residual "
                << ver.max_residual << " > 1e-4)\n";
      return kExitAssertion;
    }
    study = convergence_study_bkw(cfg.bkw_params(), spec, cfg.L, cfg.N_list,
                                  cfg.solver);
  } else {
    const int maxN = *std::max_element(cfg.N_list.begin(), cfg.N_list.end());
    const int N_ref = cfg.N_ref > 0 ? cfg.N_ref : 2 * maxN;
    study = convergence_study_self(cfg.initial_fn(), spec, cfg.L, cfg.N_list,
                                   N_ref, cfg.solver);
  }
  write_convergence_csv(cfg.out_dir + "/convergence.csv", study);
  for (const auto& row : study.rows)
    std::cout << "N = " << row.N << "  error = " << row.l2_error
              << "  order = " << row.fitted_order << "\n";
  if (cfg.N_list.size() >= 2 && !study.errors_decreasing) {
    std::cerr << "convergence: error sequence is not decreasing\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_uq(const CliOptions& opt) {
  const RunConfig cfg = load_config(opt);
  if (cfg.K < 1) {
    std::cerr << "uq: config must set uq.K >= 1\n";
    return kExitUsage;
  }
  const Domain dom = cfg.make_domain();
  const QuadratureRule quad = cfg.make_quadrature(dom);
  const KernelSpec spec = cfg.make_kernel();
  const WeightTable G = ensure_weights(opt, cfg, spec, dom, quad, true);
  fs::create_directories(cfg.out_dir);
  const SpectralField f0 = project_initial(cfg.initial_fn(), dom, quad.grid_M);

  const STensor S = build_s_tensor(cfg.lambda, cfg.K, quad);
  GpcField F0(dom, cfg.K);
  F0.modes[0] = f0;
  const GpcTrajectory gal = run_gpc(F0, G, S, cfg.solver);
  if (gal.blew_up) {
    std::cerr << "uq: Galerkin run blew up at t = " << gal.blow_up_t << "\n";
    return kExitBlowUp;
  }

  const auto [z_nodes, z_weights] = collocation_rule(cfg);
  auto f0_param = [&](double) { return f0; };
  const CollocationResult col =
      run_collocation(f0_param, z_nodes, G, cfg.lambda, cfg.solver);
  double max_diff = 0.0;
  for (size_t i = 0; i < z_nodes.size(); ++i) {
    if (col.trajectories[i].blew_up) {
      std::cerr << "uq: node z = " << z_nodes[i] << " blew up\n";
      return kExitBlowUp;
    }
    max_diff = std::max(
        max_diff, l2_distance(reconstruct(gal.final_state(), z_nodes[i]),
                              col.trajectories[i].final_state()));
  }
  std::cout << "uq: max L2 gap between Galerkin reconstruction and "
            << "collocation at the Gauss nodes: " << max_diff << "\n";

  const GpcStatistics st = gpc_statistics(gal.final_state());
  double max_var = 0.0;
  for (double v : st.variance_field) max_var = std::max(max_var, v);
  std::cout << "uq: mean mass " << st.mean.mass() << ", max pointwise "
            << "variance " << max_var << "\n";
  write_trajectory_csv(cfg.out_dir + "/uq_trajectory.csv", dom.N, gal.times,
                       gal.diagnostics);
  dump_final_state(cfg.out_dir + "/uq_mean.csv", st.mean);
  return kExitOk;
}

int cmd_verify(const CliOptions& opt) {
  RunConfig cfg;
  try {
    cfg = load_config(opt);
  } catch (const ConfigError& e) {
    // A kernel whose random factor can go nonpositive fails construction;
    // report that as the positivity check rather than a usage error.
    const std::string msg = e.what();
    if (msg.find("|eps| < 1") != std::string::npos) {
      std::cout << "kernel positivity: FAIL (" << msg << ")\n";
      return kExitAssertion;
    }
    throw;
  }
  const Domain dom = cfg.make_domain();
  const QuadratureRule quad = cfg.make_quadrature(dom);
  const KernelSpec spec = cfg.make_kernel();
  bool ok = true;

  const AssumptionReport rep = check_assumptions(spec, 2);
  std::cout << "kernel cutoff integral: " << rep.cutoff_integral << "  ["
            << (rep.cutoff_integral > 0.0 ? "pass" : "FAIL") << "]\n";
  std::cout << "kernel z-derivative bound: " << rep.C_b << "  [pass]\n";
  std::cout << "kernel positivity: " << (rep.positive ? "pass" : "FAIL")
            << "\n";
  ok = ok && rep.cutoff_integral > 0.0 && rep.positive;

  const std::vector<int> N_list = {4, 8, 12, 16};
  const InitialConditionsReport icr = check_initial_conditions(
      cfg.initial_fn(), cfg.d, cfg.L, cfg.R, N_list);
  double max_gap = 0.0;
  for (const auto& row : icr.rows)
    max_gap = std::max(max_gap, std::abs(row.mass_gap));
  std::cout << "initial data: mass gap " << max_gap << ", L2 ratio "
            << (icr.l2_ok ? "pass" : "FAIL") << ", L1 threshold from N = "
            << icr.located_N0 << ", negative part "
            << (icr.neg_decreasing ? "decreasing" : "NOT decreasing") << "\n";
  ok = ok && icr.l2_ok && icr.located_N0 >= 0;

  if (cfg.K > 0 && cfg.mixed_r > cfg.K) {
    std::cerr << "mixed norms: requested derivative order " << cfg.mixed_r
              << " exceeds the chaos order " << cfg.K << "\n";
    return kExitAssertion;
  }

  if (cfg.kinetic == "maxwell") {
    const QuadratureRule vquad =
        QuadratureRule::make(dom, 0, 32, 32, 32, 0, 0);
    const BkwVerification ver =
        verify_bkw(cfg.bkw_params(), spec, dom, {0.0, 1.0}, vquad);
    const bool bkw_ok = ver.max_residual <= 1e-4;
    std::cout << "reference profile residual: " << ver.max_residual << "  ["
              << (bkw_ok ? "pass" : "FAIL") << "], mass drift "
              << ver.mass_drift << ", energy drift " << ver.energy_drift
              << "\n";
    ok = ok && bkw_ok;
  }

  // Bilinear-bound spot check on random coefficient fields.
  {
    const Domain sdom(cfg.d, cfg.L, cfg.R, 6);
    const QuadratureRule squad = QuadratureRule::make(sdom);
    const WeightTable G = precompute_weights(spec, sdom, squad);
    const double bound = bilinear_bound_constant(spec);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      SpectralField g(sdom, true), f(sdom, true);
      for (int n1 = 0; n1 <= sdom.N; ++n1)
        for (int n2 = -sdom.N; n2 <= sdom.N; ++n2) {
          if (n1 == 0 && n2 < 0) continue;
          const cplx c(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
          g.at(n1, n2) = c;
          g.at(-n1, -n2) = std::conj(c);
          const cplx c2(unif(rng), (n1 == 0 && n2 == 0) ? 0.0 : unif(rng));
          f.at(n1, n2) = c2;
          f.at(-n1, -n2) = std::conj(c2);
        }
      const SpectralField q = collision_bilinear(G, g, f);
      const FieldNorms gn = norms(g);
      worst = std::max(worst, l2_norm(q) / (gn.l1 * l2_norm(f)));
    }
    const bool bil_ok = worst <= bound;
    std::cout << "bilinear ratio sup: " << worst << " vs bound " << bound
              << "  [" << (bil_ok ? "pass" : "FAIL") << "]\n";
    ok = ok && bil_ok;
  }

  std::cout << (ok ? "verify: all checks passed\n"
                   : "verify: some checks FAILED\n");
  return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for the space-homogeneous collisional "
               "kinetic equation with an uncertain kernel"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--config", opt.config_path, "Path to the JSON config")
      ->envname("BOLTSPEC_CONFIG");
  app.add_option("--out", opt.out_dir, "Output directory override");
  app.add_flag("--force", opt.force, "Rebuild mismatched weight caches");
  app.add_option("--threads", opt.threads, "Worker thread cap")
      ->check(CLI::PositiveNumber);

  auto* sub_weights =
      app.add_subcommand("weights", "Precompute and cache collision weights");
  auto* sub_run = app.add_subcommand("run", "Integrate one configuration");
  auto* sub_conv =
      app.add_subcommand("convergence", "Spectral convergence study");
  auto* sub_uq =
      app.add_subcommand("uq", "Galerkin vs collocation comparison");
  auto* sub_verify =
      app.add_subcommand("verify", "Assumption and oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (opt.config_path.empty()) {
    std::cerr << "error: --config is required (or set BOLTSPEC_CONFIG)\n";
    return kExitUsage;
  }

  try {
    if (sub_weights->parsed()) return cmd_weights(opt);
    if (sub_run->parsed()) return cmd_run(opt);
    if (sub_conv->parsed()) return cmd_convergence(opt);
    if (sub_uq->parsed()) return cmd_uq(opt);
    if (sub_verify->parsed()) return cmd_verify(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BlowUpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
