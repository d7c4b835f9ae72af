#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boltspec/collision.hpp"
#include "boltspec/diagnostics.hpp"
#include "boltspec/gpc.hpp"

namespace boltspec {

enum class Integrator { RK4, Euler };

struct SolverConfig {
  double dt = 0.01;
  double t_final = 1.0;
  Integrator integrator = Integrator::RK4;
  int record_every = 1;

  void validate() const;
};

/// Nonfinite coefficients during stepping; carries the time and the last
/// finite L2 norm so callers can report where the run died.
struct BlowUpError : std::runtime_error {
  double t;
  double last_l2;
  BlowUpError(double t_, double last_l2_);
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<DiagnosticsRecord> diagnostics;
  bool blew_up = false;
  double blow_up_t = 0.0;

  const SpectralField& final_state() const { return states.back(); }
};

struct GpcTrajectory {
  std::vector<double> times;
  std::vector<GpcField> states;
  std::vector<DiagnosticsRecord> diagnostics;
  bool blew_up = false;
  double blow_up_t = 0.0;

  const GpcField& final_state() const { return states.back(); }
};

/// One explicit step of the coefficient ODE df/dt = scale * Q(f,f).
/// The scale hook carries the per-node lambda(z) factor of collocation
/// runs, so the single lambda=1 weight table serves every node.
SpectralField step_deterministic(const SpectralField& f, const WeightTable& G,
                                 double dt, Integrator integrator,
                                 double scale = 1.0);

/// One explicit step of the coupled chaos system.
GpcField step_gpc(const GpcField& F, const WeightTable& G, const STensor& S,
                  double dt, Integrator integrator);

/// Fixed-step integration to t_final with diagnostics every record_every
/// steps. On blow-up the trajectory ends at the last finite snapshot with
/// the flag set.
Trajectory run_deterministic(const SpectralField& f0, const WeightTable& G,
                             const SolverConfig& cfg, double scale = 1.0);

GpcTrajectory run_gpc(const GpcField& F0, const WeightTable& G,
                      const STensor& S, const SolverConfig& cfg);

struct CollocationResult {
  std::vector<double> z_nodes;
  std::vector<Trajectory> trajectories;  // one per node; blow-up flagged
};

/// Independent per-z solves with the shared weight table scaled by
/// lambda(z). A node blow-up aborts only that node.
CollocationResult run_collocation(
    const std::function<SpectralField(double)>& f0_param,
    const std::vector<double>& z_nodes, const WeightTable& G,
    const RandomFactor& lambda, const SolverConfig& cfg);

}  // namespace boltspec
