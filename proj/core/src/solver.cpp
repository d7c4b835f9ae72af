#include "boltspec/solver.hpp"

#include <cmath>
#include <sstream>

namespace boltspec {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("solver: dt must be positive");
  if (!(t_final > 0.0))
    throw std::invalid_argument("solver: t_final must be positive");
  if (dt > t_final) throw std::invalid_argument("solver: dt exceeds t_final");
  if (record_every < 1)
    throw std::invalid_argument("solver: record_every must be >= 1");
}

namespace {

std::string blowup_message(double t, double last_l2) {
  std::ostringstream os;
  os << "solution blew up at t = " << t << " (last finite ||f||_2 = "
     << last_l2 << ")";
  return os.str();
}

bool finite(const SpectralField& f) {
  for (const cplx& c : f.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

bool finite(const GpcField& F) {
  for (const auto& m : F.modes)
    if (!finite(m)) return false;
  return true;
}

void axpy(SpectralField& y, double a, const SpectralField& x) {
  for (size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
}

void axpy(GpcField& Y, double a, const GpcField& X) {
  for (size_t k = 0; k < Y.modes.size(); ++k) axpy(Y.modes[k], a, X.modes[k]);
}

SpectralField lin(const SpectralField& f, double a, const SpectralField& x) {
  SpectralField y = f;
  axpy(y, a, x);
  return y;
}

GpcField lin(const GpcField& F, double a, const GpcField& X) {
  GpcField Y = F;
  axpy(Y, a, X);
  return Y;
}

// Generic explicit step over any state with rhs(state) -> state.
template <typename State, typename Rhs>
State explicit_step(const State& f, double dt, Integrator integrator,
                    const Rhs& rhs) {
  if (integrator == Integrator::Euler) return lin(f, dt, rhs(f));
  const State k1 = rhs(f);
  const State k2 = rhs(lin(f, 0.5 * dt, k1));
  const State k3 = rhs(lin(f, 0.5 * dt, k2));
  const State k4 = rhs(lin(f, dt, k3));
  State out = lin(f, dt / 6.0, k1);
  axpy(out, dt / 3.0, k2);
  axpy(out, dt / 3.0, k3);
  axpy(out, dt / 6.0, k4);
  return out;
}

}  // namespace

BlowUpError::BlowUpError(double t_, double last_l2_)
    : std::runtime_error(blowup_message(t_, last_l2_)), t(t_),
      last_l2(last_l2_) {}

SpectralField step_deterministic(const SpectralField& f, const WeightTable& G,
                                 double dt, Integrator integrator,
                                 double scale) {
  auto rhs = [&](const SpectralField& s) {
    SpectralField q = collision_rhs(G, s);
    if (scale != 1.0)
      for (auto& c : q.coeffs) c *= scale;
    return q;
  };
  SpectralField out = explicit_step(f, dt, integrator, rhs);
  if (!finite(out)) throw BlowUpError(0.0, l2_norm(f));
  return out;
}

GpcField step_gpc(const GpcField& F, const WeightTable& G, const STensor& S,
                  double dt, Integrator integrator) {
  auto rhs = [&](const GpcField& s) { return gpc_collision_rhs(G, S, s); };
  GpcField out = explicit_step(F, dt, integrator, rhs);
  if (!finite(out)) throw BlowUpError(0.0, l2_norm(F.modes[0]));
  return out;
}

namespace {

// Shared stepping loop: State is SpectralField or GpcField.
template <typename Traj, typename State, typename Step>
Traj run_loop(const State& f0, const SolverConfig& cfg, const Step& step) {
  cfg.validate();
  Traj traj;
  const int n_steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));
  State f = f0;
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(f);
  traj.diagnostics.push_back(diagnose(f, t));
  for (int s = 1; s <= n_steps; ++s) {
    try {
      f = step(f);
    } catch (const BlowUpError&) {
      traj.blew_up = true;
      traj.blow_up_t = t + cfg.dt;
      return traj;
    }
    t = s * cfg.dt;
    if (s % cfg.record_every == 0 || s == n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(f);
      traj.diagnostics.push_back(diagnose(f, t));
    }
  }
  return traj;
}

}  // namespace

Trajectory run_deterministic(const SpectralField& f0, const WeightTable& G,
                             const SolverConfig& cfg, double scale) {
  return run_loop<Trajectory>(f0, cfg, [&](const SpectralField& f) {
    return step_deterministic(f, G, cfg.dt, cfg.integrator, scale);
  });
}

GpcTrajectory run_gpc(const GpcField& F0, const WeightTable& G,
                      const STensor& S, const SolverConfig& cfg) {
  return run_loop<GpcTrajectory>(F0, cfg, [&](const GpcField& F) {
    return step_gpc(F, G, S, cfg.dt, cfg.integrator);
  });
}

CollocationResult run_collocation(
    const std::function<SpectralField(double)>& f0_param,
    const std::vector<double>& z_nodes, const WeightTable& G,
    const RandomFactor& lambda, const SolverConfig& cfg) {
  CollocationResult res;
  res.z_nodes = z_nodes;
  res.trajectories.reserve(z_nodes.size());
  for (double z : z_nodes) {
    if (z < -1.0 || z > 1.0)
      throw std::invalid_argument("run_collocation: node outside [-1,1]");
    res.trajectories.push_back(
        run_deterministic(f0_param(z), G, cfg, lambda(z)));
  }
  return res;
}

}  // namespace boltspec
