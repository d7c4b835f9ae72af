#include "boltspec/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace boltspec {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: bad value for key '") + key + "'");
  }
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json j = parse(text);
  RunConfig cfg;

  if (j.contains("domain")) {
    const json& d = j.at("domain");
    cfg.d = get_or(d, "d", 2);
    cfg.N = get_or(d, "N", cfg.N);
    if (d.contains("S")) {
      cfg.S = d.at("S").get<double>();
      cfg.R = 2.0 * *cfg.S;
      const double L_min = 0.5 * (3.0 + std::sqrt(2.0)) * *cfg.S;
      cfg.L = get_or(d, "L", L_min);
    } else {
      cfg.L = get_or(d, "L", 0.0);
      cfg.R = get_or(d, "R", 0.0);
    }
  }

  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    cfg.kinetic = get_or<std::string>(k, "kinetic", "maxwell");
    cfg.gamma = get_or(k, "gamma", 0.0);
    if (k.contains("lambda")) {
      const json& l = k.at("lambda");
      const std::string type = get_or<std::string>(l, "type", "constant");
      if (type == "constant") {
        cfg.lambda = RandomFactor::constant();
      } else if (type == "affine") {
        try {
          cfg.lambda = RandomFactor::affine(get_or(l, "eps", 0.0));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("config: ") + e.what());
        }
      } else {
        throw ConfigError("config: unknown lambda type '" + type + "'");
      }
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    cfg.solver.dt = get_or(s, "dt", cfg.solver.dt);
    cfg.solver.t_final = get_or(s, "t_final", cfg.solver.t_final);
    cfg.solver.record_every = get_or(s, "record_every", 1);
    const std::string integ = get_or<std::string>(s, "integrator", "rk4");
    if (integ == "rk4") {
      cfg.solver.integrator = Integrator::RK4;
    } else if (integ == "euler") {
      cfg.solver.integrator = Integrator::Euler;
    } else {
      throw ConfigError("config: unknown integrator '" + integ + "'");
    }
  }

  if (j.contains("uq")) {
    const json& u = j.at("uq");
    cfg.K = get_or(u, "K", 0);
    cfg.n_collocation = get_or(u, "n_collocation", 0);
    const std::string mode = get_or<std::string>(u, "mode", "galerkin");
    if (mode == "galerkin") {
      cfg.uq_mode = UqMode::Galerkin;
    } else if (mode == "collocation") {
      cfg.uq_mode = UqMode::Collocation;
    } else {
      throw ConfigError("config: unknown uq mode '" + mode + "'");
    }
  }

  if (j.contains("quad")) {
    const json& q = j.at("quad");
    cfg.n_r = get_or(q, "n_r", 0);
    cfg.n_theta = get_or(q, "n_theta", 0);
    cfg.n_sigma = get_or(q, "n_sigma", 0);
    cfg.n_z = get_or(q, "n_z", 0);
    cfg.grid_M = get_or(q, "grid_M", 0);
  }

  if (j.contains("initial")) {
    const json& ic = j.at("initial");
    const std::string type = get_or<std::string>(ic, "type", "bkw");
    if (type == "bkw") {
      cfg.initial = InitialKind::Bkw;
      cfg.bkw_t0 = get_or(ic, "t0", cfg.bkw_t0);
    } else if (type == "gaussian") {
      cfg.initial = InitialKind::Gaussian;
      cfg.gauss_T1 = get_or(ic, "T1", 1.0);
      cfg.gauss_T2 = get_or(ic, "T2", cfg.gauss_T1);
    } else if (type == "harmonic") {
      cfg.initial = InitialKind::Harmonic;
      cfg.harmonic_amp = get_or(ic, "amplitude", 0.5);
      cfg.harmonic_k1 = get_or(ic, "k1", 1);
      cfg.harmonic_k2 = get_or(ic, "k2", 0);
    } else {
      throw ConfigError("config: unknown initial type '" + type + "'");
    }
  }

  if (j.contains("diagnostics"))
    cfg.mixed_r = get_or(j.at("diagnostics"), "r", cfg.mixed_r);

  if (j.contains("convergence")) {
    const json& c = j.at("convergence");
    cfg.N_list = get_or(c, "N_list", std::vector<int>{});
    cfg.reference = get_or<std::string>(c, "reference", "bkw");
    cfg.N_ref = get_or(c, "N_ref", 0);
    if (cfg.reference != "bkw" && cfg.reference != "self")
      throw ConfigError("config: unknown convergence reference '" +
                        cfg.reference + "'");
  }

  if (j.contains("output")) cfg.out_dir = get_or<std::string>(j.at("output"), "dir", ".");

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (d != 2) throw ConfigError("config: only d=2 is supported");
  if (!(L >= R && R > 0.0))
    throw ConfigError("config: geometry requires L >= R > 0");
  if (S) {
    const double L_min = 0.5 * (3.0 + std::sqrt(2.0)) * *S;
    if (R != 2.0 * *S) throw ConfigError("config: S given but R != 2S");
    if (L < L_min * (1.0 - 1e-12))
      throw ConfigError("config: S given but L < (3+sqrt(2))/2 * S");
  }
  if (N < 1) throw ConfigError("config: N must be >= 1");
  if (kinetic != "maxwell" && kinetic != "hard" && kinetic != "modified_soft")
    throw ConfigError("config: unknown kinetic form '" + kinetic + "'");
  if (K < 0) throw ConfigError("config: uq.K must be >= 0");
  if (initial == InitialKind::Gaussian && (gauss_T1 <= 0.0 || gauss_T2 <= 0.0))
    throw ConfigError("config: gaussian temperatures must be positive");
  if (initial == InitialKind::Custom && !custom_initial)
    throw ConfigError("config: custom initial selected but not provided");
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Domain RunConfig::make_domain() const { return make_domain(N); }

Domain RunConfig::make_domain(int N_override) const {
  return Domain(d, L, R, N_override);
}

KernelSpec RunConfig::make_kernel() const {
  if (kinetic == "maxwell") return KernelSpec::maxwell(R, lambda);
  if (kinetic == "hard") return KernelSpec::hard_power(gamma, R, lambda);
  return KernelSpec::modified_soft(gamma, R, d, lambda);
}

QuadratureRule RunConfig::make_quadrature(const Domain& dom) const {
  return QuadratureRule::make(dom, K, n_r, n_theta, n_sigma, n_z, grid_M);
}

std::function<double(double, double)> RunConfig::initial_fn() const {
  switch (initial) {
    case InitialKind::Bkw: {
      const BkwParams p = bkw_params();
      return [p](double v1, double v2) { return bkw(0.0, v1, v2, p); };
    }
    case InitialKind::Gaussian: {
      const double T1 = gauss_T1, T2 = gauss_T2;
      const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(T1 * T2));
      return [=](double v1, double v2) {
        return norm * std::exp(-0.5 * (v1 * v1 / T1 + v2 * v2 / T2));
      };
    }
    case InitialKind::Harmonic: {
      // Band-limited periodic datum: constant plus one cosine mode,
      // scaled to unit mass.
      const double a = harmonic_amp, Lc = L;
      const int k1 = harmonic_k1, k2 = harmonic_k2;
      const double c0 = 1.0 / (4.0 * Lc * Lc);
      return [=](double v1, double v2) {
        return c0 * (1.0 + a * std::cos(std::numbers::pi *
                                        (k1 * v1 + k2 * v2) / Lc));
      };
    }
    case InitialKind::Custom:
      return custom_initial;
  }
  throw ConfigError("config: unreachable initial kind");
}

}  // namespace boltspec
