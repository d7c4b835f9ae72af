#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boltspec/domain.hpp"
#include "boltspec/kernel.hpp"
#include "boltspec/oracle.hpp"
#include "boltspec/quadrature.hpp"
#include "boltspec/solver.hpp"

namespace boltspec {

/// Malformed or inconsistent configuration; maps to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InitialKind { Bkw, Gaussian, Harmonic, Custom };
enum class UqMode { Galerkin, Collocation };

/// Everything one experiment needs, read from a single JSON file and
/// validated before any compute. Geometry accepts either {L, R} directly
/// or a support radius S with R = 2S, L >= (3+sqrt(2))/2 * S.
struct RunConfig {
  // domain
  int d = 2;
  double L = 0.0;
  double R = 0.0;
  int N = 8;
  std::optional<double> S;

  // kernel
  std::string kinetic = "maxwell";  // maxwell | hard | modified_soft
  double gamma = 0.0;
  RandomFactor lambda;

  // solver
  SolverConfig solver;

  // uq
  int K = 0;
  UqMode uq_mode = UqMode::Galerkin;
  int n_collocation = 0;  // 0: derived from K

  // quadrature overrides (0 keeps the N-adaptive defaults)
  int n_r = 0, n_theta = 0, n_sigma = 0, n_z = 0, grid_M = 0;

  // initial condition
  InitialKind initial = InitialKind::Bkw;
  double bkw_t0 = 2.0;
  double gauss_T1 = 1.0, gauss_T2 = 1.0;
  double harmonic_amp = 0.5;
  int harmonic_k1 = 1, harmonic_k2 = 0;
  std::function<double(double, double)> custom_initial;

  // diagnostics
  int mixed_r = 2;  // max z-derivative order for the mixed norms

  // convergence study
  std::vector<int> N_list;
  std::string reference = "bkw";  // bkw | self
  int N_ref = 0;                  // self-reference resolution

  // output
  std::string out_dir = ".";

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);

  void validate() const;

  Domain make_domain() const;
  Domain make_domain(int N_override) const;
  KernelSpec make_kernel() const;
  QuadratureRule make_quadrature(const Domain& dom) const;
  /// Pointwise initial condition at time 0.
  std::function<double(double, double)> initial_fn() const;
  BkwParams bkw_params() const { return BkwParams{bkw_t0}; }
};

}  // namespace boltspec
