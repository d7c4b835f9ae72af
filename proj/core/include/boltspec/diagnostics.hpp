#pragma once

#include <functional>
#include <string>
#include <vector>

#include "boltspec/gpc.hpp"
#include "boltspec/kernel.hpp"
#include "boltspec/oracle.hpp"
#include "boltspec/spectral_field.hpp"

namespace boltspec {

struct SolverConfig;

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double neg_l2 = 0.0;
  std::vector<double> mode_mass;  // per gPC coefficient (or per z node)
};

DiagnosticsRecord diagnose(const SpectralField& f, double t, int grid_M = 0);

/// Record for a chaos state: scalar norms of the mean field plus the mass
/// of every chaos coefficient (each is separately conserved in time).
DiagnosticsRecord diagnose(const GpcField& F, double t, int grid_M = 0);

/// Per-derivative-order norm triple and the summed totals of the mixed
/// velocity-random norms: value at order l is sup over the z grid of the
/// norm of the l-th z-derivative of the reconstruction.
struct MixedNormReport {
  int r = 0;
  struct Entry {
    double l1 = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
  };
  std::vector<Entry> per_order;  // orders 0..r
  Entry total;                   // sums over orders
};

/// Chebyshev z-grid used for the sup norms when none is supplied.
std::vector<double> default_z_grid(int n = 33);

/// Mixed norms of a chaos state; z-derivatives are exact basis
/// differentiation of the Legendre polynomials. r beyond the expansion
/// order K is a capability error.
MixedNormReport mixed_norms(const GpcField& F, int r,
                            const std::vector<double>& z_grid = {});

/// Collocation variant: derivatives by barycentric interpolation
/// differentiation on the node set. r must stay below the node count.
MixedNormReport mixed_norms_collocation(const std::vector<SpectralField>& states,
                                        const std::vector<double>& z_nodes,
                                        int r,
                                        const std::vector<double>& z_grid = {});

/// Projection-quality report for one truncation level: mass gap, norm
/// ratios against the unprojected data, and the negative-part size.
struct InitialConditionRow {
  int N = 0;
  double mass_gap = 0.0;   // mass(P_N f0) - mass(f0)
  double l2_ratio = 0.0;   // ||P_N f0||_2 / ||f0||_2, must be <= 1
  double l1_ratio = 0.0;   // ||P_N f0||_1 / ||f0||_1, <= 2 past N0
  double neg_l2 = 0.0;     // ||(P_N f0)^-||_2, decreasing toward 0
};

struct InitialConditionsReport {
  std::vector<InitialConditionRow> rows;
  int located_N0 = -1;  // first N from which l1_ratio <= 2 onward
  bool l2_ok = false;   // l2_ratio <= 1 for every N
  bool neg_decreasing = false;
};

/// Checks the admissibility conditions of the projected initial data for
/// each N in the list, on one shared fine quadrature grid.
InitialConditionsReport check_initial_conditions(
    const std::function<double(double, double)>& f0, int d, double L, double R,
    const std::vector<int>& N_list, int grid_M = 0);

struct NegativePartRow {
  int N = 0;
  double t = 0.0;
  double neg_l2 = 0.0;
};

struct NegativePartStudy {
  std::vector<NegativePartRow> rows;  // grouped by N, times increasing
  bool final_nonincreasing = false;   // neg(T) nonincreasing in N (10% slack)
};

/// Runs the solver at each N with shared initial data and horizon and
/// tracks the L2 norm of the negative part over time. The truncation
/// radius comes from the kernel; L fixes the periodic box.
NegativePartStudy negative_part_study(
    const std::function<double(double, double)>& f0, const KernelSpec& spec,
    double L, const std::vector<int>& N_list, const SolverConfig& cfg,
    const std::string& weight_cache_dir = "");

struct ConvergenceRow {
  int N = 0;
  double l2_error = 0.0;
  double fitted_order = 0.0;  // local order vs the previous N; 0 for first
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool errors_decreasing = false;
  bool order_increasing = false;
};

/// Spectral-accuracy study against the exact reference profile: for each
/// N solve to t_final and compare with the projected reference at the
/// final time. The reference must be gated by verify_bkw beforehand.
ConvergenceStudy convergence_study_bkw(const BkwParams& p,
                                       const KernelSpec& spec, double L,
                                       const std::vector<int>& N_list,
                                       const SolverConfig& cfg,
                                       const std::string& weight_cache_dir = "");

/// Self-reference variant: the run at N_ref (>= the largest requested N)
/// serves as the reference; errors compare final states on the common
/// lattice by zero-padding.
ConvergenceStudy convergence_study_self(
    const std::function<double(double, double)>& f0, const KernelSpec& spec,
    double L, const std::vector<int>& N_list, int N_ref,
    const SolverConfig& cfg, const std::string& weight_cache_dir = "");

/// CSV emission: one header row, fixed column order
/// (N,t,mass,l1,l2,h1,neg_l2,error), 17 significant digits; fields a
/// table has nothing to say about are written as 0.
std::string format_csv_value(double x);
void write_trajectory_csv(const std::string& path, int N,
                          const std::vector<double>& times,
                          const std::vector<DiagnosticsRecord>& records);
void write_convergence_csv(const std::string& path,
                           const ConvergenceStudy& study);
void write_negative_part_csv(const std::string& path,
                             const NegativePartStudy& study);

}  // namespace boltspec
