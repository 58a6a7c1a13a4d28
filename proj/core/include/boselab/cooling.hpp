#pragma once

#include "boselab/fock.hpp"

#include <string>
#include <vector>

namespace boselab {

// One eigenvalue slot of the two-mode thermal spectrum.
struct SpectralEntry {
  int n1 = 0;
  int n2 = 0;
  int n_total = 0;       // n1 + n2
  double weight = 0.0;   // xi * y^{n1 + alpha n2}
};

// Complete-block truncation of the two-mode thermal spectrum: every (n1, n2)
// with n1 + n2 <= block_count is present (block k holds k + 1 entries),
// nothing above. Entries are ordered by (n_total asc, n1 asc). The analytic
// tail satisfies sum(weights) + tail = 1 to 1e-12.
struct SpectralTable {
  std::vector<SpectralEntry> entries;
  int block_count = 0;
  ThermalSpec spec;
  double tail = 0.0;
};

// block_count >= 1 required; block_count > 5000 throws DimensionOverflow
// (quadratic entry count).
SpectralTable build_spectral_table(const ThermalSpec& spec, int block_count);

// Occupation changes and performance figures of one cooling step. Mode 1 is
// the higher frequency (the cooled mode), mode 2 the lower, alpha their
// ratio in (0, 1].
struct CoolingReport {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double dn = 0.0;           // dn1 + dn2
  double energy_cost = 0.0;  // dn1 + alpha * dn2 (energy in units of omega_1)
  double cop = 0.0;          // -dn / energy_cost when cooling
  bool cop_infinite = false; // |energy_cost| < 1e-14
  double efficiency = 0.0;   // -dn / (|dn1| + |dn2|)
  double otto_bound = 0.0;   // 1 - alpha
  bool tail_warning = false; // table tail exceeded 1e-8
};

// Best occupation change achievable by permuting the spectral weights:
// sorts the weights descending and lays them onto the entry order above
// (total occupation ascending, n1 ascending within each block). Equal
// weights are placed by a stable sort keyed (weight desc, n_total asc,
// n1 asc); the total change is tie-invariant. Throws on an empty table;
// attaches tail_warning when the truncation tail exceeds 1e-8.
CoolingReport optimal_permutation_cool(const SpectralTable& table);

// Closed-form lower bound on -dn from nearest-neighbour swaps only, with
// m = ceil(alpha / (1 - alpha)):
//   ((1 - y) y^{alpha (m+1)} - (1 - y^alpha) y^m) / (1 - y^{1+alpha}).
// Nonnegative, increasing in y, -> (1 - alpha)/(1 + alpha) as y -> 1.
// Requires 0 < y < 1 and 0 < alpha < 1.
double nn_bound_delta_n(double y, double alpha);

// The per-mode pieces behind nn_bound_delta_n, in closed geometric form,
// plus the coefficient-of-performance lower bound
//   1 / ((1 - alpha) (y^{1+alpha}/(1 - y^{1+alpha}) + 1/(1 - y^alpha))).
// dn1 + dn2 == -nn_bound_delta_n(y, alpha) to 1e-10.
struct NnComponents {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double cop_lower_bound = 0.0;
};

NnComponents nn_approx_components(double y, double alpha);

// Small-frequency-ratio asymptotics at inverse temperature beta_omega1 (the
// dimensionless product for the cooled mode) and epsilon = alpha *
// beta_omega1. Three independent evaluations of the same two lattice sums:
//   direct_sum:      term-by-term summation (terms decay like e^{-eps a^2/2})
//   hs_quadrature:   Gaussian-kernel integral representation, adaptive
//                    quadrature on |v| <= 12 sqrt(eps)
//   euler_maclaurin: integral approximation of the sums (order-2 endpoint
//                    corrections, remainder integrals omitted), accurate to
//                    O(eps) and intended for eps << 1
// direct_sum and hs_quadrature agree to 1e-6 across the supported grid.
enum class AsymptoticMethod { direct_sum, hs_quadrature, euler_maclaurin };

struct AsymptoticReport {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double cop = 0.0;
  bool cop_infinite = false;
  double efficiency = 0.0;
};

AsymptoticReport asymptotic_small_alpha(double beta_omega1, double epsilon,
                                        AsymptoticMethod method);

// One row of an alpha sweep at fixed y = e^{-beta omega_1}.
struct SweepRow {
  double alpha = 0.0;
  CoolingReport report;
  bool converged = false;  // dn moves < 1e-9 when block_count doubles
};

// Runs optimal_permutation_cool on each alpha of the grid, with frequencies
// (omega_1, alpha * omega_1) at the given beta. Each row carries a
// convergence flag from a doubled-block re-run.
std::vector<SweepRow> sweep_alpha(double beta, double omega1,
                                  const std::vector<double>& alpha_grid,
                                  int block_count);

}  // namespace boselab
