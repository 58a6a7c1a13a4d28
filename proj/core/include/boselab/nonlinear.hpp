#pragma once

#include "boselab/fock.hpp"

#include <array>
#include <string>
#include <vector>

namespace boselab {

// Three-wave-mixing setup on two thermal modes:
//   H = omega_1 n_1 + omega_2 n_2 + g H_int
//   H_int(full) = (a1^dag + a1)(a2^dag + a2)^2 + (a1^dag + a1)^2(a2^dag + a2)
//   H_int(rwa)  = a1 a2^dag^2 + a1^dag a2^2   (resonant words near 2 omega_2
//                                              = omega_1)
// The struct stores physical (beta, omega, g, t). All second-order formulas
// below are written in the rescaled variables w = beta*omega, g' = beta*g,
// t' = t/beta; the conversion happens inside the formula implementations so
// the two parameterizations cannot be mixed by a caller.
enum class InteractionVariant { full, rwa };

struct NonlinearConfig {
  ThermalSpec spec;  // exactly two modes, caller order (omega_1, omega_2)
  double g = 0.0;
  double t = 0.0;
  InteractionVariant variant = InteractionVariant::full;
};

// 4 sin^2(x t / 2) / x^2 with the removable value t^2 at x = 0; the
// second-order time kernel. Continuous in x.
double phi_kernel(double x, double t);

// Dimensionless size of the second-order term, g/Omega * |sin(Omega t / 2)|
// with Omega the smallest relevant detuning:
//   full: min(omega_1, omega_2, |2 omega_1 - omega_2|, |2 omega_2 - omega_1|)
//   rwa:  |2 omega_2 - omega_1|
// Values above 0.3 mean the third-order remainder is no longer a few
// percent; reports carry a warning flag at that threshold.
double validity_estimate(const NonlinearConfig& config);

// Weight of the non-oscillating Phi(omega_1) / Phi(omega_2) contributions.
// The two choices differ by the square of the first moment <2 n + 1>:
//   connected: 4 nbar (nbar + 1)        (variance of 2 n + 1)
//   complete:  8 nbar^2 + 8 nbar + 1    (second moment of 2 n + 1)
// The complete weight is what a direct Dyson evaluation of the full
// interaction produces; the connected weight reproduces the published
// resonance maps. Both are exposed; scans default to connected, the exact
// oracle comparison uses complete.
enum class CTermConvention { connected, complete };

// Second-order occupation changes for the full interaction:
//   dn_k = g^2 [ A_k Phi(w1 + 2 w2) + B_k Phi(w1 - 2 w2) + C_k Phi(w1)
//              + D_k Phi(w2 + 2 w1) + E_k Phi(w2 - 2 w1) + F_k Phi(w2) ]
// (rescaled variables; Phi evaluated at t' = t/beta). The mode-2 row is the
// mode-1 row of the omega_1 <-> omega_2 swapped problem.
struct PerturbativeReport {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double dn = 0.0;
  double validity = 0.0;
  bool validity_warning = false;
};

PerturbativeReport perturbative_delta_n(
    const NonlinearConfig& config,
    CTermConvention convention = CTermConvention::connected);

// Closed-form second order for the rwa variant:
//   dn1 = 8 g^2 sin^2((2 w2 - w1) t/2) / (2 w2 - w1)^2
//         * (e^{w1} - e^{2 w2}) / ((e^{w1} - 1)(e^{w2} - 1)^2)
//   dn2 = -2 dn1 exactly, dn = -dn1.
// When dn < 0 the derived figures cop = 1/(1 - 2 alpha) and efficiency = 1/3
// are attached (alpha = omega_2/omega_1 < 1/2 in the cooling regime).
struct RwaReport {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double dn = 0.0;
  double cop = 0.0;
  double efficiency = 0.0;
  bool cooling = false;
  double validity = 0.0;
  bool validity_warning = false;
};

RwaReport rwa_delta_n(const NonlinearConfig& config);

// Dense H = H0 + g H_int on the truncated space. All matrix elements are
// real; symmetry residual <= 1e-12 by construction.
RealMatrix build_hamiltonian(const NonlinearConfig& config, const FockSpace& space);

// Exact unitary evolution of the truncated thermal state under exp(-iHt),
// via dense symmetric eigendecomposition (full variant) or per-sector
// blocks of the conserved charge 2 n_1 + n_2 (rwa variant; the interaction
// commutes with it, so the Hamiltonian is block diagonal).
struct ExactReport {
  double dn1 = 0.0;
  double dn2 = 0.0;
  double dn = 0.0;
  std::vector<int> cutoffs;   // the cutoffs the reported numbers came from
  bool converged = false;     // last cutoff growth moved dn by < 1e-6
  double last_shift = 0.0;
};

// With empty cutoffs: starts from per-mode max(12, 6 <n>, thermal tail
// <= 1e-8) and doubles until dn moves < 1e-6, reporting the final run;
// throws PreconditionViolation if the dimension guard is hit first. With
// explicit cutoffs: runs once at those cutoffs (thermal tail must be
// <= 1e-8) and once at the halved cutoffs to fill the convergence fields.
ExactReport exact_evolve(const NonlinearConfig& config,
                         std::vector<int> cutoffs = {},
                         long max_dimension = 40000);

// Max-norm of the commutator [q1 n_1 + q2 n_2, H_int] on the truncated
// space: interior restricts rows and columns to occupations at least 2
// below each cutoff (where truncation artifacts cannot reach); full_norm is
// unrestricted. For (q1, q2) = (2, 1) and the rwa variant the interior
// residual is exactly 0; the full variant leaves it O(1). The mirrored
// resonance conserves (1, 2).
struct CommutatorResidual {
  double interior = 0.0;
  double full_norm = 0.0;
};

CommutatorResidual manley_rowe_residual(const FockSpace& space, int q1, int q2,
                                        InteractionVariant variant);

// The eight cubic interaction words and their free-evolution frequencies
// W_w = -(omega_1 d1 + omega_2 d2), where (d1, d2) is the occupation change
// of the word. power_i is the ladder exponent on mode i; raising_i tells
// whether that factor is a creation operator.
struct MonomialWord {
  int power1 = 0;
  bool raising1 = false;
  int power2 = 0;
  bool raising2 = false;
  std::string name;       // e.g. "a1+ a2^2"
  double frequency = 0.0; // W_w for the given mode frequencies
  int d1 = 0;             // occupation change of mode 1
  int d2 = 0;
};

std::array<MonomialWord, 8> monomial_table(double omega1, double omega2);

// Dense matrix of one word on a truncated space (for oracle cross-checks;
// the enumeration below never builds these).
RealMatrix monomial_matrix(const FockSpace& space, const MonomialWord& word);

// Second-order Dyson trace enumeration over ordered word tuples, split by
// how many words act left of rho (l = 2: sectors (2,0), (1,1), (0,2), 64
// ordered pairs each, 192 terms; l = 1: 16 terms, all zero on diagonal
// states). The observable is the total number n_1 + n_2 and the input is
// the truncated thermal state. A term counts as nonzero when its magnitude
// exceeds 1e-12 of the largest magnitude; each nonzero term's operator word
// (the product of its monomials) is checked for Hermiticity. Counts must be
// stable under cutoff doubling or an error is thrown.
struct TraceTerm {
  int sector_left = 0;         // words left of rho
  std::string left_word;       // names of the monomials applied left
  std::string right_word;      // names applied right (inner first)
  double value = 0.0;
  bool hermitian_pair = false; // the combined word equals its adjoint
};

struct EnumerationReport {
  int total_terms = 0;
  int nonzero_terms = 0;
  bool all_hermitian = false;  // every nonzero term's word Hermitian
  std::vector<TraceTerm> nonzero;
};

EnumerationReport enumerate_second_order_terms(const ThermalSpec& spec,
                                               const std::vector<int>& cutoffs,
                                               int l = 2);

// perturbative_delta_n across an alpha grid at fixed omega_1, t, g (rescaled
// inputs: the scan works directly in w = beta omega units with beta = 1).
struct ResonanceRow {
  double alpha = 0.0;
  double dn1 = 0.0;
  double dn2 = 0.0;
  double dn = 0.0;
  bool validity_warning = false;
};

std::vector<ResonanceRow> resonance_scan(double omega1, double t, double g,
                                         const std::vector<double>& alpha_grid,
                                         CTermConvention convention =
                                             CTermConvention::connected);

}  // namespace boselab
