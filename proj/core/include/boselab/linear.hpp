#pragma once

#include "boselab/fock.hpp"
#include "boselab/rng.hpp"

namespace boselab {

// Linear (Bogoliubov) map on N modes:
//   a_i -> sum_k S_ik a_k + R_ik a_k^dagger + f_i.
// A physical map satisfies S S^dag - R R^dag = I and S R^T = R S^T.
struct BogoliubovMap {
  Matrix S;
  Matrix R;
  Vector f;

  int num_modes() const { return static_cast<int>(S.rows()); }
};

// Gaussian-moment bookkeeping for a state:
//   m_i = <a_i>,  N_ij = <a_i^dag a_j>,  A_ij = <a_i a_j>.
// N is Hermitian PSD, A symmetric. Mode occupations are the diagonal of N.
struct MomentState {
  Vector m;
  Matrix N;
  Matrix A;

  int num_modes() const { return static_cast<int>(m.size()); }

  static MomentState vacuum(int modes);
  static MomentState thermal(const ThermalSpec& spec);
  static MomentState coherent(const Vector& amplitudes);
};

// The four constraint residuals (max abs entry each):
//   primary:   S S^dag - R R^dag - I   and   S R^T - R S^T
//   derived:   S^dag S - R^T conj(R) - I   and   S^dag R - R^T conj(S)
struct SymplecticResiduals {
  double left_normal = 0.0;    // |S S^dag - R R^dag - I|
  double left_anomalous = 0.0; // |S R^T - R S^T|
  double right_normal = 0.0;   // |S^dag S - R^T conj(R) - I|
  double right_anomalous = 0.0;// |S^dag R - R^T conj(S)|

  double max() const;
};

SymplecticResiduals symplectic_residuals(const BogoliubovMap& map);

// Throws PreconditionViolation when any residual exceeds 1e-10.
void validate_symplectic(const BogoliubovMap& map);

// Random physical map drawn as passive, squeeze, passive, displace:
//   S = U2 diag(cosh r_i) U1,  R = U2 diag(e^{i theta_i} sinh r_i) conj(U1),
// with r_i uniform on [0, squeeze_budget], |f_i| <= displacement_budget.
// Budgets (0, 0) give a passive map (R = 0, f = 0). Always symplectic by
// construction; validated before return.
BogoliubovMap random_bogoliubov(Rng& rng, int modes, double squeeze_budget,
                                double displacement_budget);

// Exact second-moment propagation of (m, N, A) through a map.
MomentState propagate(const BogoliubovMap& map, const MomentState& in);

// The class of states whose number change under any physical map decomposes
// into the three certified nonnegative pieces: m = 0 and A = 0 within tol.
// With require_diagonal_n, N must also be diagonal within tol (the
// entropy-grade version of the same condition). The report names the first
// failed condition and its worst entry.
struct DiagonalityReport {
  bool ok = true;
  std::string violation;  // empty when ok; otherwise names condition + entry
  double worst = 0.0;
};

DiagonalityReport generalized_diagonal_report(const MomentState& state,
                                              double tol = 1e-10,
                                              bool require_diagonal_n = false);

bool is_generalized_diagonal(const MomentState& state, double tol = 1e-10,
                             bool require_diagonal_n = false);

// Certified decomposition of the total-number change for a generalized
// diagonal input. Each term is individually nonnegative (N is PSD), which is
// the whole monotonicity argument:
//   delta = sum_i |f_i|^2  +  sum_ik |R_ik|^2  +  2 Re tr(R^* N^T R^T).
struct NumberChange {
  double displacement_term = 0.0;  // sum_i |f_i|^2
  double spontaneous_term = 0.0;   // sum_ik |R_ik|^2
  double stimulated_term = 0.0;    // 2 Re tr(R^* N^T R^T)
  double total = 0.0;              // the three terms summed
};

// Requires is_generalized_diagonal(in); throws PreconditionViolation
// otherwise. total agrees with the moment-propagated change
// tr N' - tr N to 1e-10 (asserted by the test suite, not rechecked here).
NumberChange delta_total_number(const BogoliubovMap& map, const MomentState& in);

// Dispersion of the non-Hermitian mode operator, computed two ways:
//   number_form     = <a^dag a> + 1/2 - |<a>|^2
//   quadrature_form = <x^2> - <x>^2 + <y^2> - <y>^2 with a = x + i y,
//                     x = (a + a^dag)/2, y = (a - a^dag)/(2i), so
//                     <x^2> = (2 Re A_ii + 2 N_ii + 1)/4 (-Re A for y).
// The two agree to 1e-10 on any consistent moment set; both are 1/2 for
// vacuum and for every coherent state. The sum over modes can decrease
// under a physical map even while the total occupation grows.
struct Dispersion {
  double number_form = 0.0;
  double quadrature_form = 0.0;
};

Dispersion mode_dispersion(const MomentState& state, int mode);

// Smallest eigenvalue of the 2N x 2N mean-subtracted second-moment block
// matrix [[Ntil^T + I, Atil], [conj(Atil), Ntil]] with Ntil_ij = N_ij -
// conj(m_i) m_j and Atil_ij = A_ij - m_i m_j. Physical moment sets give
// >= -1e-10 (it is a Gram matrix of the fluctuation operators).
double covariance_min_eigenvalue(const MomentState& state);

// sum_i omega_i (N'_ii - N_ii) for the given mode frequencies. No sign
// contract: passive swaps can lower it, squeezing from vacuum raises it.
double energy_change(const BogoliubovMap& map, const MomentState& in,
                     const std::vector<double>& omegas);

}  // namespace boselab
