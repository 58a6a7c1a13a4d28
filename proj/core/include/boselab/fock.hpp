#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace boselab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct DimensionOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated multimode Fock space. cutoff(i) is the highest retained occupation
// of mode i, so mode i contributes cutoff(i)+1 levels. Basis index is mixed
// radix with mode 0 as the slowest digit.
class FockSpace {
 public:
  explicit FockSpace(std::vector<int> cutoffs, long max_dimension = 8192);

  int num_modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(mode); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  long dim() const { return dim_; }
  long max_dimension() const { return max_dimension_; }

  long index(const std::vector<int>& occupation) const;
  int occupation(long index, int mode) const;

 private:
  std::vector<int> cutoffs_;
  std::vector<long> strides_;
  long dim_ = 1;
  long max_dimension_;
};

// Thermal context: inverse temperature and mode frequencies. Storage keeps the
// caller's mode order (other modules address modes by caller labels); the
// alpha < 1 convention for two-mode cooling is exposed through the sorted-view
// accessors below, with modes_swapped() recording whether that view reverses
// the caller order.
class ThermalSpec {
 public:
  ThermalSpec(double beta, std::vector<double> omegas);

  double beta() const { return beta_; }
  int num_modes() const { return static_cast<int>(omegas_.size()); }
  double omega(int mode) const { return omegas_.at(mode); }
  double y(int mode) const;                 // e^{-beta omega}
  double mean_occupation(int mode) const;   // 1/(e^{beta omega} - 1)

  // Two-mode cooling convention (throws unless num_modes() == 2):
  bool modes_swapped() const;   // true when omega(1) > omega(0)
  double omega_big() const;     // omega_1 of the cooling convention
  double omega_small() const;   // omega_2 of the cooling convention
  double alpha() const;         // omega_small/omega_big, in (0, 1]
  double y_big() const;         // y = e^{-beta omega_big}
  double y_small() const;       // y^alpha
  double xi() const;            // (1 - y)(1 - y^alpha)

 private:
  double beta_;
  std::vector<double> omegas_;
};

// Hermitian density matrix on a truncated space, trace renormalized to 1.
// trace_deficit is the probability mass the truncation removed from the
// untruncated distribution; raw trace + trace_deficit = 1 is asserted at
// construction, before renormalization.
struct TruncatedState {
  FockSpace space;
  Matrix rho;
  double trace_deficit = 0.0;
};

Matrix annihilation_matrix(const FockSpace& space, int mode);
Matrix creation_matrix(const FockSpace& space, int mode);
Matrix number_matrix(const FockSpace& space, int mode);

TruncatedState thermal_state(const FockSpace& space, const ThermalSpec& spec);

// Exact probability mass of the discarded states for a thermal distribution,
// in closed form: 1 - prod_i (1 - y_i^{cutoff_i + 1}).
double tail_mass(const ThermalSpec& spec, const std::vector<int>& cutoffs);

// Smallest per-mode cutoffs whose analytic thermal tail is below tail_target.
std::vector<int> choose_cutoffs(const ThermalSpec& spec, double tail_target = 1e-10);

// s(n) = (1+n) ln(1+n) - n ln n, with s(0) = 0. Strictly increasing, concave.
double bose_entropy_scalar(double n);

// max |rho - rho^dagger| over entries.
double hermiticity_residual(const Matrix& rho);

}  // namespace boselab
