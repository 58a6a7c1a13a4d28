#include "boselab/fock.hpp"

#include <algorithm>
#include <cmath>

namespace boselab {

FockSpace::FockSpace(std::vector<int> cutoffs, long max_dimension)
    : cutoffs_(std::move(cutoffs)), max_dimension_(max_dimension) {
  if (cutoffs_.empty()) throw std::invalid_argument("FockSpace: no modes");
  strides_.assign(cutoffs_.size(), 1);
  // Mode 0 is the slowest mixed-radix digit, so strides grow from the back.
  for (int m = static_cast<int>(cutoffs_.size()) - 1; m >= 0; --m) {
    if (cutoffs_[m] < 0) throw std::invalid_argument("FockSpace: negative cutoff");
    strides_[m] = dim_;
    dim_ *= cutoffs_[m] + 1;
    if (dim_ > max_dimension_)
      throw DimensionOverflow("FockSpace: dimension " + std::to_string(dim_) +
                              " exceeds configured maximum " + std::to_string(max_dimension_));
  }
}

long FockSpace::index(const std::vector<int>& occupation) const {
  if (occupation.size() != cutoffs_.size())
    throw std::invalid_argument("FockSpace::index: mode count mismatch");
  long idx = 0;
  for (size_t m = 0; m < cutoffs_.size(); ++m) {
    if (occupation[m] < 0 || occupation[m] > cutoffs_[m])
      throw std::out_of_range("FockSpace::index: occupation out of range");
    idx += strides_[m] * occupation[m];
  }
  return idx;
}

int FockSpace::occupation(long index, int mode) const {
  return static_cast<int>((index / strides_.at(mode)) % (cutoffs_[mode] + 1));
}

ThermalSpec::ThermalSpec(double beta, std::vector<double> omegas)
    : beta_(beta), omegas_(std::move(omegas)) {
  if (!(beta_ > 0)) throw std::domain_error("ThermalSpec: beta must be > 0");
  if (omegas_.empty()) throw std::invalid_argument("ThermalSpec: no modes");
  for (double w : omegas_)
    if (!(w > 0)) throw std::domain_error("ThermalSpec: omega must be > 0");
}

double ThermalSpec::y(int mode) const { return std::exp(-beta_ * omega(mode)); }

double ThermalSpec::mean_occupation(int mode) const {
  return 1.0 / std::expm1(beta_ * omega(mode));
}

static void require_two_modes(const ThermalSpec& s) {
  if (s.num_modes() != 2)
    throw std::logic_error("ThermalSpec: two-mode accessor on a spec with " +
                           std::to_string(s.num_modes()) + " modes");
}

bool ThermalSpec::modes_swapped() const {
  require_two_modes(*this);
  return omegas_[1] > omegas_[0];
}

double ThermalSpec::omega_big() const {
  require_two_modes(*this);
  return std::max(omegas_[0], omegas_[1]);
}

double ThermalSpec::omega_small() const {
  require_two_modes(*this);
  return std::min(omegas_[0], omegas_[1]);
}

double ThermalSpec::alpha() const { return omega_small() / omega_big(); }

double ThermalSpec::y_big() const { return std::exp(-beta_ * omega_big()); }

double ThermalSpec::y_small() const { return std::exp(-beta_ * omega_small()); }

double ThermalSpec::xi() const { return (1.0 - y_big()) * (1.0 - y_small()); }

Matrix annihilation_matrix(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.num_modes())
    throw std::out_of_range("annihilation_matrix: bad mode");
  const long d = space.dim();
  Matrix a = Matrix::Zero(d, d);
  std::vector<int> occ(space.num_modes());
  for (long idx = 0; idx < d; ++idx) {
    const int n = space.occupation(idx, mode);
    if (n == 0) continue;
    for (int m = 0; m < space.num_modes(); ++m) occ[m] = space.occupation(idx, m);
    occ[mode] = n - 1;
    a(space.index(occ), idx) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Matrix creation_matrix(const FockSpace& space, int mode) {
  return annihilation_matrix(space, mode).adjoint();
}

Matrix number_matrix(const FockSpace& space, int mode) {
  const long d = space.dim();
  Matrix n = Matrix::Zero(d, d);
  for (long idx = 0; idx < d; ++idx)
    n(idx, idx) = static_cast<double>(space.occupation(idx, mode));
  return n;
}

TruncatedState thermal_state(const FockSpace& space, const ThermalSpec& spec) {
  if (spec.num_modes() != space.num_modes())
    throw std::invalid_argument("thermal_state: spec/space mode count mismatch");
  const long d = space.dim();
  RealVector raw(d);
  double xi_all = 1.0;
  for (int m = 0; m < space.num_modes(); ++m) xi_all *= 1.0 - spec.y(m);
  for (long idx = 0; idx < d; ++idx) {
    double e = 0.0;
    for (int m = 0; m < space.num_modes(); ++m)
      e += spec.beta() * spec.omega(m) * space.occupation(idx, m);
    raw(idx) = xi_all * std::exp(-e);
  }
  const double raw_trace = raw.sum();
  const double deficit = tail_mass(spec, space.cutoffs());
  // raw trace + analytic tail = 1 is a geometric-series identity; a violation
  // means the closed form and the explicit sum disagree.
  if (std::abs(raw_trace + deficit - 1.0) > 1e-10)
    throw std::logic_error("thermal_state: trace + tail != 1");
  TruncatedState st{space, Matrix::Zero(d, d), deficit};
  for (long idx = 0; idx < d; ++idx) st.rho(idx, idx) = raw(idx) / raw_trace;
  return st;
}

double tail_mass(const ThermalSpec& spec, const std::vector<int>& cutoffs) {
  if (static_cast<int>(cutoffs.size()) != spec.num_modes())
    throw std::invalid_argument("tail_mass: cutoff/mode count mismatch");
  double retained = 1.0;
  for (int m = 0; m < spec.num_modes(); ++m)
    retained *= 1.0 - std::pow(spec.y(m), cutoffs[m] + 1);
  return 1.0 - retained;
}

std::vector<int> choose_cutoffs(const ThermalSpec& spec, double tail_target) {
  if (!(tail_target > 0)) throw std::domain_error("choose_cutoffs: target must be > 0");
  const int modes = spec.num_modes();
  const double per_mode = tail_target / modes;
  std::vector<int> cut(modes);
  for (int m = 0; m < modes; ++m) {
    const double ly = std::log(spec.y(m));
    cut[m] = std::max(1, static_cast<int>(std::ceil(std::log(per_mode) / ly)) - 1);
  }
  while (tail_mass(spec, cut) > tail_target)
    for (int m = 0; m < modes; ++m) ++cut[m];
  return cut;
}

double bose_entropy_scalar(double n) {
  if (n < 0) throw std::domain_error("bose_entropy_scalar: n must be >= 0");
  if (n == 0) return 0.0;
  return (1.0 + n) * std::log1p(n) - n * std::log(n);
}

double hermiticity_residual(const Matrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace boselab
