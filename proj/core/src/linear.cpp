#include "boselab/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace boselab {

MomentState MomentState::vacuum(int modes) {
  MomentState s;
  s.m = Vector::Zero(modes);
  s.N = Matrix::Zero(modes, modes);
  s.A = Matrix::Zero(modes, modes);
  return s;
}

MomentState MomentState::thermal(const ThermalSpec& spec) {
  MomentState s = vacuum(spec.num_modes());
  for (int i = 0; i < spec.num_modes(); ++i) s.N(i, i) = spec.mean_occupation(i);
  return s;
}

MomentState MomentState::coherent(const Vector& amplitudes) {
  const int n = static_cast<int>(amplitudes.size());
  MomentState s;
  s.m = amplitudes;
  s.N = amplitudes.conjugate() * amplitudes.transpose();
  s.A = amplitudes * amplitudes.transpose();
  return s;
}

double SymplecticResiduals::max() const {
  return std::max({left_normal, left_anomalous, right_normal, right_anomalous});
}

SymplecticResiduals symplectic_residuals(const BogoliubovMap& map) {
  const auto n = map.S.rows();
  if (map.S.cols() != n || map.R.rows() != n || map.R.cols() != n ||
      map.f.size() != n)
    throw std::invalid_argument("symplectic_residuals: shape mismatch");
  const Matrix I = Matrix::Identity(n, n);
  SymplecticResiduals r;
  r.left_normal = (map.S * map.S.adjoint() - map.R * map.R.adjoint() - I)
                      .cwiseAbs().maxCoeff();
  r.left_anomalous = (map.S * map.R.transpose() - map.R * map.S.transpose())
                         .cwiseAbs().maxCoeff();
  r.right_normal = (map.S.adjoint() * map.S -
                    map.R.transpose() * map.R.conjugate() - I)
                       .cwiseAbs().maxCoeff();
  r.right_anomalous = (map.S.adjoint() * map.R -
                       map.R.transpose() * map.S.conjugate())
                          .cwiseAbs().maxCoeff();
  return r;
}

void validate_symplectic(const BogoliubovMap& map) {
  const SymplecticResiduals r = symplectic_residuals(map);
  if (r.max() > 1e-10) {
    std::ostringstream msg;
    msg << "validate_symplectic: constraint residual " << r.max()
        << " exceeds 1e-10 (left normal " << r.left_normal
        << ", left anomalous " << r.left_anomalous << ", right normal "
        << r.right_normal << ", right anomalous " << r.right_anomalous << ")";
    throw PreconditionViolation(msg.str());
  }
}

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
// of the R diagonal absorbed into Q. Draw order is column-major and fixed;
// outputs are part of the reproducibility contract.
static Matrix haar_unitary(Rng& rng, int n) {
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0) ? d / a : Complex(1, 0);
  }
  return q;
}

BogoliubovMap random_bogoliubov(Rng& rng, int modes, double squeeze_budget,
                                double displacement_budget) {
  if (modes < 1) throw std::invalid_argument("random_bogoliubov: modes < 1");
  if (squeeze_budget < 0 || displacement_budget < 0)
    throw std::invalid_argument("random_bogoliubov: negative budget");
  const Matrix u1 = haar_unitary(rng, modes);
  const Matrix u2 = haar_unitary(rng, modes);
  Vector cosh_d(modes), sinh_d(modes);
  for (int i = 0; i < modes; ++i) {
    const double r = rng.uniform(0.0, squeeze_budget);
    const double theta = rng.uniform(0.0, 6.283185307179586476925286766559);
    cosh_d(i) = std::cosh(r);
    sinh_d(i) = std::polar(std::sinh(r), theta);
  }
  BogoliubovMap map;
  map.S = u2 * cosh_d.asDiagonal() * u1;
  map.R = u2 * sinh_d.asDiagonal() * u1.conjugate();
  map.f = Vector(modes);
  for (int i = 0; i < modes; ++i) {
    const double mag = rng.uniform(0.0, displacement_budget);
    const double phase = rng.uniform(0.0, 6.283185307179586476925286766559);
    map.f(i) = std::polar(mag, phase);
  }
  validate_symplectic(map);
  return map;
}

MomentState propagate(const BogoliubovMap& map, const MomentState& in) {
  const auto n = map.S.rows();
  if (in.m.size() != n)
    throw std::invalid_argument("propagate: map/state mode count mismatch");
  const Matrix I = Matrix::Identity(n, n);
  MomentState out;
  out.m = map.S * in.m + map.R * in.m.conjugate() + map.f;
  out.N = map.S.conjugate() * in.N * map.S.transpose() +
          map.S.conjugate() * in.A.conjugate() * map.R.transpose() +
          map.R.conjugate() * in.A * map.S.transpose() +
          map.R.conjugate() * (in.N.transpose() + I) * map.R.transpose();
  out.A = map.S * in.A * map.S.transpose() +
          map.S * (in.N.transpose() + I) * map.R.transpose() +
          map.R * in.N * map.S.transpose() +
          map.R * in.A.conjugate() * map.R.transpose();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      out.N(i, j) += std::conj(map.f(i)) * out.m(j) +
                     map.f(j) * std::conj(out.m(i)) -
                     std::conj(map.f(i)) * map.f(j);
      out.A(i, j) += map.f(i) * out.m(j) + map.f(j) * out.m(i) -
                     map.f(i) * map.f(j);
    }
  return out;
}

DiagonalityReport generalized_diagonal_report(const MomentState& state,
                                              double tol,
                                              bool require_diagonal_n) {
  DiagonalityReport rep;
  const auto n = state.m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = std::abs(state.m(i));
    if (v > tol && v > rep.worst) {
      rep.ok = false;
      rep.worst = v;
      std::ostringstream msg;
      msg << "first moment <a_" << i << "> has magnitude " << v;
      rep.violation = msg.str();
    }
  }
  if (!rep.ok) return rep;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = std::abs(state.A(i, j));
      if (v > tol && v > rep.worst) {
        rep.ok = false;
        rep.worst = v;
        std::ostringstream msg;
        msg << "anomalous moment <a_" << i << " a_" << j << "> has magnitude "
            << v;
        rep.violation = msg.str();
      }
    }
  if (!rep.ok || !require_diagonal_n) return rep;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = std::abs(state.N(i, j));
      if (v > tol && v > rep.worst) {
        rep.ok = false;
        rep.worst = v;
        std::ostringstream msg;
        msg << "normal moment <a_" << i << "^dag a_" << j
            << "> is off-diagonal with magnitude " << v;
        rep.violation = msg.str();
      }
    }
  return rep;
}

bool is_generalized_diagonal(const MomentState& state, double tol,
                             bool require_diagonal_n) {
  return generalized_diagonal_report(state, tol, require_diagonal_n).ok;
}

NumberChange delta_total_number(const BogoliubovMap& map,
                                const MomentState& in) {
  const DiagonalityReport rep = generalized_diagonal_report(in);
  if (!rep.ok)
    throw PreconditionViolation("delta_total_number: input is not generalized "
                                "diagonal: " + rep.violation);
  NumberChange d;
  d.displacement_term = map.f.squaredNorm();
  d.spontaneous_term = map.R.squaredNorm();
  d.stimulated_term =
      2.0 * (map.R.conjugate() * in.N.transpose() * map.R.transpose())
                .diagonal().real().sum();
  d.total = d.displacement_term + d.spontaneous_term + d.stimulated_term;
  return d;
}

Dispersion mode_dispersion(const MomentState& state, int mode) {
  if (mode < 0 || mode >= state.num_modes())
    throw std::out_of_range("mode_dispersion: bad mode");
  const double nii = state.N(mode, mode).real();
  const double re_a = state.A(mode, mode).real();
  const Complex m = state.m(mode);
  Dispersion d;
  d.number_form = nii + 0.5 - std::norm(m);
  const double x2 = (2.0 * re_a + 2.0 * nii + 1.0) / 4.0;
  const double y2 = (-2.0 * re_a + 2.0 * nii + 1.0) / 4.0;
  const double mx = m.real();
  const double my = m.imag();
  d.quadrature_form = x2 - mx * mx + y2 - my * my;
  return d;
}

double covariance_min_eigenvalue(const MomentState& state) {
  const auto n = state.m.size();
  const Matrix ntil =
      state.N - state.m.conjugate() * state.m.transpose();
  const Matrix atil = state.A - state.m * state.m.transpose();
  Matrix block(2 * n, 2 * n);
  block.topLeftCorner(n, n) = ntil.transpose() + Matrix::Identity(n, n);
  block.topRightCorner(n, n) = atil;
  block.bottomLeftCorner(n, n) = atil.conjugate();
  block.bottomRightCorner(n, n) = ntil;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (block + block.adjoint()));
  return es.eigenvalues().minCoeff();
}

double energy_change(const BogoliubovMap& map, const MomentState& in,
                     const std::vector<double>& omegas) {
  if (static_cast<Eigen::Index>(omegas.size()) != in.m.size())
    throw std::invalid_argument("energy_change: omega/mode count mismatch");
  const DiagonalityReport rep = generalized_diagonal_report(in);
  if (!rep.ok)
    throw PreconditionViolation(
        "energy_change: input is not generalized diagonal: " + rep.violation);
  const MomentState out = propagate(map, in);
  double de = 0.0;
  for (size_t i = 0; i < omegas.size(); ++i)
    de += omegas[i] * (out.N(i, i).real() - in.N(i, i).real());
  return de;
}

}  // namespace boselab
