#include "boselab/nonlinear.hpp"

#include "boselab/parallel.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace boselab {

namespace {

void require_two_mode_config(const NonlinearConfig& config, const char* who) {
  if (config.spec.num_modes() != 2)
    throw std::invalid_argument(std::string(who) + ": spec must have two modes");
  if (!(config.t >= 0))
    throw std::domain_error(std::string(who) + ": negative time");
}

// Rescaled variables all second-order formulas are written in.
struct Rescaled {
  double w1, w2, g, t;
};

Rescaled rescale(const NonlinearConfig& config) {
  const double beta = config.spec.beta();
  return {beta * config.spec.omega(0), beta * config.spec.omega(1),
          beta * config.g, config.t / beta};
}

RealMatrix one_mode_lowering(int levels) {
  RealMatrix a = RealMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Interaction part alone, unit coupling.
RealMatrix interaction_matrix(const FockSpace& space, InteractionVariant variant) {
  const int d1 = space.cutoff(0) + 1;
  const int d2 = space.cutoff(1) + 1;
  const RealMatrix a1 = one_mode_lowering(d1);
  const RealMatrix a2 = one_mode_lowering(d2);
  if (variant == InteractionVariant::full) {
    const RealMatrix x1 = a1 + a1.transpose();
    const RealMatrix x2 = a2 + a2.transpose();
    return kron(x1, x2 * x2) + kron(x1 * x1, x2);
  }
  const RealMatrix raise_twice = a2.transpose() * a2.transpose();
  const RealMatrix half = kron(a1, raise_twice);  // a1 (a2^dag)^2
  return half + half.transpose();
}

// Thermal diagonal and per-mode occupation vectors on the truncated space,
// renormalized over the retained states.
void thermal_vectors(const FockSpace& space, const ThermalSpec& spec,
                     RealVector& p, RealVector& occ1, RealVector& occ2) {
  const long dim = space.dim();
  p.resize(dim);
  occ1.resize(dim);
  occ2.resize(dim);
  const double log_y1 = -spec.beta() * spec.omega(0);
  const double log_y2 = -spec.beta() * spec.omega(1);
  for (long idx = 0; idx < dim; ++idx) {
    const int n1 = space.occupation(idx, 0);
    const int n2 = space.occupation(idx, 1);
    occ1[idx] = n1;
    occ2[idx] = n2;
    p[idx] = std::exp(n1 * log_y1 + n2 * log_y2);
  }
  p /= p.sum();
}

struct OccupationShift {
  double dn1 = 0.0;
  double dn2 = 0.0;
};

// Dense path: symmetric eigendecomposition of the whole Hamiltonian, then
// |U_ab|^2 assembled from the cosine and sine Gram matrices.
OccupationShift evolve_dense(const NonlinearConfig& config, const FockSpace& space) {
  RealVector p, occ1, occ2;
  thermal_vectors(space, config.spec, p, occ1, occ2);

  RealMatrix vectors = build_hamiltonian(config, space);
  const long dim = space.dim();
  RealVector evals(dim);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L',
                                  static_cast<lapack_int>(dim), vectors.data(),
                                  static_cast<lapack_int>(dim), evals.data());
  if (info != 0)
    throw std::runtime_error("exact_evolve: eigensolver failed with status " +
                             std::to_string(info));

  const RealVector phase = evals * config.t;
  const RealVector cos_phase = phase.array().cos();
  const RealVector sin_phase = phase.array().sin();
  RealMatrix cos_part = vectors * cos_phase.asDiagonal() * vectors.transpose();
  RealMatrix sin_part = vectors * sin_phase.asDiagonal() * vectors.transpose();
  // |U_ab|^2 overwrites the cosine Gram matrix to bound peak memory.
  cos_part.array() = cos_part.array().square() + sin_part.array().square();
  const RealVector populations = cos_part * p;
  if (std::abs(populations.sum() - 1.0) > 1e-8)
    throw std::logic_error("exact_evolve: transition matrix is not doubly "
                           "stochastic; eigendecomposition is unreliable");
  return {occ1.dot(populations) - occ1.dot(p), occ2.dot(populations) - occ2.dot(p)};
}

// Resonant-variant path: the interaction commutes with 2 n_1 + n_2, so the
// Hamiltonian splits into tridiagonal blocks of constant charge, each of
// which couples (n1, n2) to (n1 + 1, n2 - 2).
OccupationShift evolve_sectors(const NonlinearConfig& config, const FockSpace& space) {
  RealVector p, occ1, occ2;
  thermal_vectors(space, config.spec, p, occ1, occ2);
  const int c1 = space.cutoff(0);
  const int c2 = space.cutoff(1);
  const double w1 = config.spec.omega(0);
  const double w2 = config.spec.omega(1);

  std::vector<std::vector<long>> sectors(static_cast<std::size_t>(2 * c1 + c2 + 1));
  for (long idx = 0; idx < space.dim(); ++idx) {
    const int charge = 2 * space.occupation(idx, 0) + space.occupation(idx, 1);
    sectors[static_cast<std::size_t>(charge)].push_back(idx);
  }

  OccupationShift shift;
  double total_population = 0.0;
  for (const auto& members : sectors) {
    if (members.empty()) continue;
    const long m = static_cast<long>(members.size());
    RealMatrix block = RealMatrix::Zero(m, m);
    for (long k = 0; k < m; ++k) {
      const int n1 = space.occupation(members[static_cast<std::size_t>(k)], 0);
      const int n2 = space.occupation(members[static_cast<std::size_t>(k)], 1);
      block(k, k) = w1 * n1 + w2 * n2;
      if (k + 1 < m) {
        // Ascending index order within the sector steps (n1, n2) to
        // (n1 + 1, n2 - 2); the coupling is the a1^dag a2^2 amplitude.
        block(k, k + 1) = config.g * std::sqrt((n1 + 1.0) * n2 * (n2 - 1.0));
        block(k + 1, k) = block(k, k + 1);
      }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(block);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("exact_evolve: sector eigensolver failed");
    const RealVector phase = solver.eigenvalues() * config.t;
    const RealVector cos_phase = phase.array().cos();
    const RealVector sin_phase = phase.array().sin();
    const RealMatrix& v = solver.eigenvectors();
    RealMatrix cos_part = v * cos_phase.asDiagonal() * v.transpose();
    RealMatrix sin_part = v * sin_phase.asDiagonal() * v.transpose();
    cos_part.array() = cos_part.array().square() + sin_part.array().square();

    RealVector p_in(m), n1_in(m), n2_in(m);
    for (long k = 0; k < m; ++k) {
      const long idx = members[static_cast<std::size_t>(k)];
      p_in[k] = p[idx];
      n1_in[k] = occ1[idx];
      n2_in[k] = occ2[idx];
    }
    const RealVector populations = cos_part * p_in;
    total_population += populations.sum();
    shift.dn1 += n1_in.dot(populations) - n1_in.dot(p_in);
    shift.dn2 += n2_in.dot(populations) - n2_in.dot(p_in);
  }
  if (std::abs(total_population - 1.0) > 1e-8)
    throw std::logic_error("exact_evolve: sector populations do not sum to 1");
  return shift;
}

OccupationShift evolve_once(const NonlinearConfig& config,
                            const std::vector<int>& cutoffs, long max_dimension) {
  const FockSpace space(cutoffs, max_dimension);
  return config.variant == InteractionVariant::rwa
             ? evolve_sectors(config, space)
             : evolve_dense(config, space);
}

long truncated_dimension(const std::vector<int>& cutoffs) {
  long dim = 1;
  for (int c : cutoffs) dim *= c + 1;
  return dim;
}

std::vector<int> automatic_cutoffs(const ThermalSpec& spec) {
  const std::vector<int> tail_based = choose_cutoffs(spec, 1e-8);
  std::vector<int> cutoffs(tail_based.size());
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    const int occupation_based = static_cast<int>(
        std::ceil(6.0 * spec.mean_occupation(static_cast<int>(k))));
    cutoffs[k] = std::max({12, occupation_based, tail_based[k]});
  }
  return cutoffs;
}

double word_frequency(double omega1, double omega2, int d1, int d2) {
  return -(omega1 * d1 + omega2 * d2);
}

// Ladder amplitude of one word on |n1, n2>, with the landing occupations;
// zero when the word leaves the truncated space.
double word_amplitude(const MonomialWord& word, int n1, int n2, int c1, int c2,
                      int& out1, int& out2) {
  double squared = 1.0;
  const auto apply_mode = [&squared](int n, int cutoff, int power, bool raising,
                                     int& out) {
    if (raising) {
      if (n + power > cutoff) return false;
      for (int k = 1; k <= power; ++k) squared *= n + k;
      out = n + power;
    } else {
      if (n < power) return false;
      for (int k = 0; k < power; ++k) squared *= n - k;
      out = n - power;
    }
    return true;
  };
  if (!apply_mode(n1, c1, word.power1, word.raising1, out1)) return 0.0;
  if (!apply_mode(n2, c2, word.power2, word.raising2, out2)) return 0.0;
  return std::sqrt(squared);
}

// The three second-order trace patterns, by how many words sit left of the
// density matrix, plus the two first-order ones. The observable is the total
// occupation; the state is the truncated thermal diagonal.
double sector_trace(const FockSpace& space, const RealVector& p,
                    const MonomialWord& left, const MonomialWord& right,
                    int sector_left, bool second_order) {
  const int c1 = space.cutoff(0);
  const int c2 = space.cutoff(1);
  double value = 0.0;
  for (long idx = 0; idx < space.dim(); ++idx) {
    const int n1 = space.occupation(idx, 0);
    const int n2 = space.occupation(idx, 1);
    int m1 = 0;
    int m2 = 0;
    if (!second_order) {
      // tr(w rho N) or tr(rho w N): diagonal element of a single word.
      const MonomialWord& word = sector_left == 1 ? left : right;
      const double amp = word_amplitude(word, n1, n2, c1, c2, m1, m2);
      if (amp == 0.0 || m1 != n1 || m2 != n2) continue;
      value += p[idx] * (n1 + n2) * amp;
      continue;
    }
    // Which word touches the state first, and where the observable sits:
    //   sector 2: tr(w_i w_j rho N)  -> w_j first, weight at the start
    //   sector 1: tr(w_i rho w_j N)  -> w_i first, weight at the midpoint
    //   sector 0: tr(rho w_j w_i N)  -> w_i first, weight at the start
    const MonomialWord& first = sector_left == 2 ? right : left;
    const MonomialWord& second = sector_left == 2 ? left : right;
    const double amp_first = word_amplitude(first, n1, n2, c1, c2, m1, m2);
    if (amp_first == 0.0) continue;
    int k1 = 0;
    int k2 = 0;
    const double amp_second = word_amplitude(second, m1, m2, c1, c2, k1, k2);
    if (amp_second == 0.0 || k1 != n1 || k2 != n2) continue;
    const double observable = sector_left == 1 ? m1 + m2 : n1 + n2;
    value += p[idx] * observable * amp_first * amp_second;
  }
  return value;
}

EnumerationReport enumerate_at(const ThermalSpec& spec,
                               const std::vector<int>& cutoffs, int l) {
  const FockSpace space(cutoffs);
  RealVector p, occ1, occ2;
  thermal_vectors(space, spec, p, occ1, occ2);
  const auto words = monomial_table(spec.omega(0), spec.omega(1));

  EnumerationReport report;
  std::vector<TraceTerm> terms;
  if (l == 2) {
    for (int sector = 2; sector >= 0; --sector) {
      for (const auto& wi : words) {
        for (const auto& wj : words) {
          TraceTerm term;
          term.sector_left = sector;
          if (sector == 2) {
            term.left_word = wi.name + " " + wj.name;
          } else if (sector == 1) {
            term.left_word = wi.name;
            term.right_word = wj.name;
          } else {
            term.right_word = wj.name + " " + wi.name;
          }
          term.value = sector_trace(space, p, wi, wj, sector, true);
          terms.push_back(term);
        }
      }
    }
  } else {
    for (int sector = 1; sector >= 0; --sector) {
      for (const auto& wi : words) {
        TraceTerm term;
        term.sector_left = sector;
        (sector == 1 ? term.left_word : term.right_word) = wi.name;
        term.value = sector_trace(space, p, wi, wi, sector, false);
        terms.push_back(term);
      }
    }
  }

  report.total_terms = static_cast<int>(terms.size());
  double largest = 0.0;
  for (const auto& term : terms) largest = std::max(largest, std::abs(term.value));
  const double threshold = 1e-12 * largest;

  // Word matrices are only needed for the surviving terms' adjointness check.
  std::array<RealMatrix, 8> dense;
  std::array<bool, 8> built{};
  const auto matrix_of = [&](const std::string& name) -> const RealMatrix& {
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (words[k].name != name) continue;
      if (!built[k]) {
        dense[k] = monomial_matrix(space, words[k]);
        built[k] = true;
      }
      return dense[k];
    }
    throw std::logic_error("enumerate_second_order_terms: unknown word " + name);
  };

  report.all_hermitian = true;
  for (auto& term : terms) {
    if (largest == 0.0 || std::abs(term.value) <= threshold) continue;
    // Product of the term's monomials read cyclically around the state:
    // the words right of the state first, then the left words wrapped
    // around, multiplied left to right in that reading order.
    std::vector<std::string> names;
    for (const std::string& side : {term.right_word, term.left_word}) {
      std::size_t start = 0;
      while (start < side.size()) {
        // Each word name contains one interior space ("a1... a2..."), so
        // word boundaries are exactly the spaces preceding "a1".
        std::size_t stop = side.find(" a1", start);
        if (stop == std::string::npos) stop = side.size();
        names.push_back(side.substr(start, stop - start));
        start = stop == side.size() ? stop : stop + 1;
      }
    }
    RealMatrix product = RealMatrix::Identity(space.dim(), space.dim());
    for (const auto& name : names) product = product * matrix_of(name);
    const double scale = std::max(1.0, product.cwiseAbs().maxCoeff());
    term.hermitian_pair =
        (product - product.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
    if (!term.hermitian_pair) report.all_hermitian = false;
    report.nonzero.push_back(term);
  }
  report.nonzero_terms = static_cast<int>(report.nonzero.size());
  return report;
}

}  // namespace

double phi_kernel(double x, double t) {
  if (std::abs(x) < 1e-12) return t * t;
  const double s = std::sin(x * t / 2.0);
  return 4.0 * s * s / (x * x);
}

double validity_estimate(const NonlinearConfig& config) {
  require_two_mode_config(config, "validity_estimate");
  const double w1 = config.spec.omega(0);
  const double w2 = config.spec.omega(1);
  const double near = std::abs(2.0 * w2 - w1);
  const double detuning =
      config.variant == InteractionVariant::rwa
          ? near
          : std::min({w1, w2, std::abs(2.0 * w1 - w2), near});
  // g |sin(Omega t / 2)| / Omega, continuous at zero detuning.
  return std::abs(config.g) * std::sqrt(phi_kernel(detuning, config.t)) / 2.0;
}

PerturbativeReport perturbative_delta_n(const NonlinearConfig& config,
                                        CTermConvention convention) {
  require_two_mode_config(config, "perturbative_delta_n");
  const Rescaled u = rescale(config);

  // Mode-1 coefficient triplet of the (w1, w2) problem: the weights of
  // Phi(w1 + 2 w2), Phi(w1 - 2 w2) and Phi(w1).
  const auto triplet = [](double w1, double w2) {
    const double denom = std::expm1(w1) * std::expm1(w2) * std::expm1(w2);
    return std::array<double, 3>{
        2.0 * (std::exp(w1 + 2.0 * w2) - 1.0) / denom,
        2.0 * (std::exp(w1) - std::exp(2.0 * w2)) / denom,
        4.0 * std::exp(w2) / (std::expm1(w2) * std::expm1(w2))};
  };
  const auto direct = triplet(u.w1, u.w2);
  const auto swapped = triplet(u.w2, u.w1);

  // Row order matches the kernel list below; the swapped triplet fills the
  // mirrored slots with the (2, -2, 0) mode-exchange factors.
  std::array<double, 6> row1 = {direct[0],       direct[1],        direct[2],
                                2.0 * swapped[0], -2.0 * swapped[1], 0.0};
  std::array<double, 6> row2 = {2.0 * direct[0], -2.0 * direct[1], 0.0,
                                swapped[0],      swapped[1],       swapped[2]};
  if (convention == CTermConvention::complete) {
    const double nbar2 = 1.0 / std::expm1(u.w2);
    const double nbar1 = 1.0 / std::expm1(u.w1);
    row1[2] = 8.0 * nbar2 * nbar2 + 8.0 * nbar2 + 1.0;
    row2[5] = 8.0 * nbar1 * nbar1 + 8.0 * nbar1 + 1.0;
  }

  const std::array<double, 6> kernels = {
      phi_kernel(u.w1 + 2.0 * u.w2, u.t), phi_kernel(u.w1 - 2.0 * u.w2, u.t),
      phi_kernel(u.w1, u.t),              phi_kernel(u.w2 + 2.0 * u.w1, u.t),
      phi_kernel(u.w2 - 2.0 * u.w1, u.t), phi_kernel(u.w2, u.t)};

  PerturbativeReport report;
  for (int k = 0; k < 6; ++k) {
    report.dn1 += row1[static_cast<std::size_t>(k)] * kernels[static_cast<std::size_t>(k)];
    report.dn2 += row2[static_cast<std::size_t>(k)] * kernels[static_cast<std::size_t>(k)];
  }
  report.dn1 *= u.g * u.g;
  report.dn2 *= u.g * u.g;
  report.dn = report.dn1 + report.dn2;
  report.validity = validity_estimate(config);
  report.validity_warning = report.validity > 0.3;
  return report;
}

RwaReport rwa_delta_n(const NonlinearConfig& config) {
  require_two_mode_config(config, "rwa_delta_n");
  const Rescaled u = rescale(config);

  RwaReport report;
  const double detuning = 2.0 * u.w2 - u.w1;
  const double thermal_imbalance =
      (std::exp(u.w1) - std::exp(2.0 * u.w2)) /
      (std::expm1(u.w1) * std::expm1(u.w2) * std::expm1(u.w2));
  report.dn1 = 2.0 * u.g * u.g * phi_kernel(detuning, u.t) * thermal_imbalance;
  report.dn2 = -2.0 * report.dn1;
  report.dn = -report.dn1;
  report.cooling = report.dn < 0.0;
  if (report.cooling) {
    const double alpha = u.w2 / u.w1;
    report.cop = 1.0 / (1.0 - 2.0 * alpha);
    report.efficiency = 1.0 / 3.0;
  }
  report.validity = validity_estimate(config);
  report.validity_warning = report.validity > 0.3;
  return report;
}

RealMatrix build_hamiltonian(const NonlinearConfig& config, const FockSpace& space) {
  require_two_mode_config(config, "build_hamiltonian");
  if (space.num_modes() != 2)
    throw std::invalid_argument("build_hamiltonian: space must have two modes");
  RealMatrix h = config.g * interaction_matrix(space, config.variant);
  for (long idx = 0; idx < space.dim(); ++idx)
    h(idx, idx) += config.spec.omega(0) * space.occupation(idx, 0) +
                   config.spec.omega(1) * space.occupation(idx, 1);
  return h;
}

ExactReport exact_evolve(const NonlinearConfig& config, std::vector<int> cutoffs,
                         long max_dimension) {
  require_two_mode_config(config, "exact_evolve");

  ExactReport report;
  if (!cutoffs.empty()) {
    if (cutoffs.size() != 2)
      throw std::invalid_argument("exact_evolve: need one cutoff per mode");
    const double tail = tail_mass(config.spec, cutoffs);
    if (tail > 1e-8)
      throw PreconditionViolation(
          "exact_evolve: thermal tail " + std::to_string(tail) +
          " exceeds 1e-8 at the requested cutoffs");
    const auto full = evolve_once(config, cutoffs, max_dimension);
    std::vector<int> halved(cutoffs.size());
    for (std::size_t k = 0; k < cutoffs.size(); ++k)
      halved[k] = std::max(2, cutoffs[k] / 2);
    const auto probe = evolve_once(config, halved, max_dimension);
    report.dn1 = full.dn1;
    report.dn2 = full.dn2;
    report.dn = full.dn1 + full.dn2;
    report.cutoffs = std::move(cutoffs);
    report.last_shift = std::abs(report.dn - (probe.dn1 + probe.dn2));
    report.converged = report.last_shift < 1e-6;
    return report;
  }

  std::vector<int> current = automatic_cutoffs(config.spec);
  if (truncated_dimension(current) > max_dimension)
    throw PreconditionViolation(
        "exact_evolve: starting cutoffs already exceed the dimension budget");
  auto previous = evolve_once(config, current, max_dimension);
  for (int round = 0; round < 16; ++round) {
    std::vector<int> doubled(current.size());
    for (std::size_t k = 0; k < current.size(); ++k) doubled[k] = 2 * current[k];
    if (truncated_dimension(doubled) > max_dimension)
      throw PreconditionViolation(
          "exact_evolve: dimension budget hit before the occupation change "
          "converged (last cutoffs " + std::to_string(current[0]) + ", " +
          std::to_string(current[1]) + ")");
    const auto refined = evolve_once(config, doubled, max_dimension);
    const double shift =
        std::abs((refined.dn1 + refined.dn2) - (previous.dn1 + previous.dn2));
    current = std::move(doubled);
    previous = refined;
    if (shift < 1e-6) {
      report.dn1 = refined.dn1;
      report.dn2 = refined.dn2;
      report.dn = refined.dn1 + refined.dn2;
      report.cutoffs = current;
      report.converged = true;
      report.last_shift = shift;
      return report;
    }
  }
  throw std::runtime_error("exact_evolve: no convergence after 16 doublings");
}

CommutatorResidual manley_rowe_residual(const FockSpace& space, int q1, int q2,
                                        InteractionVariant variant) {
  if (space.num_modes() != 2)
    throw std::invalid_argument("manley_rowe_residual: space must have two modes");
  const RealMatrix interaction = interaction_matrix(space, variant);
  const long dim = space.dim();
  RealVector charge(dim);
  for (long idx = 0; idx < dim; ++idx)
    charge[idx] = q1 * space.occupation(idx, 0) + q2 * space.occupation(idx, 1);

  CommutatorResidual residual;
  for (long row = 0; row < dim; ++row) {
    const bool row_interior = space.occupation(row, 0) <= space.cutoff(0) - 2 &&
                              space.occupation(row, 1) <= space.cutoff(1) - 2;
    for (long col = 0; col < dim; ++col) {
      const double entry = std::abs((charge[row] - charge[col]) * interaction(row, col));
      residual.full_norm = std::max(residual.full_norm, entry);
      if (row_interior && space.occupation(col, 0) <= space.cutoff(0) - 2 &&
          space.occupation(col, 1) <= space.cutoff(1) - 2)
        residual.interior = std::max(residual.interior, entry);
    }
  }
  return residual;
}

std::array<MonomialWord, 8> monomial_table(double omega1, double omega2) {
  std::array<MonomialWord, 8> words = {{
      {1, false, 2, false, "a1 a2^2", 0.0, -1, -2},
      {1, true, 2, false, "a1+ a2^2", 0.0, +1, -2},
      {1, false, 2, true, "a1 a2+^2", 0.0, -1, +2},
      {1, true, 2, true, "a1+ a2+^2", 0.0, +1, +2},
      {2, false, 1, false, "a1^2 a2", 0.0, -2, -1},
      {2, true, 1, false, "a1+^2 a2", 0.0, +2, -1},
      {2, false, 1, true, "a1^2 a2+", 0.0, -2, +1},
      {2, true, 1, true, "a1+^2 a2+", 0.0, +2, +1},
  }};
  for (auto& word : words)
    word.frequency = word_frequency(omega1, omega2, word.d1, word.d2);
  return words;
}

RealMatrix monomial_matrix(const FockSpace& space, const MonomialWord& word) {
  if (space.num_modes() != 2)
    throw std::invalid_argument("monomial_matrix: space must have two modes");
  const auto mode_factor = [](int levels, int power, bool raising) {
    const RealMatrix a = one_mode_lowering(levels);
    RealMatrix factor = RealMatrix::Identity(levels, levels);
    for (int k = 0; k < power; ++k)
      factor = (raising ? RealMatrix(a.transpose()) : a) * factor;
    return factor;
  };
  return kron(mode_factor(space.cutoff(0) + 1, word.power1, word.raising1),
              mode_factor(space.cutoff(1) + 1, word.power2, word.raising2));
}

EnumerationReport enumerate_second_order_terms(const ThermalSpec& spec,
                                               const std::vector<int>& cutoffs,
                                               int l) {
  if (spec.num_modes() != 2)
    throw std::invalid_argument("enumerate_second_order_terms: need two modes");
  if (cutoffs.size() != 2)
    throw std::invalid_argument("enumerate_second_order_terms: need two cutoffs");
  if (l != 1 && l != 2)
    throw std::invalid_argument("enumerate_second_order_terms: order must be 1 or 2");

  EnumerationReport report = enumerate_at(spec, cutoffs, l);
  std::vector<int> doubled(cutoffs.size());
  for (std::size_t k = 0; k < cutoffs.size(); ++k) doubled[k] = 2 * cutoffs[k];
  const EnumerationReport check = enumerate_at(spec, doubled, l);
  if (check.total_terms != report.total_terms ||
      check.nonzero_terms != report.nonzero_terms)
    throw std::runtime_error(
        "enumerate_second_order_terms: counts changed under cutoff doubling (" +
        std::to_string(report.nonzero_terms) + " -> " +
        std::to_string(check.nonzero_terms) + " nonzero)");
  return report;
}

std::vector<ResonanceRow> resonance_scan(double omega1, double t, double g,
                                         const std::vector<double>& alpha_grid,
                                         CTermConvention convention) {
  if (!(omega1 > 0)) throw std::domain_error("resonance_scan: omega1 must be > 0");
  for (double alpha : alpha_grid)
    if (!(alpha > 0)) throw std::domain_error("resonance_scan: alpha must be > 0");

  std::vector<ResonanceRow> rows(alpha_grid.size());
  parallel_for(static_cast<long>(alpha_grid.size()), [&](long i) {
    const double alpha = alpha_grid[static_cast<std::size_t>(i)];
    const NonlinearConfig config{ThermalSpec(1.0, {omega1, alpha * omega1}), g, t,
                                 InteractionVariant::full};
    const auto report = perturbative_delta_n(config, convention);
    rows[static_cast<std::size_t>(i)] =
        {alpha, report.dn1, report.dn2, report.dn, report.validity_warning};
  });
  return rows;
}

}  // namespace boselab
