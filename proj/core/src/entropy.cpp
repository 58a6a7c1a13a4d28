#include "boselab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace boselab {

TransferMatrix TransferMatrix::from_map(const BogoliubovMap& map) {
  TransferMatrix t;
  t.M = map.S.cwiseAbs2() + map.R.cwiseAbs2();
  t.row_excess = t.M.rowwise().sum().array() - 1.0;
  t.col_excess = t.M.colwise().sum().transpose().array() - 1.0;
  return t;
}

StochasticCertificate check_superstochastic(const RealMatrix& M) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw std::invalid_argument("check_superstochastic: not square");
  if (n > 20)
    throw PreconditionViolation(
        "check_superstochastic: size " + std::to_string(n) +
        " exceeds the exhaustive-enumeration guard of 20");
  if (M.minCoeff() < 0)
    throw std::invalid_argument("check_superstochastic: negative entry");

  StochasticCertificate cert;
  cert.superstochastic = true;

  // For a fixed row set I, the least favourable column set of size j is the
  // j columns with the smallest partial sums over I; checking those prefix
  // sums for every j covers all 2^n column sets of that I.
  std::vector<double> colsum(n);
  std::vector<int> order(n);
  for (std::uint32_t mask = 1; mask < (1u << n) && cert.superstochastic; ++mask) {
    const int isize = __builtin_popcount(mask);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s += M(i, k);
      colsum[k] = s;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return colsum[a] < colsum[b];
    });
    double prefix = 0.0;
    for (int j = 1; j <= n; ++j) {
      prefix += colsum[order[j - 1]];
      const double margin = prefix - (isize + j - n);
      if (margin < -1e-10) {
        cert.superstochastic = false;
        cert.witness_margin = margin;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) cert.witness_rows.push_back(i);
        cert.witness_cols.assign(order.begin(), order.begin() + j);
        std::sort(cert.witness_cols.begin(), cert.witness_cols.end());
        break;
      }
    }
  }

  if (cert.superstochastic && n == 2) {
    // A dominated doubly stochastic matrix always exists at this size; the
    // witness pivots on the smallest entry of M. Row and column sums of M
    // are >= 1 here (implied by the subset inequalities), which is all the
    // entrywise domination argument needs.
    int ai = 0, ak = 0;
    M.minCoeff(&ai, &ak);
    const double c = std::min(M(ai, ak), 1.0);
    RealMatrix theta(2, 2);
    if (ai == ak)
      theta << c, 1.0 - c, 1.0 - c, c;
    else
      theta << 1.0 - c, c, c, 1.0 - c;
    cert.theta = theta;
  }
  return cert;
}

RealVector occupation_propagate(const BogoliubovMap& map, const RealVector& n0) {
  const auto n = map.S.rows();
  if (n0.size() != n)
    throw std::invalid_argument("occupation_propagate: mode count mismatch");
  int worst = -1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (n0(i) < 0 && (worst < 0 || n0(i) < n0(worst))) worst = static_cast<int>(i);
  if (worst >= 0) {
    std::ostringstream msg;
    msg << "occupation_propagate: occupation of mode " << worst
        << " is negative (" << n0(worst) << ")";
    throw PreconditionViolation(msg.str());
  }
  const RealMatrix s2 = map.S.cwiseAbs2();
  const RealMatrix r2 = map.R.cwiseAbs2();
  RealVector out = (s2 + r2) * n0 + r2.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) out(i) += std::norm(map.f(i));
  return out;
}

double bose_entropy_total(const RealVector& n) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < n.size(); ++i) s += bose_entropy_scalar(n(i));
  return s;
}

std::vector<bool> check_sufficient_nor(const BogoliubovMap& map,
                                       const RealVector& n0) {
  const RealVector nt = occupation_propagate(map, n0);
  const RealMatrix w = map.S.cwiseAbs2() - map.R.cwiseAbs2();
  const auto n = n0.size();
  RealVector s0(n);
  for (Eigen::Index k = 0; k < n; ++k) s0(k) = bose_entropy_scalar(n0(k));
  std::vector<bool> verdict(n);
  for (Eigen::Index i = 0; i < n; ++i)
    verdict[i] = bose_entropy_scalar(nt(i)) >= w.row(i).dot(s0) - 1e-12;
  return verdict;
}

SecondLawReport second_law_verdict(const BogoliubovMap& map,
                                   const RealVector& n0) {
  SecondLawReport rep;
  rep.occupations_after = occupation_propagate(map, n0);
  rep.entropy_before = bose_entropy_total(n0);
  rep.entropy_after = bose_entropy_total(rep.occupations_after);
  rep.entropy_change = rep.entropy_after - rep.entropy_before;

  const TransferMatrix t = TransferMatrix::from_map(map);
  if (check_superstochastic(t.M).superstochastic) {
    rep.guarantee = SecondLawGuarantee::dss;
  } else {
    const std::vector<bool> nor = check_sufficient_nor(map, n0);
    rep.guarantee = std::all_of(nor.begin(), nor.end(), [](bool b) { return b; })
                        ? SecondLawGuarantee::nor
                        : SecondLawGuarantee::none;
  }
  if (rep.guarantee != SecondLawGuarantee::none &&
      rep.entropy_change < -1e-9) {
    std::ostringstream msg;
    msg << "second_law_verdict: a certified map lowered the entropy by "
        << -rep.entropy_change << "; this is a library bug";
    throw std::logic_error(msg.str());
  }
  return rep;
}

}  // namespace boselab
