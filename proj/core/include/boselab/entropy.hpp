#pragma once

#include "boselab/linear.hpp"

#include <optional>

namespace boselab {

// Occupation transfer matrix of a linear map: M_ik = |S_ik|^2 + |R_ik|^2.
// Row i maps diagonal input occupations to
//   n_i(t) = sum_k M_ik n_k(0) + excess_i,
// where excess_i = sum_k |R_ik|^2 + |f_i|^2 is the spontaneous floor. The
// symplectic constraints force every row and column sum of M to be
// 1 + 2 sum |R|^2 over that slice, hence >= 1.
struct TransferMatrix {
  RealMatrix M;
  RealVector row_excess;  // row sum - 1, equals 2 sum_k |R_ik|^2
  RealVector col_excess;  // column sum - 1, equals 2 sum_i |R_ik|^2

  int size() const { return static_cast<int>(M.rows()); }

  static TransferMatrix from_map(const BogoliubovMap& map);
};

// Certificate for the doubly superstochastic property of M: for every pair
// of index sets I (rows) and J (columns),
//   sum_{i in I, k in J} M_ik >= |I| + |J| - N.
// A positive certificate for N = 2 carries an explicit doubly stochastic
// Theta dominated entrywise by M; a negative certificate names the first
// violating pair in ascending bitmask order together with its margin.
struct StochasticCertificate {
  bool superstochastic = false;
  // Violation witness (set when !superstochastic): 0-based index sets and
  // margin = sum - (|I| + |J| - N), which is < -1e-12 on failure.
  std::vector<int> witness_rows;
  std::vector<int> witness_cols;
  double witness_margin = 0.0;
  // Dominated doubly stochastic matrix (N = 2 positive verdicts only).
  std::optional<RealMatrix> theta;
};

// Exhaustive Hall-type check. For each fixed row set I the binding column
// set of size j is the j smallest column partial sums over I, so the scan is
// O(2^N N log N) instead of O(4^N). Throws PreconditionViolation for N > 20.
// A pair counts as violating when sum - rhs < -1e-10.
StochasticCertificate check_superstochastic(const RealMatrix& M);

// n_i(t) = sum_k (|S_ik|^2 + |R_ik|^2) n_k(0) + sum_k |R_ik|^2 + |f_i|^2 for
// a diagonal input with the given occupations. Throws PreconditionViolation
// when an occupation is negative (names the worst entry). Agrees with full
// moment propagation on diagonal inputs to 1e-10.
RealVector occupation_propagate(const BogoliubovMap& map, const RealVector& n0);

// sum_k s(n_k) with s the scalar Bose entropy.
double bose_entropy_total(const RealVector& n);

// Per-row sufficient condition: entry i is true when
//   s[n_i(t)] >= sum_k (|S_ik|^2 - |R_ik|^2) s[n_k(0)] - 1e-12.
// All-true implies the total Bose entropy cannot drop for this input,
// because the column sums of |S|^2 - |R|^2 are exactly 1.
std::vector<bool> check_sufficient_nor(const BogoliubovMap& map,
                                       const RealVector& n0);

// Strongest guarantee available for this map and input.
enum class SecondLawGuarantee { dss, nor, none };

struct SecondLawReport {
  SecondLawGuarantee guarantee = SecondLawGuarantee::none;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double entropy_change = 0.0;
  RealVector occupations_after;
};

// Runs both certificates (transfer-matrix superstochasticity first, the
// per-row sufficient condition second) and reports the strongest one that
// holds along with the measured entropy change. Whenever a guarantee is
// reported the measured change is >= -1e-9; a violation of that would be a
// library bug and throws.
SecondLawReport second_law_verdict(const BogoliubovMap& map, const RealVector& n0);

}  // namespace boselab
