#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace permcode {

// Nonnegative scalar kept as mantissa * exp(log_scale) to survive products of
// many small entries.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const;
};

// Counts the edge-weight multiplications of a trellis pass, i.e. products of
// a partial sum with a matrix entry. Boundary edges multiplying the known
// unit value at the root/toor and the final forward*backward combination are
// not edge-weight multiplications and are not counted; stage rescaling is
// bookkeeping and is not counted either. A full forward+backward pass
// performs exactly 2*sum_{i=1}^{q-1} C(q,i)(q-i) = q(2^q-2) of them.
struct TrellisStats {
  std::uint64_t multiplications = 0;
};

using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;

inline constexpr int kTrellisMaxDim = 25;  // 2^q accumulator states

// Sum over the symmetric group of row-wise products; (q-1)q! multiplications.
// Oracle; guarded to q <= 10.
double perm_naive(const MatrixRef& m);

// Permanent via the subset-lattice trellis with per-stage rescaling.
// Guarded to q <= 25 (2^q accumulator states).
ScaledValue perm_trellis(const MatrixRef& m, TrellisStats* stats = nullptr);

// All first-order cofactor permanents: entry (i,j) = perm of m with row i and
// column j removed, from one forward-backward pass over the trellis.
Eigen::MatrixXd cofactor_permanents(const MatrixRef& m, TrellisStats* stats = nullptr);

// Cofactors with per-row scales left unapplied (row i of the true cofactor
// matrix is mantissa.row(i) * exp(row_log_scale(i))).
struct ScaledCofactors {
  Eigen::MatrixXd mantissa;
  Eigen::VectorXd row_log_scale;
  ScaledValue permanent;
};
ScaledCofactors cofactor_permanents_scaled(const MatrixRef& m, TrellisStats* stats = nullptr);

// Soft constraint-node update: b_ij = perm(A_ij) / sum_j perm(A_ij), rows of
// the result normalized to probability vectors. Contradiction when perm(A)=0
// or some output row sums to zero.
struct SoftConstraintUpdate {
  Eigen::MatrixXd messages;
  bool contradiction = false;
};
SoftConstraintUpdate constraint_update_soft(const MatrixRef& incoming);

}  // namespace permcode
