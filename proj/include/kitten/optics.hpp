#pragma once

// 50-50 beam splitter on a truncated two-mode grid and the photon-pair
// statistics P(n_a, n_b) at its outputs.

#include <vector>

#include <Eigen/Dense>

#include "kitten/fock.hpp"
#include "kitten/sources.hpp"

namespace kitten {

/// U = exp[(pi/4)(a^dag b - a b^dag)], so a^dag -> (a^dag - b^dag)/sqrt2 and
/// |2,0> -> (|2,0> + |0,2>)/2 - |1,1>/sqrt2.
///
/// U conserves total photon number N, so it is stored as one block per N
/// acting on |k, N-k>, k = 0..N. Blocks are built lazily from the matrix
/// exponential of the generator restricted to the block; blocks with
/// N >= dim lose states to the cutoff and are exact only below it.
class BeamSplitterUnitary {
 public:
  explicit BeamSplitterUnitary(Truncation trunc);

  const Truncation& truncation() const noexcept { return trunc_; }

  /// Block for total photon number `total`, basis ordered by k = n_a over
  /// the levels that fit the grid.
  Eigen::MatrixXd block(int total) const;

  /// U|total, 0> on |k, total-k>: (-1)^{total-k} sqrt(C(total, k)) / 2^{total/2}.
  std::vector<double> vacuum_column(int total) const;

  /// Applies U block by block.
  TwoModeState apply(const TwoModeState& state) const;

 private:
  Truncation trunc_;
};

/// Photon-number table p(n_a, n_b) = |amps|^2 with the mass lost to the
/// cutoff.
class JointDistribution {
 public:
  JointDistribution(Eigen::MatrixXd p, double tail_tol);

  double operator()(int na, int nb) const { return p_(na, nb); }
  const Eigen::MatrixXd& table() const noexcept { return p_; }
  int dim() const noexcept { return static_cast<int>(p_.rows()); }
  double deficit() const noexcept { return deficit_; }
  double tail_tol() const noexcept { return tail_tol_; }
  /// sum_n p(row, n).
  double row_sum(int row) const { return p_.row(row).sum(); }

 private:
  Eigen::MatrixXd p_;
  double deficit_;
  double tail_tol_;
};

/// input_a (x) |0>_b through the beam splitter. Only the |N, 0> columns of
/// U are touched, so this stays O(dim^2).
TwoModeState split(const SingleModeState& input_a);

JointDistribution joint_probability(const TwoModeState& state);

/// P_c = p(1,1) / sum_n p(1,n). Throws ZeroProbabilityError when the row
/// sum vanishes.
double conditional_single_photon(const JointDistribution& dist);

/// Diagonal table tanh^{2n}(r)/cosh^2(r) of the two-mode squeezed vacuum.
JointDistribution tmss_joint_probability(SqueezeParam r, const Truncation& trunc);

/// Split table of |r;+-> (or of |r> itself) with the cutoff from `policy`.
/// For the minus branch at r = 0 this is the r -> 0+ limit, the split of |2>.
JointDistribution cat_joint_distribution(SqueezeParam r, CatSign sign,
                                         const TruncationPolicy& policy);
JointDistribution squeezed_joint_distribution(SqueezeParam r, const TruncationPolicy& policy);

}  // namespace kitten
