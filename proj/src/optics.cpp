#include "kitten/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace kitten {

namespace {

// log C(n, k) / 2 - n log(2) / 2 = log of the vacuum-column magnitude.
double log_vacuum_column(int total, int k) {
  return 0.5 * (std::lgamma(total + 1.0) - std::lgamma(k + 1.0) - std::lgamma(total - k + 1.0)) -
         0.5 * total * std::numbers::ln2;
}

}  // namespace

BeamSplitterUnitary::BeamSplitterUnitary(Truncation trunc) : trunc_(trunc) {}

Eigen::MatrixXd BeamSplitterUnitary::block(int total) const {
  const int dim = trunc_.dim();
  if (total < 0 || total > 2 * (dim - 1))
    throw DimensionMismatch("BeamSplitterUnitary::block: total photon number outside grid");
  // k ranges over levels with k < dim and total - k < dim.
  const int k_lo = std::max(0, total - (dim - 1));
  const int k_hi = std::min(total, dim - 1);
  const int size = k_hi - k_lo + 1;
  constexpr double theta = std::numbers::pi / 4.0;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i + 1 < size; ++i) {
    const int k = k_lo + i;
    // a^dag b |k, N-k> = sqrt((k+1)(N-k)) |k+1, N-k-1>, and a b^dag is its adjoint.
    const double m = theta * std::sqrt((k + 1.0) * (total - k));
    g(i + 1, i) = m;
    g(i, i + 1) = -m;
  }
  return g.exp();
}

std::vector<double> BeamSplitterUnitary::vacuum_column(int total) const {
  if (total < 0 || total >= trunc_.dim())
    throw DimensionMismatch("BeamSplitterUnitary::vacuum_column: total outside grid");
  // Magnitudes follow |c_{k+1}| / |c_k| = sqrt((total-k)/(k+1)), seeded at
  // the central term so that neither end under- or overflows.
  std::vector<double> col(total + 1);
  const int mid = total / 2;
  col[mid] = std::exp(log_vacuum_column(total, mid));
  for (int k = mid; k < total; ++k) col[k + 1] = col[k] * std::sqrt((total - k) / (k + 1.0));
  for (int k = mid; k > 0; --k) col[k - 1] = col[k] * std::sqrt(k / (total - k + 1.0));
  for (int k = 0; k <= total; ++k)
    if ((total - k) % 2 != 0) col[k] = -col[k];
  return col;
}

TwoModeState BeamSplitterUnitary::apply(const TwoModeState& state) const {
  if (state.dim() != trunc_.dim()) throw DimensionMismatch("BeamSplitterUnitary::apply: dim mismatch");
  const int dim = trunc_.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int total = 0; total <= 2 * (dim - 1); ++total) {
    const int k_lo = std::max(0, total - (dim - 1));
    const int k_hi = std::min(total, dim - 1);
    const int size = k_hi - k_lo + 1;
    Eigen::VectorXcd in(size);
    for (int i = 0; i < size; ++i) in[i] = state(k_lo + i, total - k_lo - i);
    if (in.squaredNorm() == 0.0) continue;
    const Eigen::VectorXcd res = block(total).cast<Complex>() * in;
    for (int i = 0; i < size; ++i) out(k_lo + i, total - k_lo - i) = res[i];
  }
  return TwoModeState(std::move(out), trunc_);
}

JointDistribution::JointDistribution(Eigen::MatrixXd p, double tail_tol)
    : p_(std::move(p)), deficit_(1.0 - p_.sum()), tail_tol_(tail_tol) {
  if ((p_.array() < 0.0).any()) throw NumericalError("JointDistribution: negative probability");
}

TwoModeState split(const SingleModeState& input_a) {
  const Truncation& trunc = input_a.truncation();
  const int dim = trunc.dim();
  const BeamSplitterUnitary bs(trunc);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int total = 0; total < dim; ++total) {
    const Complex a = input_a[total];
    if (a == 0.0) continue;
    const std::vector<double> col = bs.vacuum_column(total);
    for (int k = 0; k <= total; ++k) out(k, total - k) = a * col[k];
  }
  return TwoModeState(std::move(out), trunc);
}

JointDistribution joint_probability(const TwoModeState& state) {
  return JointDistribution(state.amps().cwiseAbs2(), state.truncation().tail_tol());
}

double conditional_single_photon(const JointDistribution& dist) {
  const double row = dist.row_sum(1);
  if (!(row > 0.0))
    throw ZeroProbabilityError("conditional_single_photon: no probability of a single herald photon");
  return dist(1, 1) / row;
}

JointDistribution tmss_joint_probability(SqueezeParam r, const Truncation& trunc) {
  return joint_probability(tmss_joint_amplitudes(r, trunc));
}

JointDistribution cat_joint_distribution(SqueezeParam r, CatSign sign,
                                         const TruncationPolicy& policy) {
  if (sign == CatSign::minus && r.value() == 0.0)
    return joint_probability(split(fock_state(2, policy.for_squeezing(0.0))));
  return joint_probability(split(squeezed_cat(r, sign, policy.for_squeezing(r.value()))));
}

JointDistribution squeezed_joint_distribution(SqueezeParam r, const TruncationPolicy& policy) {
  return joint_probability(split(squeezed_state(r, policy.for_squeezing(r.value()))));
}

}  // namespace kitten
