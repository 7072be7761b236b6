#include "kitten/oracles.hpp"

#include <cmath>
#include <numbers>

#include "kitten/gauss_hermite.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace kitten::oracle {

TwoModeState apply_two_mode_squeeze(double xi, const TwoModeState& state) {
  const int dim = state.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int d = -(dim - 1); d <= dim - 1; ++d) {
    const int a0 = std::max(d, 0);
    const int b0 = std::max(-d, 0);
    const int len = dim - std::abs(d);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(len, len);
    for (int j = 0; j + 1 < len; ++j) {
      const double m = xi * std::sqrt((a0 + j + 1.0) * (b0 + j + 1.0));
      g(j + 1, j) = m;
      g(j, j + 1) = -m;
    }
    Eigen::VectorXcd in(len);
    for (int j = 0; j < len; ++j) in[j] = state(a0 + j, b0 + j);
    if (in.squaredNorm() == 0.0) continue;
    const Eigen::MatrixXd u = g.exp();
    const Eigen::VectorXcd res = u.cast<Complex>() * in;
    for (int j = 0; j < len; ++j) out(a0 + j, b0 + j) = res[j];
  }
  return TwoModeState(std::move(out), state.truncation());
}

namespace {

Eigen::MatrixXcd decomposition_branch(double r, const Truncation& trunc) {
  const SingleModeState half = squeeze_matrix(r / 2.0, trunc).apply(vacuum(trunc));
  return apply_two_mode_squeeze(-r / 2.0, tensor(half, half)).amps();
}

}  // namespace

JointDistribution decomposition_joint_distribution(SqueezeParam r, std::optional<CatSign> sign,
                                                   const Truncation& trunc) {
  Eigen::MatrixXcd amps = decomposition_branch(r.value(), trunc);
  if (sign) {
    amps = (amps + sign_value(*sign) * decomposition_branch(-r.value(), trunc)) /
           std::sqrt(cat_norm(r, *sign));
  }
  // Truncation of the two-mode exponentials can push the norm a hair above
  // one at high levels; the table is only compared well below the cutoff.
  return JointDistribution(amps.cwiseAbs2(), trunc.tail_tol());
}

double fock_grid_phase_error_ratio(SqueezeParam r, double alpha, double dtheta,
                                   const Truncation& mode1, int probe_dim) {
  const Truncation probe(probe_dim, 1e-12);
  const SingleModeState sq = squeezed_state(r, mode1);
  const SingleModeState target_label = coherent_amplitudes(-alpha, probe);
  auto overlap = [&](double phase_error) {
    Complex acc = 0.0;
    for (int k = 1; 2 * k < mode1.dim(); k += 2) {
      // Only odd k overlap the |r;-> branch on mode 1.
      const Complex label = (k % 2 == 0 ? 1.0 : -1.0) * alpha * std::polar(1.0, -k * phase_error);
      const Complex c = sq[2 * k];
      acc += std::conj(c) * c * inner_product(target_label, coherent_amplitudes(label, probe));
    }
    return acc;
  };
  return std::norm(overlap(dtheta)) / std::norm(overlap(0.0));
}

double gauss_hermite_averaged_ratio(SqueezeParam r, double alpha, double sigma, int order,
                                    const TruncationPolicy& policy) {
  const GaussHermiteRule& rule = gauss_hermite(order);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    acc += rule.weights[i] * phase_error_ratio(r, alpha, std::numbers::sqrt2 * sigma * rule.nodes[i], policy);
  return acc / std::sqrt(std::numbers::pi);
}

}  // namespace kitten::oracle
