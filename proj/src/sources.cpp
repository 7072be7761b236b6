#include "kitten/sources.hpp"

#include <algorithm>
#include <sstream>

namespace kitten {

namespace {

void check_tail(double deficit, const Truncation& trunc, const char* what, double r) {
  const double tail = std::max(0.0, deficit);
  if (tail > trunc.tail_tol()) {
    std::ostringstream os;
    os << what << ": r=" << r << " loses tail mass " << tail << " at dim " << trunc.dim()
       << " (tail_tol " << trunc.tail_tol() << ")";
    throw TruncationError(os.str(), trunc.dim(), tail);
  }
}

// c_k = <2k|S(r)|0> for 2k < dim, filled by the ratio recurrence
// c_k / c_{k-1} = -tanh(r) sqrt((2k-1)/(2k)).
Eigen::VectorXd squeezed_coefficients(double r, int dim) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero((dim + 1) / 2);
  const double t = std::tanh(r);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  for (Eigen::Index k = 1; k < c.size(); ++k)
    c[k] = c[k - 1] * (-t) * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
  return c;
}

}  // namespace

SqueezeParam::SqueezeParam(double r) : r_(r) {
  if (!(std::abs(r) <= 3.0)) throw std::invalid_argument("SqueezeParam: |r| must be <= 3");
}

SingleModeState squeezed_state(SqueezeParam r, const Truncation& trunc) {
  const Eigen::VectorXd c = squeezed_coefficients(r.value(), trunc.dim());
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(trunc.dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) amps[2 * k] = c[k];
  check_tail(1.0 - amps.squaredNorm(), trunc, "squeezed_state", r.value());
  return SingleModeState(std::move(amps), trunc);
}

double cat_norm(SqueezeParam r, CatSign sign) {
  // cosh r sqrt(1 + tanh^2 r) = sqrt(cosh 2r); the minus branch is written
  // without the 1 - x cancellation so that it stays accurate as r -> 0.
  const double root = std::sqrt(std::cosh(2.0 * r.value()));
  if (sign == CatSign::plus) return 2.0 * (1.0 + 1.0 / root);
  const double s = std::sinh(r.value());
  return 4.0 * s * s / (root * (root + 1.0));
}

SingleModeState squeezed_cat(SqueezeParam r, CatSign sign, const Truncation& trunc) {
  if (sign == CatSign::minus && r.value() == 0.0)
    throw DegenerateStateError("squeezed_cat: |0;-> has zero norm");
  // S(-r)|0> flips the sign of odd-k coefficients, so |r> +- |-r> keeps
  // 2 c_k on even k (plus) or odd k (minus).
  const Eigen::VectorXd c = squeezed_coefficients(r.value(), trunc.dim());
  const double scale = 2.0 / std::sqrt(cat_norm(r, sign));
  const Eigen::Index parity = sign == CatSign::plus ? 0 : 1;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(trunc.dim());
  for (Eigen::Index k = parity; k < c.size(); k += 2) amps[2 * k] = scale * c[k];
  check_tail(1.0 - amps.squaredNorm(), trunc, "squeezed_cat", r.value());
  return SingleModeState(std::move(amps), trunc);
}

TwoModeState tmss_joint_amplitudes(SqueezeParam r, const Truncation& trunc) {
  const int dim = trunc.dim();
  const double t = std::tanh(std::abs(r.value()));
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(dim, dim);
  double a = 1.0 / std::cosh(r.value());
  for (int n = 0; n < dim; ++n) {
    amps(n, n) = a;
    a *= t;
  }
  check_tail(1.0 - amps.squaredNorm(), trunc, "tmss_joint_amplitudes", r.value());
  return TwoModeState(std::move(amps), trunc);
}

double heralding_success_probability(SqueezeParam r, CatSign sign) {
  return cat_norm(r, sign) / 4.0;
}

}  // namespace kitten
