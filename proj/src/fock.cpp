#include "kitten/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace kitten {

namespace {

constexpr double kNormSlack = 1e-12;
constexpr int kMinDim = 16;

void require_same(const Truncation& a, const Truncation& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << op << ": truncation mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

Truncation::Truncation(int dim, double tail_tol) : dim_(dim), tail_tol_(tail_tol) {
  if (dim < 2) throw std::invalid_argument("Truncation: dim must be >= 2");
  if (!(tail_tol >= 0.0 && tail_tol < 1.0))
    throw std::invalid_argument("Truncation: tail_tol must lie in [0, 1)");
}

Truncation TruncationPolicy::finish(int natural_dim) const {
  const int base = fixed_dim.value_or(natural_dim);
  const int dim = static_cast<int>(std::ceil(base * scale));
  return Truncation(dim, tail_tol);
}

Truncation TruncationPolicy::for_squeezing(double r) const {
  const double t2 = std::tanh(r) * std::tanh(r);
  if (t2 == 0.0) return finish(kMinDim);
  // The odd superposition carries only a fraction N_-/4 ~ r^2/2 of the mass
  // of S(r)|0>, so its relative tail is larger by the inverse of that.
  const double sinh_r = std::sinh(r);
  const double root = std::sqrt(std::cosh(2.0 * r));
  const double odd_fraction = sinh_r * sinh_r / (root * (root + 1.0));
  const double target = 0.5 * tail_tol * std::min(1.0, odd_fraction);

  // term_k = |<2k|S(r)|0>|^2, ratio term_{k+1}/term_k = t^2 (2k+1)/(2k+2) < t^2.
  double term = 1.0 / std::cosh(r);
  int k = 0;
  for (;;) {
    const double next = term * t2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
    if (next / (1.0 - t2) <= target || next == 0.0) break;
    term = next;
    ++k;
    if (k > 200000) throw NumericalError("for_squeezing: cutoff search diverged");
  }
  int dim = std::max(kMinDim, 2 * k + 2);
  dim += dim % 2;
  return finish(dim);
}

Truncation TruncationPolicy::for_tmss(double r) const {
  const double t = std::tanh(std::abs(r));
  if (t == 0.0) return finish(kMinDim);
  const double levels = std::log(0.5 * tail_tol) / (2.0 * std::log(t));
  return finish(std::max(kMinDim, static_cast<int>(std::ceil(levels)) + 1));
}

TruncationPolicy TruncationPolicy::refined() const {
  TruncationPolicy p = *this;
  p.scale *= 1.5;
  return p;
}

SingleModeState::SingleModeState(Eigen::VectorXcd amps, Truncation trunc)
    : amps_(std::move(amps)), trunc_(trunc) {
  if (amps_.size() != trunc_.dim())
    throw DimensionMismatch("SingleModeState: amplitude length differs from truncation dim");
  if (norm_squared() > 1.0 + kNormSlack)
    throw NumericalError("SingleModeState: norm exceeds one");
}

std::vector<double> SingleModeState::photon_distribution() const {
  std::vector<double> p(amps_.size());
  for (Eigen::Index n = 0; n < amps_.size(); ++n) p[n] = std::norm(amps_[n]);
  return p;
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amps, Truncation trunc)
    : amps_(std::move(amps)), trunc_(trunc) {
  if (amps_.rows() != trunc_.dim() || amps_.cols() != trunc_.dim())
    throw DimensionMismatch("TwoModeState: grid shape differs from truncation dim");
  if (norm_squared() > 1.0 + kNormSlack)
    throw NumericalError("TwoModeState: norm exceeds one");
}

ModeOperator::ModeOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw DimensionMismatch("ModeOperator: matrix must be square");
}

SingleModeState ModeOperator::apply(const SingleModeState& state) const {
  if (state.dim() != dim()) throw DimensionMismatch("ModeOperator::apply: dimension mismatch");
  return SingleModeState(matrix_ * state.amps(), state.truncation());
}

ModeOperator ModeOperator::operator*(const ModeOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionMismatch("ModeOperator product: dimension mismatch");
  return ModeOperator(matrix_ * rhs.matrix_);
}

SingleModeState fock_state(int n, const Truncation& trunc) {
  if (n < 0 || n >= trunc.dim()) throw DimensionMismatch("fock_state: level outside truncation");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(trunc.dim());
  amps[n] = 1.0;
  return SingleModeState(std::move(amps), trunc);
}

SingleModeState vacuum(const Truncation& trunc) { return fock_state(0, trunc); }

SingleModeState coherent_amplitudes(Complex alpha, const Truncation& trunc) {
  const int dim = trunc.dim();
  Eigen::VectorXcd amps(dim);
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  const double tail = std::max(0.0, 1.0 - amps.squaredNorm());
  if (tail > trunc.tail_tol()) {
    std::ostringstream os;
    os << "coherent_amplitudes: |alpha|=" << std::abs(alpha) << " loses tail mass " << tail
       << " at dim " << dim;
    throw TruncationError(os.str(), dim, tail);
  }
  return SingleModeState(std::move(amps), trunc);
}

ModeOperator annihilation(const Truncation& trunc) {
  const int dim = trunc.dim();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return ModeOperator(std::move(a));
}

ModeOperator creation(const Truncation& trunc) {
  return ModeOperator(annihilation(trunc).matrix().adjoint());
}

ModeOperator number_operator(const Truncation& trunc) {
  const int dim = trunc.dim();
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return ModeOperator(std::move(n));
}

ModeOperator squeeze_matrix(double r, const Truncation& trunc) {
  if (std::abs(r) > 3.0) throw std::invalid_argument("squeeze_matrix: |r| must be <= 3");
  const int dim = trunc.dim();
  // The generator is real, so exponentiate in real arithmetic.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd ad = a.transpose();
  const Eigen::MatrixXd generator = (-0.5 * r) * (ad * ad - a * a);
  const Eigen::MatrixXd u = generator.exp();
  if (!u.allFinite()) throw NumericalError("squeeze_matrix: matrix exponential did not converge");
  return ModeOperator(u.cast<Complex>());
}

Complex inner_product(const SingleModeState& u, const SingleModeState& v) {
  require_same(u.truncation(), v.truncation(), "inner_product");
  return u.amps().dot(v.amps());  // Eigen's dot conjugates the left operand.
}

Complex inner_product(const TwoModeState& u, const TwoModeState& v) {
  require_same(u.truncation(), v.truncation(), "inner_product");
  return (u.amps().conjugate().cwiseProduct(v.amps())).sum();
}

TwoModeState tensor(const SingleModeState& u, const SingleModeState& v) {
  require_same(u.truncation(), v.truncation(), "tensor");
  return TwoModeState(u.amps() * v.amps().transpose(), u.truncation());
}

std::vector<double> partial_trace_keep_b(const TwoModeState& state,
                                         std::span<const double> weights_a) {
  const int dim = state.dim();
  if (static_cast<int>(weights_a.size()) != dim)
    throw DimensionMismatch("partial_trace_keep_b: weight vector length differs from dim");
  std::vector<double> q(dim, 0.0);
  for (int na = 0; na < dim; ++na) {
    const double w = weights_a[na];
    if (w == 0.0) continue;
    for (int nb = 0; nb < dim; ++nb) q[nb] += w * std::norm(state(na, nb));
  }
  return q;
}

}  // namespace kitten
