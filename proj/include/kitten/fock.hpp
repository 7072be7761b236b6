#pragma once

// Truncated single- and two-mode Fock-space linear algebra.
//
// Index n of an amplitude vector is the photon number n. Two-mode grids are
// stored with rows indexing mode a and columns indexing mode b.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kitten/errors.hpp"

namespace kitten {

using Complex = std::complex<double>;

/// Number of Fock levels kept per mode and the probability mass the cutoff
/// is allowed to drop.
class Truncation {
 public:
  Truncation(int dim, double tail_tol);

  int dim() const noexcept { return dim_; }
  double tail_tol() const noexcept { return tail_tol_; }

  bool operator==(const Truncation&) const = default;

 private:
  int dim_;
  double tail_tol_;
};

/// Chooses a Truncation for a given state family. By default the cutoff is
/// the smallest one whose analytic tail mass is below `tail_tol`; a fixed
/// dimension overrides that choice. `scale` enlarges whatever dimension was
/// chosen, which is how convergence checks re-evaluate a quantity.
struct TruncationPolicy {
  double tail_tol = 1e-12;
  std::optional<int> fixed_dim;
  double scale = 1.0;

  /// Cutoff for states built from S(r)|0> (squeezed vacuum and its
  /// superpositions, possibly split on a beam splitter).
  Truncation for_squeezing(double r) const;
  /// Cutoff for the two-mode squeezed vacuum.
  Truncation for_tmss(double r) const;
  /// Same policy with the cutoff enlarged by 1.5x.
  TruncationPolicy refined() const;

 private:
  Truncation finish(int natural_dim) const;
};

/// Relative/absolute change allowed between a value and its refined-cutoff
/// recomputation.
inline constexpr double kConvergenceTol = 1e-8;

class SingleModeState {
 public:
  SingleModeState(Eigen::VectorXcd amps, Truncation trunc);

  const Eigen::VectorXcd& amps() const noexcept { return amps_; }
  Complex operator[](int n) const { return amps_[n]; }
  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const Truncation& truncation() const noexcept { return trunc_; }

  double norm_squared() const { return amps_.squaredNorm(); }
  /// Probability mass lost to the cutoff, assuming the untruncated state is
  /// normalized.
  double deficit() const { return 1.0 - norm_squared(); }
  std::vector<double> photon_distribution() const;

 private:
  Eigen::VectorXcd amps_;
  Truncation trunc_;
};

class TwoModeState {
 public:
  TwoModeState(Eigen::MatrixXcd amps, Truncation trunc);

  const Eigen::MatrixXcd& amps() const noexcept { return amps_; }
  Complex operator()(int na, int nb) const { return amps_(na, nb); }
  int dim() const noexcept { return static_cast<int>(amps_.rows()); }
  const Truncation& truncation() const noexcept { return trunc_; }

  double norm_squared() const { return amps_.squaredNorm(); }
  double deficit() const { return 1.0 - norm_squared(); }

 private:
  Eigen::MatrixXcd amps_;
  Truncation trunc_;
};

/// A dim x dim matrix acting on one mode's amplitude vector.
class ModeOperator {
 public:
  explicit ModeOperator(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// Applies the operator; the result keeps the input's truncation. Meant
  /// for norm-preserving maps; for ladder operators use matrix() directly.
  SingleModeState apply(const SingleModeState& state) const;
  ModeOperator operator*(const ModeOperator& rhs) const;

 private:
  Eigen::MatrixXcd matrix_;
};

SingleModeState fock_state(int n, const Truncation& trunc);
SingleModeState vacuum(const Truncation& trunc);

/// e^{-|a|^2/2} a^n / sqrt(n!). Throws TruncationError when the dropped
/// Poisson tail exceeds trunc.tail_tol().
SingleModeState coherent_amplitudes(Complex alpha, const Truncation& trunc);

ModeOperator annihilation(const Truncation& trunc);
ModeOperator creation(const Truncation& trunc);
ModeOperator number_operator(const Truncation& trunc);

/// exp[(-r/2)(a^dag^2 - a^2)] computed by exponentiating the truncated
/// generator. Only rows well below the cutoff reproduce the untruncated
/// operator.
ModeOperator squeeze_matrix(double r, const Truncation& trunc);

Complex inner_product(const SingleModeState& u, const SingleModeState& v);
Complex inner_product(const TwoModeState& u, const TwoModeState& v);

TwoModeState tensor(const SingleModeState& u, const SingleModeState& v);

/// q(n_b) = sum_{n_a} weights_a[n_a] |amps(n_a, n_b)|^2.
std::vector<double> partial_trace_keep_b(const TwoModeState& state,
                                         std::span<const double> weights_a);

}  // namespace kitten
