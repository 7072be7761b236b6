#pragma once

// Cross-Kerr entangling step between the squeezed mode (mode 1) and a
// coherent probe (mode 2), homodyne post-selection, and the sensitivity of
// the post-selection to errors in the interaction phase.
//
// Mode 2 is never put on a Fock grid: each mode-1 component |2k> carries a
// coherent label beta_k for mode 2, and overlaps use the closed form
// <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma).

#include <cstdint>
#include <span>
#include <vector>

#include "kitten/fock.hpp"
#include "kitten/sources.hpp"

namespace kitten {

/// Interaction phase tau_tilde = 2 kappa tau (reduced to [0, 2pi)) and the
/// probe amplitude alpha.
class KerrSchedule {
 public:
  KerrSchedule(double tau_tilde, Complex alpha);

  double tau_tilde() const noexcept { return tau_tilde_; }
  Complex alpha() const noexcept { return alpha_; }

 private:
  double tau_tilde_;
  Complex alpha_;
};

struct KerrComponent {
  int photons;   // mode-1 photon number 2k
  Complex coeff; // <2k|S(r)|0>
  Complex label; // mode-2 coherent amplitude
};

/// sum_k coeff_k |2k>_1 |label_k>_2.
class HybridKerrState {
 public:
  HybridKerrState(std::vector<KerrComponent> components, Complex alpha);

  const std::vector<KerrComponent>& components() const noexcept { return components_; }
  Complex alpha() const noexcept { return alpha_; }
  double norm_squared() const;

 private:
  std::vector<KerrComponent> components_;
  Complex alpha_;
};

/// |r>_1 |alpha>_2 evolved under the cross-Kerr Hamiltonian for phase
/// tau_tilde: component k gets label alpha e^{-i k tau_tilde}.
HybridKerrState kerr_evolve(SqueezeParam r, const KerrSchedule& sched, const Truncation& trunc);

/// Same evolution at tau_tilde = pi + dtheta, with the (-1)^k factor applied
/// exactly rather than through e^{-i k pi}.
HybridKerrState kerr_evolve_detuned(SqueezeParam r, Complex alpha, double dtheta,
                                    const Truncation& trunc);

Complex coherent_overlap(Complex beta, Complex gamma);

/// Probability of projecting the Kerr output onto |r;->_1 |-alpha>_2.
double p0_generation(const KerrSchedule& sched, SqueezeParam r, const Truncation& trunc);

/// P(1,1;r;-) times p0_generation.
double p1_heralded(const KerrSchedule& sched, SqueezeParam r, const Truncation& trunc);

/// Generation-probability ratio R(r, alpha, dtheta) for a phase error
/// dtheta around tau_tilde = pi, normalized by its dtheta = 0 value.
/// At r = 0 the r -> 0 limit (only |2> survives) is returned.
double phase_error_ratio(SqueezeParam r, double alpha, double dtheta,
                         const TruncationPolicy& policy = {});

/// Average of phase_error_ratio over dtheta ~ N(0, sigma^2), taken exactly
/// term by term in the harmonics e^{-i nu dtheta} of the overlap, so it
/// stays accurate when the ratio oscillates faster than sigma.
double gaussian_averaged_ratio(SqueezeParam r, double alpha, double sigma,
                               const TruncationPolicy& policy = {});

/// Sample-mean estimate of the same average. Sample i draws its phase from
/// a counter-based generator keyed by (seed, i), so the estimate does not
/// depend on evaluation order.
double monte_carlo_averaged_ratio(SqueezeParam r, double alpha, double sigma, int samples,
                                  std::uint64_t seed, const TruncationPolicy& policy = {});

struct RatioSample {
  double sigma;
  double ratio;
};

struct LambdaFit {
  double lambda;
  double std_error;
  double rms_residual;  // of ln R about -lambda sigma^2
};

/// Least-squares fit of ln R = -lambda sigma^2 (no intercept).
LambdaFit fit_lambda(std::span<const RatioSample> samples);

/// The 21 uniform samples of the averaged ratio on sigma in [0, 0.001].
std::vector<RatioSample> lambda_fit_samples(SqueezeParam r, double alpha,
                                            const TruncationPolicy& policy = {});

}  // namespace kitten
