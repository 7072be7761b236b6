#pragma once

// Source states: squeezed vacuum |r>, the superpositions |r;+-> of
// oppositely squeezed vacua, and the two-mode squeezed vacuum.

#include <cmath>

#include "kitten/fock.hpp"

namespace kitten {

/// Dimensionless squeezing parameter, |r| <= 3.
class SqueezeParam {
 public:
  explicit SqueezeParam(double r);

  double value() const noexcept { return r_; }
  /// 20 r / ln 10; r = 0.725 is about 6.3 dB.
  double decibels() const noexcept { return 20.0 * r_ / std::log(10.0); }

 private:
  double r_;
};

enum class CatSign { plus, minus };

inline double sign_value(CatSign s) noexcept { return s == CatSign::plus ? 1.0 : -1.0; }

/// Amplitudes of S(r)|0>: only even levels are populated,
/// <2n|r> = (cosh r)^{-1/2} sqrt((2n)!)/(2^n n!) (-tanh r)^n.
SingleModeState squeezed_state(SqueezeParam r, const Truncation& trunc);

/// N_+-(r) = 2 (1 +- 1/(cosh r sqrt(1 + tanh^2 r))).
double cat_norm(SqueezeParam r, CatSign sign);

/// (|r> +- |-r>)/sqrt(N_+-). Throws DegenerateStateError for (r = 0, minus).
SingleModeState squeezed_cat(SqueezeParam r, CatSign sign, const Truncation& trunc);

/// Two-mode squeezed vacuum with real positive Schmidt amplitudes
/// tanh^n(r)/cosh(r) on the diagonal |n, n>.
TwoModeState tmss_joint_amplitudes(SqueezeParam r, const Truncation& trunc);

/// Probability N_+-(r)/4 that homodyne post-selection yields |r;+->.
double heralding_success_probability(SqueezeParam r, CatSign sign);

}  // namespace kitten
