#pragma once

// Independent constructions used only to cross-check the production paths.

#include <optional>

#include "kitten/fock.hpp"
#include "kitten/kerr.hpp"
#include "kitten/optics.hpp"
#include "kitten/sources.hpp"

namespace kitten::oracle {

/// exp[xi (a^dag b^dag - a b)] applied to a two-mode state. The generator
/// conserves n_a - n_b, so it is exponentiated one difference block at a
/// time.
TwoModeState apply_two_mode_squeeze(double xi, const TwoModeState& state);

/// Beam-splitter output table rebuilt from the operator decomposition
///   S_ab(-r/2) S_a(r/2) S_b(r/2) |0,0>   (input |r>)
/// and, for the superpositions,
///   N_+-^{-1/2} [S_ab(-r/2) S_a(r/2) S_b(r/2) +- S_ab(r/2) S_a(-r/2) S_b(-r/2)] |0,0>,
/// with every single-mode squeezer taken from squeeze_matrix. Without a
/// sign the plain squeezed input is used.
JointDistribution decomposition_joint_distribution(SqueezeParam r, std::optional<CatSign> sign,
                                                   const Truncation& trunc);

/// R(r, alpha, dtheta) with mode 2 held on a Fock grid of `probe_dim`
/// levels and every overlap taken by inner_product.
double fock_grid_phase_error_ratio(SqueezeParam r, double alpha, double dtheta,
                                   const Truncation& mode1, int probe_dim);

/// Gauss-Hermite quadrature of phase_error_ratio over dtheta ~ N(0, sigma^2)
/// with the given number of nodes.
double gauss_hermite_averaged_ratio(SqueezeParam r, double alpha, double sigma, int order,
                                    const TruncationPolicy& policy = {});

}  // namespace kitten::oracle
