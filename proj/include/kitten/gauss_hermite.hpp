#pragma once

#include <vector>

namespace kitten {

/// Nodes and weights of the n-point Gauss-Hermite rule for the weight
/// e^{-x^2} on the real line (Golub-Welsch).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rules are computed once per order and shared.
const GaussHermiteRule& gauss_hermite(int order);

}  // namespace kitten
