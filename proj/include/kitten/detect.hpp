#pragma once

// Click/no-click heralding detector, heralded statistics and the
// second-order correlation g2(0) of the heralded mode.

#include <optional>
#include <span>
#include <vector>

#include "kitten/optics.hpp"
#include "kitten/sources.hpp"

namespace kitten {

/// Click POVM element M = eta sum_{k>=1} (1-eta)^{k-1} |k><k|. No dark counts.
class DetectorModel {
 public:
  explicit DetectorModel(double eta);

  double eta() const noexcept { return eta_; }
  /// Probability of a click given k photons; zero for k = 0.
  double click_weight(int k) const;
  std::vector<double> click_weights(int dim) const;

 private:
  double eta_;
};

struct HeraldedStatistics {
  double p_click = 0.0;
  double p_click_1 = 0.0;    // click and exactly one photon in mode b
  double p_click_c = 0.0;    // p_click_1 / p_click
  /// q(n_b) = sum_{n_a} w_{n_a} p(n_a, n_b); sums to p_click.
  std::vector<double> heralded_weights;
  /// q / p_click.
  std::vector<double> conditional_photon_dist;
};

/// Click statistics of the herald on mode a of a joint table.
HeraldedStatistics click_statistics(const JointDistribution& dist, const DetectorModel& det);

/// Closed forms for the two-mode squeezed vacuum. The heralded distribution
/// is geometric, q(n) ~ ((1-eta) tanh^2 r)^{n-1} for n >= 1, and is listed
/// until its terms fall below 1e-18 of the first.
HeraldedStatistics tmss_click_statistics(SqueezeParam r, const DetectorModel& det);

/// <n(n-1)> / <n>^2 of a normalized photon-number distribution.
double g2_from_photon_dist(std::span<const double> dist);

/// g2(0) of the heralded mode with moments taken over the click-weighted
/// heralded weights q(n_b) as they stand, i.e. without dividing by
/// p_click. This is the convention behind the closed form
/// -3 + 2/eta + eta + (1-eta) cosh 2r for the two-mode squeezed vacuum; it
/// equals g2_from_photon_dist(conditional_photon_dist) / p_click.
double heralded_g2(const HeraldedStatistics& stats);

/// Heralded g2 of |r;-> through the beam splitter. At r = 0 the limiting
/// input |2> is used.
double g2_heralded_cat(SqueezeParam r, const DetectorModel& det, const TruncationPolicy& policy = {});

double g2_tmss_analytic(SqueezeParam r, const DetectorModel& det);

/// heralded_g2 of the click statistics of the tabulated two-mode squeezed
/// vacuum.
double g2_tmss_numeric(SqueezeParam r, const DetectorModel& det, const TruncationPolicy& policy = {});

/// Squeezing at which the heralded g2 of |r;-> first meets that of the
/// two-mode squeezed vacuum on (0, 2]. Returns nullopt when the two curves
/// only meet at r = 0 (e.g. eta = 1).
std::optional<double> quality_crossover(const DetectorModel& det, const TruncationPolicy& policy = {},
                                        double tol = 1e-6);

}  // namespace kitten
