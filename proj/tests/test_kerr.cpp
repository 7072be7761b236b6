#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kitten/detect.hpp"
#include "kitten/kerr.hpp"
#include "kitten/optics.hpp"
#include "kitten/oracles.hpp"

using namespace kitten;

TEST(KerrSchedule, PhaseIsReducedAndAlphaChecked) {
  EXPECT_NEAR(KerrSchedule(3 * std::numbers::pi, 1.0).tau_tilde(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(KerrSchedule(-std::numbers::pi / 2, 1.0).tau_tilde(), 1.5 * std::numbers::pi, 1e-12);
  EXPECT_THROW(KerrSchedule(1.0, 0.0), std::invalid_argument);
}

TEST(KerrEvolve, PreservesNormAndLabels) {
  const Truncation t = TruncationPolicy{}.for_squeezing(0.725);
  const KerrSchedule sched(0.3, Complex(10.0, 0.0));
  const HybridKerrState s = kerr_evolve(SqueezeParam(0.725), sched, t);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  for (const auto& c : s.components()) EXPECT_NEAR(std::abs(c.label), 10.0, 1e-12);
  EXPECT_NEAR(std::arg(s.components()[1].label), -0.3, 1e-12);
}

TEST(KerrEvolve, DetunedMatchesPlainAtPiPlusDelta) {
  const Truncation t = TruncationPolicy{}.for_squeezing(0.5);
  const double d = 1e-3;
  const HybridKerrState a = kerr_evolve(SqueezeParam(0.5), KerrSchedule(std::numbers::pi + d, 4.0), t);
  const HybridKerrState b = kerr_evolve_detuned(SqueezeParam(0.5), 4.0, d, t);
  ASSERT_EQ(a.components().size(), b.components().size());
  for (std::size_t i = 0; i < 20; ++i)
    EXPECT_LT(std::abs(a.components()[i].label - b.components()[i].label), 1e-10);
}

TEST(CoherentOverlap, ClosedFormAgainstFockGrid) {
  const Truncation t(80, 1e-12);
  const Complex b(1.3, -0.4);
  const Complex g(-0.2, 0.9);
  EXPECT_LT(std::abs(coherent_overlap(b, g) - inner_product(coherent_amplitudes(b, t), coherent_amplitudes(g, t))),
            1e-13);
}

TEST(Generation, AtPiEqualsHeraldingProbability) {
  for (double r : {0.2, 0.725, 1.5}) {
    const Truncation t = TruncationPolicy{}.for_squeezing(r);
    const KerrSchedule sched(std::numbers::pi, 10.0);
    const double p0 = p0_generation(sched, SqueezeParam(r), t);
    EXPECT_NEAR(p0, heralding_success_probability(SqueezeParam(r), CatSign::minus), 1e-12) << r;
    const double p11 = cat_joint_distribution(SqueezeParam(r), CatSign::minus, {})(1, 1);
    EXPECT_NEAR(p1_heralded(sched, SqueezeParam(r), t), p0 * p11, 1e-12);
  }
  EXPECT_THROW(p0_generation(KerrSchedule(1.0, 1.0), SqueezeParam(0.0), Truncation(16, 1e-12)),
               std::invalid_argument);
}

TEST(Generation, BoundedByOne) {
  const Truncation t = TruncationPolicy{}.for_squeezing(1.0);
  for (double tau = 0.0; tau < 2 * std::numbers::pi; tau += 0.37) {
    const double p0 = p0_generation(KerrSchedule(tau, 3.0), SqueezeParam(1.0), t);
    EXPECT_GE(p0, 0.0);
    EXPECT_LE(p0, 1.0 + 1e-12);
  }
}

TEST(PhaseErrorRatio, ZeroSqueezingReducesToSingleTerm) {
  const double alpha = 10.0;
  for (double d : {1e-4, 1e-3, 0.02}) {
    const double expect = std::exp(-2.0 * alpha * alpha * (1.0 - std::cos(d)));
    EXPECT_NEAR(phase_error_ratio(SqueezeParam(0.0), alpha, d), expect, 1e-14);
  }
}

TEST(PhaseErrorRatio, MatchesFockGridProbe) {
  for (double r : {0.3, 0.725})
    for (double d : {0.01, 0.05, 0.2}) {
      const double fast = phase_error_ratio(SqueezeParam(r), 3.0, d);
      const double grid = oracle::fock_grid_phase_error_ratio(SqueezeParam(r), 3.0, d,
                                                              TruncationPolicy{}.for_squeezing(r), 80);
      EXPECT_NEAR(fast, grid, 1e-10) << r << " " << d;
    }
}

TEST(PhaseErrorRatio, UnitAtZeroAndBounded) {
  EXPECT_EQ(phase_error_ratio(SqueezeParam(0.725), 10.0, 0.0), 1.0);
  for (double d : {1e-4, 1e-3, 3e-3}) {
    const double v = phase_error_ratio(SqueezeParam(0.725), 10.0, d);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(GaussianAverage, MatchesQuadratureWhereItConverges) {
  for (double r : {0.0, 0.3, 0.725})
    for (double alpha : {9.0, 10.0, 11.0})
      for (double sigma : {1e-4, 1e-3, 4e-3}) {
        const double v = gaussian_averaged_ratio(SqueezeParam(r), alpha, sigma);
        const double q = oracle::gauss_hermite_averaged_ratio(SqueezeParam(r), alpha, sigma, 128);
        EXPECT_NEAR(v, q, 1e-10) << r << " " << alpha << " " << sigma;
      }
}

TEST(GaussianAverage, Fixtures) {
  const SqueezeParam r(0.725);
  EXPECT_EQ(gaussian_averaged_ratio(r, 10.0, 0.0), 1.0);
  EXPECT_NEAR(gaussian_averaged_ratio(r, 9.0, 0.004), 0.957169, 1e-6);
  EXPECT_NEAR(gaussian_averaged_ratio(r, 10.0, 0.004), 0.9412259, 1e-6);
  EXPECT_NEAR(gaussian_averaged_ratio(r, 11.0, 0.004), 0.923562, 1e-6);
  // r = 0: average of exp(-2 alpha^2 (1 - cos d)) ~ 1/sqrt(1 + 2 alpha^2 sigma^2) for small sigma.
  const double s = 1e-3;
  EXPECT_NEAR(gaussian_averaged_ratio(SqueezeParam(0.0), 10.0, s), 1.0 / std::sqrt(1.0 + 2.0 * 100.0 * s * s),
              1e-8);
  EXPECT_THROW(gaussian_averaged_ratio(r, 10.0, -1.0), std::invalid_argument);
}

TEST(GaussianAverage, StrongSqueezingStaysFinite) {
  const double v = gaussian_averaged_ratio(SqueezeParam(2.0), 10.0, 0.004);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, gaussian_averaged_ratio(SqueezeParam(2.0), 10.0, 0.004, TruncationPolicy{}.refined()), 1e-8);
}

TEST(MonteCarlo, DeterministicAndCloseToExact) {
  const SqueezeParam r(0.725);
  const double a = monte_carlo_averaged_ratio(r, 10.0, 0.002, 20000, 42);
  const double b = monte_carlo_averaged_ratio(r, 10.0, 0.002, 20000, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, monte_carlo_averaged_ratio(r, 10.0, 0.002, 20000, 43));
  EXPECT_NEAR(a, gaussian_averaged_ratio(r, 10.0, 0.002), 2e-3);
  EXPECT_THROW(monte_carlo_averaged_ratio(r, 10.0, 0.002, 0, 1), std::invalid_argument);
}

TEST(FitLambda, RecoversSyntheticDecay) {
  std::vector<RatioSample> s;
  for (int i = 0; i <= 20; ++i) {
    const double sigma = 5e-5 * i;
    s.push_back({sigma, std::exp(-4321.0 * sigma * sigma)});
  }
  const LambdaFit fit = fit_lambda(s);
  EXPECT_NEAR(fit.lambda, 4321.0, 1e-8);
  EXPECT_LT(fit.rms_residual, 1e-12);
  EXPECT_LT(fit.std_error, 1e-6);
}

TEST(FitLambda, RejectsDegenerateInput) {
  std::vector<RatioSample> few(5, {1e-4, 0.9});
  EXPECT_THROW(fit_lambda(few), std::invalid_argument);
  std::vector<RatioSample> same(10, {1e-4, 0.9});
  EXPECT_THROW(fit_lambda(same), NumericalError);
  std::vector<RatioSample> bad(10, {1e-4, 0.9});
  bad[3] = {2e-4, 0.0};
  EXPECT_THROW(fit_lambda(bad), std::invalid_argument);
}

TEST(FitLambda, SixDecibelValues) {
  const double expected[] = {3398.4, 5099.4, 7351.2};
  const double alphas[] = {9.0, 10.0, 11.0};
  for (int i = 0; i < 3; ++i) {
    const auto samples = lambda_fit_samples(SqueezeParam(0.725), alphas[i]);
    ASSERT_EQ(samples.size(), 21u);
    EXPECT_EQ(samples.front().sigma, 0.0);
    EXPECT_NEAR(samples.back().sigma, 1e-3, 1e-18);
    EXPECT_NEAR(fit_lambda(samples).lambda, expected[i], 0.1);
  }
}
