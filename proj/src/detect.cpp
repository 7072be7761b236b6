#include "kitten/detect.hpp"

#include <cmath>
#include <stdexcept>

#include "kitten/analysis.hpp"

namespace kitten {

namespace {

struct Moments {
  double first = 0.0;   // sum n q(n)
  double second = 0.0;  // sum n(n-1) q(n)
};

Moments factorial_moments(std::span<const double> q) {
  Moments m;
  for (std::size_t n = 0; n < q.size(); ++n) {
    const auto x = static_cast<double>(n);
    m.first += x * q[n];
    m.second += x * (x - 1.0) * q[n];
  }
  return m;
}

}  // namespace

DetectorModel::DetectorModel(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("DetectorModel: eta must lie in (0, 1]");
}

double DetectorModel::click_weight(int k) const {
  if (k <= 0) return 0.0;
  return eta_ * std::pow(1.0 - eta_, k - 1);
}

std::vector<double> DetectorModel::click_weights(int dim) const {
  std::vector<double> w(dim, 0.0);
  double v = eta_;
  for (int k = 1; k < dim; ++k) {
    w[k] = v;
    v *= 1.0 - eta_;
  }
  return w;
}

HeraldedStatistics click_statistics(const JointDistribution& dist, const DetectorModel& det) {
  const int dim = dist.dim();
  const std::vector<double> w = det.click_weights(dim);
  HeraldedStatistics s;
  s.heralded_weights.assign(dim, 0.0);
  for (int na = 1; na < dim; ++na)
    for (int nb = 0; nb < dim; ++nb) s.heralded_weights[nb] += w[na] * dist(na, nb);
  for (double q : s.heralded_weights) s.p_click += q;
  s.p_click_1 = dim > 1 ? s.heralded_weights[1] : 0.0;
  if (!(s.p_click > 0.0)) throw ZeroProbabilityError("click_statistics: click probability underflows");
  s.p_click_c = s.p_click_1 / s.p_click;
  s.conditional_photon_dist.resize(dim);
  for (int nb = 0; nb < dim; ++nb) s.conditional_photon_dist[nb] = s.heralded_weights[nb] / s.p_click;
  return s;
}

HeraldedStatistics tmss_click_statistics(SqueezeParam r, const DetectorModel& det) {
  const double eta = det.eta();
  const double rv = r.value();
  const double t2 = std::tanh(rv) * std::tanh(rv);
  const double c = std::cosh(rv);
  HeraldedStatistics s;
  s.p_click = 2.0 * eta * t2 / (2.0 - eta * (1.0 - std::cosh(2.0 * rv)));
  s.p_click_1 = eta * t2 / (c * c);
  s.p_click_c = eta + (1.0 - eta) / (c * c);

  // q(n) = eta (1-eta)^{n-1} t^{2n} / cosh^2 r.
  const double ratio = (1.0 - eta) * t2;
  s.heralded_weights = {0.0};
  s.conditional_photon_dist = {0.0};
  double q = s.p_click_1;
  double cond = 1.0 - ratio;
  const double floor = 1e-18;
  for (int n = 1;; ++n) {
    s.heralded_weights.push_back(q);
    s.conditional_photon_dist.push_back(cond);
    if (ratio == 0.0 || std::pow(ratio, n) < floor || n > 100000) break;
    q *= ratio;
    cond *= ratio;
  }
  return s;
}

double g2_from_photon_dist(std::span<const double> dist) {
  double total = 0.0;
  for (double p : dist) total += p;
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("g2_from_photon_dist: distribution must sum to 1");
  const Moments m = factorial_moments(dist);
  if (!(m.first > 0.0)) throw ZeroProbabilityError("g2_from_photon_dist: zero mean photon number");
  return m.second / (m.first * m.first);
}

double heralded_g2(const HeraldedStatistics& stats) {
  const Moments m = factorial_moments(stats.heralded_weights);
  if (!(m.first > 0.0)) throw ZeroProbabilityError("heralded_g2: zero mean photon number");
  return m.second / (m.first * m.first);
}

double g2_heralded_cat(SqueezeParam r, const DetectorModel& det, const TruncationPolicy& policy) {
  return heralded_g2(click_statistics(cat_joint_distribution(r, CatSign::minus, policy), det));
}

double g2_tmss_analytic(SqueezeParam r, const DetectorModel& det) {
  const double eta = det.eta();
  return -3.0 + 2.0 / eta + eta + (1.0 - eta) * std::cosh(2.0 * r.value());
}

double g2_tmss_numeric(SqueezeParam r, const DetectorModel& det, const TruncationPolicy& policy) {
  return heralded_g2(click_statistics(tmss_joint_probability(r, policy.for_tmss(r.value())), det));
}

std::optional<double> quality_crossover(const DetectorModel& det, const TruncationPolicy& policy,
                                        double tol) {
  auto cat = [&](double r) { return g2_heralded_cat(SqueezeParam(r), det, policy); };
  auto tmss = [&](double r) { return g2_tmss_analytic(SqueezeParam(r), det); };
  constexpr int kSteps = 200;
  constexpr double kHi = 2.0;
  double prev_r = kHi / kSteps;
  double prev = cat(prev_r) - tmss(prev_r);
  for (int i = 2; i <= kSteps; ++i) {
    const double r = kHi * i / kSteps;
    const double cur = cat(r) - tmss(r);
    if (cur == 0.0) return r;
    if ((prev < 0.0) != (cur < 0.0)) return find_crossing(cat, tmss, prev_r, r, tol);
    prev = cur;
    prev_r = r;
  }
  return std::nullopt;
}

}  // namespace kitten
