#include "kitten/kerr.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include <unsupported/Eigen/FFT>

#include "kitten/optics.hpp"

namespace kitten {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_phase(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

// Odd-k weights |c_k|^2 / |c_1|^2 of the target branch together with their
// indices; the common factor cancels in the ratio.
struct OddBranch {
  std::vector<int> k;
  std::vector<double> w;
};

OddBranch odd_branch(double r, const TruncationPolicy& policy) {
  OddBranch b;
  b.k.push_back(1);
  b.w.push_back(1.0);
  if (r == 0.0) return b;
  const int dim = policy.for_squeezing(r).dim();
  const double t2 = std::tanh(r) * std::tanh(r);
  double w = 1.0;
  // |c_k|^2 / |c_{k-1}|^2 = t^2 (2k-1)/(2k).
  for (int k = 2; 2 * k < dim; ++k) {
    w *= t2 * (2.0 * k - 1.0) / (2.0 * k);
    if (k % 2 == 1) {
      b.k.push_back(k);
      b.w.push_back(w);
    }
  }
  return b;
}

// <Psi^(-)|Psi'> for a phase error dtheta, up to the common |c_1|^2 factor.
// Component k of Psi' has label (-1)^k alpha e^{-i k dtheta}; for odd k
// that is -alpha e^{-i k dtheta}, and <-alpha|-alpha e^{-i phi}> =
// exp(-alpha^2 (1 - e^{-i phi})).
double ratio_from_branch(const OddBranch& b, double alpha, double dtheta) {
  Complex overlap = 0.0;
  double norm = 0.0;
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < b.k.size(); ++i) {
    const double phi = b.k[i] * dtheta;
    const Complex exponent(-a2 * (1.0 - std::cos(phi)), -a2 * std::sin(phi));
    overlap += b.w[i] * std::exp(exponent);
    norm += b.w[i];
  }
  return std::norm(overlap) / (norm * norm);
}

// Expanding <-alpha|-alpha e^{-i k dtheta}> = sum_m P(m) e^{-i m k dtheta},
// with P(m) the Poisson weights of mean alpha^2, turns the overlap into
// sum_nu B_nu e^{-i nu dtheta}. Averaging |.|^2 over dtheta ~ N(0, sigma^2)
// then gives sum_d exp(-sigma^2 d^2 / 2) C(d), where C is the
// autocorrelation of B. C does not depend on sigma and is cached.
struct Harmonics {
  std::vector<double> autocorr;  // C(d), d = 0..size-1, divided by (sum B)^2
};

Harmonics build_harmonics(const OddBranch& b, double alpha) {
  const double a2 = alpha * alpha;
  std::vector<double> poisson;
  double peak = 0.0;
  for (int m = 0;; ++m) {
    const double lp = -a2 + (m == 0 ? 0.0 : m * std::log(a2)) - std::lgamma(m + 1.0);
    const double p = std::exp(lp);
    peak = std::max(peak, p);
    poisson.push_back(p);
    if (m > a2 && p < 1e-20 * peak) break;
  }
  const std::size_t top = static_cast<std::size_t>(b.k.back()) * (poisson.size() - 1) + 1;
  std::size_t n = 1;
  while (n < 2 * top) n <<= 1;
  std::vector<Complex> spec(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < b.k.size(); ++i)
    for (std::size_t m = 0; m < poisson.size(); ++m) {
      const double v = b.w[i] * poisson[m];
      spec[static_cast<std::size_t>(b.k[i]) * m] += v;
      total += v;
    }
  Eigen::FFT<double> fft;
  std::vector<Complex> freq;
  fft.fwd(freq, spec);
  for (auto& f : freq) f = std::norm(f);
  std::vector<Complex> corr;
  fft.inv(corr, freq);
  Harmonics h;
  h.autocorr.resize(top);
  for (std::size_t d = 0; d < top; ++d) h.autocorr[d] = corr[d].real() / (total * total);
  return h;
}

std::shared_ptr<const Harmonics> cached_harmonics(double r, double alpha, const TruncationPolicy& policy) {
  const int dim = r == 0.0 ? 0 : policy.for_squeezing(r).dim();
  const auto key = std::make_tuple(r, alpha, dim);
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const Harmonics>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto h = std::make_shared<const Harmonics>(build_harmonics(odd_branch(r, policy), alpha));
  std::lock_guard lock(mutex);
  if (cache.size() >= 32) cache.clear();
  cache.emplace(key, h);
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t bits) {
  // 53 random bits in (0, 1].
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

KerrSchedule::KerrSchedule(double tau_tilde, Complex alpha)
    : tau_tilde_(reduce_phase(tau_tilde)), alpha_(alpha) {
  if (!(std::abs(alpha) > 0.0)) throw std::invalid_argument("KerrSchedule: |alpha| must be > 0");
}

HybridKerrState::HybridKerrState(std::vector<KerrComponent> components, Complex alpha)
    : components_(std::move(components)), alpha_(alpha) {}

double HybridKerrState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : components_) s += std::norm(c.coeff);
  return s;
}

HybridKerrState kerr_evolve(SqueezeParam r, const KerrSchedule& sched, const Truncation& trunc) {
  const SingleModeState sq = squeezed_state(r, trunc);
  std::vector<KerrComponent> comps;
  comps.reserve(trunc.dim() / 2 + 1);
  for (int k = 0; 2 * k < trunc.dim(); ++k) {
    const double phase = reduce_phase(k * sched.tau_tilde());
    comps.push_back({2 * k, sq[2 * k], sched.alpha() * std::polar(1.0, -phase)});
  }
  return HybridKerrState(std::move(comps), sched.alpha());
}

HybridKerrState kerr_evolve_detuned(SqueezeParam r, Complex alpha, double dtheta,
                                    const Truncation& trunc) {
  const SingleModeState sq = squeezed_state(r, trunc);
  std::vector<KerrComponent> comps;
  comps.reserve(trunc.dim() / 2 + 1);
  for (int k = 0; 2 * k < trunc.dim(); ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    comps.push_back({2 * k, sq[2 * k], sign * alpha * std::polar(1.0, -k * dtheta)});
  }
  return HybridKerrState(std::move(comps), alpha);
}

Complex coherent_overlap(Complex beta, Complex gamma) {
  return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(gamma) + std::conj(beta) * gamma);
}

double p0_generation(const KerrSchedule& sched, SqueezeParam r, const Truncation& trunc) {
  if (!(r.value() > 0.0)) throw std::invalid_argument("p0_generation: r must be > 0");
  const HybridKerrState out = kerr_evolve(r, sched, trunc);
  const SingleModeState target = squeezed_cat(r, CatSign::minus, trunc);
  const Complex minus_alpha = -sched.alpha();
  Complex amp = 0.0;
  for (const auto& c : out.components())
    amp += std::conj(c.coeff) * target[c.photons] * coherent_overlap(c.label, minus_alpha);
  return std::norm(amp);
}

double p1_heralded(const KerrSchedule& sched, SqueezeParam r, const Truncation& trunc) {
  const JointDistribution dist = joint_probability(split(squeezed_cat(r, CatSign::minus, trunc)));
  return dist(1, 1) * p0_generation(sched, r, trunc);
}

double phase_error_ratio(SqueezeParam r, double alpha, double dtheta,
                         const TruncationPolicy& policy) {
  if (!(alpha > 0.0)) throw std::invalid_argument("phase_error_ratio: alpha must be real and > 0");
  if (dtheta == 0.0) return 1.0;
  return ratio_from_branch(odd_branch(r.value(), policy), alpha, dtheta);
}

double gaussian_averaged_ratio(SqueezeParam r, double alpha, double sigma,
                               const TruncationPolicy& policy) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian_averaged_ratio: sigma must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("gaussian_averaged_ratio: alpha must be > 0");
  if (sigma == 0.0) return 1.0;
  const auto h = cached_harmonics(r.value(), alpha, policy);
  const auto& c = h->autocorr;
  const double s2 = 0.5 * sigma * sigma;
  double acc = c[0];
  for (std::size_t d = 1; d < c.size(); ++d) {
    const double g = std::exp(-s2 * static_cast<double>(d) * static_cast<double>(d));
    if (g < 1e-300) break;
    acc += 2.0 * g * c[d];
  }
  return acc;
}

double monte_carlo_averaged_ratio(SqueezeParam r, double alpha, double sigma, int samples,
                                  std::uint64_t seed, const TruncationPolicy& policy) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_averaged_ratio: samples must be >= 1");
  const OddBranch branch = odd_branch(r.value(), policy);
  const std::uint64_t key = splitmix64(seed);
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t base = key ^ (2ULL * static_cast<std::uint64_t>(i));
    const double u1 = unit_uniform(splitmix64(base));
    const double u2 = unit_uniform(splitmix64(base ^ 1ULL));
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    acc += sigma == 0.0 ? 1.0 : ratio_from_branch(branch, alpha, sigma * z);
  }
  return acc / samples;
}

LambdaFit fit_lambda(std::span<const RatioSample> samples) {
  if (samples.size() < 8) throw std::invalid_argument("fit_lambda: need at least 8 samples");
  double sxx = 0.0;
  double sxy = 0.0;
  bool distinct = false;
  for (const auto& s : samples) {
    if (!(s.ratio > 0.0)) throw std::invalid_argument("fit_lambda: ratios must be positive");
    if (s.sigma != samples.front().sigma) distinct = true;
    const double x = s.sigma * s.sigma;
    sxx += x * x;
    sxy += x * std::log(s.ratio);
  }
  if (!distinct || sxx == 0.0) throw NumericalError("fit_lambda: degenerate fit (all sigma equal)");
  const double lambda = -sxy / sxx;
  double ssr = 0.0;
  for (const auto& s : samples) {
    const double e = std::log(s.ratio) + lambda * s.sigma * s.sigma;
    ssr += e * e;
  }
  const auto n = static_cast<double>(samples.size());
  return {lambda, std::sqrt(ssr / (n - 1.0) / sxx), std::sqrt(ssr / n)};
}

std::vector<RatioSample> lambda_fit_samples(SqueezeParam r, double alpha,
                                            const TruncationPolicy& policy) {
  constexpr int kPoints = 21;
  constexpr double kWindow = 1e-3;
  std::vector<RatioSample> out;
  out.reserve(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double sigma = kWindow * i / (kPoints - 1);
    out.push_back({sigma, gaussian_averaged_ratio(r, alpha, sigma, policy)});
  }
  return out;
}

}  // namespace kitten
