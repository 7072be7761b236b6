#include "kitten/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace kitten {

namespace {

std::string describe(const Params& params) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : params) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

}  // namespace

double evaluate_converged(const Quantity& q, const Params& params, const TruncationPolicy& policy) {
  for (const auto& name : q.parameters)
    if (!params.contains(name))
      throw UsageError("quantity '" + q.name + "' needs parameter '" + name + "'");
  const double value = q.eval(params, policy);
  if (!std::isfinite(value))
    throw NumericalError(q.name + " is not finite at " + describe(params));
  if (!q.truncation_sensitive) return value;
  const double refined = q.eval(params, policy.refined());
  if (!(std::abs(refined - value) < kConvergenceTol)) {
    std::ostringstream os;
    os << q.name << " did not converge at " << describe(params) << ": " << value << " vs "
       << refined << " on the refined cutoff";
    throw ConvergenceError(os.str());
  }
  return value;
}

std::vector<double> Axis::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i)
    v[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  if (points > 1) v.back() = hi;
  return v;
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw UsageError("sweep: need one or two axes");
  for (const auto& a : spec.axes) {
    if (a.name.empty()) throw UsageError("sweep: axis without a name");
    if (a.points < 1) throw UsageError("sweep: axis '" + a.name + "' has no points");
    if (a.points >= 2 && !(a.lo < a.hi))
      throw UsageError("sweep: axis '" + a.name + "' needs lo < hi");
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
      throw UsageError("sweep: axis '" + a.name + "' has a non-finite bound");
  }
}

SweepResult sweep(const SweepSpec& spec, const Quantity& quantity, const TruncationPolicy& policy) {
  validate(spec);
  SweepResult result;
  result.quantity = quantity.name;
  result.policy = policy;
  for (const auto& a : spec.axes) result.input_names.push_back(a.name);

  std::vector<std::vector<double>> grid;
  const std::vector<double> first = spec.axes[0].values();
  if (spec.axes.size() == 1) {
    for (double x : first) grid.push_back({x});
  } else {
    const std::vector<double> second = spec.axes[1].values();
    for (double x : first)
      for (double y : second) grid.push_back({x, y});
  }

  result.rows.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Params p = spec.fixed;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) p[spec.axes[a].name] = grid[i][a];
    try {
      result.rows[i] = {grid[i], evaluate_converged(quantity, p, policy), true};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_1d: need lo < hi");
  constexpr int kScan = 41;
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i < kScan; ++i) {
    const double v = f(lo + (hi - lo) * i / (kScan - 1));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double step = (hi - lo) / (kScan - 1);
  double a = std::max(lo, lo + (best - 1) * step);
  double b = std::min(hi, lo + (best + 1) * step);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  MaxResult res;
  res.argmax = 0.5 * (a + b);
  res.max = f(res.argmax);
  if (best_value > res.max) {
    res.argmax = lo + best * step;
    res.max = best_value;
  }

  constexpr int kCheck = 201;
  std::vector<double> grid(kCheck);
  for (int i = 0; i < kCheck; ++i) grid[i] = f(lo + (hi - lo) * i / (kCheck - 1));
  int local_maxima = 0;
  for (int i = 0; i < kCheck; ++i) {
    if (grid[i] > res.max + 1e-9) res.unimodality_warning = true;
    const bool left = i == 0 || grid[i] > grid[i - 1];
    const bool right = i == kCheck - 1 || grid[i] > grid[i + 1];
    if (left && right) ++local_maxima;
  }
  if (local_maxima > 1) res.unimodality_warning = true;
  return res;
}

double find_crossing(const std::function<double(double)>& f, const std::function<double(double)>& g,
                     double lo, double hi, double tol) {
  auto h = [&](double x) { return f(x) - g(x); };
  double hl = h(lo);
  const double hh = h(hi);
  if (hl == 0.0) return lo;
  if (hh == 0.0) return hi;
  if ((hl < 0.0) == (hh < 0.0)) {
    std::ostringstream os;
    os << "find_crossing: no sign change on [" << lo << ", " << hi << "]";
    throw NoCrossingError(os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (hm == 0.0) return mid;
    if ((hm < 0.0) == (hl < 0.0)) {
      lo = mid;
      hl = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace kitten
