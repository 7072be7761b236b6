#pragma once

// Parameter sweeps, 1-D maximization and crossing search.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kitten/fock.hpp"

namespace kitten {

using Params = std::map<std::string, double>;

/// A named scalar computation over a parameter map. Truncation-sensitive
/// quantities are re-evaluated on a 1.5x larger cutoff and must agree to
/// kConvergenceTol.
struct Quantity {
  std::string name;
  std::string description;
  std::vector<std::string> parameters;
  bool truncation_sensitive = true;
  std::function<double(const Params&, const TruncationPolicy&)> eval;
};

/// Evaluates `q` and, if it is truncation sensitive, checks it against the
/// refined cutoff. Throws ConvergenceError naming the parameters on failure.
double evaluate_converged(const Quantity& q, const Params& params, const TruncationPolicy& policy);

struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;

  /// Uniform grid lo..hi inclusive; a single point sits at lo.
  std::vector<double> values() const;
};

/// One or two axes; with two, the first axis varies slowest.
struct SweepSpec {
  std::vector<Axis> axes;
  Params fixed;
};

struct SweepRow {
  std::vector<double> inputs;
  double value = 0.0;
  bool converged = false;
};

struct SweepResult {
  std::string quantity;
  std::vector<std::string> input_names;
  std::vector<SweepRow> rows;
  TruncationPolicy policy;
};

/// Validates a spec; throws UsageError on an empty or inverted range.
void validate(const SweepSpec& spec);

/// Rows are evaluated concurrently and returned in grid order. The first
/// failing row (in grid order) is rethrown.
SweepResult sweep(const SweepSpec& spec, const Quantity& quantity, const TruncationPolicy& policy);

struct MaxResult {
  double argmax = 0.0;
  double max = 0.0;
  /// Set when a 201-point grid finds a value above the returned maximum
  /// (by more than 1e-9) or more than one local maximum.
  bool unimodality_warning = false;
};

/// Golden-section search to an interval narrower than `tol`, started from
/// the best point of a 41-point scan.
MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-4);

/// Bisection root of f - g on [lo, hi]. Throws NoCrossingError when f - g
/// has the same sign at both ends.
double find_crossing(const std::function<double(double)>& f, const std::function<double(double)>& g,
                     double lo, double hi, double tol);

}  // namespace kitten
