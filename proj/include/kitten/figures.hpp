#pragma once

// Data tables behind each figure, built from the quantity registry.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kitten/fock.hpp"
#include "kitten/table.hpp"

namespace kitten {

inline constexpr const char* kVersion = "0.1.0";

struct FigureOptions {
  TruncationPolicy policy;
  std::optional<double> eta;    // fixed detector efficiency (default 0.9)
  std::optional<double> alpha;  // probe amplitude (default 10)
  std::optional<std::uint64_t> seed;  // adds a Monte Carlo column to fig5a
};

struct FigureInfo {
  std::string selector;
  std::string description;
};

const std::vector<FigureInfo>& figure_list();

/// Throws UsageError for an unknown selector, ConvergenceError (or another
/// numerical error) if a row cannot be evaluated.
Table make_figure(const std::string& selector, const FigureOptions& options);

/// Metadata lines shared by every table.
void add_run_metadata(Table& table, const TruncationPolicy& policy);

}  // namespace kitten
