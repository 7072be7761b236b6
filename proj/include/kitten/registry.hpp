#pragma once

// Named quantities shared by the figure tables, the sweep command and the
// acceptance checks.

#include <string>
#include <vector>

#include "kitten/analysis.hpp"

namespace kitten {

/// All registered quantities, sorted by name.
const std::vector<Quantity>& quantity_registry();

/// Throws UsageError listing the registered names when `name` is unknown.
const Quantity& find_quantity(const std::string& name);

}  // namespace kitten
