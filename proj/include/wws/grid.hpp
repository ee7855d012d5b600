#pragma once

#include <cstddef>
#include <vector>

namespace wws {

// Function values on a uniform grid: values[k] sits at origin + k * spacing.
// When scale_factor_applied is set, values already carry the 2^{-J/2}
// factor that turns point samples into level-J approximation coefficients.
struct SampledDensity {
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> values;
  bool scale_factor_applied = false;

  std::size_t size() const { return values.size(); }
  double position(std::size_t k) const { return origin + static_cast<double>(k) * spacing; }
};

}  // namespace wws
