#pragma once

#include <array>
#include <span>
#include <string_view>

namespace wws::detail {

struct FilterTableEntry {
  std::string_view name;
  std::span<const double> lowpass;
};

// Low-pass reconstruction filters g of the orthonormal Daubechies family,
// normalized so that sum(g) = sqrt(2). Index 0 is haar (= db1).
const std::array<FilterTableEntry, 20>& daubechies_tables();

}  // namespace wws::detail
