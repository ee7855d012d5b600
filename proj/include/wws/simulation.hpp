#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wws/measures.hpp"
#include "wws/wavelet_distance.hpp"

namespace wws {

enum class Family { uniform_translate, uniform_dilate, bump_translate, bump_dilate };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// Base density of a family: uniform(0,1), uniform(1,2), bump(1/2,1/2) and
/// bump(3/2,1/2) respectively.
Density base_density(Family family);

/// Base density translated by param, or dilated by param about 3/2.
Density transformed_density(Family family, double param);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct SimulationSpec {
  Family family = Family::uniform_translate;
  std::size_t count = 20;
  ParamRange param_range{0.0, 2.0};
  std::vector<double> s_values{1.0, 0.5, 0.25};
  DistanceConfig cfg;
  std::size_t exact_grid_points = 1000;
  Interval exact_domain{0.0, 3.0};

  void validate() const;
};

/// Defaults per family: translations use a in [0, 2] and j0 = -11,
/// dilations b in [1/2, 3/2] and j0 = -9. M is 18, or 22 when full is set.
SimulationSpec default_spec(Family family, bool full = false);

/// count evenly spaced values over the range, both ends included.
std::vector<double> parameter_values(const SimulationSpec& spec);

struct SimulationRow {
  Family family = Family::uniform_translate;
  Formulation formulation = Formulation::new_distance;
  std::string wavelet;
  double s = 1.0;
  int j0 = 0;
  int levels = 0;
  double param = 0.0;
  double wavelet_value = 0.0;
  double exact_value = 0.0;
  double norm_constant = 1.0;
  double normalized_value = 0.0;
};

/// Wavelet and exact distances between the base density and each transform,
/// for each s. Rows are ordered by s (as listed) then by param, and carry the
/// normalization fitted over their s group.
std::vector<SimulationRow> run_simulation(const SimulationSpec& spec);

/// Least-squares c minimizing sum (c w - e)^2 over the rows whose param is at
/// least lo + (hi - lo) / 10, with lo and hi the extreme params of the rows.
/// Throws DegenerateFit when every selected wavelet value is zero.
double fit_normalization(std::span<const SimulationRow> rows);

inline constexpr std::string_view kCsvHeader =
    "family,formulation,wavelet,s,j0,M,param,wavelet_value,exact_value,norm_constant,normalized_value";

void write_csv(std::span<const SimulationRow> rows, std::ostream& out);
void emit_csv(std::span<const SimulationRow> rows, const std::string& path);

}  // namespace wws
