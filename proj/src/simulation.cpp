#include "wws/simulation.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <string>

#include "wws/error.hpp"
#include "wws/ot_exact.hpp"

namespace wws {

namespace {

bool is_translation(Family family) {
  return family == Family::uniform_translate || family == Family::bump_translate;
}

constexpr double kDilationCenter = 1.5;

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::uniform_translate: return "uniform_translate";
    case Family::uniform_dilate: return "uniform_dilate";
    case Family::bump_translate: return "bump_translate";
    case Family::bump_dilate: return "bump_dilate";
  }
  return "unknown";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::uniform_translate, Family::uniform_dilate, Family::bump_translate,
                   Family::bump_dilate}) {
    if (text == to_string(f)) return f;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown family '" + std::string(text) + "'");
}

Density base_density(Family family) {
  switch (family) {
    case Family::uniform_translate: return uniform_density(0.0, 1.0);
    case Family::uniform_dilate: return uniform_density(1.0, 2.0);
    case Family::bump_translate: return bump_density(0.5, 0.5);
    case Family::bump_dilate: return bump_density(kDilationCenter, 0.5);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown family");
}

Density transformed_density(Family family, double param) {
  const Density base = base_density(family);
  if (is_translation(family)) return param == 0.0 ? base : translate(base, param);
  return dilate(base, param, kDilationCenter);
}

void SimulationSpec::validate() const {
  if (count < 2) throw Error(ErrorCode::InvalidConfig, "count must be at least 2");
  if (!(param_range.lo <= param_range.hi)) {
    throw Error(ErrorCode::InvalidConfig, "parameter range is reversed");
  }
  if (is_translation(family) ? param_range.lo < 0.0 : !(param_range.lo > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, is_translation(family) ? "translations must be nonnegative"
                                                                 : "dilation factors must be positive");
  }
  if (s_values.empty()) throw Error(ErrorCode::InvalidConfig, "no s values");
  for (double s : s_values) {
    if (!(s > 0.0 && s <= 1.0)) {
      throw Error(ErrorCode::InvalidExponent, "s must lie in (0, 1], got " + std::to_string(s));
    }
  }
  if (exact_grid_points < 2) throw Error(ErrorCode::InvalidGrid, "exact grid needs two points");
  DistanceConfig checked = cfg;
  checked.s = s_values.front();
  checked.validate();
}

SimulationSpec default_spec(Family family, bool full) {
  SimulationSpec spec;
  spec.family = family;
  spec.cfg.levels = full ? 22 : 18;
  if (is_translation(family)) {
    spec.param_range = {0.0, 2.0};
    spec.cfg.j0 = -11;
  } else {
    spec.param_range = {0.5, 1.5};
    spec.cfg.j0 = -9;
  }
  return spec;
}

std::vector<double> parameter_values(const SimulationSpec& spec) {
  std::vector<double> out(spec.count);
  const double last = static_cast<double>(spec.count - 1);
  const double width = spec.param_range.hi - spec.param_range.lo;
  for (std::size_t i = 0; i < spec.count; ++i) {
    out[i] = spec.param_range.lo + width * (static_cast<double>(i) / last);
  }
  return out;
}

std::vector<SimulationRow> run_simulation(const SimulationSpec& spec) {
  spec.validate();
  const std::vector<double> params = parameter_values(spec);
  const std::size_t num_s = spec.s_values.size();
  const Density base = base_density(spec.family);
  const DiscreteMeasure base_discrete = discretize(base, spec.exact_domain, spec.exact_grid_points);

  // wavelet[i][k] and exact[i][k] for param i and exponent k.
  std::vector<std::vector<double>> wavelet(params.size());
  std::vector<std::vector<double>> exact(params.size(), std::vector<double>(num_s));
  std::vector<std::exception_ptr> failures(params.size());

  const auto count = static_cast<std::int64_t>(params.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    try {
      const Density moved = transformed_density(spec.family, params[i]);
      wavelet[i] = distances_for_exponents(base, moved, spec.cfg, spec.s_values);
      const DiscreteMeasure moved_discrete = discretize(moved, spec.exact_domain, spec.exact_grid_points);
      for (std::size_t k = 0; k < num_s; ++k) {
        exact[i][k] = exact_ws(base_discrete, moved_discrete, spec.s_values[k]).cost;
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(to_string(spec.family)) + " param " + format_number(params[i]) +
                                ": " + e.what());
    }
  }

  std::vector<SimulationRow> rows;
  rows.reserve(params.size() * num_s);
  for (std::size_t k = 0; k < num_s; ++k) {
    const std::size_t first = rows.size();
    for (std::size_t i = 0; i < params.size(); ++i) {
      SimulationRow row;
      row.family = spec.family;
      row.formulation = spec.cfg.formulation;
      row.wavelet = spec.cfg.wavelet;
      row.s = spec.s_values[k];
      row.j0 = spec.cfg.j0;
      row.levels = spec.cfg.levels;
      row.param = params[i];
      row.wavelet_value = wavelet[i][k];
      row.exact_value = exact[i][k];
      rows.push_back(std::move(row));
    }
    const std::span<SimulationRow> group(rows.data() + first, params.size());
    const double c = fit_normalization(group);
    for (SimulationRow& row : group) {
      row.norm_constant = c;
      row.normalized_value = c * row.wavelet_value;
    }
  }
  return rows;
}

double fit_normalization(std::span<const SimulationRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::DegenerateFit, "no rows to fit");
  double lo = rows.front().param;
  double hi = rows.front().param;
  for (const SimulationRow& row : rows) {
    lo = std::min(lo, row.param);
    hi = std::max(hi, row.param);
  }
  const double threshold = lo + 0.1 * (hi - lo);
  double cross = 0.0;
  double square = 0.0;
  for (const SimulationRow& row : rows) {
    if (row.param < threshold) continue;
    cross += row.wavelet_value * row.exact_value;
    square += row.wavelet_value * row.wavelet_value;
  }
  if (!(square > 0.0)) throw Error(ErrorCode::DegenerateFit, "all fitted wavelet values are zero");
  return cross / square;
}

void write_csv(std::span<const SimulationRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SimulationRow& row : rows) {
    out << to_string(row.family) << ',' << to_string(row.formulation) << ',' << row.wavelet << ','
        << format_number(row.s) << ',' << row.j0 << ',' << row.levels << ',' << format_number(row.param)
        << ',' << format_number(row.wavelet_value) << ',' << format_number(row.exact_value) << ','
        << format_number(row.norm_constant) << ',' << format_number(row.normalized_value) << '\n';
  }
}

void emit_csv(std::span<const SimulationRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_csv(rows, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace wws
