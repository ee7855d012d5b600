#include "wws/wavelet_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>

#include "wws/error.hpp"

namespace wws {

namespace {

double level_weight(int level, double s) { return std::exp2(-static_cast<double>(level) * (s + 0.5)); }

double abs_sum(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += std::abs(v);
  return total;
}

bool uses_level_zero(Formulation formulation) { return formulation != Formulation::new_distance; }

int decomposition_depth(const DistanceConfig& cfg) {
  return uses_level_zero(cfg.formulation) ? cfg.j0 + cfg.levels : cfg.levels;
}

double check_exponent(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "s must lie in (0, 1], got " + std::to_string(s));
  }
  return s;
}

double evaluate(const CoefficientPyramid& pyramid, const DistanceConfig& cfg, double s) {
  if (!uses_level_zero(cfg.formulation)) return weighted_detail_sum(pyramid, s);
  double value = cfg.c1 * weighted_detail_sum(pyramid, s);
  if (cfg.c0 != 0.0) value += cfg.c0 * abs_sum(pyramid.approx.values);
  return value;
}

CoefficientPyramid decompose_difference(const Density& p, const Density& q, const DistanceConfig& cfg,
                                        const WaveletSystem& system) {
  const SampledDensity diff = sample_difference_for_dwt(p, q, cfg.j0, cfg.levels);
  return dwt_decompose(diff.values, cfg.j0 + cfg.levels, system, decomposition_depth(cfg),
                       ExtensionMode::zero);
}

}  // namespace

std::string_view to_string(Formulation formulation) {
  switch (formulation) {
    case Formulation::new_distance: return "new";
    case Formulation::original: return "original";
    case Formulation::alternative: return "alternative";
  }
  return "unknown";
}

Formulation parse_formulation(std::string_view text) {
  if (text == "new") return Formulation::new_distance;
  if (text == "original") return Formulation::original;
  if (text == "alternative") return Formulation::alternative;
  throw Error(ErrorCode::InvalidConfig, "unknown formulation '" + std::string(text) + "'");
}

void DistanceConfig::validate() const {
  check_exponent(s);
  if (mode != ExtensionMode::zero) {
    throw Error(ErrorCode::InvalidConfig, "wavelet distances use zero extension");
  }
  const auto catalog = wavelet_catalog();
  if (std::find(catalog.begin(), catalog.end(), wavelet) == catalog.end()) {
    throw Error(ErrorCode::UnknownWavelet, "unknown wavelet '" + wavelet + "'");
  }
  if (levels < 1 || levels > 30) {
    throw Error(ErrorCode::InvalidConfig, "levels must lie in [1, 30]");
  }
  if (j0 < 0 && levels <= -j0) {
    throw Error(ErrorCode::InvalidConfig, "levels must exceed -j0");
  }
  switch (formulation) {
    case Formulation::new_distance:
      break;
    case Formulation::original:
      if (c0 != 0.0 || c1 != 1.0) {
        throw Error(ErrorCode::InvalidConfig, "the original formulation fixes C0 = 0 and C1 = 1");
      }
      break;
    case Formulation::alternative:
      if (!(c0 > 0.0) || !(c1 > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "the alternative formulation needs C0 > 0 and C1 > 0");
      }
      break;
  }
  if (uses_level_zero(formulation) && j0 + levels <= 0) {
    throw Error(ErrorCode::InvalidConfig, "j0 + levels must be positive to reach level 0");
  }
}

double weighted_detail_sum(const CoefficientPyramid& pyramid, double s) {
  double total = 0.0;
  for (std::size_t i = 0; i < pyramid.details.size(); ++i) {
    total += level_weight(pyramid.level_of(i), s) * abs_sum(pyramid.details[i].values);
  }
  return total;
}

double distance_from_samples(std::span<const double> difference, const WaveletSystem& system,
                             const DistanceConfig& cfg) {
  cfg.validate();
  const CoefficientPyramid pyramid = dwt_decompose(difference, cfg.j0 + cfg.levels, system,
                                                   decomposition_depth(cfg), ExtensionMode::zero);
  return evaluate(pyramid, cfg, cfg.s);
}

double distance_new(const Density& p, const Density& q, const DistanceConfig& cfg) {
  if (cfg.formulation != Formulation::new_distance) {
    throw Error(ErrorCode::InvalidConfig, "distance_new needs the new formulation");
  }
  return wavelet_distance(p, q, cfg);
}

double distance_original(const Density& p, const Density& q, const DistanceConfig& cfg) {
  if (!uses_level_zero(cfg.formulation)) {
    throw Error(ErrorCode::InvalidConfig, "distance_original needs the original or alternative formulation");
  }
  return wavelet_distance(p, q, cfg);
}

double wavelet_distance(const Density& p, const Density& q, const DistanceConfig& cfg) {
  cfg.validate();
  const WaveletSystem system = build_wavelet_system(cfg.wavelet);
  return evaluate(decompose_difference(p, q, cfg, system), cfg, cfg.s);
}

std::vector<double> distances_for_exponents(const Density& p, const Density& q,
                                            const DistanceConfig& cfg,
                                            std::span<const double> s_values) {
  DistanceConfig checked = cfg;
  checked.s = 1.0;
  checked.validate();
  for (double s : s_values) check_exponent(s);
  const WaveletSystem system = build_wavelet_system(cfg.wavelet);
  const CoefficientPyramid pyramid = decompose_difference(p, q, checked, system);
  std::vector<double> out;
  out.reserve(s_values.size());
  for (double s : s_values) out.push_back(evaluate(pyramid, checked, s));
  return out;
}

DistanceMatrix distance_matrix(std::span<const Density> densities, const DistanceConfig& cfg) {
  cfg.validate();
  const WaveletSystem system = build_wavelet_system(cfg.wavelet);
  const std::size_t n = densities.size();
  DistanceMatrix out(n, std::vector<double>(n, 0.0));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::exception_ptr> failures(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto [i, j] = pairs[static_cast<std::size_t>(idx)];
    try {
      const double d = evaluate(decompose_difference(densities[i], densities[j], cfg, system), cfg, cfg.s);
      out[i][j] = d;
      out[j][i] = d;
    } catch (...) {
      failures[static_cast<std::size_t>(idx)] = std::current_exception();
    }
  }
  for (std::size_t idx = 0; idx < failures.size(); ++idx) {
    if (!failures[idx]) continue;
    const auto [i, j] = pairs[idx];
    const std::string where = "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): ";
    try {
      std::rethrow_exception(failures[idx]);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  return out;
}

}  // namespace wws
