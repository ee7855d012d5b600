#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wws/measures.hpp"
#include "wws/wavelet_core.hpp"

namespace wws {

enum class Formulation { new_distance, original, alternative };

/// "new", "original", "alternative".
std::string_view to_string(Formulation formulation);
Formulation parse_formulation(std::string_view text);

struct DistanceConfig {
  double s = 1.0;
  int j0 = -11;
  int levels = 18;  // M: the finest samples live at level j0 + M
  std::string wavelet = "db10";
  Formulation formulation = Formulation::new_distance;
  double c0 = 0.0;
  double c1 = 1.0;
  ExtensionMode mode = ExtensionMode::zero;

  /// Throws InvalidExponent for s outside (0, 1] and InvalidConfig for any
  /// other violated invariant.
  void validate() const;
};

/// Sum over levels j0 .. j0+M-1 of 2^{-j(s+1/2)} sum_k |D^j_k|.
double distance_new(const Density& p, const Density& q, const DistanceConfig& cfg);

/// Decomposes down to level 0 and returns
/// C0 sum_k |A^0_k| + C1 sum_{j=0}^{j0+M-1} 2^{-j(s+1/2)} sum_k |D^j_k|.
/// Serves both the original (C0 = 0, C1 = 1) and alternative formulations.
double distance_original(const Density& p, const Density& q, const DistanceConfig& cfg);

/// Dispatches on cfg.formulation.
double wavelet_distance(const Density& p, const Density& q, const DistanceConfig& cfg);

/// sum_i 2^{-j_i(s+1/2)} sum_k |D^{j_i}_k| over every detail level in the pyramid.
double weighted_detail_sum(const CoefficientPyramid& pyramid, double s);

/// The configured distance evaluated from an already sampled difference p - q
/// (level j0 + M coefficients starting at translation 0).
double distance_from_samples(std::span<const double> difference, const WaveletSystem& system,
                             const DistanceConfig& cfg);

/// The configured distance for several exponents, sharing one sampling and
/// one decomposition. cfg.s is ignored.
std::vector<double> distances_for_exponents(const Density& p, const Density& q,
                                            const DistanceConfig& cfg,
                                            std::span<const double> s_values);

using DistanceMatrix = std::vector<std::vector<double>>;

/// Pairwise distances, evaluated concurrently. A failing pair is rethrown
/// with its indices in the message.
DistanceMatrix distance_matrix(std::span<const Density> densities, const DistanceConfig& cfg);

}  // namespace wws
