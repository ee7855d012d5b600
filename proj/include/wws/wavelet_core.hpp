#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wws/grid.hpp"

namespace wws {

enum class ExtensionMode { periodic, zero };

std::string_view to_string(ExtensionMode mode);

/// An orthonormal, compactly supported wavelet system given by its filter
/// pair. g is the low-pass (scaling) filter with sum sqrt(2); h is the
/// quadrature mirror h_k = (-1)^k g_{L-1-k}. Both phi and psi are supported
/// on [0, L-1].
class WaveletSystem {
 public:
  const std::string& name() const { return name_; }
  std::span<const double> lowpass() const { return lowpass_; }
  std::span<const double> highpass() const { return highpass_; }
  std::size_t filter_length() const { return lowpass_.size(); }
  int support_length() const { return static_cast<int>(lowpass_.size()) - 1; }

 private:
  friend WaveletSystem build_wavelet_system(std::string_view name);
  WaveletSystem(std::string name, std::vector<double> lowpass);

  std::string name_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

/// Names accepted by build_wavelet_system: haar, db2, ..., db20.
std::vector<std::string> wavelet_catalog();

/// Looks up a catalog filter and checks the orthonormal filter identities
/// (sum g = sqrt 2, sum h = 0, double-shift orthogonality, QMF relation).
/// Throws Error(UnknownWavelet) for names outside the catalog.
WaveletSystem build_wavelet_system(std::string_view name);

/// Coefficients of one level, indexed by absolute translation:
/// values[i] is the coefficient at k = k_offset + i.
struct LevelCoefficients {
  std::int64_t k_offset = 0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Output of a multi-level decimated DWT. details[i] holds level j0 + i, so
/// details.back() is the finest level (input level - 1). The input extent is
/// kept so the inverse can rebuild every intermediate array shape.
struct CoefficientPyramid {
  int j0 = 0;
  ExtensionMode mode = ExtensionMode::zero;
  std::int64_t input_offset = 0;
  std::size_t input_length = 0;
  LevelCoefficients approx;
  std::vector<LevelCoefficients> details;

  int levels() const { return static_cast<int>(details.size()); }
  int level_of(std::size_t detail_index) const { return j0 + static_cast<int>(detail_index); }
};

/// Decomposes approximation coefficients given at level input_level into
/// num_levels detail levels plus the approximation at input_level - num_levels.
///
/// Zero mode treats the input as a finitely supported sequence and emits every
/// coefficient with at least one nonzero filter product, tracking absolute
/// translations. Periodic mode wraps indices modulo the array length and
/// requires the length to be divisible by 2^num_levels.
CoefficientPyramid dwt_decompose(std::span<const double> input, int input_level,
                                 const WaveletSystem& system, int num_levels,
                                 ExtensionMode mode);

/// Inverse of dwt_decompose. Throws Error(ShapeMismatch) when the arrays do
/// not have the shapes dwt_decompose would have produced.
std::vector<double> dwt_reconstruct(const CoefficientPyramid& pyramid, const WaveletSystem& system);

/// Number of dwt_decompose calls made by this process (all threads).
std::uint64_t dwt_call_count();
void reset_dwt_call_count();

enum class WaveletFunction { scaling, wavelet };

/// Exact values of phi or psi on the dyadic grid k * 2^{-depth} over
/// [0, L-1]: integer samples come from the eigenvector of the two-scale
/// operator, finer points from repeated application of the refinement
/// relation. The haar scaling function is taken right-continuous.
SampledDensity cascade_evaluate(const WaveletSystem& system, WaveletFunction which, int depth);

inline constexpr int kDefaultCascadeDepth = 12;

struct WaveletConstants {
  double a11 = 0.0;  // 1 / inf_r int |x-r|^s |phi(x)| dx
  double a12 = 0.0;  // 1 / inf_r int |x-r|^s |psi(x)| dx
  double a13 = 0.0;  // 1 / ||phi||_1
};

WaveletConstants estimate_constants(const WaveletSystem& system, double s);

}  // namespace wws
