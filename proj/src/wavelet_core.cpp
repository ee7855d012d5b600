#include "wws/wavelet_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "daubechies_tables.hpp"
#include "wws/error.hpp"
#include "wws/kernels.hpp"

namespace wws {

namespace {

std::atomic<std::uint64_t> g_dwt_calls{0};

constexpr double kFilterTolerance = 1e-12;

void check_filter_identities(const std::string& name, std::span<const double> g,
                             std::span<const double> h) {
  const std::size_t taps = g.size();
  double sum_g = 0.0;
  double sum_h = 0.0;
  for (std::size_t k = 0; k < taps; ++k) {
    sum_g += g[k];
    sum_h += h[k];
  }
  if (std::abs(sum_g - std::numbers::sqrt2) > kFilterTolerance ||
      std::abs(sum_h) > kFilterTolerance) {
    throw Error(ErrorCode::UnknownWavelet, "filter table for " + name + " fails the sum identities");
  }
  for (std::size_t m = 0; 2 * m < taps; ++m) {
    double dot = 0.0;
    for (std::size_t k = 0; k + 2 * m < taps; ++k) dot += g[k] * g[k + 2 * m];
    const double expected = m == 0 ? 1.0 : 0.0;
    if (std::abs(dot - expected) > kFilterTolerance) {
      throw Error(ErrorCode::UnknownWavelet,
                  "filter table for " + name + " is not orthonormal under even shifts");
    }
  }
}

// Trapezoid on a grid whose end values vanish reduces to a plain sum; the
// haar scaling function (value 1 at x = 0) is handled by the left-endpoint
// rule, which is exact for piecewise constant right-continuous profiles.
double riemann_sum(std::span<const double> values, double spacing) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc * spacing;
}

// inf_r sum_i |x_i - r|^s |f_i| * spacing. A grid scan over coarsened
// samples brackets the minimizer; golden-section search on the full
// resolution refines it.
double min_moment(const SampledDensity& f, double s) {
  constexpr int kCandidates = 4096;
  constexpr int kCoarsen = 16;
  std::vector<double> abs_values(f.values.size());
  std::transform(f.values.begin(), f.values.end(), abs_values.begin(),
                 [](double v) { return std::abs(v); });

  auto moment = [&](double r, int stride) {
    double acc = 0.0;
    for (std::size_t i = 0; i < abs_values.size(); i += static_cast<std::size_t>(stride)) {
      if (abs_values[i] == 0.0) continue;
      const double dist = std::abs(f.position(i) - r);
      acc += (s == 1.0 ? dist : std::pow(dist, s)) * abs_values[i];
    }
    return acc * f.spacing * stride;
  };

  const double lo = f.origin;
  const double hi = f.position(f.values.size() - 1);
  const double step = (hi - lo) / (kCandidates - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int c = 0; c < kCandidates; ++c) {
    const double value = moment(lo + c * step, kCoarsen);
    if (value < best_value) {
      best_value = value;
      best = c;
    }
  }

  double a = lo + std::max(best - 2, 0) * step;
  double b = lo + std::min(best + 2, kCandidates - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = moment(x1, 1);
  double f2 = moment(x2, 1);
  while (b - a > 1e-9) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = moment(x1, 1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = moment(x2, 1);
    }
  }
  return std::min({f1, f2, moment(lo + best * step, 1)});
}

}  // namespace

std::string_view to_string(ExtensionMode mode) {
  return mode == ExtensionMode::zero ? "zero" : "periodic";
}

WaveletSystem::WaveletSystem(std::string name, std::vector<double> lowpass)
    : name_(std::move(name)), lowpass_(std::move(lowpass)), highpass_(lowpass_.size()) {
  const std::size_t taps = lowpass_.size();
  for (std::size_t k = 0; k < taps; ++k) {
    highpass_[k] = (k % 2 == 0 ? 1.0 : -1.0) * lowpass_[taps - 1 - k];
  }
}

std::vector<std::string> wavelet_catalog() {
  std::vector<std::string> names;
  for (const auto& entry : detail::daubechies_tables()) names.emplace_back(entry.name);
  return names;
}

WaveletSystem build_wavelet_system(std::string_view name) {
  for (const auto& entry : detail::daubechies_tables()) {
    if (entry.name != name) continue;
    WaveletSystem system(std::string(name),
                         std::vector<double>(entry.lowpass.begin(), entry.lowpass.end()));
    check_filter_identities(system.name(), system.lowpass(), system.highpass());
    return system;
  }
  throw Error(ErrorCode::UnknownWavelet, "no catalog wavelet named '" + std::string(name) + "'");
}

CoefficientPyramid dwt_decompose(std::span<const double> input, int input_level,
                                 const WaveletSystem& system, int num_levels,
                                 ExtensionMode mode) {
  if (num_levels < 1) {
    throw Error(ErrorCode::InvalidLevels, "num_levels must be at least 1, got " +
                                              std::to_string(num_levels));
  }
  if (input.empty()) throw Error(ErrorCode::EmptyInput, "dwt input is empty");
  if (mode == ExtensionMode::periodic &&
      (num_levels >= 63 || input.size() % (std::size_t{1} << num_levels) != 0)) {
    throw Error(ErrorCode::InvalidLevels,
                "periodic mode needs the length " + std::to_string(input.size()) +
                    " to be divisible by 2^" + std::to_string(num_levels));
  }
  g_dwt_calls.fetch_add(1, std::memory_order_relaxed);

  const auto g = system.lowpass();
  const auto h = system.highpass();

  CoefficientPyramid pyramid;
  pyramid.j0 = input_level - num_levels;
  pyramid.mode = mode;
  pyramid.input_offset = 0;
  pyramid.input_length = input.size();
  pyramid.details.resize(static_cast<std::size_t>(num_levels));

  std::vector<double> current(input.begin(), input.end());
  std::int64_t current_offset = 0;
  for (int step = num_levels - 1; step >= 0; --step) {
    LevelCoefficients approx;
    LevelCoefficients& detail = pyramid.details[static_cast<std::size_t>(step)];
    if (mode == ExtensionMode::zero) {
      const auto out = kernels::zero_mode_output({current_offset, current.size()}, g.size());
      approx.k_offset = detail.k_offset = out.offset;
      approx.values.resize(out.length);
      detail.values.resize(out.length);
      kernels::analysis_zero(current, current_offset, g, h, approx.values, detail.values,
                             out.offset);
    } else {
      approx.values.resize(current.size() / 2);
      detail.values.resize(current.size() / 2);
      kernels::analysis_periodic(current, g, h, approx.values, detail.values);
    }
    current = std::move(approx.values);
    current_offset = approx.k_offset;
  }
  pyramid.approx.k_offset = current_offset;
  pyramid.approx.values = std::move(current);
  return pyramid;
}

std::vector<double> dwt_reconstruct(const CoefficientPyramid& pyramid,
                                    const WaveletSystem& system) {
  if (pyramid.details.empty() || pyramid.approx.values.empty() || pyramid.input_length == 0) {
    throw Error(ErrorCode::ShapeMismatch, "pyramid has no coefficients");
  }
  const auto g = system.lowpass();
  const auto h = system.highpass();
  const std::size_t levels = pyramid.details.size();

  // Replay the forward shape recurrence to recover every intermediate extent.
  std::vector<kernels::Extent> extents{{pyramid.input_offset, pyramid.input_length}};
  for (std::size_t i = 0; i < levels; ++i) {
    const auto& finer = extents.back();
    if (pyramid.mode == ExtensionMode::zero) {
      extents.push_back(kernels::zero_mode_output(finer, g.size()));
    } else {
      if (finer.length % 2 != 0) {
        throw Error(ErrorCode::ShapeMismatch, "periodic pyramid with odd intermediate length");
      }
      extents.push_back({0, finer.length / 2});
    }
  }
  auto check = [&](const LevelCoefficients& level, const kernels::Extent& expected) {
    if (level.k_offset != expected.offset || level.values.size() != expected.length) {
      throw Error(ErrorCode::ShapeMismatch, "coefficient array does not match the input extent");
    }
  };
  check(pyramid.approx, extents.back());
  for (std::size_t i = 0; i < levels; ++i) check(pyramid.details[i], extents[levels - i]);

  std::vector<double> current = pyramid.approx.values;
  for (std::size_t i = 0; i < levels; ++i) {
    const auto& coarse = extents[levels - i];
    const auto& fine = extents[levels - i - 1];
    const auto& detail = pyramid.details[i].values;
    std::vector<double> next(fine.length);
    if (pyramid.mode == ExtensionMode::zero) {
      kernels::synthesis_zero(current, detail, coarse.offset, g, h, next, fine.offset);
    } else {
      kernels::synthesis_periodic(current, detail, g, h, next);
    }
    current = std::move(next);
  }
  return current;
}

std::uint64_t dwt_call_count() { return g_dwt_calls.load(std::memory_order_relaxed); }
void reset_dwt_call_count() { g_dwt_calls.store(0, std::memory_order_relaxed); }

SampledDensity cascade_evaluate(const WaveletSystem& system, WaveletFunction which, int depth) {
  if (depth < 1 || depth > 24) {
    throw Error(ErrorCode::InvalidDepth, "refinement depth must lie in [1, 24], got " +
                                             std::to_string(depth));
  }
  const auto g = system.lowpass();
  const int span = system.support_length();

  // phi at the integers 0..L-1.
  std::vector<double> phi(static_cast<std::size_t>(span) + 1, 0.0);
  if (span == 1) {
    phi[0] = 1.0;
  } else {
    // Interior values solve phi(n) = sqrt2 sum_m g_m phi(2n - m) with
    // sum_n phi(n) = 1; the end values vanish for continuous phi.
    const int unknowns = span - 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(unknowns + 1, unknowns);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns + 1);
    for (int n = 1; n <= unknowns; ++n) {
      a(n - 1, n - 1) -= 1.0;
      for (int m = 1; m <= unknowns; ++m) {
        const int tap = 2 * n - m;
        if (tap >= 0 && tap < static_cast<int>(g.size())) {
          a(n - 1, m - 1) += std::numbers::sqrt2 * g[static_cast<std::size_t>(tap)];
        }
      }
      a(unknowns, n - 1) = 1.0;
    }
    rhs(unknowns) = 1.0;
    const Eigen::VectorXd solution = a.colPivHouseholderQr().solve(rhs);
    for (int n = 1; n <= unknowns; ++n) phi[static_cast<std::size_t>(n)] = solution(n - 1);
  }

  // Refine to the requested dyadic resolution. For psi only level depth - 1
  // values of phi are needed.
  const int phi_depth = which == WaveletFunction::scaling ? depth : depth - 1;
  for (int r = 1; r <= phi_depth; ++r) {
    const std::size_t half = std::size_t{1} << (r - 1);
    std::vector<double> next(static_cast<std::size_t>(span) * (half * 2) + 1, 0.0);
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (i % 2 == 0) {
        next[i] = phi[i / 2];
        continue;
      }
      double acc = 0.0;
      for (std::size_t m = 0; m < g.size(); ++m) {
        const auto idx = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(m * half);
        if (idx >= 0 && idx < static_cast<std::int64_t>(phi.size())) {
          acc += g[m] * phi[static_cast<std::size_t>(idx)];
        }
      }
      next[i] = std::numbers::sqrt2 * acc;
    }
    phi = std::move(next);
  }

  SampledDensity out;
  out.origin = 0.0;
  out.spacing = std::ldexp(1.0, -depth);
  if (which == WaveletFunction::scaling) {
    out.values = std::move(phi);
    return out;
  }
  // psi(x) = sqrt2 sum_m h_m phi(2x - m); phi holds level depth-1 samples.
  const auto h = system.highpass();
  const std::size_t half = std::size_t{1} << (depth - 1);
  out.values.assign(static_cast<std::size_t>(span) * half * 2 + 1, 0.0);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < h.size(); ++m) {
      const auto idx = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(m * half);
      if (idx >= 0 && idx < static_cast<std::int64_t>(phi.size())) {
        acc += h[m] * phi[static_cast<std::size_t>(idx)];
      }
    }
    out.values[i] = std::numbers::sqrt2 * acc;
  }
  return out;
}

WaveletConstants estimate_constants(const WaveletSystem& system, double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "s must lie in (0, 1], got " + std::to_string(s));
  }
  const auto phi = cascade_evaluate(system, WaveletFunction::scaling, kDefaultCascadeDepth);
  const auto psi = cascade_evaluate(system, WaveletFunction::wavelet, kDefaultCascadeDepth);

  std::vector<double> abs_phi(phi.values.size());
  std::transform(phi.values.begin(), phi.values.end(), abs_phi.begin(),
                 [](double v) { return std::abs(v); });

  WaveletConstants constants;
  constants.a13 = 1.0 / riemann_sum(abs_phi, phi.spacing);
  constants.a11 = 1.0 / min_moment(phi, s);
  constants.a12 = 1.0 / min_moment(psi, s);
  return constants;
}

}  // namespace wws
