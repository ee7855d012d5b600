#include "wws/kernels.hpp"

#include <algorithm>

namespace wws::kernels {

namespace {

// Below this many outputs the OpenMP fork costs more than the loop.
constexpr std::int64_t kParallelThreshold = 1 << 14;

constexpr std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((1 - a) / 2); }
constexpr std::int64_t ceil_div2(std::int64_t a) { return -floor_div2(-a); }

}  // namespace

Extent zero_mode_output(Extent input, std::size_t filter_length) {
  if (input.length == 0) return {0, 0};
  const auto taps = static_cast<std::int64_t>(filter_length);
  const std::int64_t k_lo = ceil_div2(input.offset - (taps - 1));
  const std::int64_t k_hi = floor_div2(input.last());
  return {k_lo, static_cast<std::size_t>(k_hi - k_lo + 1)};
}

void analysis_zero(std::span<const double> x, std::int64_t x_offset, std::span<const double> g,
                   std::span<const double> h, std::span<double> approx, std::span<double> detail,
                   std::int64_t out_offset) {
  const auto taps = static_cast<std::int64_t>(g.size());
  const std::int64_t x_last = x_offset + static_cast<std::int64_t>(x.size()) - 1;
  const auto count = static_cast<std::int64_t>(approx.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t k = out_offset + i;
    const std::int64_t lo = std::max(x_offset, 2 * k);
    const std::int64_t hi = std::min(x_last, 2 * k + taps - 1);
    double a = 0.0;
    double d = 0.0;
    const double* xs = x.data() + (lo - x_offset);
    const double* gs = g.data() + (lo - 2 * k);
    const double* hs = h.data() + (lo - 2 * k);
    for (std::int64_t n = 0; n <= hi - lo; ++n) {
      a += xs[n] * gs[n];
      d += xs[n] * hs[n];
    }
    approx[i] = a;
    detail[i] = d;
  }
}

void synthesis_zero(std::span<const double> approx, std::span<const double> detail,
                    std::int64_t coef_offset, std::span<const double> g, std::span<const double> h,
                    std::span<double> x, std::int64_t x_offset) {
  const auto taps = static_cast<std::int64_t>(g.size());
  const std::int64_t coef_last = coef_offset + static_cast<std::int64_t>(approx.size()) - 1;
  const auto count = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t l = x_offset + i;
    const std::int64_t k_lo = std::max(coef_offset, ceil_div2(l - taps + 1));
    const std::int64_t k_hi = std::min(coef_last, floor_div2(l));
    double acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const auto c = static_cast<std::size_t>(k - coef_offset);
      const auto n = static_cast<std::size_t>(l - 2 * k);
      acc += approx[c] * g[n] + detail[c] * h[n];
    }
    x[i] = acc;
  }
}

void analysis_periodic(std::span<const double> x, std::span<const double> g,
                       std::span<const double> h, std::span<double> approx,
                       std::span<double> detail) {
  const auto length = static_cast<std::int64_t>(x.size());
  const auto taps = static_cast<std::int64_t>(g.size());
  const auto count = static_cast<std::int64_t>(approx.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
  for (std::int64_t k = 0; k < count; ++k) {
    double a = 0.0;
    double d = 0.0;
    if (2 * k + taps <= length) {
      const double* xs = x.data() + 2 * k;
      for (std::int64_t n = 0; n < taps; ++n) {
        a += xs[n] * g[n];
        d += xs[n] * h[n];
      }
    } else {
      for (std::int64_t n = 0; n < taps; ++n) {
        const double v = x[(2 * k + n) % length];
        a += v * g[n];
        d += v * h[n];
      }
    }
    approx[k] = a;
    detail[k] = d;
  }
}

void synthesis_periodic(std::span<const double> approx, std::span<const double> detail,
                        std::span<const double> g, std::span<const double> h, std::span<double> x) {
  const auto length = static_cast<std::int64_t>(x.size());
  const auto taps = static_cast<std::int64_t>(g.size());
#pragma omp parallel for schedule(static) if (length > kParallelThreshold)
  for (std::int64_t m = 0; m < length; ++m) {
    double acc = 0.0;
    // Only taps with the parity of m line up with an even 2k.
    for (std::int64_t n = m % 2; n < taps; n += 2) {
      const std::int64_t t = ((m - n) % length + length) % length;
      const auto k = static_cast<std::size_t>(t / 2);
      acc += approx[k] * g[n] + detail[k] * h[n];
    }
    x[m] = acc;
  }
}

namespace reference {

void analysis_zero(std::span<const double> x, std::int64_t x_offset, std::span<const double> g,
                   std::span<const double> h, std::span<double> approx, std::span<double> detail,
                   std::int64_t out_offset) {
  std::fill(approx.begin(), approx.end(), 0.0);
  std::fill(detail.begin(), detail.end(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t l = x_offset + static_cast<std::int64_t>(i);
    for (std::size_t n = 0; n < g.size(); ++n) {
      const std::int64_t twice_k = l - static_cast<std::int64_t>(n);
      if (twice_k % 2 != 0) continue;
      const std::int64_t idx = twice_k / 2 - out_offset;
      approx[static_cast<std::size_t>(idx)] += x[i] * g[n];
      detail[static_cast<std::size_t>(idx)] += x[i] * h[n];
    }
  }
}

void synthesis_zero(std::span<const double> approx, std::span<const double> detail,
                    std::int64_t coef_offset, std::span<const double> g, std::span<const double> h,
                    std::span<double> x, std::int64_t x_offset) {
  std::fill(x.begin(), x.end(), 0.0);
  const std::int64_t x_last = x_offset + static_cast<std::int64_t>(x.size()) - 1;
  for (std::size_t c = 0; c < approx.size(); ++c) {
    const std::int64_t k = coef_offset + static_cast<std::int64_t>(c);
    for (std::size_t n = 0; n < g.size(); ++n) {
      const std::int64_t l = 2 * k + static_cast<std::int64_t>(n);
      if (l < x_offset || l > x_last) continue;
      x[static_cast<std::size_t>(l - x_offset)] += approx[c] * g[n] + detail[c] * h[n];
    }
  }
}

void analysis_periodic(std::span<const double> x, std::span<const double> g,
                       std::span<const double> h, std::span<double> approx,
                       std::span<double> detail) {
  for (std::size_t k = 0; k < approx.size(); ++k) {
    approx[k] = 0.0;
    detail[k] = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double v = x[(2 * k + n) % x.size()];
      approx[k] += v * g[n];
      detail[k] += v * h[n];
    }
  }
}

void synthesis_periodic(std::span<const double> approx, std::span<const double> detail,
                        std::span<const double> g, std::span<const double> h, std::span<double> x) {
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t k = 0; k < approx.size(); ++k) {
    for (std::size_t n = 0; n < g.size(); ++n) {
      x[(2 * k + n) % x.size()] += approx[k] * g[n] + detail[k] * h[n];
    }
  }
}

}  // namespace reference

}  // namespace wws::kernels
