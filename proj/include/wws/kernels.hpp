#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Single-level filter bank kernels. The functions in wws::kernels are the
// production versions (OpenMP over output samples, bounds hoisted out of the
// inner loop); wws::kernels::reference holds plain serial loops written
// straight from the defining sums, kept for testing and benchmarking.
namespace wws::kernels {

struct Extent {
  std::int64_t offset = 0;
  std::size_t length = 0;

  std::int64_t last() const { return offset + static_cast<std::int64_t>(length) - 1; }
  bool operator==(const Extent&) const = default;
};

// Coefficient extent produced by one zero-mode analysis step: every k with
// at least one l in the input extent and 0 <= l - 2k < filter_length.
Extent zero_mode_output(Extent input, std::size_t filter_length);

// approx_k = sum_l x_l g_{l-2k}, detail_k = sum_l x_l h_{l-2k}, with x zero
// outside `in`. Output arrays cover zero_mode_output(in, L).
void analysis_zero(std::span<const double> x, std::int64_t x_offset, std::span<const double> g,
                   std::span<const double> h, std::span<double> approx, std::span<double> detail,
                   std::int64_t out_offset);

// x_l = sum_k approx_k g_{l-2k} + detail_k h_{l-2k} for l in [x_offset, x_offset + x.size()).
void synthesis_zero(std::span<const double> approx, std::span<const double> detail,
                    std::int64_t coef_offset, std::span<const double> g, std::span<const double> h,
                    std::span<double> x, std::int64_t x_offset);

// Periodic variants; x.size() must be even, outputs have x.size() / 2 entries.
void analysis_periodic(std::span<const double> x, std::span<const double> g,
                       std::span<const double> h, std::span<double> approx,
                       std::span<double> detail);
void synthesis_periodic(std::span<const double> approx, std::span<const double> detail,
                        std::span<const double> g, std::span<const double> h, std::span<double> x);

namespace reference {

void analysis_zero(std::span<const double> x, std::int64_t x_offset, std::span<const double> g,
                   std::span<const double> h, std::span<double> approx, std::span<double> detail,
                   std::int64_t out_offset);
void synthesis_zero(std::span<const double> approx, std::span<const double> detail,
                    std::int64_t coef_offset, std::span<const double> g, std::span<const double> h,
                    std::span<double> x, std::int64_t x_offset);
void analysis_periodic(std::span<const double> x, std::span<const double> g,
                       std::span<const double> h, std::span<double> approx,
                       std::span<double> detail);
void synthesis_periodic(std::span<const double> approx, std::span<const double> detail,
                        std::span<const double> g, std::span<const double> h, std::span<double> x);

}  // namespace reference

}  // namespace wws::kernels
