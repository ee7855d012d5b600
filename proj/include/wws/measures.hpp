#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "wws/grid.hpp"

namespace wws {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

/// A probability density on the line with compact support [lo, hi]. The
/// evaluator is never called outside the support; the density is treated as
/// zero there (the support is half-open, so p(hi) = 0).
class Density {
 public:
  using Evaluator = std::function<double(double)>;

  /// Wraps an evaluator and checks by adaptive Gauss-Kronrod quadrature that
  /// it integrates to one within 1e-8.
  static Density from_function(Evaluator evaluator, Interval support);

  /// Piecewise-linear interpolant of nonnegative samples on a uniform grid,
  /// rescaled so the interpolant has unit mass exactly.
  static Density from_table(double origin, double spacing, std::vector<double> values);

  double operator()(double x) const {
    if (x < support_.lo || x >= support_.hi) return 0.0;
    return (*evaluator_)(x);
  }

  const Interval& support() const { return support_; }

 private:
  Density(std::shared_ptr<const Evaluator> evaluator, Interval support)
      : evaluator_(std::move(evaluator)), support_(support) {}

  friend Density translate(const Density& d, double shift);
  friend Density dilate(const Density& d, double factor, double about);

  std::shared_ptr<const Evaluator> evaluator_;
  Interval support_;
};

Density uniform_density(double lo, double hi);

/// Smooth bump C exp(-1 / (1 - t^2)) with t = (x - center) / half_width,
/// normalized to unit mass.
Density bump_density(double center, double half_width);

/// x -> p(x - shift).
Density translate(const Density& d, double shift);

/// x -> p(about + (x - about) / factor) / factor; mass-preserving.
Density dilate(const Density& d, double factor, double about);

/// Adaptive Gauss-Kronrod integral of d over its support.
double total_mass(const Density& d);

/// Samples 2^{-(j0+M)/2} * p(k 2^{-(j0+M)}) for k = 0 .. 2^M - 1, the level
/// j0+M approximation coefficients of p. The support must lie in [0, 2^{-j0}].
SampledDensity sample_for_dwt(const Density& d, int j0, int levels);

/// Same grid and scaling applied to p - q.
SampledDensity sample_difference_for_dwt(const Density& p, const Density& q, int j0, int levels);

/// Point masses on a strictly increasing grid.
struct DiscreteMeasure {
  std::vector<double> positions;
  std::vector<double> weights;

  std::size_t size() const { return positions.size(); }
};

/// Validates positions (strictly increasing, finite) and weights (finite,
/// nonnegative, positive total) and rescales the weights to sum to one.
DiscreteMeasure make_discrete_measure(std::vector<double> positions, std::vector<double> weights);

/// Weights proportional to d at num_points evenly spaced points of domain
/// (both endpoints included), renormalized to sum to one.
DiscreteMeasure discretize(const Density& d, Interval domain, std::size_t num_points);

}  // namespace wws
