#include "wws/measures.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wws/error.hpp"

namespace wws {

namespace {

constexpr double kMassTolerance = 1e-8;

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, tol);
}

double unnormalized_bump(double t) {
  const double q = 1.0 - t * t;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double bump_mass() {
  static const double mass = integrate(unnormalized_bump, -1.0, 1.0, 1e-14);
  return mass;
}

std::string describe(const Interval& i) {
  return "[" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + "]";
}

SampledDensity sample_dyadic(const std::function<double(double)>& f, const Interval& support,
                             int j0, int levels) {
  if (levels < 1 || levels > 30) {
    throw Error(ErrorCode::InvalidConfig, "number of levels must lie in [1, 30], got " +
                                              std::to_string(levels));
  }
  const double extent = std::ldexp(1.0, -j0);
  if (support.lo < 0.0 || support.hi > extent) {
    throw Error(ErrorCode::DomainOverflow, "support " + describe(support) +
                                               " is not inside [0, 2^" + std::to_string(-j0) +
                                               "]");
  }
  const int top = j0 + levels;
  SampledDensity out;
  out.origin = 0.0;
  out.spacing = std::ldexp(1.0, -top);
  out.scale_factor_applied = true;
  out.values.resize(std::size_t{1} << levels);
  const double scale = std::pow(2.0, -0.5 * top);
  const auto count = static_cast<std::int64_t>(out.values.size());
#pragma omp parallel for schedule(static) if (count > 4096)
  for (std::int64_t k = 0; k < count; ++k) {
    out.values[static_cast<std::size_t>(k)] = scale * f(static_cast<double>(k) * out.spacing);
  }
  return out;
}

}  // namespace

Density Density::from_function(Evaluator evaluator, Interval support) {
  if (!(support.lo < support.hi)) {
    throw Error(ErrorCode::InvalidInterval, "empty support " + describe(support));
  }
  Density d(std::make_shared<const Evaluator>(std::move(evaluator)), support);
  const double mass = total_mass(d);
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::InvalidConfig,
                "density integrates to " + std::to_string(mass) + ", expected 1");
  }
  return d;
}

Density Density::from_table(double origin, double spacing, std::vector<double> values) {
  if (!(spacing > 0.0) || values.size() < 2) {
    throw Error(ErrorCode::InvalidGrid, "tabulated density needs two samples and positive spacing");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] < 0.0 || !std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidGrid, "tabulated density has a negative or non-finite value");
    }
    mass += 0.5 * (values[i] + values[i + 1]) * spacing;
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidGrid, "tabulated density has zero mass");
  for (double& v : values) v /= mass;

  const Interval support{origin, origin + spacing * static_cast<double>(values.size() - 1)};
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  Evaluator eval = [table, origin, spacing](double x) {
    const double u = (x - origin) / spacing;
    if (u <= 0.0) return table->front();
    const auto i = static_cast<std::size_t>(u);
    if (i + 1 >= table->size()) return table->back();
    const double frac = u - static_cast<double>(i);
    return frac == 0.0 ? (*table)[i] : (1.0 - frac) * (*table)[i] + frac * (*table)[i + 1];
  };
  return Density(std::make_shared<const Evaluator>(std::move(eval)), support);
}

Density uniform_density(double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::InvalidInterval, "uniform density needs lo < hi, got " +
                                                describe({lo, hi}));
  }
  const double height = 1.0 / (hi - lo);
  return Density::from_function([height](double) { return height; }, {lo, hi});
}

Density bump_density(double center, double half_width) {
  if (!(half_width > 0.0)) {
    throw Error(ErrorCode::InvalidInterval, "bump half width must be positive");
  }
  const double scale = 1.0 / (bump_mass() * half_width);
  return Density::from_function(
      [center, half_width, scale](double x) {
        return scale * unnormalized_bump((x - center) / half_width);
      },
      {center - half_width, center + half_width});
}

Density translate(const Density& d, double shift) {
  Density::Evaluator eval = [inner = d, shift](double x) { return inner(x - shift); };
  return Density(std::make_shared<const Density::Evaluator>(std::move(eval)),
                 {d.support_.lo + shift, d.support_.hi + shift});
}

Density dilate(const Density& d, double factor, double about) {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidInterval, "dilation factor must be positive");
  if (factor == 1.0) return d;
  Density::Evaluator eval = [inner = d, factor, about](double x) {
    return inner(about + (x - about) / factor) / factor;
  };
  return Density(std::make_shared<const Density::Evaluator>(std::move(eval)),
                 {about + factor * (d.support_.lo - about), about + factor * (d.support_.hi - about)});
}

double total_mass(const Density& d) {
  return integrate([&d](double x) { return d(x); }, d.support().lo, d.support().hi, 1e-12);
}

SampledDensity sample_for_dwt(const Density& d, int j0, int levels) {
  return sample_dyadic([&d](double x) { return d(x); }, d.support(), j0, levels);
}

SampledDensity sample_difference_for_dwt(const Density& p, const Density& q, int j0, int levels) {
  const Interval hull{std::min(p.support().lo, q.support().lo),
                      std::max(p.support().hi, q.support().hi)};
  return sample_dyadic([&p, &q](double x) { return p(x) - q(x); }, hull, j0, levels);
}

DiscreteMeasure make_discrete_measure(std::vector<double> positions, std::vector<double> weights) {
  if (positions.empty() || positions.size() != weights.size()) {
    throw Error(ErrorCode::InvalidGrid, "positions and weights must be nonempty and equally long");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i]) || (i > 0 && !(positions[i] > positions[i - 1]))) {
      throw Error(ErrorCode::InvalidGrid, "positions must be finite and strictly increasing");
    }
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw Error(ErrorCode::InvalidGrid, "weights must be finite and nonnegative");
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidGrid, "weights sum to zero");
  for (double& w : weights) w /= total;
  return {std::move(positions), std::move(weights)};
}

DiscreteMeasure discretize(const Density& d, Interval domain, std::size_t num_points) {
  if (num_points < 2) throw Error(ErrorCode::InvalidGrid, "need at least two grid points");
  if (!(domain.lo < domain.hi)) throw Error(ErrorCode::InvalidInterval, "empty domain");
  std::vector<double> positions(num_points);
  std::vector<double> weights(num_points);
  const double last = static_cast<double>(num_points - 1);
  for (std::size_t i = 0; i < num_points; ++i) {
    positions[i] = domain.lo + domain.width() * (static_cast<double>(i) / last);
    weights[i] = d(positions[i]);
  }
  return make_discrete_measure(std::move(positions), std::move(weights));
}

}  // namespace wws
