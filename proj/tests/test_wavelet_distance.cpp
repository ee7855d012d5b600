#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "test_support.hpp"
#include "wws/error.hpp"
#include "wws/ot_exact.hpp"
#include "wws/wavelet_distance.hpp"

using namespace wws;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::SolverFailure;
}

DistanceConfig config(double s, int j0, int levels, const std::string& wavelet = "db10") {
  DistanceConfig cfg;
  cfg.s = s;
  cfg.j0 = j0;
  cfg.levels = levels;
  cfg.wavelet = wavelet;
  return cfg;
}

DistanceConfig original(double s, int j0, int levels, const std::string& wavelet = "db10") {
  DistanceConfig cfg = config(s, j0, levels, wavelet);
  cfg.formulation = Formulation::original;
  return cfg;
}

Density random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double width = 0.2 + 0.8 * unit(rng);
  const double lo = 0.1 + 2.5 * unit(rng);
  if (unit(rng) < 0.5) return uniform_density(lo, lo + width);
  return bump_density(lo + 0.5 * width, 0.5 * width);
}

}  // namespace

TEST_CASE("formulation names") {
  CHECK(to_string(Formulation::new_distance) == "new");
  CHECK(parse_formulation("original") == Formulation::original);
  CHECK(parse_formulation("alternative") == Formulation::alternative);
  CHECK(code_of([] { parse_formulation("best"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(config(0.5, -11, 18).validate());
  CHECK(code_of([] { config(0.0, -4, 10).validate(); }) == ErrorCode::InvalidExponent);
  CHECK(code_of([] { config(1.5, -4, 10).validate(); }) == ErrorCode::InvalidExponent);
  CHECK(code_of([] { config(0.5, -11, 11).validate(); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { config(0.5, -4, 0).validate(); }) == ErrorCode::InvalidConfig);
  auto cfg = original(0.5, -4, 10);
  CHECK_NOTHROW(cfg.validate());
  cfg.c0 = 1.0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg.formulation = Formulation::alternative;
  CHECK_NOTHROW(cfg.validate());
  cfg.c0 = 0.0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  auto coarse = original(0.5, -4, 3);
  CHECK(code_of([&] { coarse.validate(); }) == ErrorCode::InvalidConfig);
  auto periodic = config(0.5, -4, 10);
  periodic.mode = ExtensionMode::periodic;
  CHECK(code_of([&] { periodic.validate(); }) == ErrorCode::InvalidConfig);
  // New formulation ignores C0 and C1.
  auto loose = config(0.5, -4, 10);
  loose.c0 = 5.0;
  loose.c1 = 0.0;
  CHECK_NOTHROW(loose.validate());
}

TEST_CASE("identical inputs") {
  const Density u = uniform_density(0.0, 1.0);
  CHECK(distance_new(u, u, config(0.5, -4, 12)) == 0.0);
  CHECK(distance_original(u, u, original(0.5, -4, 12)) == 0.0);
}

TEST_CASE("operation and formulation must agree") {
  const Density u = uniform_density(0.0, 1.0);
  CHECK(code_of([&] { distance_new(u, u, original(0.5, -4, 12)); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { distance_original(u, u, config(0.5, -4, 12)); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("supports must fit the dyadic domain") {
  const Density u = uniform_density(0.0, 1.0);
  const Density far = translate(u, 20.0);
  CHECK(code_of([&] { distance_new(u, far, config(0.5, -4, 12)); }) == ErrorCode::DomainOverflow);
}

TEST_CASE("wavelet atom identity") {
  // mu, nu = psi_{j',k'}^{+-} / C give 2^{-j'(s+1/2)} / C.
  const WaveletSystem w = build_wavelet_system("db10");
  for (double s : {0.25, 0.5}) {
    const auto atom = testing::wavelet_atom(w, 1, 2, 12);
    const double expected = std::exp2(-(s + 0.5)) / atom.mass;
    const double value = distance_new(atom.positive, atom.negative, config(s, -5, 17));
    CHECK(value == doctest::Approx(expected).epsilon(0.01));
  }
}

TEST_CASE("combination identity across three levels") {
  const WaveletSystem w = build_wavelet_system("db10");
  const std::vector<double> a{1.0, 2.0, 4.0};
  const double s = 0.5;
  const auto g = testing::wavelet_combination(w, 0, a, s, 12);
  // Sampled initialization is biased by about 2^{-(j0+M-j)} at level j.
  const double value = distance_new(g.positive, g.negative, config(s, -5, 20));
  CHECK(value == doctest::Approx(7.0 / g.mass).epsilon(0.01));
  const double coarse = distance_new(g.positive, g.negative, config(s, -5, 16));
  CHECK(std::abs(coarse * g.mass - 7.0) > std::abs(value * g.mass - 7.0));
}

TEST_CASE("original formulation is periodic under long translations") {
  for (const char* name : {"db2", "db10"}) {
    CAPTURE(name);
    const WaveletSystem w = build_wavelet_system(name);
    const int T = w.support_length();
    const Density u = uniform_density(0.0, 1.0);
    const auto cfg = original(0.5, -5, 15, name);
    const double first = distance_original(u, translate(u, T), cfg);
    CHECK(first > 0.0);
    for (int m = 1; m <= 4; ++m) {
      CHECK(std::abs(distance_original(u, translate(u, T + m), cfg) - first) < 1e-8);
    }
    // The new formulation keeps growing once j0 is low enough.
    const auto fresh = config(0.5, -11, 16, name);
    CHECK(distance_new(u, translate(u, T + 4), fresh) > distance_new(u, translate(u, T), fresh));
  }
}

TEST_CASE("alternative formulation on dilated uniforms") {
  DistanceConfig cfg = config(0.5, -9, 16);
  cfg.formulation = Formulation::alternative;
  cfg.c0 = std::pow(3.0, cfg.s);
  cfg.c1 = 1.0;
  const Density base = uniform_density(1.0, 2.0);
  for (double b : {0.5, 0.9, 1.2, 1.5}) {
    const double v = wavelet_distance(base, dilate(base, b, 1.5), cfg);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  CHECK(wavelet_distance(base, dilate(base, 1.0, 1.5), cfg) == 0.0);
}

TEST_CASE("metric axioms on random triples") {
  auto rng = testing::make_rng(5);
  for (Formulation f : {Formulation::new_distance, Formulation::original, Formulation::alternative}) {
    DistanceConfig cfg = config(0.5, -2, 12, "db4");
    cfg.formulation = f;
    if (f == Formulation::alternative) cfg.c0 = 2.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Density p = random_density(rng);
      const Density q = random_density(rng);
      const Density r = random_density(rng);
      const double pq = wavelet_distance(p, q, cfg);
      const double qp = wavelet_distance(q, p, cfg);
      const double qr = wavelet_distance(q, r, cfg);
      const double pr = wavelet_distance(p, r, cfg);
      CHECK(pq >= 0.0);
      CHECK(std::abs(pq - qp) <= 1e-12 * std::max(1.0, pq));
      CHECK(pr <= pq + qr + 1e-9);
    }
  }
}

TEST_CASE("homogeneity of the sampled difference") {
  const WaveletSystem w = build_wavelet_system("db6");
  const auto cfg = config(0.5, -2, 12, "db6");
  const auto diff = sample_difference_for_dwt(bump_density(1.0, 0.5), uniform_density(0.5, 2.0), -2, 12);
  const double base = distance_from_samples(diff.values, w, cfg);
  for (double lambda : {0.5, 2.0, 8.0}) {
    std::vector<double> scaled(diff.values);
    for (double& v : scaled) v *= lambda;
    CHECK(distance_from_samples(scaled, w, cfg) == doctest::Approx(lambda * base).epsilon(1e-13));
  }
}

TEST_CASE("difference sampling equals the difference of pyramids") {
  const WaveletSystem w = build_wavelet_system("db10");
  const auto cfg = config(0.5, -3, 12);
  const Density p = bump_density(1.0, 0.5);
  const Density q = translate(uniform_density(0.0, 1.0), 2.0);
  const auto pp = dwt_decompose(sample_for_dwt(p, -3, 12).values, 9, w, 12, ExtensionMode::zero);
  const auto pq = dwt_decompose(sample_for_dwt(q, -3, 12).values, 9, w, 12, ExtensionMode::zero);
  double by_pyramids = 0.0;
  for (std::size_t l = 0; l < pp.details.size(); ++l) {
    double level = 0.0;
    for (std::size_t k = 0; k < pp.details[l].size(); ++k) {
      level += std::abs(pp.details[l].values[k] - pq.details[l].values[k]);
    }
    by_pyramids += std::exp2(-pp.level_of(l) * (cfg.s + 0.5)) * level;
  }
  CHECK(distance_new(p, q, cfg) == doctest::Approx(by_pyramids).epsilon(1e-12));
}

TEST_CASE("translation growth") {
  const Density u = uniform_density(0.0, 1.0);
  for (double s : {0.25, 0.5, 1.0}) {
    const auto cfg = config(s, -11, 16);
    std::vector<double> shifts;
    for (int i = 1; i <= 20; ++i) shifts.push_back(0.1 * i);
    double previous = 0.0;
    for (double a : shifts) {
      const double v = distance_new(u, translate(u, a), cfg);
      CHECK(v > previous);
      previous = v;
    }
  }
}

TEST_CASE("coarser lowest level never decreases the distance") {
  const Density p = bump_density(0.5, 0.5);
  const Density q = translate(p, 1.3);
  const int top = 6;
  double previous = std::numeric_limits<double>::infinity();
  for (int j0 = -8; j0 <= -2; ++j0) {
    const double v = distance_new(p, q, config(0.5, j0, top - j0));
    CHECK(v <= previous * (1 + 1e-12));
    previous = v;
  }
}

TEST_CASE("shared pyramid across exponents") {
  const Density p = bump_density(0.5, 0.5);
  const Density q = translate(p, 0.7);
  auto cfg = config(0.5, -6, 14);
  const std::vector<double> s_values{1.0, 0.5, 0.25};
  const auto many = distances_for_exponents(p, q, cfg, s_values);
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    cfg.s = s_values[i];
    CHECK(many[i] == distance_new(p, q, cfg));
  }
  auto alt = cfg;
  alt.formulation = Formulation::alternative;
  alt.c0 = 3.0;
  const auto alt_many = distances_for_exponents(p, q, alt, s_values);
  alt.s = 0.25;
  CHECK(alt_many[2] == wavelet_distance(p, q, alt));
  CHECK(code_of([&] { distances_for_exponents(p, q, cfg, std::vector<double>{0.0}); }) ==
        ErrorCode::InvalidExponent);
}

TEST_CASE("distance matrix") {
  const auto cfg = config(0.5, -11, 16);
  const Density u = uniform_density(0.0, 1.0);
  {
    const std::vector<Density> one{u};
    const auto m = distance_matrix(one, cfg);
    REQUIRE(m.size() == 1);
    CHECK(m[0][0] == 0.0);
  }
  {
    const std::vector<Density> two{u, u};
    const auto m = distance_matrix(two, cfg);
    CHECK(m[0][1] == 0.0);
    CHECK(m[1][0] == 0.0);
  }
  std::vector<Density> translates;
  for (int i = 0; i < 20; ++i) translates.push_back(translate(u, 2.0 * i / 19.0));
  const auto m = distance_matrix(translates, cfg);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i][i] == 0.0);
    for (std::size_t j = 0; j < m.size(); ++j) CHECK(std::abs(m[i][j] - m[j][i]) <= 1e-12);
  }
  for (std::size_t j = 1; j < m.size(); ++j) {
    CHECK(m[0][j] > m[0][j - 1]);
    CHECK(m[0][j] == doctest::Approx(distance_new(translates[0], translates[j], cfg)).epsilon(1e-14));
  }
}

TEST_CASE("distance matrix reports the failing pair") {
  const auto cfg = config(0.5, -2, 10);
  const std::vector<Density> ds{uniform_density(0.0, 1.0), uniform_density(1.0, 2.0),
                                uniform_density(3.0, 9.0)};
  try {
    distance_matrix(ds, cfg);
    FAIL("expected DomainOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainOverflow);
    CHECK(std::string(e.what()).find("pair (0, 2)") != std::string::npos);
  }
}
