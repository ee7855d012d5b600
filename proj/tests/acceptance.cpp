#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wws/error.hpp"
#include "wws/ot_exact.hpp"
#include "wws/simulation.hpp"
#include "wws/wavelet_core.hpp"
#include "wws/wavelet_distance.hpp"
#include "wws/wlot.hpp"

using namespace wws;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

DistanceConfig config(double s, int j0, int levels, const std::string& wavelet = "db10") {
  DistanceConfig cfg;
  cfg.s = s;
  cfg.j0 = j0;
  cfg.levels = levels;
  cfg.wavelet = wavelet;
  return cfg;
}

// Largest |normalized - exact| / exact over rows with param >= lo.
double max_relative_deviation(const std::vector<SimulationRow>& rows, double s, double lo) {
  double worst = 0.0;
  for (const SimulationRow& r : rows) {
    if (r.s != s || r.param < lo || r.exact_value <= 0.0) continue;
    worst = std::max(worst, std::abs(r.normalized_value - r.exact_value) / r.exact_value);
  }
  return worst;
}

double constant_for(const std::vector<SimulationRow>& rows, double s) {
  for (const SimulationRow& r : rows) {
    if (r.s == s) return r.norm_constant;
  }
  return 0.0;
}

Outcome perfect_reconstruction() {
  auto rng = testing::make_rng(1001);
  const auto start = Clock::now();
  double worst = 0.0;
  for (const std::string& name : wavelet_catalog()) {
    const WaveletSystem system = build_wavelet_system(name);
    for (int m = 1; m <= 12; ++m) {
      const auto signal = testing::random_signal(rng, std::size_t{1} << m);
      const auto pyramid = dwt_decompose(signal, 0, system, m, ExtensionMode::zero);
      const auto back = dwt_reconstruct(pyramid, system);
      if (back.size() != signal.size()) return {false, name + " changed the signal length"};
      for (std::size_t i = 0; i < signal.size(); ++i) worst = std::max(worst, std::abs(back[i] - signal[i]));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && elapsed < 5.0,
          "max error " + fmt("%.3g", worst) + ", " + fmt("%.2f", elapsed) + " s"};
}

Outcome filter_identities() {
  double worst = 0.0;
  for (const std::string& name : wavelet_catalog()) {
    const WaveletSystem system = build_wavelet_system(name);
    const auto g = system.lowpass();
    const auto h = system.highpass();
    const std::size_t L = g.size();
    double sg = 0.0;
    double sh = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
      sg += g[k];
      sh += h[k];
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(h[k] - sign * g[L - 1 - k]));
    }
    worst = std::max({worst, std::abs(sg - std::sqrt(2.0)), std::abs(sh)});
    for (std::size_t shift = 0; shift < L; shift += 2) {
      double gg = 0.0;
      double hh = 0.0;
      double gh = 0.0;
      double hg = 0.0;
      for (std::size_t k = 0; k + shift < L; ++k) {
        gg += g[k] * g[k + shift];
        hh += h[k] * h[k + shift];
        gh += g[k] * h[k + shift];
        hg += h[k] * g[k + shift];
      }
      const double delta = shift == 0 ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(gg - delta), std::abs(hh - delta), std::abs(gh), std::abs(hg)});
    }
  }
  return {worst <= 1e-12, "max identity residual " + fmt("%.3g", worst)};
}

Outcome solver_oracles(std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>>& pairs) {
  auto rng = testing::make_rng(2024);
  std::uniform_int_distribution<std::size_t> atoms(1, 200);
  const auto start = Clock::now();
  double cdf_gap = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto mu = testing::random_measure(rng, atoms(rng));
    auto nu = testing::random_measure(rng, atoms(rng));
    cdf_gap = std::max(cdf_gap, std::abs(exact_ws(mu, nu, 1.0).cost - w1_cdf(mu, nu)));
    pairs.emplace_back(std::move(mu), std::move(nu));
  }
  std::uniform_int_distribution<std::size_t> small(1, 12);
  double lp_gap = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const double s = std::array{0.25, 0.5, 1.0}[trial % 3];
    auto mu = testing::random_measure(rng, small(rng));
    auto nu = trial % 2 == 0 ? testing::random_grid_measure(rng, 12) : testing::random_measure(rng, small(rng));
    lp_gap = std::max(lp_gap, std::abs(exact_ws(mu, nu, s).cost - testing::lp_transport_cost(mu, nu, s)));
    pairs.emplace_back(std::move(mu), std::move(nu));
  }
  const double elapsed = seconds_since(start);
  return {cdf_gap <= 1e-7 && lp_gap <= 1e-8 && elapsed < 30.0,
          "W1 vs CDF gap " + fmt("%.3g", cdf_gap) + ", LP gap " + fmt("%.3g", lp_gap) + ", " +
              fmt("%.2f", elapsed) + " s"};
}

Outcome jensen_and_convergence(const std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>>& pairs) {
  double slack = INFINITY;
  for (const auto& [mu, nu] : pairs) {
    const double w1 = w1_cdf(mu, nu);
    for (double s : {0.25, 0.5, 0.75}) slack = std::min(slack, std::pow(w1, s) - exact_ws(mu, nu, s).cost);
  }
  auto rng = testing::make_rng(77);
  int monotone = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = testing::random_measure(rng, 30, 3.0);
    const auto nu = testing::random_measure(rng, 30, 3.0);
    const double w1 = w1_cdf(mu, nu);
    const double g1 = std::abs(exact_ws(mu, nu, 0.9).cost - w1);
    const double g2 = std::abs(exact_ws(mu, nu, 0.99).cost - w1);
    const double g3 = std::abs(exact_ws(mu, nu, 0.999).cost - w1);
    if (g2 < g1 && g3 < g2) ++monotone;
  }
  return {slack >= -1e-9 && monotone == 20,
          "min Jensen slack " + fmt("%.3g", slack) + " over " + std::to_string(pairs.size()) +
              " pairs, monotone convergence on " + std::to_string(monotone) + "/20"};
}

Outcome periodicity_counterexample() {
  const Density u = uniform_density(0.0, 1.0);
  std::string detail;
  bool pass = true;
  for (const char* name : {"db2", "db10"}) {
    const int T = build_wavelet_system(name).support_length();
    DistanceConfig cfg = config(0.5, -5, 15, name);
    cfg.formulation = Formulation::original;
    const double first = distance_original(u, translate(u, T), cfg);
    double spread = 0.0;
    for (int m = 1; m <= 4; ++m) spread = std::max(spread, std::abs(distance_original(u, translate(u, T + m), cfg) - first));
    const Interval domain{0.0, static_cast<double>(T + 5)};
    const std::size_t points = static_cast<std::size_t>(20 * (T + 5)) + 1;
    const DiscreteMeasure base = discretize(u, domain, points);
    double previous = -1.0;
    bool increasing = true;
    for (int m = 0; m <= 4; ++m) {
      const double w = exact_ws(base, discretize(translate(u, T + m), domain, points), cfg.s).cost;
      increasing = increasing && w > previous;
      previous = w;
    }
    pass = pass && first > 0.0 && spread <= 1e-8 && increasing;
    detail += std::string(detail.empty() ? "" : "; ") + name + ": spread " + fmt("%.3g", spread) +
              ", exact " + (increasing ? "increasing" : "not increasing");
  }
  return {pass, detail};
}

Outcome level_combination_identity() {
  const WaveletSystem system = build_wavelet_system("db10");
  const double s = 0.5;
  double worst = 0.0;
  for (const std::vector<double>& a :
       {std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 4}, std::vector<double>{5, 0, 3}}) {
    const auto g = testing::wavelet_combination(system, 0, a, s, 12);
    const double expected = (a[0] + a[1] + a[2]) / g.mass;
    const double value = distance_new(g.positive, g.negative, config(s, -5, 20));
    worst = std::max(worst, std::abs(value - expected) / expected);
  }
  return {worst < 0.01, "max relative error " + fmt("%.4f", worst) + " (db10, j0 = -5, M = 20)"};
}

Outcome atom_identity() {
  const WaveletSystem system = build_wavelet_system("db10");
  const int j = 1;
  const auto atom = testing::wavelet_atom(system, j, 2, 12);
  double worst = 0.0;
  for (double s : {0.25, 0.5}) {
    const double expected = std::exp2(-j * (s + 0.5)) / atom.mass;
    const double value = distance_new(atom.positive, atom.negative, config(s, -5, 20));
    worst = std::max(worst, std::abs(value - expected) / expected);
  }
  return {worst < 0.01, "max relative error " + fmt("%.4f", worst)};
}

Outcome translation_tracking() {
  SimulationSpec spec = default_spec(Family::uniform_translate);
  spec.s_values = {1.0};
  const auto rows = run_simulation(spec);
  const double deviation = max_relative_deviation(rows, 1.0, 0.4);
  const double c = constant_for(rows, 1.0);
  spec.cfg.formulation = Formulation::original;
  const double original = max_relative_deviation(run_simulation(spec), 1.0, 0.4);
  return {deviation < 0.15 && c >= 1.0 / 140.0 && c <= 1.0 / 90.0 && original >= 0.15,
          "new deviation " + fmt("%.4f", deviation) + ", c = 1/" + fmt("%.1f", 1.0 / c) +
              ", original deviation " + fmt("%.4f", original)};
}

Outcome dilation_tracking() {
  SimulationSpec spec = default_spec(Family::bump_dilate);
  spec.s_values = {0.5, 1.0};
  const auto rows = run_simulation(spec);
  const double half = max_relative_deviation(rows, 0.5, spec.param_range.lo);
  const double one = max_relative_deviation(rows, 1.0, spec.param_range.lo);
  return {half < 0.10 && one < 0.10,
          "deviation s=1/2 " + fmt("%.4f", half) + ", s=1 " + fmt("%.4f", one)};
}

Outcome wlot_consistency() {
  auto rng = testing::make_rng(555);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_density = [&] {
    const double width = 0.2 + 0.8 * unit(rng);
    const double lo = 0.05 + 2.5 * unit(rng);
    return unit(rng) < 0.5 ? uniform_density(lo, lo + width) : bump_density(lo + 0.5 * width, 0.5 * width);
  };
  double gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = config(std::array{0.25, 0.5, 1.0}[trial % 3], -6, 16);
    const Density p = random_density();
    const Density q = random_density();
    gap = std::max(gap, std::abs(wlot_distance(embed(p, cfg), embed(q, cfg), cfg.s) - distance_new(p, q, cfg)));
  }
  const auto cfg = config(0.5, -8, 16);
  std::vector<Density> family;
  for (int i = 0; i < 12; ++i) family.push_back(random_density());
  reset_dwt_call_count();
  wlot_distance_matrix(family, cfg);
  const auto calls = dwt_call_count();

  const auto sparse_cfg = config(0.5, -11, 16);
  const int T = build_wavelet_system("db10").support_length();
  bool sparse = true;
  for (const Density& d : {uniform_density(0.0, 1.0), bump_density(0.5, 0.5)}) {
    const auto e = embed(d, sparse_cfg);
    for (int j = sparse_cfg.j0; j < sparse_cfg.j0 + sparse_cfg.levels; ++j) {
      sparse = sparse && static_cast<double>(e.nonzero_count(j)) <= std::ldexp(1.0, j) + 2.0 * T + 2.0;
    }
  }
  return {gap <= 1e-10 && calls == family.size() && sparse,
          "max gap " + fmt("%.3g", gap) + ", " + std::to_string(calls) + " transforms for " +
              std::to_string(family.size()) + " measures, sparsity " + (sparse ? "ok" : "violated")};
}

Outcome stability_sweeps() {
  bool pass = true;
  std::string detail = "constants over M 14/16/18:";
  SimulationSpec spec = default_spec(Family::bump_translate);
  spec.s_values = {1.0, 0.5};
  std::vector<std::vector<SimulationRow>> by_levels;
  for (int levels : {14, 16, 18}) {
    spec.cfg.levels = levels;
    by_levels.push_back(run_simulation(spec));
  }
  for (double s : spec.s_values) {
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& rows : by_levels) {
      lo = std::min(lo, constant_for(rows, s));
      hi = std::max(hi, constant_for(rows, s));
    }
    const double variation = (hi - lo) / hi;
    pass = pass && variation < 0.10;
    detail += " s=" + fmt("%g", s) + " varies " + fmt("%.3f", variation);
  }
  detail += "; error at a >= 1 for j0 -5/-8/-11:";
  std::vector<std::vector<SimulationRow>> by_j0;
  for (int j0 : {-5, -8, -11}) {
    spec.cfg.j0 = j0;
    spec.cfg.levels = 11 - j0;
    by_j0.push_back(run_simulation(spec));
  }
  for (double s : spec.s_values) {
    detail += " s=" + fmt("%g", s);
    double previous = INFINITY;
    for (const auto& rows : by_j0) {
      const double error = max_relative_deviation(rows, s, 1.0);
      pass = pass && error < previous;
      previous = error;
      detail += " " + fmt("%.4f", error);
    }
  }
  spec.cfg.j0 = -11;
  spec.cfg.levels = 19;
  const auto nineteen = run_simulation(spec);
  detail += "; for reference M 16/19/22 at j0 -11:";
  for (double s : spec.s_values) {
    const double a = constant_for(by_levels[1], s);
    const double b = constant_for(nineteen, s);
    const double c = constant_for(by_j0.back(), s);
    detail += " s=" + fmt("%g", s) + " varies " + fmt("%.3f", (std::max({a, b, c}) - std::min({a, b, c})) / std::max({a, b, c}));
  }
  return {pass, detail};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Outcome cli_determinism() {
  const std::string base = "acceptance_determinism_";
  const std::string flags = " simulate --family bump_translate --s 1,0.5,0.25 --out ";
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    const std::string path = base + std::to_string(run) + ".csv";
    const std::string command = std::string("\"") + WWS_CLI_PATH + "\"" + flags + path;
    if (std::system(command.c_str()) != 0) return {false, "simulate exited with an error"};
    outputs[run] = slurp(path);
    std::remove(path.c_str());
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, std::to_string(outputs[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>> pairs;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"perfect reconstruction", perfect_reconstruction},
      {"filter identities", filter_identities},
      {"exact solver oracles", [&] { return solver_oracles(pairs); }},
      {"Jensen bound and convergence", [&] { return jensen_and_convergence(pairs); }},
      {"original formulation periodicity", periodicity_counterexample},
      {"three level combination identity", level_combination_identity},
      {"wavelet atom identity", atom_identity},
      {"translation tracking", translation_tracking},
      {"dilation tracking", dilation_tracking},
      {"WLOT consistency", wlot_consistency},
      {"stability sweeps", stability_sweeps},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%2zu] %s %s: %s (%.1f s)\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                outcome.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
