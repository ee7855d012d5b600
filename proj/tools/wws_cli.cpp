#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wws/error.hpp"
#include "wws/measures.hpp"
#include "wws/ot_exact.hpp"
#include "wws/simulation.hpp"
#include "wws/wavelet_core.hpp"
#include "wws/wavelet_distance.hpp"
#include "wws/wlot.hpp"

namespace {

struct ConfigFlags {
  std::string wavelet = "db10";
  int j0 = -11;
  int levels = 18;
  std::string formulation = "new";
  double c0 = 0.0;
  double c1 = 1.0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--wavelet", flags.wavelet, "haar, db2 .. db20")->capture_default_str();
  cmd->add_option("--j0", flags.j0, "Coarsest level")->capture_default_str();
  cmd->add_option("--levels", flags.levels, "M: decomposition levels")->capture_default_str();
  cmd->add_option("--formulation", flags.formulation, "new, original or alternative")
      ->capture_default_str();
  cmd->add_option("--c0", flags.c0, "Approximation weight")->capture_default_str();
  cmd->add_option("--c1", flags.c1, "Detail weight")->capture_default_str();
}

wws::DistanceConfig make_config(const ConfigFlags& flags, double s) {
  wws::DistanceConfig cfg;
  cfg.s = s;
  cfg.j0 = flags.j0;
  cfg.levels = flags.levels;
  cfg.wavelet = flags.wavelet;
  cfg.formulation = wws::parse_formulation(flags.formulation);
  cfg.c0 = flags.c0;
  cfg.c1 = flags.c1;
  return cfg;
}

// uniform:lo:hi or bump:center:half_width
wws::Density parse_density(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ':')) parts.push_back(part);
  auto number = [&](std::size_t i) {
    char* end = nullptr;
    const double v = std::strtod(parts[i].c_str(), &end);
    if (end == parts[i].c_str() || *end != '\0') {
      throw wws::Error(wws::ErrorCode::ParseError, "bad number in density '" + text + "'");
    }
    return v;
  };
  if (parts.size() == 3 && parts[0] == "uniform") return wws::uniform_density(number(1), number(2));
  if (parts.size() == 3 && parts[0] == "bump") return wws::bump_density(number(1), number(2));
  throw wws::Error(wws::ErrorCode::ParseError,
                   "density must be uniform:lo:hi or bump:center:half_width, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet and exact s-Wasserstein distances on the line"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a translation or dilation experiment and write CSV");
  std::string family = "uniform_translate";
  std::vector<double> s_values{1.0, 0.5, 0.25};
  std::vector<double> range;
  std::size_t count = 20;
  std::size_t exact_points = 1000;
  std::string out_path;
  bool full = false;
  ConfigFlags sim_flags;
  std::optional<int> sim_j0;
  std::optional<int> sim_levels;
  simulate->add_option("--family", family,
                       "uniform_translate, uniform_dilate, bump_translate or bump_dilate")
      ->capture_default_str();
  simulate->add_option("--s", s_values, "Exponents in (0, 1]")->delimiter(',')->capture_default_str();
  simulate->add_option("--j0", sim_j0, "Coarsest level (family default)");
  simulate->add_option("--levels", sim_levels, "M (18, or 22 with --full)");
  simulate->add_option("--wavelet", sim_flags.wavelet)->capture_default_str();
  simulate->add_option("--formulation", sim_flags.formulation)->capture_default_str();
  simulate->add_option("--c0", sim_flags.c0)->capture_default_str();
  simulate->add_option("--c1", sim_flags.c1)->capture_default_str();
  simulate->add_option("--count", count, "Number of parameter values")->capture_default_str();
  simulate->add_option("--range", range, "lo,hi (family default)")->delimiter(',')->expected(2);
  simulate->add_option("--exact-points", exact_points, "Grid points on [0, 3] for exact OT")
      ->capture_default_str();
  simulate->add_option("--out", out_path, "CSV path (stdout if omitted)");
  simulate->add_flag("--full", full, "Use M = 22");

  // distance
  auto* distance = app.add_subcommand("distance", "Distance between two densities");
  std::string p_text;
  std::string q_text;
  double s = 1.0;
  std::string method = "wavelet";
  ConfigFlags dist_flags;
  distance->add_option("--p", p_text, "uniform:lo:hi or bump:center:half_width")->required();
  distance->add_option("--q", q_text, "uniform:lo:hi or bump:center:half_width")->required();
  distance->add_option("--s", s, "Exponent in (0, 1]")->capture_default_str();
  distance->add_option("--method", method, "wavelet or exact")
      ->check(CLI::IsMember({"wavelet", "exact"}))
      ->capture_default_str();
  distance->add_option("--exact-points", exact_points, "Grid points on [0, 3]")->capture_default_str();
  add_config_flags(distance, dist_flags);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Write the WLOT embedding of a density");
  std::string embed_p;
  std::string embed_out;
  ConfigFlags embed_flags;
  embed_cmd->add_option("--p", embed_p, "uniform:lo:hi or bump:center:half_width")->required();
  embed_cmd->add_option("--out", embed_out, "Output path (stdout if omitted)");
  add_config_flags(embed_cmd, embed_flags);

  // constants
  auto* constants = app.add_subcommand("constants", "Estimate a11, a12, a13 for a wavelet");
  std::string const_wavelet = "db10";
  double const_s = 0.5;
  constants->add_option("--wavelet", const_wavelet)->capture_default_str();
  constants->add_option("--s", const_s, "Exponent in (0, 1]")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      wws::SimulationSpec spec = wws::default_spec(wws::parse_family(family), full);
      spec.count = count;
      spec.s_values = s_values;
      spec.exact_grid_points = exact_points;
      if (range.size() == 2) spec.param_range = {range[0], range[1]};
      ConfigFlags flags = sim_flags;
      flags.j0 = sim_j0.value_or(spec.cfg.j0);
      flags.levels = sim_levels.value_or(spec.cfg.levels);
      spec.cfg = make_config(flags, s_values.empty() ? 1.0 : s_values.front());
      const auto rows = wws::run_simulation(spec);
      if (out_path.empty()) {
        wws::write_csv(rows, std::cout);
      } else {
        wws::emit_csv(rows, out_path);
      }
    } else if (*distance) {
      const wws::Density p = parse_density(p_text);
      const wws::Density q = parse_density(q_text);
      double value = 0.0;
      if (method == "wavelet") {
        value = wws::wavelet_distance(p, q, make_config(dist_flags, s));
      } else {
        const wws::Interval domain{0.0, 3.0};
        value = wws::exact_ws(wws::discretize(p, domain, exact_points),
                              wws::discretize(q, domain, exact_points), s)
                    .cost;
      }
      std::printf("%.12g\n", value);
    } else if (*embed_cmd) {
      const wws::WlotVector vec = wws::embed(parse_density(embed_p), make_config(embed_flags, 1.0));
      if (embed_out.empty()) {
        wws::write_wlot(vec, std::cout);
      } else {
        wws::save_wlot(vec, embed_out);
      }
    } else if (*constants) {
      const auto c = wws::estimate_constants(wws::build_wavelet_system(const_wavelet), const_s);
      std::printf("a11 %.12g\na12 %.12g\na13 %.12g\n", c.a11, c.a12, c.a13);
    }
  } catch (const wws::Error& e) {
    std::fprintf(stderr, "wws: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wws: %s\n", e.what());
    return 2;
  }
  return 0;
}
