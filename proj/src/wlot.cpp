#include "wws/wlot.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wws/error.hpp"

namespace wws {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_double(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw Error(ErrorCode::ParseError, "bad number '" + token + "'");
  return value;
}

long long parse_integer(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const long long value = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') throw Error(ErrorCode::ParseError, "bad integer '" + token + "'");
  return value;
}

}  // namespace

std::uint64_t wlot_fingerprint(const std::string& wavelet, int j0, int levels) {
  const std::string key = wavelet + "|" + std::to_string(j0) + "|" + std::to_string(levels) + "|zero";
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : key) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

WlotVector::WlotVector(std::string wavelet, int j0, int levels)
    : wavelet_(std::move(wavelet)),
      j0_(j0),
      levels_(levels),
      fingerprint_(wlot_fingerprint(wavelet_, j0, levels)) {}

void WlotVector::set(int level, std::int64_t k, double value) {
  if (level < j0_ || level > j0_ + levels_ - 1) {
    throw Error(ErrorCode::InvalidLevels, "level " + std::to_string(level) + " outside the embedding");
  }
  if (value == 0.0) {
    entries_.erase({level, k});
  } else {
    entries_[{level, k}] = value;
  }
}

double WlotVector::get(int level, std::int64_t k) const {
  const auto it = entries_.find({level, k});
  return it == entries_.end() ? 0.0 : it->second;
}

std::size_t WlotVector::nonzero_count(int level) const {
  const auto first = entries_.lower_bound({level, INT64_MIN});
  const auto last = entries_.lower_bound({level + 1, INT64_MIN});
  return static_cast<std::size_t>(std::distance(first, last));
}

WlotVector embed_samples(std::span<const double> samples, const DistanceConfig& cfg) {
  DistanceConfig checked = cfg;
  checked.formulation = Formulation::new_distance;
  checked.validate();
  const WaveletSystem system = build_wavelet_system(cfg.wavelet);
  const CoefficientPyramid pyramid =
      dwt_decompose(samples, cfg.j0 + cfg.levels, system, cfg.levels, ExtensionMode::zero);
  WlotVector out(cfg.wavelet, cfg.j0, cfg.levels);
  for (std::size_t i = 0; i < pyramid.details.size(); ++i) {
    const LevelCoefficients& level = pyramid.details[i];
    for (std::size_t n = 0; n < level.size(); ++n) {
      if (level.values[n] != 0.0) {
        out.set(pyramid.level_of(i), level.k_offset + static_cast<std::int64_t>(n), level.values[n]);
      }
    }
  }
  return out;
}

WlotVector embed(const Density& p, const DistanceConfig& cfg) {
  return embed_samples(sample_for_dwt(p, cfg.j0, cfg.levels).values, cfg);
}

double wlot_distance(const WlotVector& u, const WlotVector& v, double s) {
  if (u.fingerprint() != v.fingerprint()) {
    throw Error(ErrorCode::ConfigMismatch, "embeddings were built with different configurations");
  }
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "s must lie in (0, 1], got " + std::to_string(s));
  }
  // Per-level sums first, then weights, matching the pyramid evaluation order.
  std::map<int, double> level_sums;
  auto a = u.entries().begin();
  auto b = v.entries().begin();
  const auto a_end = u.entries().end();
  const auto b_end = v.entries().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->first < b->first)) {
      level_sums[a->first.first] += std::abs(a->second);
      ++a;
    } else if (a == a_end || b->first < a->first) {
      level_sums[b->first.first] += std::abs(b->second);
      ++b;
    } else {
      level_sums[a->first.first] += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  double total = 0.0;
  for (const auto& [level, sum] : level_sums) {
    total += std::exp2(-static_cast<double>(level) * (s + 0.5)) * sum;
  }
  return total;
}

WlotVector prune(const WlotVector& u, double eps) {
  WlotVector out(u.wavelet(), u.j0(), u.levels());
  for (const auto& [key, value] : u.entries()) {
    if (std::abs(value) >= eps) out.set(key.first, key.second, value);
  }
  return out;
}

void write_wlot(const WlotVector& u, std::ostream& out) {
  out << "wlot " << u.wavelet() << ' ' << u.j0() << ' ' << u.levels() << '\n';
  for (const auto& [key, value] : u.entries()) {
    out << key.first << ' ' << key.second << ' ' << format_double(value) << '\n';
  }
}

WlotVector read_wlot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "missing wlot header");
  std::istringstream header(line);
  std::string magic, wavelet, j0_text, levels_text, extra;
  if (!(header >> magic >> wavelet >> j0_text >> levels_text) || magic != "wlot" || (header >> extra)) {
    throw Error(ErrorCode::ParseError, "malformed wlot header '" + line + "'");
  }
  WlotVector out(wavelet, static_cast<int>(parse_integer(j0_text)),
                 static_cast<int>(parse_integer(levels_text)));
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string j_text, k_text, value_text;
    if (!(fields >> j_text >> k_text >> value_text) || (fields >> extra)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": expected 'j k value'");
    }
    out.set(static_cast<int>(parse_integer(j_text)), parse_integer(k_text), parse_double(value_text));
  }
  return out;
}

void save_wlot(const WlotVector& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_wlot(u, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

WlotVector load_wlot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_wlot(in);
}

DistanceMatrix wlot_distance_matrix(std::span<const Density> densities, const DistanceConfig& cfg) {
  const std::size_t n = densities.size();
  std::vector<WlotVector> vectors(n, WlotVector(cfg.wavelet, cfg.j0, cfg.levels));
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      vectors[idx] = embed(densities[idx], cfg);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  DistanceMatrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out[i][j] = out[j][i] = wlot_distance(vectors[i], vectors[j], cfg.s);
    }
  }
  return out;
}

}  // namespace wws
