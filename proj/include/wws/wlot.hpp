#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "wws/wavelet_distance.hpp"

namespace wws {

/// Sparse detail coefficients of one measure, keyed by (level, absolute
/// translation). Only nonzero coefficients are stored; no threshold is applied.
class WlotVector {
 public:
  using Key = std::pair<int, std::int64_t>;

  WlotVector(std::string wavelet, int j0, int levels);

  const std::string& wavelet() const { return wavelet_; }
  int j0() const { return j0_; }
  int levels() const { return levels_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  const std::map<Key, double>& entries() const { return entries_; }
  /// Throws InvalidLevels outside j0 <= level <= j0 + M - 1. Zero erases.
  void set(int level, std::int64_t k, double value);
  double get(int level, std::int64_t k) const;
  std::size_t nonzero_count(int level) const;

 private:
  std::string wavelet_;
  int j0_;
  int levels_;
  std::uint64_t fingerprint_;
  std::map<Key, double> entries_;
};

/// FNV-1a hash of "wavelet|j0|M|zero".
std::uint64_t wlot_fingerprint(const std::string& wavelet, int j0, int levels);

WlotVector embed(const Density& p, const DistanceConfig& cfg);

/// Embeds level j0 + M coefficients given directly (translation 0 first).
WlotVector embed_samples(std::span<const double> samples, const DistanceConfig& cfg);

/// sum over the union of keys of 2^{-j(s+1/2)} |u - v|. Throws ConfigMismatch
/// when the fingerprints differ.
double wlot_distance(const WlotVector& u, const WlotVector& v, double s);

/// Drops entries with magnitude below eps. Lossy.
WlotVector prune(const WlotVector& u, double eps);

/// Text format: "wlot <wavelet> <j0> <M>" then one "j k value" line per entry,
/// values with 17 significant digits.
void write_wlot(const WlotVector& u, std::ostream& out);
WlotVector read_wlot(std::istream& in);
void save_wlot(const WlotVector& u, const std::string& path);
WlotVector load_wlot(const std::string& path);

/// Embeds each density once, then evaluates all pairs on the vectors.
DistanceMatrix wlot_distance_matrix(std::span<const Density> densities, const DistanceConfig& cfg);

}  // namespace wws
