#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace patchfill {

enum class MeasureFamily { ssd, minkowski, chebyshev, hysim };

inline std::string to_string(MeasureFamily f) {
  switch (f) {
    case MeasureFamily::ssd: return "ssd";
    case MeasureFamily::minkowski: return "minkowski";
    case MeasureFamily::chebyshev: return "chebyshev";
    case MeasureFamily::hysim: return "hysim";
  }
  return "unknown";
}

inline MeasureFamily measure_family_from_string(const std::string& s) {
  if (s == "ssd") return MeasureFamily::ssd;
  if (s == "minkowski") return MeasureFamily::minkowski;
  if (s == "chebyshev") return MeasureFamily::chebyshev;
  if (s == "hysim") return MeasureFamily::hysim;
  throw std::invalid_argument("unknown measure family: " + s);
}

/// Patch-distance family selector with the hybrid weights.
/// hysim evaluates alpha * chebyshev + beta * minkowski(p_exponent).
struct MeasureConfig {
  MeasureFamily family = MeasureFamily::hysim;
  double alpha = 1.0;
  double beta = 1.0;
  double p_exponent = 2.0;

  void validate() const {
    if (alpha < 0.0 || beta < 0.0)
      throw std::invalid_argument("MeasureConfig: alpha and beta must be >= 0");
    if (p_exponent < 1.0)
      throw std::invalid_argument("MeasureConfig: p_exponent must be >= 1");
    if (family == MeasureFamily::hysim && alpha == 0.0 && beta == 0.0)
      throw std::invalid_argument(
          "MeasureConfig: hysim needs alpha or beta nonzero");
  }
};

/// Two flat patch vectors compared only where known = 1. Elements enumerate
/// patch pixels x channels in row-major, channel-interleaved order.
struct MaskedPair {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<std::uint8_t> known;
};

namespace detail {

inline void check_pair(const MaskedPair& pair) {
  if (pair.a.size() != pair.b.size() || pair.a.size() != pair.known.size())
    throw std::invalid_argument("MaskedPair: vector lengths differ");
}

[[noreturn]] inline void no_known_elements() {
  throw std::invalid_argument("MaskedPair: no known elements to compare");
}

}  // namespace detail

/// Sum of squared differences over the known elements.
inline double ssd(const MaskedPair& pair) {
  detail::check_pair(pair);
  double sum = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < pair.a.size(); ++i) {
    if (!pair.known[i]) continue;
    const double d = pair.a[i] - pair.b[i];
    sum += d * d;
    any = true;
  }
  if (!any) detail::no_known_elements();
  return sum;
}

/// (sum |a-b|^p)^(1/p) over the known elements; p >= 1.
inline double minkowski(const MaskedPair& pair, double p) {
  detail::check_pair(pair);
  if (p < 1.0) throw std::invalid_argument("minkowski: p must be >= 1");
  double sum = 0.0;
  bool any = false;
  if (p == 1.0) {
    for (std::size_t i = 0; i < pair.a.size(); ++i) {
      if (!pair.known[i]) continue;
      sum += std::abs(pair.a[i] - pair.b[i]);
      any = true;
    }
    if (!any) detail::no_known_elements();
    return sum;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < pair.a.size(); ++i) {
      if (!pair.known[i]) continue;
      const double d = pair.a[i] - pair.b[i];
      sum += d * d;
      any = true;
    }
    if (!any) detail::no_known_elements();
    return std::sqrt(sum);
  }
  for (std::size_t i = 0; i < pair.a.size(); ++i) {
    if (!pair.known[i]) continue;
    sum += std::pow(std::abs(pair.a[i] - pair.b[i]), p);
    any = true;
  }
  if (!any) detail::no_known_elements();
  return std::pow(sum, 1.0 / p);
}

/// max |a-b| over the known elements.
inline double chebyshev(const MaskedPair& pair) {
  detail::check_pair(pair);
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < pair.a.size(); ++i) {
    if (!pair.known[i]) continue;
    best = std::max(best, std::abs(pair.a[i] - pair.b[i]));
    any = true;
  }
  if (!any) detail::no_known_elements();
  return best;
}

/// Hybrid distance: alpha * chebyshev + beta * minkowski(P). The Chebyshev
/// term reacts to the single worst element, the Minkowski term to the bulk.
inline double hysim(const MaskedPair& pair, const MeasureConfig& cfg) {
  if (cfg.family != MeasureFamily::hysim)
    throw std::invalid_argument("hysim: config family is not hysim");
  cfg.validate();
  return cfg.alpha * chebyshev(pair) + cfg.beta * minkowski(pair, cfg.p_exponent);
}

/// Distance-to-similarity duality: s = S - d. Larger means more similar;
/// s equals S exactly when d = 0. The caller owns the choice of S.
inline double similarity_from_distance(double d_value, double s_max) {
  return s_max - d_value;
}

/// Dispatch over the configured family.
inline double evaluate(const MaskedPair& pair, const MeasureConfig& cfg) {
  switch (cfg.family) {
    case MeasureFamily::ssd: return ssd(pair);
    case MeasureFamily::minkowski: return minkowski(pair, cfg.p_exponent);
    case MeasureFamily::chebyshev: return chebyshev(pair);
    case MeasureFamily::hysim: return hysim(pair, cfg);
  }
  throw std::invalid_argument("evaluate: unknown measure family");
}

}  // namespace patchfill
