#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "patchfill/image.hpp"

namespace patchfill {

/// Semantic labeling of a scene: every pixel carries a region label, every
/// label an expected color. Used to count filled pixels that landed in the
/// wrong region.
struct RegionSpec {
  Grid<std::uint8_t> labels;
  std::vector<std::vector<double>> palette;  // label -> per-channel color
  double tolerance = 10.0;                   // intensity units
};

/// Peak signal-to-noise ratio in dB, capped at 99 (identical images).
inline double psnr(const Image& a, const Image& b) {
  if (a.height() != b.height() || a.width() != b.width() ||
      a.channels() != b.channels())
    throw std::invalid_argument("psnr: image dimensions differ");
  double mse = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(a.data().size());
  if (mse == 0.0) return 99.0;
  return std::min(99.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

/// Fraction of filled pixels whose color strays from their region's palette
/// entry by more than the tolerance (max-channel absolute difference).
inline double region_bleed(const Image& result, const RegionSpec& spec,
                           const Mask& target) {
  if (result.height() != target.height() || result.width() != target.width() ||
      result.height() != spec.labels.height() ||
      result.width() != spec.labels.width())
    throw std::invalid_argument("region_bleed: dimensions differ");
  long filled = 0, wrong = 0;
  for (int r = 0; r < result.height(); ++r)
    for (int c = 0; c < result.width(); ++c) {
      if (target.at(r, c) == 0) continue;
      ++filled;
      const auto& color = spec.palette.at(spec.labels.at(r, c));
      double dev = 0.0;
      for (int ch = 0; ch < result.channels(); ++ch)
        dev = std::max(dev, std::abs(result.at(r, c, ch) - color.at(ch)));
      if (dev > spec.tolerance) ++wrong;
    }
  if (filled == 0) return 0.0;
  return static_cast<double>(wrong) / static_cast<double>(filled);
}

enum class FixtureName { two_tone_dot, triangle_apex, curve_gap, two_region_straddle };

inline std::vector<std::string> fixture_names() {
  return {"two_tone_dot", "triangle_apex", "curve_gap", "two_region_straddle"};
}

inline FixtureName fixture_from_string(const std::string& s) {
  if (s == "two_tone_dot") return FixtureName::two_tone_dot;
  if (s == "triangle_apex") return FixtureName::triangle_apex;
  if (s == "curve_gap") return FixtureName::curve_gap;
  if (s == "two_region_straddle") return FixtureName::two_region_straddle;
  throw std::invalid_argument("unknown fixture: " + s);
}

/// Synthetic scene: ground-truth image, hole mask, and region labeling.
struct Fixture {
  std::string name;
  Image image;
  Mask mask;
  RegionSpec regions;
};

namespace detail {

inline void paint(Fixture& f, int r, int c, std::uint8_t label) {
  f.regions.labels.at(r, c) = label;
  for (int ch = 0; ch < f.image.channels(); ++ch)
    f.image.at(r, c, ch) = f.regions.palette[label][ch];
}

inline void disk_mask(Mask& mask, int cr, int cc, int radius) {
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= radius * radius)
        mask.at(r, c) = 1;
}

}  // namespace detail

/// Deterministic geometric scenes at any size >= 32. All four render exact
/// flat-color regions so a perfect fill scores zero bleed.
inline Fixture generate_fixture(FixtureName name, int size) {
  if (size < 32)
    throw std::invalid_argument("generate_fixture: size must be >= 32");
  const int s = size;
  Fixture f;
  f.image = Image(s, s, 3);
  f.mask = Mask(s, s, 0);
  f.regions.labels = Grid<std::uint8_t>(s, s, 0);
  f.regions.tolerance = 10.0;

  switch (name) {
    case FixtureName::two_tone_dot: {
      // gray over black, split horizontally; disk hole on the seam
      f.name = "two_tone_dot";
      f.regions.palette = {{128.0, 128.0, 128.0}, {0.0, 0.0, 0.0}};
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c)
          detail::paint(f, r, c, r < s / 2 ? 0 : 1);
      detail::disk_mask(f.mask, s / 2, s / 2, 6 * s / 64);
      break;
    }
    case FixtureName::triangle_apex: {
      // green triangle on white; hole swallows the apex
      f.name = "triangle_apex";
      f.regions.palette = {{255.0, 255.0, 255.0}, {40.0, 140.0, 60.0}};
      const int apex_r = s / 4, base_r = 3 * s / 4, cc = s / 2;
      const int base_half = s / 4;
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) {
          const bool inside = r >= apex_r && r <= base_r &&
                              std::abs(c - cc) * (base_r - apex_r) <=
                                  (r - apex_r) * base_half;
          detail::paint(f, r, c, inside ? 1 : 0);
        }
      detail::disk_mask(f.mask, apex_r + 2 * s / 64, cc, 7 * s / 64);
      break;
    }
    case FixtureName::curve_gap: {
      // thick red arc on white; disk hole cuts the arc at its crest
      f.name = "curve_gap";
      f.regions.palette = {{255.0, 255.0, 255.0}, {200.0, 40.0, 40.0}};
      const double center_r = 1.5 * s, center_c = s / 2.0, radius = s;
      const double half_thick = 2.5 * s / 64.0;
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) {
          const double d = std::hypot(r - center_r, c - center_c);
          detail::paint(f, r, c, std::abs(d - radius) <= half_thick ? 1 : 0);
        }
      detail::disk_mask(f.mask, s / 2, s / 2, 6 * s / 64);
      break;
    }
    case FixtureName::two_region_straddle: {
      // sky over grass; rectangular hole straddling the boundary
      f.name = "two_region_straddle";
      f.regions.palette = {{70.0, 110.0, 200.0}, {60.0, 150.0, 70.0}};
      const int boundary = 9 * s / 16;
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c)
          detail::paint(f, r, c, r < boundary ? 0 : 1);
      const int hh = 6 * s / 64, hw = 8 * s / 64;
      for (int r = boundary - hh; r < boundary + hh; ++r)
        for (int c = s / 2 - hw; c < s / 2 + hw; ++c)
          f.mask.at(r, c) = 1;
      break;
    }
  }
  return f;
}

inline Fixture generate_fixture(const std::string& name, int size) {
  return generate_fixture(fixture_from_string(name), size);
}

}  // namespace patchfill
