#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace patchfill {

struct Pixel {
  int row = 0;
  int col = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Row-major scan index, the canonical tie-break order everywhere.
inline long row_major_index(const Pixel& p, int width) {
  return static_cast<long>(p.row) * width + p.col;
}

struct Vec2 {
  double row = 0.0;
  double col = 0.0;

  double norm() const { return std::hypot(row, col); }
  double dot(const Vec2& o) const { return row * o.row + col * o.col; }

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// 90-degree rotation; turns a gradient into the isophote direction.
inline Vec2 rotate90(const Vec2& v) { return Vec2{-v.col, v.row}; }

/// Dense H x W plane of values, row-major.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width, T fill = T{})
      : height_(height), width_(width),
        data_(static_cast<std::size_t>(height) * width, fill) {
    if (height < 0 || width < 0)
      throw std::invalid_argument("Grid: negative dimensions");
  }

  int height() const { return height_; }
  int width() const { return width_; }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height_ && c >= 0 && c < width_;
  }
  bool in_bounds(const Pixel& p) const { return in_bounds(p.row, p.col); }

  T& at(int r, int c) {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * width_ + c];
  }
  const T& at(int r, int c) const {
    assert(in_bounds(r, c));
    return data_[static_cast<std::size_t>(r) * width_ + c];
  }
  T& at(const Pixel& p) { return at(p.row, p.col); }
  const T& at(const Pixel& p) const { return at(p.row, p.col); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<T> data_;
};

using ScalarField = Grid<double>;

/// Binary inpainting mask: 1 marks a pixel to fill, 0 a known pixel.
using Mask = Grid<std::uint8_t>;

inline int target_count(const Mask& mask) {
  int n = 0;
  for (auto v : mask.data()) n += (v != 0);
  return n;
}

/// H x W x C raster of real intensities in [0, 255], channel-interleaved.
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels, double fill = 0.0)
      : height_(height), width_(width), channels_(channels),
        data_(static_cast<std::size_t>(height) * width * channels, fill) {
    if (height < 0 || width < 0)
      throw std::invalid_argument("Image: negative dimensions");
    if (channels != 1 && channels != 3)
      throw std::invalid_argument("Image: channels must be 1 or 3, got " +
                                  std::to_string(channels));
    if (fill < 0.0 || fill > 255.0)
      throw std::invalid_argument("Image: fill outside [0, 255]");
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height_ && c >= 0 && c < width_;
  }
  bool in_bounds(const Pixel& p) const { return in_bounds(p.row, p.col); }

  double& at(int r, int c, int ch) {
    assert(in_bounds(r, c) && ch >= 0 && ch < channels_);
    return data_[(static_cast<std::size_t>(r) * width_ + c) * channels_ + ch];
  }
  const double& at(int r, int c, int ch) const {
    assert(in_bounds(r, c) && ch >= 0 && ch < channels_);
    return data_[(static_cast<std::size_t>(r) * width_ + c) * channels_ + ch];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Checks the intensity-range invariant over the whole raster.
  void validate() const {
    for (double v : data_)
      if (!(v >= 0.0 && v <= 255.0))
        throw std::invalid_argument("Image: intensity outside [0, 255]");
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Square window of odd side length centered on a pixel.
struct PatchRef {
  Pixel center;
  int side = 9;

  int half() const { return side / 2; }

  friend bool operator==(const PatchRef&, const PatchRef&) = default;
};

/// Clipped extent of a patch window inside an H x W domain.
/// Rows [r0, r1) x cols [c0, c1); fully_inside is false when the
/// unclipped window would leave the domain.
struct WindowBounds {
  int r0 = 0;
  int c0 = 0;
  int r1 = 0;
  int c1 = 0;
  bool fully_inside = false;

  int rows() const { return r1 - r0; }
  int cols() const { return c1 - c0; }
};

inline WindowBounds patch_window(int height, int width, const PatchRef& ref) {
  if (ref.side < 3 || ref.side % 2 == 0)
    throw std::invalid_argument("patch_window: side must be odd and >= 3");
  const int h = ref.half();
  WindowBounds w;
  const int r0 = ref.center.row - h;
  const int c0 = ref.center.col - h;
  const int r1 = ref.center.row + h + 1;
  const int c1 = ref.center.col + h + 1;
  w.r0 = std::max(r0, 0);
  w.c0 = std::max(c0, 0);
  w.r1 = std::min(r1, height);
  w.c1 = std::min(c1, width);
  w.fully_inside = (r0 >= 0 && c0 >= 0 && r1 <= height && c1 <= width);
  return w;
}

inline WindowBounds patch_window(const Image& img, const PatchRef& ref) {
  return patch_window(img.height(), img.width(), ref);
}

template <typename T>
WindowBounds patch_window(const Grid<T>& grid, const PatchRef& ref) {
  return patch_window(grid.height(), grid.width(), ref);
}

/// Rec. 601 luma; 1-channel images pass through.
inline ScalarField to_luma(const Image& img) {
  ScalarField luma(img.height(), img.width());
  if (img.channels() == 1) {
    luma.data() = img.data();
    return luma;
  }
  if (img.channels() != 3)
    throw std::invalid_argument("to_luma: unsupported channel count");
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c)
      luma.at(r, c) = 0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) +
                      0.114 * img.at(r, c, 2);
  return luma;
}

/// True when p is a target pixel with at least one known 4-neighbor.
inline bool on_front(const Mask& mask, const Pixel& p) {
  if (!mask.in_bounds(p) || mask.at(p) == 0) return false;
  static constexpr int dr[4] = {-1, 1, 0, 0};
  static constexpr int dc[4] = {0, 0, -1, 1};
  for (int k = 0; k < 4; ++k) {
    const int r = p.row + dr[k], c = p.col + dc[k];
    if (mask.in_bounds(r, c) && mask.at(r, c) == 0) return true;
  }
  return false;
}

/// Fill-front pixels in row-major order.
inline std::vector<Pixel> extract_front(const Mask& mask) {
  std::vector<Pixel> front;
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      if (mask.at(r, c) != 0 && on_front(mask, Pixel{r, c}))
        front.push_back(Pixel{r, c});
  return front;
}

struct FrontNormal {
  Vec2 normal;             // unit length unless degenerate
  bool degenerate = false; // symmetric neighborhood, no direction
};

/// Contour normal at a front pixel: normalized central-difference gradient
/// of the mask treated as a real field, indices clamped at the border.
inline FrontNormal front_normal(const Mask& mask, const Pixel& p) {
  if (!on_front(mask, p))
    throw std::invalid_argument("front_normal: pixel is not on the fill front");
  auto m = [&](int r, int c) -> double {
    r = std::clamp(r, 0, mask.height() - 1);
    c = std::clamp(c, 0, mask.width() - 1);
    return mask.at(r, c) != 0 ? 1.0 : 0.0;
  };
  Vec2 g{(m(p.row + 1, p.col) - m(p.row - 1, p.col)) / 2.0,
         (m(p.row, p.col + 1) - m(p.row, p.col - 1)) / 2.0};
  const double n = g.norm();
  if (n == 0.0) return FrontNormal{Vec2{0.0, 0.0}, true};
  return FrontNormal{Vec2{g.row / n, g.col / n}, false};
}

struct IsophoteResult {
  Vec2 vec;               // 90-degree rotation of the strongest gradient
  bool no_stencil = false; // no fully-known 3x3 stencil in the window
};

/// Isophote at p: the strongest central-difference luma gradient found on a
/// fully-known 3x3 stencil centered inside the patch window, rotated 90
/// degrees. Zero vector when no stencil qualifies.
inline IsophoteResult isophote(const ScalarField& luma, const Mask& mask,
                               const Pixel& p, int side) {
  if (luma.height() != mask.height() || luma.width() != mask.width())
    throw std::invalid_argument("isophote: luma/mask dimension mismatch");
  const WindowBounds w = patch_window(mask, PatchRef{p, side});
  Vec2 best{0.0, 0.0};
  double best_mag2 = -1.0;
  for (int r = w.r0; r < w.r1; ++r) {
    for (int c = w.c0; c < w.c1; ++c) {
      if (r - 1 < 0 || r + 1 >= mask.height() || c - 1 < 0 ||
          c + 1 >= mask.width())
        continue;
      bool known = true;
      for (int dr = -1; dr <= 1 && known; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          if (mask.at(r + dr, c + dc) != 0) {
            known = false;
            break;
          }
      if (!known) continue;
      const Vec2 g{(luma.at(r + 1, c) - luma.at(r - 1, c)) / 2.0,
                   (luma.at(r, c + 1) - luma.at(r, c - 1)) / 2.0};
      const double mag2 = g.row * g.row + g.col * g.col;
      if (mag2 > best_mag2) {
        best_mag2 = mag2;
        best = g;
      }
    }
  }
  if (best_mag2 < 0.0) return IsophoteResult{Vec2{0.0, 0.0}, true};
  return IsophoteResult{rotate90(best), false};
}

}  // namespace patchfill
