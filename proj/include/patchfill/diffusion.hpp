#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "patchfill/image.hpp"

namespace patchfill {

enum class Conductance { exponential, rational };

inline std::string to_string(Conductance k) {
  return k == Conductance::exponential ? "exponential" : "rational";
}

inline Conductance conductance_from_string(const std::string& s) {
  if (s == "exponential") return Conductance::exponential;
  if (s == "rational") return Conductance::rational;
  throw std::invalid_argument("unknown conductance kind: " + s);
}

/// Explicit anisotropic-diffusion baseline parameters. The stability bound
/// for the 4-neighbor scheme caps the step at 0.25.
struct DiffusionConfig {
  double kappa = 30.0;
  double step = 0.2;
  int max_steps = 5000;
  double tol = 1e-4;  // mean absolute update per target element
  Conductance conductance = Conductance::exponential;

  void validate() const {
    if (kappa <= 0.0) throw std::invalid_argument("DiffusionConfig: kappa must be > 0");
    if (step <= 0.0 || step > 0.25)
      throw std::invalid_argument("DiffusionConfig: step must be in (0, 0.25]");
    if (max_steps < 1) throw std::invalid_argument("DiffusionConfig: max_steps must be >= 1");
    if (tol < 0.0) throw std::invalid_argument("DiffusionConfig: tol must be >= 0");
  }
};

/// Edge-stopping coefficient: 1 on flat regions, falling toward 0 across
/// strong gradients.
inline double pm_conductance(double g, double kappa, Conductance kind) {
  const double x = g / kappa;
  if (kind == Conductance::exponential) return std::exp(-x * x);
  return 1.0 / (1.0 + x * x);
}

struct DiffusionResult {
  Image image;
  int steps = 0;
  double last_update = 0.0;  // mean absolute update of the final step
};

/// Diffuses known data into the target region with the explicit 4-neighbor
/// scheme, per channel. Known pixels act as fixed boundary data; the target
/// region starts at the per-channel mean of the known pixels.
inline DiffusionResult pm_inpaint(const Image& image, const Mask& mask,
                                  const DiffusionConfig& cfg) {
  cfg.validate();
  if (image.height() != mask.height() || image.width() != mask.width())
    throw std::invalid_argument(
        "pm_inpaint: mask dimensions " + std::to_string(mask.height()) + "x" +
        std::to_string(mask.width()) + " do not match image dimensions " +
        std::to_string(image.height()) + "x" + std::to_string(image.width()));
  const int H = image.height(), W = image.width(), C = image.channels();
  const int omega = target_count(mask);
  if (omega == H * W)
    throw std::invalid_argument("pm_inpaint: mask covers the whole image");

  DiffusionResult result;
  result.image = image;
  if (omega == 0) return result;

  // per-channel mean of the known region seeds the hole
  std::vector<double> mean(C, 0.0);
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c)
      if (mask.at(r, c) == 0)
        for (int ch = 0; ch < C; ++ch) mean[ch] += image.at(r, c, ch);
  for (int ch = 0; ch < C; ++ch) mean[ch] /= (H * W - omega);

  std::vector<Pixel> hole;
  hole.reserve(omega);
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c)
      if (mask.at(r, c) != 0) {
        hole.push_back(Pixel{r, c});
        for (int ch = 0; ch < C; ++ch) result.image.at(r, c, ch) = mean[ch];
      }

  Image next = result.image;  // known pixels stay identical in both buffers
  Image& cur = result.image;
  static constexpr int dr[4] = {-1, 1, 0, 0};
  static constexpr int dc[4] = {0, 0, -1, 1};
  for (int step = 1; step <= cfg.max_steps; ++step) {
    double abs_update = 0.0;
    for (const Pixel& p : hole) {
      for (int ch = 0; ch < C; ++ch) {
        const double v = cur.at(p.row, p.col, ch);
        double flux = 0.0;
        for (int k = 0; k < 4; ++k) {
          const int r = p.row + dr[k], c = p.col + dc[k];
          if (!cur.in_bounds(r, c)) continue;  // zero flux at the border
          const double delta = cur.at(r, c, ch) - v;
          flux += pm_conductance(std::abs(delta), cfg.kappa, cfg.conductance) *
                  delta;
        }
        const double update = cfg.step * flux;
        next.at(p.row, p.col, ch) = v + update;
        abs_update += std::abs(update);
      }
    }
    std::swap(cur, next);
    result.steps = step;
    result.last_update = abs_update / (static_cast<double>(omega) * C);
    if (result.last_update <= cfg.tol) break;
  }
  return result;
}

}  // namespace patchfill
