#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "patchfill/image.hpp"
#include "patchfill/measures.hpp"

namespace patchfill {

/// Parameters of the exemplar fill loop.
struct EngineConfig {
  int patch_side = 9;
  MeasureConfig measure{};
  double data_term_floor = 1e-3;
  int max_iterations = 0;  // 0 = one bound per target pixel
  int snapshot_every = 0;  // 0 = off
  int threads = 0;         // 0 = hardware concurrency

  // Invoked after every snapshot_every-th transfer with the evolving image.
  std::function<void(int iteration, const Image&)> snapshot_sink;

  void validate() const {
    if (patch_side < 3 || patch_side % 2 == 0)
      throw std::invalid_argument("EngineConfig: patch_side must be odd >= 3");
    if (data_term_floor <= 0.0)
      throw std::invalid_argument("EngineConfig: data_term_floor must be > 0");
    if (max_iterations < 0 || snapshot_every < 0 || threads < 0)
      throw std::invalid_argument("EngineConfig: negative count");
    measure.validate();
  }
};

/// Mutable state of one fill run. Confidence starts at 1 on known pixels and
/// 0 on the target region; transfers propagate it into filled pixels.
struct FillState {
  Image image;
  Mask mask;
  ScalarField confidence;
  int iteration = 0;

  static FillState init(Image image, Mask mask) {
    if (image.height() != mask.height() || image.width() != mask.width())
      throw std::invalid_argument(
          "FillState: mask dimensions " + std::to_string(mask.height()) + "x" +
          std::to_string(mask.width()) + " do not match image dimensions " +
          std::to_string(image.height()) + "x" + std::to_string(image.width()));
    FillState s;
    s.confidence = ScalarField(mask.height(), mask.width(), 0.0);
    for (int r = 0; r < mask.height(); ++r)
      for (int c = 0; c < mask.width(); ++c) {
        mask.at(r, c) = mask.at(r, c) ? 1 : 0;
        s.confidence.at(r, c) = mask.at(r, c) ? 0.0 : 1.0;
      }
    s.image = std::move(image);
    s.mask = std::move(mask);
    return s;
  }
};

/// C(p): window sum of confidence over known pixels, divided by side^2.
/// The denominator stays side^2 even when the window is clipped.
inline double confidence_term(const FillState& state, const Pixel& p, int side) {
  const WindowBounds w = patch_window(state.mask, PatchRef{p, side});
  double sum = 0.0;
  for (int r = w.r0; r < w.r1; ++r)
    for (int c = w.c0; c < w.c1; ++c)
      if (state.mask.at(r, c) == 0) sum += state.confidence.at(r, c);
  return sum / (static_cast<double>(side) * side);
}

/// D(p) from a precomputed luma plane: |isophote . normal| / 255, floored so
/// flat regions keep a confidence-driven fill order.
inline double data_term(const ScalarField& luma, const FillState& state,
                        const Pixel& p, int side, double floor_value) {
  const FrontNormal n = front_normal(state.mask, p);
  if (n.degenerate) return floor_value;
  const IsophoteResult iso = isophote(luma, state.mask, p, side);
  const double d = std::abs(iso.vec.dot(n.normal)) / 255.0;
  return std::max(d, floor_value);
}

inline double data_term(const FillState& state, const Pixel& p, int side,
                        double floor_value) {
  return data_term(to_luma(state.image), state, p, side, floor_value);
}

/// P(p) = C(p) * D(p).
inline double priority(const ScalarField& luma, const FillState& state,
                       const Pixel& p, int side, double floor_value) {
  return confidence_term(state, p, side) *
         data_term(luma, state, p, side, floor_value);
}

inline double priority(const FillState& state, const Pixel& p, int side,
                       double floor_value) {
  return priority(to_luma(state.image), state, p, side, floor_value);
}

/// Highest-priority front pixel; ties go to the smallest row-major index.
inline PatchRef select_target(const FillState& state, int side,
                              double floor_value) {
  const std::vector<Pixel> front = extract_front(state.mask);
  if (front.empty())
    throw std::runtime_error("select_target: fill front is empty");
  const ScalarField luma = to_luma(state.image);
  Pixel best = front.front();
  double best_priority = -1.0;
  for (const Pixel& p : front) {  // row-major order, strict > keeps first
    const double pr = priority(luma, state, p, side, floor_value);
    if (pr > best_priority) {
      best_priority = pr;
      best = p;
    }
  }
  return PatchRef{best, side};
}

struct SearchResult {
  PatchRef source;
  double distance = 0.0;
};

namespace detail {

/// Target patch flattened for comparison: values plus the known-element
/// mask (in-bounds and not in the target region).
struct TargetPatch {
  std::vector<double> values;
  std::vector<std::uint8_t> known;
};

inline TargetPatch gather_target(const FillState& state, const PatchRef& target) {
  const int side = target.side;
  const int half = target.half();
  const int channels = state.image.channels();
  TargetPatch t;
  t.values.assign(static_cast<std::size_t>(side) * side * channels, 0.0);
  t.known.assign(t.values.size(), 0);
  std::size_t e = 0;
  for (int dr = 0; dr < side; ++dr)
    for (int dc = 0; dc < side; ++dc) {
      const int r = target.center.row - half + dr;
      const int c = target.center.col - half + dc;
      const bool known = state.image.in_bounds(r, c) && state.mask.at(r, c) == 0;
      for (int ch = 0; ch < channels; ++ch, ++e) {
        if (known) {
          t.values[e] = state.image.at(r, c, ch);
          t.known[e] = 1;
        }
      }
    }
  return t;
}

/// Candidate centers whose windows are fully in bounds and hole-free,
/// in row-major order. Uses a summed-area table of the mask.
inline std::vector<Pixel> candidate_centers(const Mask& mask, int side) {
  const int H = mask.height(), W = mask.width();
  const int half = side / 2;
  std::vector<int> sat(static_cast<std::size_t>(H + 1) * (W + 1), 0);
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c)
      sat[(r + 1) * (W + 1) + (c + 1)] = (mask.at(r, c) != 0) +
                                         sat[r * (W + 1) + (c + 1)] +
                                         sat[(r + 1) * (W + 1) + c] -
                                         sat[r * (W + 1) + c];
  auto rect_sum = [&](int r0, int c0, int r1, int c1) {  // half-open
    return sat[r1 * (W + 1) + c1] - sat[r0 * (W + 1) + c1] -
           sat[r1 * (W + 1) + c0] + sat[r0 * (W + 1) + c0];
  };
  std::vector<Pixel> centers;
  for (int r = half; r + half < H; ++r)
    for (int c = half; c + half < W; ++c)
      if (rect_sum(r - half, c - half, r + half + 1, c + half + 1) == 0)
        centers.push_back(Pixel{r, c});
  return centers;
}

}  // namespace detail

/// Exhaustive scan over every fully-known, fully-in-bounds candidate window;
/// returns the argmin of the configured distance against the target's known
/// pixels. Ties go to the smallest row-major center. Deterministic for any
/// thread count.
inline SearchResult search_best(const FillState& state, const PatchRef& target,
                                const EngineConfig& cfg) {
  const int side = target.side;
  const int half = target.half();
  const int channels = state.image.channels();
  cfg.measure.validate();
  const detail::TargetPatch tp = detail::gather_target(state, target);
  if (std::find(tp.known.begin(), tp.known.end(), 1) == tp.known.end())
    throw std::invalid_argument("search_best: target patch has no known pixel");

  const std::vector<Pixel> centers = detail::candidate_centers(state.mask, side);
  if (centers.empty())
    throw std::runtime_error(
        "search_best: no valid source candidate (known region too small for "
        "patch side " + std::to_string(side) + ")");

  struct Best {
    double distance = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
  };
  auto scan = [&](std::size_t i0, std::size_t i1) {
    Best best;
    MaskedPair pair;
    pair.a = tp.values;
    pair.known = tp.known;
    pair.b.assign(pair.a.size(), 0.0);
    for (std::size_t i = i0; i < i1; ++i) {
      const Pixel q = centers[i];
      std::size_t e = 0;
      for (int dr = 0; dr < side; ++dr) {
        const int r = q.row - half + dr;
        for (int dc = 0; dc < side; ++dc) {
          const int c = q.col - half + dc;
          for (int ch = 0; ch < channels; ++ch, ++e)
            pair.b[e] = state.image.at(r, c, ch);
        }
      }
      const double d = evaluate(pair, cfg.measure);
      if (d < best.distance) {  // strict: first (lowest row-major) wins ties
        best.distance = d;
        best.index = i;
      }
    }
    return best;
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                          : std::max(1u, hw);
  n_threads = std::min(n_threads, centers.size());

  Best overall;
  if (n_threads <= 1) {
    overall = scan(0, centers.size());
  } else {
    std::vector<Best> results(n_threads);
    std::vector<std::exception_ptr> errors(n_threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (centers.size() + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t i0 = std::min(t * chunk, centers.size());
      const std::size_t i1 = std::min(i0 + chunk, centers.size());
      pool.emplace_back([&, t, i0, i1] {
        try {
          results[t] = scan(i0, i1);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
    // chunks are in ascending center order, so strict < keeps the
    // smallest row-major index on ties
    for (const Best& b : results)
      if (b.distance < overall.distance) overall = b;
  }
  return SearchResult{PatchRef{centers[overall.index], side}, overall.distance};
}

/// Copies source pixels into the unknown part of the target window, marks
/// them known, and stamps them with the target center's confidence computed
/// before the copy. Returns how many pixels were filled.
inline int transfer(FillState& state, const PatchRef& target,
                    const PatchRef& source) {
  const int side = target.side;
  const int half = target.half();
  const int channels = state.image.channels();
  if (!patch_window(state.mask, source).fully_inside)
    throw std::invalid_argument("transfer: source window leaves the image");
  const double center_confidence = confidence_term(state, target.center, side);
  int filled = 0;
  for (int dr = 0; dr < side; ++dr)
    for (int dc = 0; dc < side; ++dc) {
      const int tr = target.center.row - half + dr;
      const int tc = target.center.col - half + dc;
      if (!state.mask.in_bounds(tr, tc) || state.mask.at(tr, tc) == 0) continue;
      const int sr = source.center.row - half + dr;
      const int sc = source.center.col - half + dc;
      for (int ch = 0; ch < channels; ++ch)
        state.image.at(tr, tc, ch) = state.image.at(sr, sc, ch);
      state.mask.at(tr, tc) = 0;
      state.confidence.at(tr, tc) = center_confidence;
      ++filled;
    }
  return filled;
}

struct IterationRecord {
  int iteration = 0;
  Pixel target;
  Pixel source;
  double distance = 0.0;
  int filled = 0;
};

struct FillReport {
  int iterations = 0;
  std::vector<IterationRecord> records;
};

struct FillResult {
  Image image;
  FillReport report;
};

/// Full fill loop: select the highest-priority front patch, search the best
/// source exemplar, transfer, repeat until the target region is empty.
inline FillResult inpaint(const Image& image, const Mask& mask,
                          const EngineConfig& cfg) {
  cfg.validate();
  if (image.height() != mask.height() || image.width() != mask.width())
    throw std::invalid_argument(
        "inpaint: mask dimensions " + std::to_string(mask.height()) + "x" +
        std::to_string(mask.width()) + " do not match image dimensions " +
        std::to_string(image.height()) + "x" + std::to_string(image.width()));
  if (cfg.patch_side > image.height() || cfg.patch_side > image.width())
    throw std::invalid_argument("inpaint: patch does not fit inside the image");
  const int omega = target_count(mask);
  if (omega == mask.height() * mask.width())
    throw std::invalid_argument("inpaint: mask covers the whole image");

  FillResult result;
  if (omega == 0) {
    result.image = image;
    return result;
  }

  FillState state = FillState::init(image, mask);
  FillReport& report = result.report;
  const int max_iterations =
      cfg.max_iterations > 0 ? cfg.max_iterations : omega;
  int remaining = omega;

  while (remaining > 0 && report.iterations < max_iterations) {
    const PatchRef target =
        select_target(state, cfg.patch_side, cfg.data_term_floor);
    const SearchResult found = search_best(state, target, cfg);
    const int filled = transfer(state, target, found.source);
    remaining -= filled;
    ++report.iterations;
    state.iteration = report.iterations;
    report.records.push_back(IterationRecord{report.iterations, target.center,
                                             found.source.center,
                                             found.distance, filled});
    if (cfg.snapshot_every > 0 && cfg.snapshot_sink &&
        report.iterations % cfg.snapshot_every == 0)
      cfg.snapshot_sink(report.iterations, state.image);
  }
  result.image = std::move(state.image);
  return result;
}

}  // namespace patchfill
