// Acceptance suite: every release criterion as one pass/fail line.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "patchfill/exemplar.hpp"
#include "patchfill/measures.hpp"
#include "patchfill/quality.hpp"
#include "patchfill/runner.hpp"

using namespace patchfill;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> check;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct PatchSampler {
  std::mt19937 rng;
  std::uniform_real_distribution<double> value{0.0, 255.0};
  std::uniform_int_distribution<int> bit{0, 1};
  static constexpr std::size_t kElems = 9 * 9 * 3;

  explicit PatchSampler(unsigned seed) : rng(seed) {}

  std::vector<double> patch() {
    std::vector<double> v(kElems);
    for (auto& x : v) x = value(rng);
    return v;
  }

  std::vector<std::uint8_t> known() {
    std::vector<std::uint8_t> k(kElems);
    bool any = false;
    for (auto& x : k) {
      x = static_cast<std::uint8_t>(bit(rng));
      any |= (x != 0);
    }
    if (!any) k[0] = 1;
    return k;
  }
};

// --- criterion 1: metric axioms for hysim --------------------------------

bool metric_axioms(std::string& detail) {
  const double t0 = now_seconds();
  PatchSampler gen(101);
  std::vector<MeasureConfig> configs;  // full alpha x beta x P cross
  for (double alpha : {0.5, 1.0, 2.0})
    for (double beta : {0.5, 1.0, 2.0})
      for (double p : {2.0, 3.0, 4.0})
        configs.push_back({MeasureFamily::hysim, alpha, beta, p});

  long checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto known = gen.known();
    const auto a = gen.patch(), b = gen.patch(), c = gen.patch();
    for (const MeasureConfig& cfg : configs) {
      const double dab = evaluate({a, b, known}, cfg);
      const double dba = evaluate({b, a, known}, cfg);
      const double dbc = evaluate({b, c, known}, cfg);
      const double dac = evaluate({a, c, known}, cfg);
      const double daa = evaluate({a, a, known}, cfg);
      if (dab != dba) {
        detail = "symmetry violated";
        return false;
      }
      if (daa != 0.0) {
        detail = "identity violated";
        return false;
      }
      if (dac > dab + dbc + 1e-9 * std::max(1.0, std::abs(dab + dbc))) {
        std::ostringstream msg;
        msg << "triangle violated: " << dac << " > " << dab + dbc;
        detail = msg.str();
        return false;
      }
      ++checked;
    }
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 10.0) {
    detail = "exceeded 10 s budget";
    return false;
  }
  std::ostringstream msg;
  msg << checked << " triples x configs in " << elapsed << " s";
  detail = msg.str();
  return true;
}

// --- criterion 2: similarity duality --------------------------------------

bool similarity_duality(std::string& detail) {
  PatchSampler gen(202);
  const std::vector<MeasureConfig> families{
      {MeasureFamily::ssd, 1, 1, 2},
      {MeasureFamily::minkowski, 1, 1, 2},
      {MeasureFamily::chebyshev, 1, 1, 2},
      {MeasureFamily::hysim, 1, 1, 2},
  };
  MaskedPair extremes;
  extremes.a.assign(PatchSampler::kElems, 0.0);
  extremes.b.assign(PatchSampler::kElems, 255.0);
  extremes.known.assign(PatchSampler::kElems, 1);
  for (const MeasureConfig& cfg : families) {
    const double s_max = evaluate(extremes, cfg);
    for (int trial = 0; trial < 1000; ++trial) {
      MaskedPair pair;
      pair.a = gen.patch();
      pair.b = gen.patch();
      pair.known.assign(PatchSampler::kElems, 1);
      if (pair.a == pair.b) continue;  // need distinct patches
      const double d = evaluate(pair, cfg);
      MaskedPair swapped{pair.b, pair.a, pair.known};
      MaskedPair self{pair.a, pair.a, pair.known};
      const double s_ab = similarity_from_distance(d, s_max);
      const double s_ba =
          similarity_from_distance(evaluate(swapped, cfg), s_max);
      const double s_aa = similarity_from_distance(evaluate(self, cfg), s_max);
      if (s_ab != s_ba) {
        detail = "similarity symmetry violated for " + to_string(cfg.family);
        return false;
      }
      if (!(s_ab < s_aa)) {
        detail = "self-resemblance not maximal for " + to_string(cfg.family);
        return false;
      }
    }
  }
  detail = "4 families x 1000 pairs";
  return true;
}

// --- criterion 3: Chebyshev limit of large P ------------------------------

bool chebyshev_limit(std::string& detail) {
  PatchSampler gen(303);
  const MeasureConfig cfg{MeasureFamily::hysim, 1, 1, 64};
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    MaskedPair pair;
    pair.a = gen.patch();
    pair.b = gen.patch();
    pair.known.assign(PatchSampler::kElems, 1);
    const double cheb = chebyshev(pair);
    if (cheb == 0.0) continue;
    const double hybrid = evaluate(pair, cfg);
    const double rel = std::abs(hybrid - 2.0 * cheb) / (2.0 * cheb);
    worst = std::max(worst, rel);
    if (rel > 0.10) {
      std::ostringstream msg;
      msg << "relative gap " << rel << " > 0.10";
      detail = msg.str();
      return false;
    }
  }
  std::ostringstream msg;
  msg << "500 pairs, worst relative gap " << worst;
  detail = msg.str();
  return true;
}

// --- criterion 4: search equals the brute-force oracle --------------------

Pixel oracle_search(const FillState& state, const PatchRef& target,
                    const MeasureConfig& cfg) {
  const int side = target.side, half = side / 2;
  const int H = state.image.height(), W = state.image.width();
  const int C = state.image.channels();
  double best = std::numeric_limits<double>::infinity();
  Pixel best_center{-1, -1};
  for (int r = half; r + half < H; ++r)
    for (int c = half; c + half < W; ++c) {
      bool clean = true;
      for (int dr = -half; dr <= half && clean; ++dr)
        for (int dc = -half; dc <= half; ++dc)
          if (state.mask.at(r + dr, c + dc) != 0) {
            clean = false;
            break;
          }
      if (!clean) continue;
      double sum_sq = 0, sum_abs = 0, sum_pow = 0, max_abs = 0;
      for (int dr = -half; dr <= half; ++dr)
        for (int dc = -half; dc <= half; ++dc) {
          const int tr = target.center.row + dr, tc = target.center.col + dc;
          if (tr < 0 || tr >= H || tc < 0 || tc >= W) continue;
          if (state.mask.at(tr, tc) != 0) continue;
          for (int ch = 0; ch < C; ++ch) {
            const double d = std::abs(state.image.at(tr, tc, ch) -
                                      state.image.at(r + dr, c + dc, ch));
            sum_sq += d * d;
            sum_abs += d;
            sum_pow += std::pow(d, cfg.p_exponent);
            max_abs = std::max(max_abs, d);
          }
        }
      double dist = 0;
      switch (cfg.family) {
        case MeasureFamily::ssd: dist = sum_sq; break;
        case MeasureFamily::chebyshev: dist = max_abs; break;
        case MeasureFamily::minkowski:
          dist = cfg.p_exponent == 1.0   ? sum_abs
                 : cfg.p_exponent == 2.0 ? std::sqrt(sum_sq)
                                         : std::pow(sum_pow, 1.0 / cfg.p_exponent);
          break;
        case MeasureFamily::hysim:
          dist = cfg.alpha * max_abs +
                 cfg.beta * (cfg.p_exponent == 2.0
                                 ? std::sqrt(sum_sq)
                                 : std::pow(sum_pow, 1.0 / cfg.p_exponent));
          break;
      }
      if (dist < best) {
        best = dist;
        best_center = Pixel{r, c};
      }
    }
  return best_center;
}

bool search_oracle_equivalence(std::string& detail) {
  const double t0 = now_seconds();
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> value(0.0, 255.0);
  std::uniform_int_distribution<int> hole(5, 9);
  const std::vector<MeasureConfig> families{
      {MeasureFamily::ssd, 1, 1, 2},
      {MeasureFamily::minkowski, 1, 1, 2},
      {MeasureFamily::chebyshev, 1, 1, 2},
      {MeasureFamily::hysim, 1, 1, 2},
  };
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Image img(32, 32, 3);
    for (double& v : img.data()) v = value(rng);
    Mask m(32, 32, 0);
    const int hr = hole(rng), wc = hole(rng);
    std::uniform_int_distribution<int> pr(0, 32 - hr), pc(0, 32 - wc);
    const int r0 = pr(rng), c0 = pc(rng);
    for (int r = r0; r < r0 + hr; ++r)
      for (int c = c0; c < c0 + wc; ++c) m.at(r, c) = 1;
    FillState state = FillState::init(img, m);
    const int side = 5 + 2 * (trial % 3);  // 5, 7, 9
    const PatchRef target = select_target(state, side, 1e-3);
    for (const MeasureConfig& mc : families) {
      EngineConfig cfg;
      cfg.patch_side = side;
      cfg.measure = mc;
      const SearchResult found = search_best(state, target, cfg);
      const Pixel expected = oracle_search(state, target, mc);
      if (!(found.source.center == expected)) {
        std::ostringstream msg;
        msg << "mismatch on trial " << trial << " family "
            << to_string(mc.family) << ": got (" << found.source.center.row
            << "," << found.source.center.col << ") expected ("
            << expected.row << "," << expected.col << ")";
        detail = msg.str();
        return false;
      }
      ++compared;
    }
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 60.0) {
    detail = "exceeded 60 s budget";
    return false;
  }
  std::ostringstream msg;
  msg << compared << " searches matched in " << elapsed << " s";
  detail = msg.str();
  return true;
}

// --- criterion 5: termination and source immutability ---------------------

bool termination_immutability(std::string& detail) {
  for (const std::string& name : fixture_names()) {
    const Fixture f = generate_fixture(name, 64);
    const int omega = target_count(f.mask);
    EngineConfig cfg;  // hysim(1,1,2), 9x9
    const FillResult res = inpaint(f.image, f.mask, cfg);
    if (res.report.iterations > omega) {
      detail = name + ": more iterations than target pixels";
      return false;
    }
    int filled = 0;
    for (const IterationRecord& rec : res.report.records) {
      if (rec.filled < 1) {
        detail = name + ": iteration without progress";
        return false;
      }
      filled += rec.filled;
    }
    if (filled != omega) {
      detail = name + ": target region not fully filled";
      return false;
    }
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c) {
        if (f.mask.at(r, c) != 0) continue;
        for (int ch = 0; ch < 3; ++ch)
          if (res.image.at(r, c, ch) != f.image.at(r, c, ch)) {
            detail = name + ": source pixel rewritten";
            return false;
          }
      }
  }
  detail = "4 fixtures at 64x64";
  return true;
}

// --- criterion 6: mismatch avoidance vs the ssd baseline -------------------

bool mismatch_avoidance(std::string& detail) {
  const double t0 = now_seconds();
  std::ostringstream msg;
  for (const std::string& name : fixture_names()) {
    const Fixture f = generate_fixture(name, 64);
    EngineConfig hysim_cfg;
    hysim_cfg.measure = {MeasureFamily::hysim, 1, 1, 2};
    EngineConfig ssd_cfg;
    ssd_cfg.measure = {MeasureFamily::ssd, 1, 1, 2};
    const double hysim_bleed =
        region_bleed(inpaint(f.image, f.mask, hysim_cfg).image, f.regions,
                     f.mask);
    const double ssd_bleed = region_bleed(
        inpaint(f.image, f.mask, ssd_cfg).image, f.regions, f.mask);
    msg << name << " hysim=" << hysim_bleed << " ssd=" << ssd_bleed << "; ";
    if ((name == "two_region_straddle" || name == "two_tone_dot") &&
        hysim_bleed > 0.02) {
      std::ostringstream err;
      err << name << ": hysim bleed " << hysim_bleed << " > 2%";
      detail = err.str();
      return false;
    }
    if (hysim_bleed > ssd_bleed) {
      std::ostringstream err;
      err << name << ": hysim bleed " << hysim_bleed << " above ssd baseline "
          << ssd_bleed;
      detail = err.str();
      return false;
    }
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 120.0) {
    detail = "exceeded 120 s budget";
    return false;
  }
  msg << "in " << elapsed << " s";
  detail = msg.str();
  return true;
}

// --- criterion 7: diffusion baseline sanity --------------------------------

bool diffusion_sanity(std::string& detail) {
  Image constant(48, 48, 3, 142.0);
  Mask hole(48, 48, 0);
  for (int r = 18; r < 30; ++r)
    for (int c = 16; c < 32; ++c) hole.at(r, c) = 1;
  const DiffusionResult res = pm_inpaint(constant, hole, DiffusionConfig{});
  for (double v : res.image.data())
    if (std::abs(v - 142.0) > 1e-6) {
      detail = "constant fill deviates by more than 1e-6";
      return false;
    }

  for (const std::string& name : fixture_names()) {
    const Fixture f = generate_fixture(name, 64);
    double lo[3] = {256, 256, 256}, hi[3] = {-1, -1, -1};
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c) {
        if (f.mask.at(r, c) != 0) continue;
        for (int ch = 0; ch < 3; ++ch) {
          lo[ch] = std::min(lo[ch], f.image.at(r, c, ch));
          hi[ch] = std::max(hi[ch], f.image.at(r, c, ch));
        }
      }
    const DiffusionResult filled = pm_inpaint(f.image, f.mask, DiffusionConfig{});
    for (int r = 0; r < 64; ++r)
      for (int c = 0; c < 64; ++c)
        for (int ch = 0; ch < 3; ++ch) {
          const double v = filled.image.at(r, c, ch);
          if (f.mask.at(r, c) == 0) {
            if (v != f.image.at(r, c, ch)) {
              detail = name + ": known pixel modified";
              return false;
            }
          } else if (v < lo[ch] - 1e-9 || v > hi[ch] + 1e-9) {
            detail = name + ": max principle violated";
            return false;
          }
        }
  }
  detail = "constant reproduction + max principle on 4 fixtures";
  return true;
}

// --- criterion 8: determinism across reruns and thread counts --------------

bool determinism(std::string& detail) {
  for (const std::string& name : {std::string("two_tone_dot"),
                                  std::string("triangle_apex")}) {
    RunOptions opt;
    opt.fixture = name;
    opt.fixture_size = 64;
    opt.engine.threads = 1;
    const RunOutcome first = run_once(opt);
    opt.engine.threads = 2;
    const RunOutcome second = run_once(opt);
    opt.engine.threads = 0;  // auto
    const RunOutcome third = run_once(opt);
    if (!(first.output == second.output && first.output == third.output)) {
      detail = name + ": output differs across thread counts";
      return false;
    }
    if (first.report.psnr_db != second.report.psnr_db ||
        first.report.region_bleed_fraction !=
            second.report.region_bleed_fraction ||
        first.report.iterations != second.report.iterations) {
      detail = name + ": metrics differ across reruns";
      return false;
    }
  }
  BenchOptions bench;
  bench.fixtures = {"curve_gap"};
  bench.size = 48;
  const auto rows_a = run_bench(bench);
  bench.threads = 2;
  const auto rows_b = run_bench(bench);
  for (std::size_t i = 0; i < rows_a.size(); ++i)
    if (rows_a[i].bleed != rows_b[i].bleed ||
        rows_a[i].psnr_db != rows_b[i].psnr_db ||
        rows_a[i].iterations != rows_b[i].iterations) {
      detail = "bench metrics differ across thread counts";
      return false;
    }
  detail = "2 fixtures x 3 thread counts + bench rerun";
  return true;
}

// --- criterion 9: performance envelope -------------------------------------

bool performance_envelope(std::string& detail) {
  const Fixture f = generate_fixture(FixtureName::two_tone_dot, 128);
  EngineConfig cfg;  // defaults: hysim(1,1,2), 9x9, exhaustive search
  const double t0 = now_seconds();
  const FillResult res = inpaint(f.image, f.mask, cfg);
  const double elapsed = now_seconds() - t0;
  if (target_count(f.mask) == 0 || res.report.iterations == 0) {
    detail = "engine did not run";
    return false;
  }
  std::ostringstream msg;
  msg << "128x128 default run: " << res.report.iterations << " iterations in "
      << elapsed << " s";
  detail = msg.str();
  if (elapsed >= 60.0) {
    detail += " (over the 60 s budget)";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"metric axioms (hysim symmetry/identity/triangle)", metric_axioms},
      {"similarity duality (s = S - d keeps SSM)", similarity_duality},
      {"large-P limit approaches 2x chebyshev", chebyshev_limit},
      {"search matches brute-force oracle", search_oracle_equivalence},
      {"termination and source immutability", termination_immutability},
      {"mismatch avoidance vs ssd baseline", mismatch_avoidance},
      {"diffusion baseline sanity", diffusion_sanity},
      {"determinism across reruns and threads", determinism},
      {"performance envelope (128x128 < 60 s)", performance_envelope},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%zu/%zu] %s  criterion: %s%s%s\n", i + 1, criteria.size(),
                ok ? "PASS" : "FAIL", criteria[i].name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
