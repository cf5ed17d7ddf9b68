#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "patchfill/diffusion.hpp"
#include "patchfill/exemplar.hpp"
#include "patchfill/io.hpp"
#include "patchfill/quality.hpp"
#include "patchfill/report.hpp"

namespace patchfill {

/// Everything a single run needs, independent of flag parsing.
struct RunOptions {
  std::string image_path;
  std::string mask_path;
  std::string out_path;
  std::string report_path;
  std::string fixture;  // nonempty: generate inputs instead of loading
  int fixture_size = 64;
  std::string method = "exemplar";  // "exemplar" | "pm"
  EngineConfig engine{};
  DiffusionConfig diffusion{};
  unsigned seed = 0;  // reserved; both engines are deterministic
};

struct RunOutcome {
  Image output;
  RunReport report;
};

namespace detail {

inline std::string directory_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  if (pos == std::string::npos) return "";
  return path.substr(0, pos + 1);
}

inline std::string snapshot_path(const std::string& out_path, int iteration) {
  char name[32];
  std::snprintf(name, sizeof(name), "out_%04d", iteration);
  std::string ext = ".png";
  const auto dot = out_path.find_last_of('.');
  if (dot != std::string::npos && out_path.find('/', dot) == std::string::npos)
    ext = out_path.substr(dot);
  return directory_of(out_path) + name + ext;
}

}  // namespace detail

/// Load or generate inputs, run the selected engine, write artifacts, and
/// assemble the report. Throws on invalid inputs.
inline RunOutcome run_once(const RunOptions& opt) {
  RunOutcome outcome;
  RunReport& report = outcome.report;
  report.method = opt.method;
  report.image_path = opt.image_path;
  report.mask_path = opt.mask_path;
  report.fixture = opt.fixture;
  report.fixture_size = opt.fixture.empty() ? 0 : opt.fixture_size;
  report.out_path = opt.out_path;
  report.measure = opt.engine.measure;
  report.patch_side = opt.engine.patch_side;
  report.data_term_floor = opt.engine.data_term_floor;
  report.max_iterations = opt.engine.max_iterations;
  report.snapshot_every = opt.engine.snapshot_every;
  report.threads = opt.engine.threads;
  report.seed = opt.seed;
  report.diffusion = opt.diffusion;

  Image input;
  Mask mask;
  std::optional<Fixture> fixture;
  if (!opt.fixture.empty()) {
    fixture = generate_fixture(opt.fixture, opt.fixture_size);
    input = fixture->image;
    mask = fixture->mask;
  } else {
    input = load_image(opt.image_path);
    const Image mask_image = load_image(opt.mask_path);
    if (mask_image.height() != input.height() ||
        mask_image.width() != input.width()) {
      std::ostringstream msg;
      msg << "mask dimensions " << mask_image.height() << "x"
          << mask_image.width() << " do not match image dimensions "
          << input.height() << "x" << input.width();
      throw std::invalid_argument(msg.str());
    }
    mask = binarize_mask(mask_image);
  }

  const auto t0 = std::chrono::steady_clock::now();
  if (opt.method == "exemplar") {
    EngineConfig cfg = opt.engine;
    if (cfg.snapshot_every > 0 && !opt.out_path.empty()) {
      cfg.snapshot_sink = [&](int iteration, const Image& img) {
        const std::string path = detail::snapshot_path(opt.out_path, iteration);
        save_image(path, img);
        report.outputs.push_back(path);
      };
    }
    FillResult filled = inpaint(input, mask, cfg);
    outcome.output = std::move(filled.image);
    report.iterations = filled.report.iterations;
    report.records = std::move(filled.report.records);
  } else if (opt.method == "pm") {
    DiffusionResult diffused = pm_inpaint(input, mask, opt.diffusion);
    outcome.output = std::move(diffused.image);
    report.iterations = diffused.steps;
  } else {
    throw std::invalid_argument("unknown method: " + opt.method);
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (fixture) {
    report.psnr_db = psnr(outcome.output, fixture->image);
    report.region_bleed_fraction =
        region_bleed(outcome.output, fixture->regions, fixture->mask);
  }

  if (!opt.out_path.empty()) {
    save_image(opt.out_path, outcome.output);
    report.outputs.push_back(opt.out_path);
  }
  if (!opt.report_path.empty()) {
    std::ofstream out(opt.report_path);
    if (!out) throw std::runtime_error("cannot write " + opt.report_path);
    out << report.to_json().dump(2) << "\n";
  }
  return outcome;
}

/// One cell of the benchmark grid.
struct BenchRow {
  std::string fixture;
  MeasureConfig measure{};
  double bleed = 0.0;
  double psnr_db = 0.0;
  int iterations = 0;
  double wall_time_seconds = 0.0;
  std::string error;  // nonempty when the cell failed
};

struct BenchOptions {
  std::vector<std::string> fixtures;  // empty: all four
  int size = 64;
  int patch_side = 9;
  int threads = 0;
  std::string out_dir;      // when set, writes <fixture>_<measure>.png
  std::string report_path;  // when set, writes structured rows
};

/// The sweep the comparison runs on: the three baselines plus the hybrid
/// measure at P in {1, 2, 3, 4} with unit weights.
inline std::vector<MeasureConfig> bench_measures() {
  std::vector<MeasureConfig> grid;
  grid.push_back({MeasureFamily::ssd, 1.0, 1.0, 2.0});
  grid.push_back({MeasureFamily::chebyshev, 1.0, 1.0, 2.0});
  grid.push_back({MeasureFamily::minkowski, 1.0, 1.0, 2.0});
  for (double p : {1.0, 2.0, 3.0, 4.0})
    grid.push_back({MeasureFamily::hysim, 1.0, 1.0, p});
  return grid;
}

inline std::string bench_measure_label(const MeasureConfig& m) {
  switch (m.family) {
    case MeasureFamily::ssd: return "ssd";
    case MeasureFamily::chebyshev: return "chebyshev";
    case MeasureFamily::minkowski:
      return "minkowski(P=" + std::to_string(static_cast<int>(m.p_exponent)) + ")";
    case MeasureFamily::hysim:
      return "hysim(1,1,P=" + std::to_string(static_cast<int>(m.p_exponent)) + ")";
  }
  return "?";
}

inline std::string bench_measure_slug(const MeasureConfig& m) {
  if (m.family == MeasureFamily::minkowski || m.family == MeasureFamily::hysim)
    return to_string(m.family) + "_p" +
           std::to_string(static_cast<int>(m.p_exponent));
  return to_string(m.family);
}

/// Runs every requested fixture against the measure sweep. Per-cell failures
/// land in the row's error field; the sweep itself never throws for those.
inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  std::vector<std::string> fixtures =
      opt.fixtures.empty() ? fixture_names() : opt.fixtures;
  std::vector<BenchRow> rows;
  for (const std::string& fixture : fixtures) {
    for (const MeasureConfig& measure : bench_measures()) {
      BenchRow row;
      row.fixture = fixture;
      row.measure = measure;
      try {
        RunOptions run;
        run.fixture = fixture;
        run.fixture_size = opt.size;
        run.engine.measure = measure;
        run.engine.patch_side = opt.patch_side;
        run.engine.threads = opt.threads;
        if (!opt.out_dir.empty())
          run.out_path = opt.out_dir + "/" + fixture + "_" +
                         bench_measure_slug(measure) + ".png";
        const RunOutcome outcome = run_once(run);
        row.bleed = outcome.report.region_bleed_fraction.value_or(0.0);
        row.psnr_db = outcome.report.psnr_db.value_or(0.0);
        row.iterations = outcome.report.iterations;
        row.wall_time_seconds = outcome.report.wall_time_seconds;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  if (!opt.report_path.empty()) {
    nlohmann::json doc = nlohmann::json::array();
    for (const BenchRow& row : rows)
      doc.push_back({{"fixture", row.fixture},
                     {"measure", bench_measure_label(row.measure)},
                     {"family", to_string(row.measure.family)},
                     {"alpha", row.measure.alpha},
                     {"beta", row.measure.beta},
                     {"p", row.measure.p_exponent},
                     {"region_bleed", row.bleed},
                     {"psnr_db", row.psnr_db},
                     {"iterations", row.iterations},
                     {"wall_time_seconds", row.wall_time_seconds},
                     {"error", row.error}});
    std::ofstream out(opt.report_path);
    if (!out) throw std::runtime_error("cannot write " + opt.report_path);
    out << doc.dump(2) << "\n";
  }
  return rows;
}

inline std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %-18s %10s %9s %6s %9s\n", "fixture",
                "measure", "bleed", "psnr_db", "iters", "time_s");
  out << line;
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) {
      std::snprintf(line, sizeof(line), "%-22s %-18s error: %s\n",
                    row.fixture.c_str(), bench_measure_label(row.measure).c_str(),
                    row.error.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-22s %-18s %10.4f %9.2f %6d %9.3f\n",
                    row.fixture.c_str(), bench_measure_label(row.measure).c_str(),
                    row.bleed, row.psnr_db, row.iterations,
                    row.wall_time_seconds);
    }
    out << line;
  }
  return out.str();
}

}  // namespace patchfill
