// Batch front door for the patch-based inpainting engines: load an image and
// a mask (or generate a synthetic fixture), fill the masked region with the
// selected method and measure, and write the result plus a machine-readable
// report. The bench subcommand sweeps every fixture against every measure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "patchfill/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

void warn(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

int command_run(CLI::App& app, const patchfill::RunOptions& base,
                const std::string& measure_name,
                const std::string& conductance_name) {
  patchfill::RunOptions opt = base;
  opt.engine.measure.family = patchfill::measure_family_from_string(measure_name);
  opt.diffusion.conductance =
      patchfill::conductance_from_string(conductance_name);

  using patchfill::MeasureFamily;
  const bool pm = opt.method == "pm";
  auto given = [&](const std::string& flag) { return app.count(flag) > 0; };

  // flags that do not apply to the chosen configuration are ignored loudly
  if (pm) {
    for (const std::string flag :
         {"--measure", "--alpha", "--beta", "--p", "--patch-size",
          "--max-iters", "--snapshot-every"})
      if (given(flag)) warn(flag + " is ignored with --method pm");
  } else {
    for (const std::string flag :
         {"--kappa", "--step", "--max-steps", "--tol", "--conductance"})
      if (given(flag)) warn(flag + " only applies to --method pm; ignored");
    const MeasureFamily family = opt.engine.measure.family;
    if (given("--p") && (family == MeasureFamily::ssd ||
                         family == MeasureFamily::chebyshev)) {
      warn("--p has no effect with --measure " + to_string(family) +
           "; ignored");
      opt.engine.measure.p_exponent = 2.0;
    }
    if ((given("--alpha") || given("--beta")) &&
        family != MeasureFamily::hysim) {
      warn("--alpha/--beta only weight the hysim measure; ignored");
      opt.engine.measure.alpha = 1.0;
      opt.engine.measure.beta = 1.0;
    }
  }

  const patchfill::RunOutcome outcome = patchfill::run_once(opt);
  std::cout << "wrote " << opt.out_path << " (" << outcome.report.iterations
            << (pm ? " steps, " : " iterations, ")
            << outcome.report.wall_time_seconds << " s)\n";
  if (outcome.report.psnr_db)
    std::cout << "psnr_db: " << *outcome.report.psnr_db << "\n";
  if (outcome.report.region_bleed_fraction)
    std::cout << "region_bleed: " << *outcome.report.region_bleed_fraction
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patchfill: exemplar-based and diffusion image inpainting"};
  app.require_subcommand(1);

  patchfill::RunOptions run_opt;
  std::string measure_name = "hysim";
  std::string conductance_name = "exponential";

  CLI::App* run = app.add_subcommand("run", "inpaint one image or fixture");
  run->add_option("--image", run_opt.image_path, "input image (PNG or PPM/PGM)");
  run->add_option("--mask", run_opt.mask_path,
                  "mask image; luma >= 128 marks pixels to fill");
  run->add_option("--fixture", run_opt.fixture,
                  "generate a synthetic fixture instead of loading files")
      ->check(CLI::IsMember(patchfill::fixture_names()));
  run->add_option("--size", run_opt.fixture_size, "fixture size")
      ->default_val(64);
  run->add_option("--out", run_opt.out_path, "output image path")->required();
  run->add_option("--report", run_opt.report_path, "write a JSON run report");
  run->add_option("--method", run_opt.method, "exemplar | pm")
      ->default_val("exemplar")
      ->check(CLI::IsMember({"exemplar", "pm"}));
  run->add_option("--measure", measure_name,
                  "ssd | minkowski | chebyshev | hysim")
      ->default_val("hysim")
      ->check(CLI::IsMember({"ssd", "minkowski", "chebyshev", "hysim"}));
  run->add_option("--alpha", run_opt.engine.measure.alpha,
                  "hysim Chebyshev weight")
      ->default_val(1.0);
  run->add_option("--beta", run_opt.engine.measure.beta,
                  "hysim Minkowski weight")
      ->default_val(1.0);
  run->add_option("--p", run_opt.engine.measure.p_exponent,
                  "Minkowski exponent (>= 1)")
      ->default_val(2.0);
  run->add_option("--patch-size", run_opt.engine.patch_side,
                  "odd patch side >= 3")
      ->default_val(9);
  run->add_option("--max-iters", run_opt.engine.max_iterations,
                  "iteration cap (0 = one per target pixel)")
      ->default_val(0);
  run->add_option("--snapshot-every", run_opt.engine.snapshot_every,
                  "write out_NNNN images every N iterations (0 = off)")
      ->default_val(0);
  run->add_option("--threads", run_opt.engine.threads,
                  "search threads (0 = auto); results are thread-invariant")
      ->default_val(0);
  run->add_option("--seed", run_opt.seed,
                  "reserved; the engines are deterministic")
      ->default_val(0);
  run->add_option("--kappa", run_opt.diffusion.kappa, "pm edge threshold")
      ->default_val(30.0);
  run->add_option("--step", run_opt.diffusion.step, "pm step size (0, 0.25]")
      ->default_val(0.2);
  run->add_option("--max-steps", run_opt.diffusion.max_steps, "pm step cap")
      ->default_val(5000);
  run->add_option("--tol", run_opt.diffusion.tol,
                  "pm stop threshold (mean absolute update)")
      ->default_val(1e-4);
  run->add_option("--conductance", conductance_name, "exponential | rational")
      ->default_val("exponential")
      ->check(CLI::IsMember({"exponential", "rational"}));

  patchfill::BenchOptions bench_opt;
  std::string bench_fixtures;
  CLI::App* bench = app.add_subcommand(
      "bench", "sweep fixtures x measures and print a comparison table");
  bench->add_option("--fixtures", bench_fixtures,
                    "comma-separated fixture names (default: all)");
  bench->add_option("--size", bench_opt.size, "fixture size")->default_val(64);
  bench->add_option("--patch-size", bench_opt.patch_side, "odd patch side")
      ->default_val(9);
  bench->add_option("--threads", bench_opt.threads, "search threads (0 = auto)")
      ->default_val(0);
  bench->add_option("--out-dir", bench_opt.out_dir,
                    "write per-cell output images into this directory");
  bench->add_option("--report", bench_opt.report_path,
                    "write structured rows as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (run_opt.fixture.empty() &&
          (run_opt.image_path.empty() || run_opt.mask_path.empty())) {
        std::cerr << "error: provide --image and --mask, or --fixture\n";
        return 1;
      }
      if (!run_opt.fixture.empty() &&
          (!run_opt.image_path.empty() || !run_opt.mask_path.empty())) {
        std::cerr << "error: --fixture excludes --image/--mask\n";
        return 1;
      }
      return command_run(*run, run_opt, measure_name, conductance_name);
    }
    if (bench->parsed()) {
      bench_opt.fixtures = split_csv(bench_fixtures);
      const std::vector<patchfill::BenchRow> rows = patchfill::run_bench(bench_opt);
      std::cout << patchfill::bench_table(rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
