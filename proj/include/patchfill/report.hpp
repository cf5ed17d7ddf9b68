#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "patchfill/diffusion.hpp"
#include "patchfill/exemplar.hpp"
#include "patchfill/measures.hpp"

namespace patchfill {

/// Machine-readable record of one run. The config echo is complete: feeding
/// it back reproduces the run bit for bit (timing aside).
struct RunReport {
  // config echo
  std::string method = "exemplar";  // "exemplar" | "pm"
  std::string image_path;
  std::string mask_path;
  std::string fixture;  // nonempty when inputs were generated
  int fixture_size = 0;
  std::string out_path;
  MeasureConfig measure{};
  int patch_side = 9;
  double data_term_floor = 1e-3;
  int max_iterations = 0;
  int snapshot_every = 0;
  int threads = 0;
  unsigned seed = 0;
  DiffusionConfig diffusion{};

  // results
  int iterations = 0;
  double wall_time_seconds = 0.0;
  std::vector<IterationRecord> records;
  std::optional<double> psnr_db;
  std::optional<double> region_bleed_fraction;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const {
    nlohmann::json cfg{
        {"method", method},
        {"image", image_path},
        {"mask", mask_path},
        {"fixture", fixture},
        {"fixture_size", fixture_size},
        {"out", out_path},
        {"measure",
         {{"family", to_string(measure.family)},
          {"alpha", measure.alpha},
          {"beta", measure.beta},
          {"p", measure.p_exponent}}},
        {"patch_side", patch_side},
        {"data_term_floor", data_term_floor},
        {"max_iterations", max_iterations},
        {"snapshot_every", snapshot_every},
        {"threads", threads},
        {"seed", seed},
        {"diffusion",
         {{"kappa", diffusion.kappa},
          {"step", diffusion.step},
          {"max_steps", diffusion.max_steps},
          {"tol", diffusion.tol},
          {"conductance", to_string(diffusion.conductance)}}}};
    nlohmann::json recs = nlohmann::json::array();
    for (const IterationRecord& rec : records)
      recs.push_back({{"iteration", rec.iteration},
                      {"target", {rec.target.row, rec.target.col}},
                      {"source", {rec.source.row, rec.source.col}},
                      {"distance", rec.distance},
                      {"filled", rec.filled}});
    nlohmann::json metrics = nlohmann::json::object();
    if (psnr_db) metrics["psnr_db"] = *psnr_db;
    if (region_bleed_fraction) metrics["region_bleed"] = *region_bleed_fraction;
    return nlohmann::json{{"config", cfg},
                          {"iterations", iterations},
                          {"wall_time_seconds", wall_time_seconds},
                          {"records", recs},
                          {"metrics", metrics},
                          {"outputs", outputs}};
  }
};

}  // namespace patchfill
