#pragma once

#include "liftseg/lifting.hpp"
#include "liftseg/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace liftseg {

struct OutputToggles {
  bool masks = true;    // per-class soft masks as PGM
  bool labels = true;   // argmax label map as PGM indices + palette PPM
  bool curves = true;   // iteration history CSV
  bool metrics = true;  // metrics CSV (needs ground truth)
};

struct RunConfig {
  int version = 1;
  std::vector<std::filesystem::path> inputs;  // one image, or one file per channel
  LiftingRecipe recipe;
  int num_classes = 0;  // K; must match the recipe length
  SolverConfig solver;
  std::optional<std::filesystem::path> ground_truth;  // label-map PGM
  std::filesystem::path output_dir = "out";
  OutputToggles outputs;
  bool include_background_in_mean = false;
};

/// Decodes the JSON document. Structural problems (wrong types, unknown
/// recipe kinds, combination terms referencing not-yet-evaluated channels)
/// throw ConfigError naming the offending field.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Reads and parses a config file. Unreadable or invalid JSON throws ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

/// Semantic diagnostics: class-count mismatches, out-of-range solver settings,
/// missing referenced files, bad filter parameters. Empty when runnable.
std::vector<std::string> validate_config(const RunConfig& cfg);

}  // namespace liftseg
