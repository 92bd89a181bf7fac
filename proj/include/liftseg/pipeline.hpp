#pragma once

#include "liftseg/config.hpp"

#include <filesystem>
#include <optional>

namespace liftseg {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kNumericalError = 4,
};

struct PipelineOptions {
  int jobs = 1;
  bool quiet = false;  // suppresses progress lines, never error diagnostics
  std::optional<std::filesystem::path> output_dir_override;
};

/// Full run: load inputs, lift features, solve, assign labels, score against
/// the ground truth when present, and write the enabled artifacts. Outputs are
/// staged in a temporary directory next to the target and renamed in only
/// after everything succeeded, so failed runs leave no partial artifacts.
/// Returns an ExitCode and prints a one-line diagnostic to stderr on failure.
ExitCode run_pipeline(const RunConfig& cfg, const PipelineOptions& opts = {});

}  // namespace liftseg
