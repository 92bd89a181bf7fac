#include "liftseg/pipeline.hpp"

#include "liftseg/errors.hpp"
#include "liftseg/evaluation.hpp"
#include "liftseg/image_io.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftseg {

namespace {

namespace fs = std::filesystem;

FeatureStack load_inputs(const std::vector<fs::path>& paths) {
  if (paths.size() == 1) return load_image(paths.front());
  std::vector<Image> channels;
  for (const fs::path& p : paths) {
    FeatureStack s = load_image(p);
    if (s.num_channels() != 1)
      throw ConfigError("input channel file " + p.string() +
                        " must be grayscale when listing one file per channel");
    if (!channels.empty() && !s.channel(0).same_shape(channels.front()))
      throw ConfigError("input channel files disagree in size (" + p.string() + ")");
    channels.push_back(std::move(s.channel(0)));
  }
  return FeatureStack(std::move(channels));
}

MaskStack reference_masks(const LabelMap& truth, int num_classes) {
  MaskStack out(num_classes, truth.width(), truth.height(), 0.0);
  for (int k = 0; k < num_classes; ++k) {
    Image& ch = out.channel(k);
    for (std::size_t i = 0; i < truth.size(); ++i)
      ch[i] = truth[i] == k + 1 ? 1.0 : 0.0;
  }
  return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

/// stage every artifact in a scratch dir, then move the files into place;
/// nothing lands in the output dir unless the whole run succeeded
class StagedOutput {
public:
  explicit StagedOutput(fs::path target) : target_(std::move(target)) {
    scratch_ = target_;
    scratch_ += ".tmp-" + std::to_string(static_cast<long>(::getpid()));
    std::error_code ec;
    fs::remove_all(scratch_, ec);
    if (!fs::create_directories(scratch_))
      throw IoError("cannot create staging directory " + scratch_.string());
  }

  ~StagedOutput() {
    std::error_code ec;
    fs::remove_all(scratch_, ec);  // no-op after a successful commit
  }

  fs::path path(const std::string& name) {
    files_.push_back(name);
    return scratch_ / name;
  }

  void commit() {
    std::error_code ec;
    fs::create_directories(target_, ec);
    if (ec && !fs::is_directory(target_))
      throw IoError("cannot create output directory " + target_.string());
    for (const std::string& name : files_) {
      fs::rename(scratch_ / name, target_ / name, ec);
      if (ec)
        throw IoError("cannot move " + name + " into " + target_.string() + ": " +
                      ec.message());
    }
  }

private:
  fs::path target_;
  fs::path scratch_;
  std::vector<std::string> files_;
};

int run_checked(const RunConfig& cfg, const PipelineOptions& opts) {
  const std::vector<std::string> diags = validate_config(cfg);
  if (!diags.empty()) {
    for (const std::string& d : diags) std::cerr << "config error: " << d << "\n";
    return kConfigError;
  }

  const FeatureStack raw = load_inputs(cfg.inputs);
  const FeatureStack features = apply_recipe(raw, cfg.recipe, opts.jobs);
  if (!opts.quiet)
    std::cout << "lifted " << raw.num_channels() << " input channel(s) into "
              << features.num_channels() << " feature channel(s)\n";

  std::optional<LabelMap> truth;
  std::optional<MaskStack> reference;
  if (cfg.ground_truth) {
    truth = load_label_map(*cfg.ground_truth);
    if (truth->width() != features.width() || truth->height() != features.height())
      throw ConfigError("ground-truth size does not match the input image");
    reference = reference_masks(*truth, features.num_channels());
  }

  SolveResult result = solve(features, cfg.solver, std::nullopt, reference);
  if (!all_finite(result.u)) throw NumericalError("solver produced non-finite masks");
  if (!opts.quiet && !result.history.empty())
    std::cout << "energy " << result.history.front().energy << " -> "
              << result.history.back().energy << " over " << cfg.solver.max_iters
              << " iterations (sigma = tau = " << result.sigma << ")\n";

  const LabelMap labels = assign_labels(result.u, cfg.solver.mode);

  std::optional<MetricsReport> report;
  if (truth) {
    std::vector<int> alphabet;
    const int lo = cfg.solver.mode == SimplexMode::Inequality ? 0 : 1;
    for (int c = lo; c <= features.num_channels(); ++c) alphabet.push_back(c);
    report = compute_metrics(labels, *truth, alphabet,
                             cfg.include_background_in_mean);
    if (!opts.quiet) std::cout << format_metrics_table(*report);
  }

  const fs::path target = opts.output_dir_override.value_or(cfg.output_dir);
  StagedOutput staged(target);
  if (cfg.outputs.masks) {
    char name[32];
    for (int k = 0; k < result.u.num_channels(); ++k) {
      std::snprintf(name, sizeof(name), "mask_%02d.pgm", k + 1);
      save_grayscale_pgm(result.u.channel(k), staged.path(name));
    }
  }
  if (cfg.outputs.labels) {
    save_label_pgm(labels, staged.path("labels.pgm"));
    save_label_ppm(labels, staged.path("labels.ppm"));
  }
  if (cfg.outputs.curves) {
    std::ostringstream os;
    write_history_csv(os, result.history);
    write_text_file(staged.path("history.csv"), os.str());
  }
  if (cfg.outputs.metrics && report) {
    std::ostringstream os;
    write_metrics_csv(os, *report);
    write_text_file(staged.path("metrics.csv"), os.str());
  }
  staged.commit();
  if (!opts.quiet) std::cout << "artifacts written to " << target.string() << "\n";
  return kOk;
}

}  // namespace

ExitCode run_pipeline(const RunConfig& cfg, const PipelineOptions& opts) {
  try {
    return static_cast<ExitCode>(run_checked(cfg, opts));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace liftseg
