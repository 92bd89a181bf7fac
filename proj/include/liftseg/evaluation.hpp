#pragma once

#include "liftseg/image.hpp"
#include "liftseg/projections.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liftseg {

/// Integer class labels on the pixel grid. Label 0 is the background class.
class LabelMap {
public:
  LabelMap() = default;
  LabelMap(int width, int height, int fill = 0);
  LabelMap(int width, int height, std::vector<int> labels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  int operator()(int x, int y) const {
    return labels_[static_cast<std::size_t>(y) * width_ + x];
  }
  int& operator()(int x, int y) {
    return labels_[static_cast<std::size_t>(y) * width_ + x];
  }
  int operator[](std::size_t i) const { return labels_[i]; }
  int& operator[](std::size_t i) { return labels_[i]; }

  bool same_shape(const LabelMap& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<int> labels_;
};

/// Argmax label per pixel. Equality mode assigns labels 1..K over the K mask
/// channels; Inequality mode also competes the implicit background
/// u_0 = 1 - sum_k u_k and assigns 0..K. Ties resolve to the lowest label.
LabelMap assign_labels(const MaskStack& u, SimplexMode mode);

struct Metrics {
  double dice = 0.0;
  double accuracy = 0.0;
  double specificity = 0.0;
  double recall = 0.0;
  double precision = 0.0;
};

struct ClassMetrics {
  int label = 0;
  Metrics values;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;  // sorted by label
  Metrics mean;                         // unweighted over `averaged`
  std::vector<int> averaged;            // labels included in the mean
};

/// One-vs-rest confusion counts per class.
/// Class alphabet: the explicit `classes` list when given, else the sorted
/// union of labels present in either map. Zero-denominator convention: a
/// ratio with empty denominator scores 1 when the class is absent from both
/// maps, 0 otherwise. The mean skips label 0 unless include_background.
MetricsReport compute_metrics(const LabelMap& predicted, const LabelMap& truth,
                              std::optional<std::vector<int>> classes = std::nullopt,
                              bool include_background = false);

/// CSV: class,dice,accuracy,specificity,recall,precision with a final mean row.
void write_metrics_csv(std::ostream& os, const MetricsReport& report);

/// Fixed-width text table of the same numbers for terminal output.
std::string format_metrics_table(const MetricsReport& report);

}  // namespace liftseg
