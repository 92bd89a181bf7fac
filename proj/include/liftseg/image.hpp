#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace liftseg {

/// Scalar field on a regular pixel grid, row-major, indexed (x, y) with
/// 0 <= x < width and 0 <= y < height. `spacing` is the pixel pitch h shared
/// by both axes; differential operators divide by it.
class Image {
public:
  Image() = default;
  Image(int width, int height, double fill = 0.0, double spacing = 1.0);
  Image(int width, int height, std::vector<double> values, double spacing = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return values_.size(); }

  double operator()(int x, int y) const { return values_[index(x, y)]; }
  double& operator()(int x, int y) { return values_[index(x, y)]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  double spacing_ = 1.0;
  std::vector<double> values_;
};

/// Per-pixel 2-vectors (g1, g2): forward differences along the x and y axes.
/// g1 vanishes on the last column, g2 on the last row.
struct GradientField {
  Image g1;
  Image g2;
};

/// K images of identical shape. Used for feature channels and for the per-class
/// relaxed masks alike.
class ChannelStack {
public:
  ChannelStack() = default;
  explicit ChannelStack(std::vector<Image> channels);
  ChannelStack(int num_channels, int width, int height, double fill = 0.0,
               double spacing = 1.0);

  int num_channels() const { return static_cast<int>(channels_.size()); }
  int width() const { return channels_.empty() ? 0 : channels_[0].width(); }
  int height() const { return channels_.empty() ? 0 : channels_[0].height(); }
  double spacing() const { return channels_.empty() ? 1.0 : channels_[0].spacing(); }

  const Image& channel(int k) const { return channels_[static_cast<std::size_t>(k)]; }
  Image& channel(int k) { return channels_[static_cast<std::size_t>(k)]; }

  void push_back(Image img);  // shape must match existing channels

  const std::vector<Image>& channels() const { return channels_; }

private:
  std::vector<Image> channels_;
};

using FeatureStack = ChannelStack;
using MaskStack = ChannelStack;

double inner(const Image& a, const Image& b);
double norm_l1(const Image& a);
double norm_l2(const Image& a);
double l1_distance(const Image& a, const Image& b);
bool all_finite(const Image& a);
bool all_finite(const ChannelStack& s);

}  // namespace liftseg
