#include "liftseg/image.hpp"

#include <cmath>
#include <stdexcept>

namespace liftseg {

namespace {
void check_dims(int width, int height, double spacing) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("image dimensions must be at least 1x1");
  if (!(spacing > 0.0))
    throw std::invalid_argument("pixel spacing must be positive");
}
}  // namespace

Image::Image(int width, int height, double fill, double spacing)
    : width_(width), height_(height), spacing_(spacing),
      values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              fill) {
  check_dims(width, height, spacing);
}

Image::Image(int width, int height, std::vector<double> values, double spacing)
    : width_(width), height_(height), spacing_(spacing), values_(std::move(values)) {
  check_dims(width, height, spacing);
  if (values_.size() !=
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw std::invalid_argument("value buffer does not match image dimensions");
}

ChannelStack::ChannelStack(std::vector<Image> channels)
    : channels_(std::move(channels)) {
  for (std::size_t k = 1; k < channels_.size(); ++k)
    if (!channels_[k].same_shape(channels_[0]))
      throw std::invalid_argument("stack channels must share one shape");
}

ChannelStack::ChannelStack(int num_channels, int width, int height, double fill,
                           double spacing) {
  if (num_channels < 1)
    throw std::invalid_argument("stack needs at least one channel");
  channels_.reserve(static_cast<std::size_t>(num_channels));
  for (int k = 0; k < num_channels; ++k)
    channels_.emplace_back(width, height, fill, spacing);
}

void ChannelStack::push_back(Image img) {
  if (!channels_.empty() && !img.same_shape(channels_[0]))
    throw std::invalid_argument("stack channels must share one shape");
  channels_.push_back(std::move(img));
}

double inner(const Image& a, const Image& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("inner product needs matching shapes");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_l1(const Image& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i]);
  return s;
}

double norm_l2(const Image& a) { return std::sqrt(inner(a, a)); }

double l1_distance(const Image& a, const Image& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("distance needs matching shapes");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

bool all_finite(const Image& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

bool all_finite(const ChannelStack& s) {
  for (int k = 0; k < s.num_channels(); ++k)
    if (!all_finite(s.channel(k))) return false;
  return true;
}

}  // namespace liftseg
