#include "liftseg/lifting.hpp"

#include "liftseg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace liftseg {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const GaborSpec& spec) {
  if (!(spec.frequency > 0.0) || spec.frequency > 0.5)
    throw std::invalid_argument("gabor frequency must lie in (0, 0.5]");
  if (!(spec.bandwidth > 0.0))
    throw std::invalid_argument("gabor bandwidth must be positive");
  if (!std::isfinite(spec.orientation))
    throw std::invalid_argument("gabor orientation must be finite");
}

double normalized_orientation(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  return t;
}

/// index of the reflected sample for out-of-range i on a length-n axis
/// (symmetric padding with the edge pixel included: -1 -> 0, n -> n-1)
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

}  // namespace

double gabor_sigma(const GaborSpec& spec) {
  check_spec(spec);
  const double ratio =
      (std::pow(2.0, spec.bandwidth) + 1.0) / (std::pow(2.0, spec.bandwidth) - 1.0);
  return (1.0 / (kPi * spec.frequency)) * std::sqrt(std::log(2.0) / 2.0) * ratio;
}

std::pair<Image, Image> gabor_kernel(const GaborSpec& spec) {
  const double sigma = gabor_sigma(spec);
  const double theta = normalized_orientation(spec.orientation);
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  const int side = 2 * half + 1;
  Image re(side, side);
  Image im(side, side);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
  const double scale = 1.0 / (2.0 * kPi * sigma * sigma);
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      const double along = dx * ct + dy * st;
      const double env =
          scale * std::exp(-(dx * dx + dy * dy) * inv_two_sigma_sq);
      const double phase = 2.0 * kPi * spec.frequency * along;
      re(dx + half, dy + half) = env * std::cos(phase);
      im(dx + half, dy + half) = env * std::sin(phase);
    }
  }
  return {std::move(re), std::move(im)};
}

Image gabor_response(const Image& img, const GaborSpec& spec, int jobs) {
  auto [kre, kim] = gabor_kernel(spec);
  const int half = (kre.width() - 1) / 2;
  const int w = img.width(), h = img.height();
  Image out(w, h, 0.0, img.spacing());
  parallel_for_rows(0, h, jobs, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double acc_re = 0.0, acc_im = 0.0;
      for (int dy = -half; dy <= half; ++dy) {
        const int sy = reflect(y + dy, h);
        for (int dx = -half; dx <= half; ++dx) {
          const int sx = reflect(x + dx, w);
          const double val = img(sx, sy);
          acc_re += val * kre(dx + half, dy + half);
          acc_im += val * kim(dx + half, dy + half);
        }
      }
      out(x, y) = std::sqrt(acc_re * acc_re + acc_im * acc_im);
    }
  });
  return out;
}

Image min_max_normalize(const Image& img) {
  double lo = img[0], hi = img[0];
  for (std::size_t i = 1; i < img.size(); ++i) {
    lo = std::min(lo, img[i]);
    hi = std::max(hi, img[i]);
  }
  Image out(img.width(), img.height(), 0.0, img.spacing());
  const double range = hi - lo;
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = (img[i] - lo) / range;
  return out;
}

namespace {

const Image& resolve_input(const FeatureStack& input, int index, Image& gray_cache,
                           bool& gray_ready) {
  if (index == kGrayInput) {
    if (input.num_channels() == 1) return input.channel(0);
    if (!gray_ready) {
      gray_cache = Image(input.width(), input.height(), 0.0, input.spacing());
      const double inv = 1.0 / input.num_channels();
      for (int k = 0; k < input.num_channels(); ++k)
        for (std::size_t i = 0; i < gray_cache.size(); ++i)
          gray_cache[i] += input.channel(k)[i] * inv;
      gray_ready = true;
    }
    return gray_cache;
  }
  if (index < 0 || index >= input.num_channels())
    throw std::invalid_argument("recipe references input channel " +
                                std::to_string(index) + " but the input has " +
                                std::to_string(input.num_channels()));
  return input.channel(index);
}

struct ChannelEvaluator {
  const FeatureStack& input;
  const std::vector<Image>& done;  // previously evaluated recipe outputs
  int jobs;
  Image& gray_cache;
  bool& gray_ready;

  Image operator()(const GaborSumChannel& c) const {
    if (c.filters.empty())
      throw std::invalid_argument("gabor channel needs at least one filter");
    const Image& src = resolve_input(input, c.input, gray_cache, gray_ready);
    Image sum(src.width(), src.height(), 0.0, src.spacing());
    for (const GaborSpec& spec : c.filters) {
      Image r = gabor_response(src, spec, jobs);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
    }
    return min_max_normalize(sum);
  }

  Image operator()(const ColorThresholdChannel& c) const {
    const Image& src = resolve_input(input, c.channel, gray_cache, gray_ready);
    const double thr = c.threshold > 1.0 ? c.threshold / 255.0 : c.threshold;
    Image out(src.width(), src.height(), 0.0, src.spacing());
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = src[i] >= thr ? 1.0 : 0.0;
    return out;
  }

  Image operator()(const WindowChannel& c) const {
    if (!(c.hi > c.lo))
      throw std::invalid_argument("window needs hi > lo");
    const Image& src = resolve_input(input, c.channel, gray_cache, gray_ready);
    Image out(src.width(), src.height(), 0.0, src.spacing());
    const double inv = 1.0 / (c.hi - c.lo);
    for (std::size_t i = 0; i < src.size(); ++i)
      out[i] = std::clamp((src[i] - c.lo) * inv, 0.0, 1.0);
    return out;
  }

  Image operator()(const PassthroughChannel& c) const {
    const Image& src = resolve_input(input, c.channel, gray_cache, gray_ready);
    Image out = src;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], 0.0, 1.0);
    return out;
  }

  Image operator()(const CombinationChannel& c) const {
    Image out(input.width(), input.height(), c.bias, input.spacing());
    for (const auto& [coef, ref] : c.terms) {
      if (ref < 0 || ref >= static_cast<int>(done.size()))
        throw std::invalid_argument(
            "combination references recipe channel " + std::to_string(ref) +
            " which is not evaluated yet");
      const Image& src = done[static_cast<std::size_t>(ref)];
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * src[i];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], 0.0, 1.0);
    return out;
  }
};

}  // namespace

FeatureStack apply_recipe(const FeatureStack& input, const LiftingRecipe& recipe,
                          int jobs) {
  if (recipe.channels.empty())
    throw std::invalid_argument("recipe has no channels");
  if (input.num_channels() < 1)
    throw std::invalid_argument("input stack is empty");
  Image gray_cache;
  bool gray_ready = false;
  std::vector<Image> done;
  done.reserve(recipe.channels.size());
  for (const ChannelDef& def : recipe.channels) {
    ChannelEvaluator eval{input, done, jobs, gray_cache, gray_ready};
    done.push_back(std::visit(eval, def));
  }
  return FeatureStack(std::move(done));
}

}  // namespace liftseg
