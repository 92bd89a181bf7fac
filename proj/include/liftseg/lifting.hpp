#pragma once

#include "liftseg/image.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace liftseg {

/// Index value meaning "the grayscale reduction of the input" rather than a
/// concrete input channel.
inline constexpr int kGrayInput = -1;

/// One complex Gabor filter: orientation in radians (normalized to [0, pi)),
/// spatial frequency in cycles per pixel within (0, 0.5], bandwidth in octaves.
struct GaborSpec {
  double orientation = 0.0;
  double frequency = 0.1;
  double bandwidth = 1.0;
};

/// Gaussian envelope width implied by frequency and bandwidth:
///   sigma = (1/(pi f)) sqrt(ln 2 / 2) (2^b + 1)/(2^b - 1).
double gabor_sigma(const GaborSpec& spec);

/// Real and imaginary parts of the kernel on a square support of half-width
/// ceil(3 sigma): envelope exp(-(x^2+y^2)/(2 sigma^2))/(2 pi sigma^2) times
/// the carrier exp(i 2 pi f (x cos t + y sin t)). Throws on invalid spec.
std::pair<Image, Image> gabor_kernel(const GaborSpec& spec);

/// Magnitude of the complex filter response. The image is padded by symmetric
/// reflection (edge pixel included). Row-parallel over `jobs` threads with
/// bitwise-identical output at any thread count.
Image gabor_response(const Image& img, const GaborSpec& spec, int jobs = 1);

/// Affine rescale of an image onto [0, 1]; a constant image maps to all zeros.
Image min_max_normalize(const Image& img);

// ---- recipe channels ------------------------------------------------------
// A recipe turns raw input channels into the K feature channels the solver
// consumes. Channels are evaluated in order; Combination entries may reference
// earlier recipe outputs by 0-based index.

/// Sum of Gabor response magnitudes over a filter bank, then min-max
/// normalized. `input` is a raw channel index or kGrayInput.
struct GaborSumChannel {
  int input = kGrayInput;
  std::vector<GaborSpec> filters;
};

/// Binary map: 1 where the raw channel is >= threshold, else 0. Thresholds
/// above 1 are interpreted on the 8-bit scale and divided by 255.
struct ColorThresholdChannel {
  int channel = 0;
  double threshold = 0.5;
};

/// Affine window [lo, hi] -> [0, 1] of a raw channel, clipped outside.
struct WindowChannel {
  int channel = 0;
  double lo = 0.0;
  double hi = 1.0;
};

/// Raw channel clipped to [0, 1].
struct PassthroughChannel {
  int channel = 0;
};

/// bias + sum of coef * (earlier recipe output), clipped to [0, 1].
/// Terms are (coefficient, 0-based index of a previously evaluated channel).
struct CombinationChannel {
  double bias = 0.0;
  std::vector<std::pair<double, int>> terms;
};

using ChannelDef = std::variant<GaborSumChannel, ColorThresholdChannel,
                                WindowChannel, PassthroughChannel,
                                CombinationChannel>;

struct LiftingRecipe {
  std::vector<ChannelDef> channels;
};

/// Evaluates the recipe against the raw input stack (1 channel = grayscale,
/// 3 = color). Output has one feature channel per recipe entry, all in [0, 1].
/// Throws std::invalid_argument on empty recipes or out-of-range references.
FeatureStack apply_recipe(const FeatureStack& input, const LiftingRecipe& recipe,
                          int jobs = 1);

}  // namespace liftseg
