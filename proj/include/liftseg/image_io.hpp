#pragma once

#include "liftseg/evaluation.hpp"
#include "liftseg/image.hpp"

#include <array>
#include <cstdint>
#include <filesystem>

namespace liftseg {

/// Reads a PNM image. PGM (P2/P5) yields one channel, PPM (P3/P6) three;
/// sample values are scaled by the header maxval into [0, 1]. 16-bit samples
/// are big-endian per the format. Throws IoError on malformed files.
FeatureStack load_image(const std::filesystem::path& path);

/// Reads a PGM whose raw (unscaled) sample values are class labels.
LabelMap load_label_map(const std::filesystem::path& path);

/// Writes an 8-bit binary PGM; values are clamped to [0, 1] and quantized.
void save_grayscale_pgm(const Image& img, const std::filesystem::path& path);

/// Writes the raw label indices as an 8-bit binary PGM (labels must fit 0..255).
void save_label_pgm(const LabelMap& labels, const std::filesystem::path& path);

/// Writes a binary PPM using the fixed palette below; labels past the palette
/// cycle through the non-background entries.
void save_label_ppm(const LabelMap& labels, const std::filesystem::path& path);

/// 16 distinguishable colors; entry 0 (background) is black.
const std::array<std::array<std::uint8_t, 3>, 16>& label_palette();

}  // namespace liftseg
