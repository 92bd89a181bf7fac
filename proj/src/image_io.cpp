#include "liftseg/image_io.hpp"

#include "liftseg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftseg {

namespace {

struct PnmHeader {
  int magic = 0;  // 2, 3, 5, 6
  int width = 0;
  int height = 0;
  int maxval = 0;
};

/// next token after whitespace and '#' comments
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int next_int(std::istream& in, const std::string& what) {
  const std::string tok = next_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError("malformed PNM header: bad " + what);
  }
}

PnmHeader read_header(std::istream& in, const std::filesystem::path& path) {
  const std::string magic = next_token(in);
  PnmHeader h;
  if (magic == "P2")
    h.magic = 2;
  else if (magic == "P3")
    h.magic = 3;
  else if (magic == "P5")
    h.magic = 5;
  else if (magic == "P6")
    h.magic = 6;
  else
    throw IoError(path.string() + ": not a supported PNM file (P2/P3/P5/P6)");
  h.width = next_int(in, "width");
  h.height = next_int(in, "height");
  h.maxval = next_int(in, "maxval");
  if (h.width < 1 || h.height < 1)
    throw IoError(path.string() + ": invalid PNM dimensions");
  if (h.maxval < 1 || h.maxval > 65535)
    throw IoError(path.string() + ": unsupported PNM maxval");
  return h;
}

/// raw samples in file order (binary variants consumed the single whitespace
/// after maxval already via next_int's terminating character)
std::vector<int> read_samples(std::istream& in, const PnmHeader& h,
                              const std::filesystem::path& path) {
  const std::size_t per_pixel = (h.magic == 3 || h.magic == 6) ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(h.width) *
                            static_cast<std::size_t>(h.height) * per_pixel;
  std::vector<int> out(count);
  if (h.magic == 2 || h.magic == 3) {
    for (std::size_t i = 0; i < count; ++i) out[i] = next_int(in, "sample");
  } else {
    const bool wide = h.maxval > 255;
    std::vector<unsigned char> raw(count * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
      throw IoError(path.string() + ": truncated PNM pixel data");
    for (std::size_t i = 0; i < count; ++i)
      out[i] = wide ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
  }
  for (int v : out)
    if (v < 0 || v > h.maxval)
      throw IoError(path.string() + ": PNM sample out of range");
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

FeatureStack load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const PnmHeader h = read_header(in, path);
  const std::vector<int> samples = read_samples(in, h, path);
  const int channels = (h.magic == 3 || h.magic == 6) ? 3 : 1;
  const double scale = 1.0 / static_cast<double>(h.maxval);
  std::vector<Image> out;
  out.reserve(static_cast<std::size_t>(channels));
  for (int c = 0; c < channels; ++c) {
    Image img(h.width, h.height);
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = samples[i * channels + c] * scale;
    out.push_back(std::move(img));
  }
  return FeatureStack(std::move(out));
}

LabelMap load_label_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const PnmHeader h = read_header(in, path);
  if (h.magic == 3 || h.magic == 6)
    throw IoError(path.string() + ": label maps must be grayscale PGM");
  const std::vector<int> samples = read_samples(in, h, path);
  LabelMap out(h.width, h.height, 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = samples[i];
  return out;
}

void save_grayscale_pgm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double v = std::clamp(img[i], 0.0, 1.0);
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

void save_label_pgm(const LabelMap& labels, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "P5\n" << labels.width() << ' ' << labels.height() << "\n255\n";
  std::vector<unsigned char> raw(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int v = labels[i];
    if (v < 0 || v > 255)
      throw IoError("label " + std::to_string(v) + " does not fit 8-bit PGM");
    raw[i] = static_cast<unsigned char>(v);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

const std::array<std::array<std::uint8_t, 3>, 16>& label_palette() {
  static const std::array<std::array<std::uint8_t, 3>, 16> palette = {{
      {0, 0, 0},        // 0 background
      {230, 25, 75},    // red
      {60, 180, 75},    // green
      {0, 130, 200},    // blue
      {255, 225, 25},   // yellow
      {245, 130, 48},   // orange
      {145, 30, 180},   // purple
      {70, 240, 240},   // cyan
      {240, 50, 230},   // magenta
      {210, 245, 60},   // lime
      {250, 190, 212},  // pink
      {0, 128, 128},    // teal
      {220, 190, 255},  // lavender
      {170, 110, 40},   // brown
      {255, 250, 200},  // beige
      {128, 0, 0},      // maroon
  }};
  return palette;
}

void save_label_ppm(const LabelMap& labels, const std::filesystem::path& path) {
  const auto& palette = label_palette();
  std::ofstream out = open_out(path);
  out << "P6\n" << labels.width() << ' ' << labels.height() << "\n255\n";
  std::vector<unsigned char> raw(labels.size() * 3);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int v = labels[i];
    std::size_t slot;
    if (v <= 0)
      slot = 0;
    else
      slot = static_cast<std::size_t>((v - 1) % 15) + 1;  // cycle, skip black
    raw[3 * i] = palette[slot][0];
    raw[3 * i + 1] = palette[slot][1];
    raw[3 * i + 2] = palette[slot][2];
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace liftseg
