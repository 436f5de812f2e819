#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vsign/error.hpp"

namespace vsign {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Origin top-left, y grows downward.
struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Row-major raster. The tag keeps gray levels and {0,1} masks from mixing.
template <typename Pixel, typename Tag>
class Raster {
 public:
  using pixel_type = Pixel;

  Raster() = default;
  Raster(int width, int height, Pixel fill = Pixel{})
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::ZeroDimension, "raster dimensions must be at least 1x1");
    }
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool contains(PixelCoord p) const noexcept { return contains(p.x, p.y); }

  Pixel& operator()(int x, int y) noexcept { return pixels_[index(x, y)]; }
  const Pixel& operator()(int x, int y) const noexcept { return pixels_[index(x, y)]; }
  Pixel& operator[](PixelCoord p) noexcept { return pixels_[index(p.x, p.y)]; }
  const Pixel& operator[](PixelCoord p) const noexcept { return pixels_[index(p.x, p.y)]; }

  std::span<Pixel> pixels() noexcept { return pixels_; }
  std::span<const Pixel> pixels() const noexcept { return pixels_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

struct RgbTag;
struct GrayTag;
struct MaskTag;

using RgbImage = Raster<Rgb, RgbTag>;
using GrayImage = Raster<std::uint8_t, GrayTag>;
/// Foreground (hand or finger) pixels are 1, background 0.
using BinaryImage = Raster<std::uint8_t, MaskTag>;

struct Histogram {
  std::array<std::uint64_t, 256> bins{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// 4-connected component labelling. Labels are 1-based in scan order of each
/// component's first pixel; 0 marks background.
struct ComponentLabels {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  std::vector<std::size_t> sizes;  // sizes[i] is the pixel count of label i + 1

  int at(int x, int y) const noexcept {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
  std::size_t count() const noexcept { return sizes.size(); }
};

/// BT.601 luma with half-up rounding: round(0.299 r + 0.587 g + 0.114 b).
std::uint8_t luma(Rgb c) noexcept;

GrayImage to_grayscale(const RgbImage& img);

/// Area-weighted box filter to round(factor*w) x round(factor*h).
/// Throws ZeroDimension when a side would vanish, InvalidArgument when
/// factor is outside (0, 1].
RgbImage downscale(const RgbImage& img, double factor);

/// One pass of 3x3 (8-connected) dilation, clipped at the border.
BinaryImage dilate(const BinaryImage& img);

/// dilate(img) minus img: the one-pixel outer boundary.
BinaryImage contour(const BinaryImage& img);

ComponentLabels label_components(const BinaryImage& img);

/// Keeps the largest 4-connected component; ties go to the component met
/// first in scan order. Throws EmptyMask if there is no foreground.
BinaryImage largest_component(const BinaryImage& img);

Histogram histogram(const GrayImage& img);

std::size_t count_foreground(const BinaryImage& img) noexcept;

}  // namespace vsign
