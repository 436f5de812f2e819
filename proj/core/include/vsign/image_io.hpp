#pragma once

#include <filesystem>

#include "vsign/image.hpp"

namespace vsign::io {

// PNG goes through libpng; PGM/PPM are the binary P5/P6 variants with maxval 255.
// Readers dispatch on the file extension (.png, .pgm, .ppm) and throw
// IoError / ParseError on failure.

RgbImage read_rgb(const std::filesystem::path& path);
GrayImage read_gray(const std::filesystem::path& path);
/// Any nonzero sample becomes foreground.
BinaryImage read_mask(const std::filesystem::path& path);

void write_rgb(const std::filesystem::path& path, const RgbImage& img);
void write_gray(const std::filesystem::path& path, const GrayImage& img);
/// Foreground is written as 255, background as 0.
void write_mask(const std::filesystem::path& path, const BinaryImage& mask);

GrayImage mask_to_gray(const BinaryImage& mask);

}  // namespace vsign::io
