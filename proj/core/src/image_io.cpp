#include "vsign/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>

namespace vsign::io {

namespace {

namespace fs = std::filesystem;

enum class Format { Png, Pgm, Ppm };

Format format_of(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return Format::Png;
  if (ext == ".pgm" || ext == ".pbm") return Format::Pgm;
  if (ext == ".ppm") return Format::Ppm;
  throw Error(ErrorCode::IoError, "unsupported image extension: " + path.string());
}

RgbImage read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::IoError, "cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width < 1 || image.height < 1) {
    png_image_free(&image);
    throw Error(ErrorCode::ParseError, "empty PNG " + path.string());
  }
  RgbImage img(static_cast<int>(image.width), static_cast<int>(image.height));
  // A black background composes away any alpha channel.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&image, &background, img.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::ParseError, "cannot decode PNG " + path.string() + ": " + image.message);
  }
  return img;
}

void write_png(const fs::path& path, int width, int height, png_uint_32 format,
               const void* data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    throw Error(ErrorCode::IoError, "cannot write PNG " + path.string() + ": " + image.message);
  }
}

// Netpbm header: magic, width, height, maxval, with '#' comments.
struct PnmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
};

PnmHeader read_pnm_header(std::istream& in, const fs::path& path) {
  PnmHeader h;
  auto next_token = [&]() {
    std::string tok;
    while (in) {
      int c = in.peek();
      if (c == '#') {
        std::string discard;
        std::getline(in, discard);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    in >> tok;
    return tok;
  };
  h.magic = next_token();
  try {
    h.width = std::stoi(next_token());
    h.height = std::stoi(next_token());
    h.maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "malformed netpbm header in " + path.string());
  }
  in.get();  // the single whitespace byte before raster data
  if (h.width < 1 || h.height < 1 || h.maxval != 255) {
    throw Error(ErrorCode::ParseError, "only 8-bit netpbm rasters are supported: " + path.string());
  }
  return h;
}

template <typename Image>
void read_pnm_raster(std::istream& in, Image& img, std::size_t bytes, const fs::path& path) {
  in.read(reinterpret_cast<char*>(img.pixels().data()), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    throw Error(ErrorCode::ParseError, "truncated netpbm raster in " + path.string());
  }
}

GrayImage read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const PnmHeader h = read_pnm_header(in, path);
  if (h.magic != "P5") throw Error(ErrorCode::ParseError, "expected P5 in " + path.string());
  GrayImage img(h.width, h.height);
  read_pnm_raster(in, img, img.size(), path);
  return img;
}

RgbImage read_ppm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const PnmHeader h = read_pnm_header(in, path);
  if (h.magic != "P6") throw Error(ErrorCode::ParseError, "expected P6 in " + path.string());
  RgbImage img(h.width, h.height);
  read_pnm_raster(in, img, img.size() * 3, path);
  return img;
}

void write_pnm(const fs::path& path, const char* magic, int width, int height,
               const std::uint8_t* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << magic << '\n' << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

RgbImage gray_to_rgb(const GrayImage& gray) {
  RgbImage rgb(gray.width(), gray.height());
  auto src = gray.pixels();
  auto dst = rgb.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = {src[i], src[i], src[i]};
  return rgb;
}

}  // namespace

RgbImage read_rgb(const fs::path& path) {
  switch (format_of(path)) {
    case Format::Png: return read_png(path);
    case Format::Ppm: return read_ppm(path);
    case Format::Pgm: return gray_to_rgb(read_pgm(path));
  }
  throw Error(ErrorCode::IoError, "unreachable");
}

GrayImage read_gray(const fs::path& path) {
  if (format_of(path) == Format::Pgm) return read_pgm(path);
  return to_grayscale(read_rgb(path));
}

BinaryImage read_mask(const fs::path& path) {
  const GrayImage gray = read_gray(path);
  BinaryImage mask(gray.width(), gray.height());
  auto src = gray.pixels();
  auto dst = mask.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] != 0 ? 1 : 0;
  return mask;
}

void write_rgb(const fs::path& path, const RgbImage& img) {
  const auto* data = reinterpret_cast<const std::uint8_t*>(img.pixels().data());
  switch (format_of(path)) {
    case Format::Png:
      write_png(path, img.width(), img.height(), PNG_FORMAT_RGB, data);
      return;
    case Format::Ppm:
      write_pnm(path, "P6", img.width(), img.height(), data, img.size() * 3);
      return;
    case Format::Pgm:
      write_gray(path, to_grayscale(img));
      return;
  }
}

void write_gray(const fs::path& path, const GrayImage& img) {
  const std::uint8_t* data = img.pixels().data();
  switch (format_of(path)) {
    case Format::Png:
      write_png(path, img.width(), img.height(), PNG_FORMAT_GRAY, data);
      return;
    case Format::Pgm:
      write_pnm(path, "P5", img.width(), img.height(), data, img.size());
      return;
    case Format::Ppm:
      write_rgb(path, gray_to_rgb(img));
      return;
  }
}

GrayImage mask_to_gray(const BinaryImage& mask) {
  GrayImage gray(mask.width(), mask.height());
  auto src = mask.pixels();
  auto dst = gray.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 255 : 0;
  return gray;
}

void write_mask(const fs::path& path, const BinaryImage& mask) {
  write_gray(path, mask_to_gray(mask));
}

}  // namespace vsign::io
