#include "vsign/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vsign {

namespace {

// Coverage of source cells [i, i+1) by the output cell [o*step, (o+1)*step).
struct Tap {
  int source;
  double weight;
};

std::vector<std::vector<Tap>> box_taps(int source_len, int target_len) {
  const double step = static_cast<double>(source_len) / target_len;
  std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(target_len));
  for (int o = 0; o < target_len; ++o) {
    const double lo = o * step;
    const double hi = std::min<double>((o + 1) * step, source_len);
    const int first = static_cast<int>(std::floor(lo));
    const int last = std::min(source_len - 1, static_cast<int>(std::ceil(hi)) - 1);
    for (int i = first; i <= last; ++i) {
      const double w = std::min<double>(hi, i + 1) - std::max<double>(lo, i);
      if (w > 0.0) taps[static_cast<std::size_t>(o)].push_back({i, w});
    }
  }
  return taps;
}

std::uint8_t round_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

std::uint8_t luma(Rgb c) noexcept {
  // Integer form of the BT.601 weights keeps the half-up rounding exact.
  const unsigned weighted = 299u * c.r + 587u * c.g + 114u * c.b;
  return static_cast<std::uint8_t>(std::min(255u, (weighted + 500u) / 1000u));
}

GrayImage to_grayscale(const RgbImage& img) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  std::transform(src.begin(), src.end(), dst.begin(), luma);
  return out;
}

RgbImage downscale(const RgbImage& img, double factor) {
  if (!(factor > 0.0 && factor <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "downscale factor must lie in (0, 1]");
  }
  const int out_w = static_cast<int>(std::lround(factor * img.width()));
  const int out_h = static_cast<int>(std::lround(factor * img.height()));
  if (out_w < 1 || out_h < 1) {
    throw Error(ErrorCode::ZeroDimension, "downscaled image would have a zero dimension");
  }
  const auto xtaps = box_taps(img.width(), out_w);
  const auto ytaps = box_taps(img.height(), out_h);

  RgbImage out(out_w, out_h);
  for (int oy = 0; oy < out_h; ++oy) {
    for (int ox = 0; ox < out_w; ++ox) {
      double r = 0, g = 0, b = 0, area = 0;
      for (const Tap& ty : ytaps[static_cast<std::size_t>(oy)]) {
        for (const Tap& tx : xtaps[static_cast<std::size_t>(ox)]) {
          const double w = tx.weight * ty.weight;
          const Rgb& p = img(tx.source, ty.source);
          r += w * p.r;
          g += w * p.g;
          b += w * p.b;
          area += w;
        }
      }
      out(ox, oy) = {round_channel(r / area), round_channel(g / area), round_channel(b / area)};
    }
  }
  return out;
}

BinaryImage dilate(const BinaryImage& img) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!img(x, y)) continue;
      const int y0 = std::max(0, y - 1), y1 = std::min(img.height() - 1, y + 1);
      const int x0 = std::max(0, x - 1), x1 = std::min(img.width() - 1, x + 1);
      for (int ny = y0; ny <= y1; ++ny)
        for (int nx = x0; nx <= x1; ++nx) out(nx, ny) = 1;
    }
  }
  return out;
}

BinaryImage contour(const BinaryImage& img) {
  BinaryImage out = dilate(img);
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i]) dst[i] = 0;
  }
  return out;
}

ComponentLabels label_components(const BinaryImage& img) {
  ComponentLabels result;
  result.width = img.width();
  result.height = img.height();
  result.labels.assign(img.size(), 0);

  std::vector<PixelCoord> stack;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const auto seed = static_cast<std::size_t>(y) * img.width() + x;
      if (!img(x, y) || result.labels[seed] != 0) continue;

      const int label = static_cast<int>(result.sizes.size()) + 1;
      std::size_t size = 0;
      result.labels[seed] = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        ++size;
        constexpr int dx[] = {1, -1, 0, 0};
        constexpr int dy[] = {0, 0, 1, -1};
        for (int n = 0; n < 4; ++n) {
          const int qx = p.x + dx[n], qy = p.y + dy[n];
          if (!img.contains(qx, qy) || !img(qx, qy)) continue;
          auto& slot = result.labels[static_cast<std::size_t>(qy) * img.width() + qx];
          if (slot != 0) continue;
          slot = label;
          stack.push_back({qx, qy});
        }
      }
      result.sizes.push_back(size);
    }
  }
  return result;
}

BinaryImage largest_component(const BinaryImage& img) {
  const ComponentLabels comps = label_components(img);
  if (comps.count() == 0) {
    throw Error(ErrorCode::EmptyMask, "mask has no foreground pixel");
  }
  // max_element returns the first maximum, i.e. the earliest in scan order.
  const auto best = std::max_element(comps.sizes.begin(), comps.sizes.end());
  const int keep = static_cast<int>(best - comps.sizes.begin()) + 1;

  BinaryImage out(img.width(), img.height());
  auto dst = out.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = comps.labels[i] == keep ? 1 : 0;
  return out;
}

Histogram histogram(const GrayImage& img) {
  Histogram h;
  for (std::uint8_t v : img.pixels()) ++h.bins[v];
  return h;
}

std::size_t count_foreground(const BinaryImage& img) noexcept {
  return static_cast<std::size_t>(
      std::count_if(img.pixels().begin(), img.pixels().end(), [](std::uint8_t v) { return v != 0; }));
}

}  // namespace vsign
