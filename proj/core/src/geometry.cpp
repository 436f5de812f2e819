#include "vsign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "vsign/error.hpp"

namespace vsign {

namespace {

std::string describe(PixelCoord p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

// First and last hand row per column; -1 for empty columns.
struct ColumnExtent {
  std::vector<int> first, last;

  explicit ColumnExtent(const BinaryImage& hand)
      : first(static_cast<std::size_t>(hand.width()), -1), last(static_cast<std::size_t>(hand.width()), -1) {
    for (int y = 0; y < hand.height(); ++y) {
      for (int x = 0; x < hand.width(); ++x) {
        if (!hand(x, y)) continue;
        auto col = static_cast<std::size_t>(x);
        if (first[col] < 0) first[col] = y;
        last[col] = y;
      }
    }
  }

  // Hand pixels exist both above and below row y in column x.
  bool encloses(int x, int y) const {
    const auto col = static_cast<std::size_t>(x);
    return first[col] >= 0 && first[col] < y && last[col] > y;
  }
};

void draw_line(RgbImage& img, PixelCoord a, PixelCoord b, Rgb color) {
  int x = a.x, y = a.y;
  const int dx = std::abs(b.x - a.x), sx = a.x < b.x ? 1 : -1;
  const int dy = -std::abs(b.y - a.y), sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  while (true) {
    if (img.contains(x, y)) img(x, y) = color;
    if (x == b.x && y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

void draw_marker(RgbImage& img, PixelCoord p, Rgb color) {
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx)
      if (img.contains(p.x + dx, p.y + dy)) img(p.x + dx, p.y + dy) = color;
}

}  // namespace

FeatureVector GeometricFeatures::to_vector() const {
  const auto a = as_array();
  return FeatureVector(FeatureMethod::M1, {a.begin(), a.end()});
}

KeyPoints find_keypoints(const BinaryImage& hand) {
  if (hand.empty() || count_foreground(hand) == 0) {
    throw Error(ErrorCode::EmptyMask, "no hand pixels to search for keypoints");
  }
  const BinaryImage edge = contour(hand);
  const int w = edge.width(), h = edge.height();

  auto first_in_rows = [&](int y_begin, int y_end, int step) -> std::optional<PixelCoord> {
    for (int y = y_begin; y != y_end; y += step)
      for (int x = 0; x < w; ++x)
        if (edge(x, y)) return PixelCoord{x, y};
    return std::nullopt;
  };
  const auto top = first_in_rows(0, h, 1);
  const auto bottom = first_in_rows(h - 1, -1, -1);
  if (!top || !bottom) {
    throw Error(ErrorCode::DegenerateTips, "hand fills the image; it has no contour");
  }
  KeyPoints kp;
  kp.tip1 = *top;
  kp.tip2 = *bottom;
  if (kp.tip1.y >= kp.tip2.y) {
    throw Error(ErrorCode::DegenerateTips,
                "tip1 " + describe(kp.tip1) + " is not above tip2 " + describe(kp.tip2));
  }

  const ColumnExtent extent(hand);
  std::optional<PixelCoord> valley;
  for (int y = kp.tip1.y + 1; y < kp.tip2.y; ++y) {
    // Walk in from the left border until the first hand pixel.
    for (int x = 0; x < w && !hand(x, y); ++x) {
      if (!edge(x, y) || !extent.encloses(x, y)) continue;
      if (!valley || x > valley->x) valley = PixelCoord{x, y};
    }
  }
  if (!valley) throw Error(ErrorCode::NoValley, "no gap between the fingers is visible");
  kp.bfp = *valley;

  const int col = kp.bfp.x;
  for (int y = 0; y < h; ++y) {
    if (edge(col, y)) {
      kp.upp = {col, y};
      break;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    if (edge(col, y)) {
      kp.bpp = {col, y};
      break;
    }
  }
  return kp;
}

double triangle_area(PixelCoord a, PixelCoord b, PixelCoord c) noexcept {
  const long long twice = static_cast<long long>(a.x) * (b.y - c.y) +
                          static_cast<long long>(b.x) * (c.y - a.y) +
                          static_cast<long long>(c.x) * (a.y - b.y);
  return static_cast<double>(std::llabs(twice)) / 2.0;
}

double euclidean(PixelCoord a, PixelCoord b) noexcept {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

GeometricFeatures geometric_features(const KeyPoints& kp) {
  GeometricFeatures f;
  f.d1 = euclidean(kp.tip1, kp.upp);
  f.d2 = euclidean(kp.tip1, kp.bfp);
  f.d3 = euclidean(kp.tip2, kp.bpp);
  f.d4 = euclidean(kp.tip2, kp.bfp);
  f.d5 = euclidean(kp.upp, kp.bfp);
  f.area_index = triangle_area(kp.tip1, kp.bfp, kp.upp);
  f.area_middle = triangle_area(kp.tip2, kp.bfp, kp.bpp);
  return f;
}

FingerMasks cut_fingers(const BinaryImage& hand, const KeyPoints& kp) {
  BinaryImage fingers = hand;
  for (int y = 0; y < fingers.height(); ++y)
    for (int x = std::max(0, kp.bfp.x); x < fingers.width(); ++x) fingers(x, y) = 0;

  const ComponentLabels comps = label_components(fingers);

  // Largest piece within the tip's 3x3 neighbourhood; 0 if none.
  auto piece_at = [&](PixelCoord tip) {
    int best = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = tip.x + dx, y = tip.y + dy;
        if (!fingers.contains(x, y)) continue;
        const int label = comps.at(x, y);
        if (label == 0) continue;
        if (best == 0 || comps.sizes[static_cast<std::size_t>(label - 1)] >
                             comps.sizes[static_cast<std::size_t>(best - 1)] ||
            (comps.sizes[static_cast<std::size_t>(label - 1)] ==
                 comps.sizes[static_cast<std::size_t>(best - 1)] &&
             label < best)) {
          best = label;
        }
      }
    }
    return best;
  };

  const int upper = piece_at(kp.tip1);
  const int lower = piece_at(kp.tip2);
  if (upper == 0) {
    throw Error(ErrorCode::FingerSeparationError, "no finger region next to tip1 " + describe(kp.tip1));
  }
  if (lower == 0) {
    throw Error(ErrorCode::FingerSeparationError, "no finger region next to tip2 " + describe(kp.tip2));
  }
  if (upper == lower) {
    throw Error(ErrorCode::FingerSeparationError, "both tips belong to the same finger region");
  }

  FingerMasks out{BinaryImage(hand.width(), hand.height()), BinaryImage(hand.width(), hand.height())};
  for (int y = 0; y < hand.height(); ++y) {
    for (int x = 0; x < hand.width(); ++x) {
      const int label = comps.at(x, y);
      if (label == upper) out.upper(x, y) = 1;
      if (label == lower) out.lower(x, y) = 1;
    }
  }
  return out;
}

RgbImage render_keypoints(const BinaryImage& hand, const KeyPoints& kp) {
  RgbImage img(hand.width(), hand.height());
  for (int y = 0; y < hand.height(); ++y)
    for (int x = 0; x < hand.width(); ++x)
      if (hand(x, y)) img(x, y) = {110, 110, 110};

  const Rgb segment{255, 200, 0};
  draw_line(img, kp.tip1, kp.upp, segment);
  draw_line(img, kp.tip1, kp.bfp, segment);
  draw_line(img, kp.tip2, kp.bpp, segment);
  draw_line(img, kp.tip2, kp.bfp, segment);
  draw_line(img, kp.upp, kp.bfp, segment);

  draw_marker(img, kp.tip1, {255, 0, 0});
  draw_marker(img, kp.tip2, {0, 0, 255});
  draw_marker(img, kp.bfp, {0, 255, 0});
  draw_marker(img, kp.upp, {255, 0, 255});
  draw_marker(img, kp.bpp, {0, 255, 255});
  return img;
}

}  // namespace vsign
