#pragma once

#include <array>

#include "vsign/classify.hpp"
#include "vsign/image.hpp"

namespace vsign {

/// The five hand landmarks: two fingertips, the valley between the fingers
/// (bfp) and the upper/bottom palm points in the valley's column.
struct KeyPoints {
  PixelCoord tip1;
  PixelCoord tip2;
  PixelCoord bfp;
  PixelCoord upp;
  PixelCoord bpp;

  friend bool operator==(const KeyPoints&, const KeyPoints&) = default;
};

struct GeometricFeatures {
  double d1 = 0;  // tip1 -> upp
  double d2 = 0;  // tip1 -> bfp
  double d3 = 0;  // tip2 -> bpp
  double d4 = 0;  // tip2 -> bfp
  double d5 = 0;  // upp -> bfp
  double area_index = 0;   // triangle (tip1, bfp, upp)
  double area_middle = 0;  // triangle (tip2, bfp, bpp)

  std::array<double, 7> as_array() const noexcept {
    return {d1, d2, d3, d4, d5, area_index, area_middle};
  }
  FeatureVector to_vector() const;
};

struct FingerMasks {
  BinaryImage upper;  // component next to tip1
  BinaryImage lower;  // component next to tip2
};

/// Landmark search on a horizontal hand whose fingers point towards -x.
///
/// All five points are pixels of contour(hand). The tips are the first
/// contour pixels of a top-down and a bottom-up raster scan. The valley is
/// the contour pixel strictly between the tip rows that (a) can be reached
/// from the left border through background along its row and (b) has hand
/// pixels both above and below it in its column; the largest x wins, then
/// the smaller y. upp/bpp are the first contour pixels met scanning the
/// valley's column downward/upward.
///
/// Throws EmptyMask, DegenerateTips (tip1.y >= tip2.y) or NoValley.
KeyPoints find_keypoints(const BinaryImage& hand);

/// Shoelace area. Exact for integer coordinates.
double triangle_area(PixelCoord a, PixelCoord b, PixelCoord c) noexcept;

double euclidean(PixelCoord a, PixelCoord b) noexcept;

GeometricFeatures geometric_features(const KeyPoints& kp);

/// Removes the palm (every pixel with x >= bfp.x) and returns the two
/// 4-connected pieces touching each tip. Throws FingerSeparationError when a
/// tip touches no piece or both tips touch the same one.
FingerMasks cut_fingers(const BinaryImage& hand, const KeyPoints& kp);

/// Debug rendering: the hand in gray, the five distance segments and the
/// landmarks in colour.
RgbImage render_keypoints(const BinaryImage& hand, const KeyPoints& kp);

}  // namespace vsign
