#include "vsign/moments.hpp"

#include <cmath>
#include <cstdint>

#include "vsign/error.hpp"

namespace vsign {

CentralMoments central_moments(const BinaryImage& region) {
  std::int64_t n = 0, sx = 0, sy = 0;
  for (int y = 0; y < region.height(); ++y) {
    for (int x = 0; x < region.width(); ++x) {
      if (!region(x, y)) continue;
      ++n;
      sx += x;
      sy += y;
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyRegion, "region has no foreground pixel");

  // Offsets from the centroid are (n*x - sx)/n; accumulating the integer
  // numerators makes the sums exactly translation invariant.
  std::array<std::array<double, 4>, 4> acc{};
  for (int y = 0; y < region.height(); ++y) {
    for (int x = 0; x < region.width(); ++x) {
      if (!region(x, y)) continue;
      const auto a = static_cast<double>(n * x - sx);
      const auto b = static_cast<double>(n * y - sy);
      const double a2 = a * a, b2 = b * b;
      acc[1][0] += a;
      acc[0][1] += b;
      acc[2][0] += a2;
      acc[1][1] += a * b;
      acc[0][2] += b2;
      acc[3][0] += a2 * a;
      acc[2][1] += a2 * b;
      acc[1][2] += a * b2;
      acc[0][3] += b2 * b;
    }
  }

  CentralMoments cm;
  cm.m00 = static_cast<double>(n);
  cm.cx = static_cast<double>(sx) / cm.m00;
  cm.cy = static_cast<double>(sy) / cm.m00;
  cm.mu[0][0] = cm.m00;
  const double nd = cm.m00;
  for (int j = 0; j <= 3; ++j) {
    for (int k = 0; j + k <= 3; ++k) {
      if (j + k == 0) continue;
      const auto sj = static_cast<std::size_t>(j), sk = static_cast<std::size_t>(k);
      cm.mu[sj][sk] = acc[sj][sk] / std::pow(nd, j + k);
    }
  }
  return cm;
}

NormalizedMoments normalized_moments(const CentralMoments& cm) {
  NormalizedMoments nm;
  for (int j = 0; j <= 3; ++j) {
    for (int k = 0; j + k <= 3; ++k) {
      if (j + k < 2) continue;
      const auto sj = static_cast<std::size_t>(j), sk = static_cast<std::size_t>(k);
      nm.eta[sj][sk] = cm.mu[sj][sk] / std::pow(cm.m00, 1.0 + (j + k) / 2.0);
    }
  }
  return nm;
}

std::array<double, 7> hu_moments(const NormalizedMoments& nm) noexcept {
  const double n20 = nm(2, 0), n02 = nm(0, 2), n11 = nm(1, 1);
  const double n30 = nm(3, 0), n21 = nm(2, 1), n12 = nm(1, 2), n03 = nm(0, 3);

  const double a = n30 + n12;  // shared sums
  const double b = n21 + n03;
  const double c = n30 - 3 * n12;
  const double d = 3 * n21 - n03;

  std::array<double, 7> h{};
  h[0] = n20 + n02;
  h[1] = (n20 - n02) * (n20 - n02) + 4 * n11 * n11;
  h[2] = c * c + d * d;
  h[3] = a * a + b * b;
  h[4] = c * a * (a * a - 3 * b * b) + d * b * (3 * a * a - b * b);
  h[5] = (n20 - n02) * (a * a - b * b) + 4 * n11 * a * b;
  h[6] = d * a * (a * a - 3 * b * b) - c * b * (3 * a * a - b * b);
  return h;
}

double eccentricity(const CentralMoments& cm) {
  if (!(cm.m00 > 0)) throw Error(ErrorCode::EmptyRegion, "eccentricity of an empty region");
  const double m20 = cm(2, 0) / cm.m00;
  const double m02 = cm(0, 2) / cm.m00;
  const double m11 = cm(1, 1) / cm.m00;
  const double mean = (m20 + m02) / 2;
  const double half_gap = std::sqrt(4 * m11 * m11 + (m20 - m02) * (m20 - m02)) / 2;
  const double l1 = mean + half_gap;
  const double l2 = mean - half_gap;
  if (!(l1 > 0)) throw Error(ErrorCode::DegenerateShape, "region has no spatial extent");
  if (!(l2 > 0)) throw Error(ErrorCode::DegenerateShape, "region is a one-pixel line");
  return std::sqrt(1 - l2 / l1);
}

HuDescriptor hu_descriptor(const BinaryImage& region) {
  const CentralMoments cm = central_moments(region);
  return HuDescriptor{hu_moments(normalized_moments(cm)), eccentricity(cm)};
}

FeatureVector finger_signature(const FingerMasks& fingers) {
  const auto upper = hu_descriptor(fingers.upper).as_array();
  const auto lower = hu_descriptor(fingers.lower).as_array();
  std::vector<double> values(upper.begin(), upper.end());
  values.insert(values.end(), lower.begin(), lower.end());
  return FeatureVector(FeatureMethod::M2, std::move(values));
}

}  // namespace vsign
