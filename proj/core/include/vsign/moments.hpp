#pragma once

#include <array>

#include "vsign/classify.hpp"
#include "vsign/geometry.hpp"
#include "vsign/image.hpp"

namespace vsign {

/// Central moments of a binary region up to order 3. mu[j][k] is defined for
/// j + k <= 3; the remaining cells are zero.
struct CentralMoments {
  double m00 = 0;
  double cx = 0;
  double cy = 0;
  std::array<std::array<double, 4>, 4> mu{};

  double operator()(int j, int k) const noexcept {
    return mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }
};

/// eta[j][k] = mu_jk / m00^(1 + (j+k)/2), filled for 2 <= j + k <= 3.
struct NormalizedMoments {
  std::array<std::array<double, 4>, 4> eta{};

  double operator()(int j, int k) const noexcept {
    return eta[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }
};

struct HuDescriptor {
  std::array<double, 7> h{};
  double e = 0;  // eccentricity

  std::array<double, 8> as_array() const noexcept {
    return {h[0], h[1], h[2], h[3], h[4], h[5], h[6], e};
  }
};

/// Pixel membership moments. Throws EmptyRegion.
CentralMoments central_moments(const BinaryImage& region);

NormalizedMoments normalized_moments(const CentralMoments& cm);

/// The seven Hu (1962) rotation invariants.
std::array<double, 7> hu_moments(const NormalizedMoments& nm) noexcept;

/// sqrt(1 - l2/l1) of the second-moment eigenvalues. Throws DegenerateShape
/// when the region has no extent in some direction (l2 <= 0), which covers
/// single pixels and one-pixel lines.
double eccentricity(const CentralMoments& cm);

HuDescriptor hu_descriptor(const BinaryImage& region);

/// [H1..H7, E] of the upper finger followed by the same for the lower finger.
FeatureVector finger_signature(const FingerMasks& fingers);

}  // namespace vsign
