// Independent reference implementations used only by tests. They favour the
// most literal formulation over speed and share no code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vsign/image.hpp"

namespace vsign::oracle {

// |(b - a) x (c - a)| / 2 with 64-bit integers.
inline double shoelace_area(PixelCoord a, PixelCoord b, PixelCoord c) {
  const std::int64_t cross = std::int64_t{b.x - a.x} * (c.y - a.y) - std::int64_t{b.y - a.y} * (c.x - a.x);
  return static_cast<double>(cross < 0 ? -cross : cross) / 2.0;
}

// Textbook Otsu: probabilities, class weights and class means per threshold,
// recomputed from scratch for every t. Returns the smallest maximiser.
inline int otsu_sweep(std::span<const std::uint64_t> bins) {
  long double total = 0;
  for (auto b : bins) total += static_cast<long double>(b);
  long double best = -1;
  int best_t = 0;
  for (int t = 0; t < 256; ++t) {
    long double w0 = 0, w1 = 0, s0 = 0, s1 = 0;
    for (int i = 0; i < 256; ++i) {
      const long double p = static_cast<long double>(bins[static_cast<std::size_t>(i)]) / total;
      if (i <= t) {
        w0 += p;
        s0 += i * p;
      } else {
        w1 += p;
        s1 += i * p;
      }
    }
    long double sigma = 0;
    if (w0 > 0 && w1 > 0) {
      const long double d = s0 / w0 - s1 / w1;
      sigma = w0 * w1 * d * d;
    }
    if (sigma > best * (1 + 1e-15L)) {
      best = sigma;
      best_t = t;
    }
  }
  return best_t;
}

// Pixel is set when any pixel within Chebyshev distance 1 is set.
inline BinaryImage dilate_by_definition(const BinaryImage& m) {
  BinaryImage out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (m.contains(x + dx, y + dy) && m(x + dx, y + dy)) out(x, y) = 1;
  return out;
}

inline BinaryImage contour_by_definition(const BinaryImage& m) {
  BinaryImage out = dilate_by_definition(m);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (m.pixels()[i]) out.pixels()[i] = 0;
  return out;
}

// 4-connected labelling by repeated min-label propagation until nothing
// changes. Labels are arbitrary positive ints; 0 is background.
inline std::vector<int> propagate_labels(const BinaryImage& m) {
  std::vector<int> lab(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) lab[i] = m.pixels()[i] ? static_cast<int>(i) + 1 : 0;
  const int w = m.width(), h = m.height();
  for (bool changed = true; changed;) {
    changed = false;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y * w + x);
        if (!lab[i]) continue;
        const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (auto& n : nb) {
          if (n[0] < 0 || n[1] < 0 || n[0] >= w || n[1] >= h) continue;
          const int l = lab[static_cast<std::size_t>(n[1] * w + n[0])];
          if (l && l < lab[i]) {
            lab[i] = l;
            changed = true;
          }
        }
      }
    }
  }
  return lab;
}

// Largest 4-connected component; ties go to the component met first in scan order.
inline BinaryImage largest_by_propagation(const BinaryImage& m) {
  const auto lab = propagate_labels(m);
  std::vector<std::size_t> count(lab.size() + 1, 0);
  for (int l : lab)
    if (l) ++count[static_cast<std::size_t>(l)];
  int best = 0;
  for (int l : lab)
    if (l && (best == 0 || count[static_cast<std::size_t>(l)] > count[static_cast<std::size_t>(best)])) best = l;
  BinaryImage out(m.width(), m.height());
  for (std::size_t i = 0; i < lab.size(); ++i) out.pixels()[i] = best && lab[i] == best;
  return out;
}

struct ScanPoints {
  PixelCoord tip1, tip2, bfp, upp, bpp;
};

// The landmark recipe, step by step, on a segmented hand img2:
//  3. img3 = dilation(img2) - img2
//  4. scan img3 top to bottom, left to right: first white pixel is Tip1
//  5. scan img3 bottom to top, left to right: first white pixel is Tip2
//  6. on each row between Tip1 and Tip2, scan left to right up to the hand;
//     the white img3 pixel reached with the maximum x is BFP (first such row wins)
//  7. scan column MaxX top to bottom: first white pixel is UPP
//  8. scan column MaxX bottom to top: first white pixel is BPP
inline std::optional<ScanPoints> scan_keypoints(const BinaryImage& img2) {
  const BinaryImage img3 = contour_by_definition(img2);
  const int w = img3.width(), h = img3.height();
  ScanPoints p{};
  bool found = false;
  for (int y = 0; y < h && !found; ++y)
    for (int x = 0; x < w && !found; ++x)
      if (img3(x, y)) p.tip1 = {x, y}, found = true;
  if (!found) return std::nullopt;
  found = false;
  for (int y = h - 1; y >= 0 && !found; --y)
    for (int x = 0; x < w && !found; ++x)
      if (img3(x, y)) p.tip2 = {x, y}, found = true;

  int max_x = -1;
  for (int y = p.tip1.y + 1; y < p.tip2.y; ++y) {
    for (int x = 0; x < w && !img2(x, y); ++x) {
      if (img3(x, y) && x > max_x) {
        max_x = x;
        p.bfp = {x, y};
      }
    }
  }
  if (max_x < 0) return std::nullopt;
  for (int y = 0; y < h; ++y)
    if (img3(max_x, y)) {
      p.upp = {max_x, y};
      break;
    }
  for (int y = h - 1; y >= 0; --y)
    if (img3(max_x, y)) {
      p.bpp = {max_x, y};
      break;
    }
  return p;
}

// Moments by direct summation over pixel coordinates in long double.
struct PixelMoments {
  long double n = 0, cx = 0, cy = 0;
  long double mu[4][4] = {};
};

inline PixelMoments pixel_moments(const BinaryImage& m) {
  PixelMoments r;
  long double sx = 0, sy = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m(x, y)) {
        r.n += 1;
        sx += x;
        sy += y;
      }
  r.cx = sx / r.n;
  r.cy = sy / r.n;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m(x, y))
        for (int j = 0; j < 4; ++j)
          for (int k = 0; j + k < 4; ++k)
            r.mu[j][k] += std::pow(x - r.cx, static_cast<long double>(j)) * std::pow(y - r.cy, static_cast<long double>(k));
  return r;
}

// Hu (1962) invariants written out term by term.
inline std::array<double, 7> hu_expanded(const PixelMoments& pm) {
  auto eta = [&](int j, int k) { return pm.mu[j][k] / std::pow(pm.n, 1 + (j + k) / 2.0L); };
  const long double n20 = eta(2, 0), n02 = eta(0, 2), n11 = eta(1, 1);
  const long double n30 = eta(3, 0), n03 = eta(0, 3), n21 = eta(2, 1), n12 = eta(1, 2);
  std::array<long double, 7> h{};
  h[0] = n20 + n02;
  h[1] = (n20 - n02) * (n20 - n02) + 4 * n11 * n11;
  h[2] = (n30 - 3 * n12) * (n30 - 3 * n12) + (3 * n21 - n03) * (3 * n21 - n03);
  h[3] = (n30 + n12) * (n30 + n12) + (n21 + n03) * (n21 + n03);
  h[4] = (n30 - 3 * n12) * (n30 + n12) * ((n30 + n12) * (n30 + n12) - 3 * (n21 + n03) * (n21 + n03)) +
         (3 * n21 - n03) * (n21 + n03) * (3 * (n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03));
  h[5] = (n20 - n02) * ((n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03)) +
         4 * n11 * (n30 + n12) * (n21 + n03);
  h[6] = (3 * n21 - n03) * (n30 + n12) * ((n30 + n12) * (n30 + n12) - 3 * (n21 + n03) * (n21 + n03)) -
         (n30 - 3 * n12) * (n21 + n03) * (3 * (n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03));
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) out[i] = static_cast<double>(h[i]);
  return out;
}

// Eigenvalues of the covariance [[mu20, mu11], [mu11, mu02]] via the
// characteristic polynomial.
inline double eccentricity_closed_form(const PixelMoments& pm) {
  const long double a = pm.mu[2][0], b = pm.mu[1][1], c = pm.mu[0][2];
  const long double tr = a + c, det = a * c - b * b;
  const long double disc = std::sqrt(tr * tr / 4 - det);
  const long double l1 = tr / 2 + disc, l2 = tr / 2 - disc;
  return static_cast<double>(std::sqrt(1 - l2 / l1));
}

// Per-dimension Hassanat term from the published piecewise definition.
inline double hassanat_piecewise(double a, double b) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  if (lo >= 0) return 1.0 - (1.0 + lo) / (1.0 + hi);
  return 1.0 - (1.0 + lo + std::abs(lo)) / (1.0 + hi + std::abs(lo));
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
  return static_cast<double>(std::sqrt(s));
}

inline double manhattan(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(static_cast<long double>(a[i]) - b[i]);
  return static_cast<double>(s);
}

inline double hassanat(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += hassanat_piecewise(a[i], b[i]);
  return static_cast<double>(s);
}

}  // namespace vsign::oracle
