#include "vsign/segmentation.hpp"

#include <array>
#include <limits>
#include <unordered_map>

#include "vsign/error.hpp"

namespace vsign {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::array<double, 3> as_vector(Rgb c) {
  return {static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
}

// Unrounded luma, scaled by 1000, so brightness ties are exact.
unsigned luma_key(Rgb c) { return 299u * c.r + 587u * c.g + 114u * c.b; }

double luma_of(const std::array<double, 3>& c) {
  return 0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2];
}

// 128-bit sums keep the class statistics exact for any image size.
__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

}  // namespace

double between_class_variance(const Histogram& h, int t) {
  // Integer class counts and sums; the only rounding is the final division.
  std::uint64_t w0 = 0, w1 = 0;
  UInt128 s0 = 0, s1 = 0;
  for (int v = 0; v < 256; ++v) {
    const std::uint64_t n = h.bins[static_cast<std::size_t>(v)];
    if (v <= t) {
      w0 += n;
      s0 += static_cast<UInt128>(n) * static_cast<unsigned>(v);
    } else {
      w1 += n;
      s1 += static_cast<UInt128>(n) * static_cast<unsigned>(v);
    }
  }
  if (w0 == 0 || w1 == 0) return 0.0;
  // w0*w1*(s0/w0 - s1/w1)^2 == (s0*w1 - s1*w0)^2 / (w0*w1), normalised by N^2.
  const auto cross = static_cast<Int128>(s0 * w1) - static_cast<Int128>(s1 * w0);
  const long double diff = static_cast<long double>(cross);
  const long double total = static_cast<long double>(w0 + w1);
  return static_cast<double>(diff * diff /
                             (static_cast<long double>(w0) * static_cast<long double>(w1)) /
                             (total * total));
}

int otsu_threshold(const Histogram& h) {
  int occupied = 0;
  for (auto n : h.bins) occupied += n > 0;
  if (occupied < 2) throw Error(ErrorCode::ConstantImage, "Otsu needs at least two gray levels");

  int best_t = 0;
  double best = -1.0;
  for (int t = 0; t < 256; ++t) {
    const double var = between_class_variance(h, t);
    if (var > best) {
      best = var;
      best_t = t;
    }
  }
  return best_t;
}

OtsuResult otsu_threshold(const GrayImage& img) {
  OtsuResult result;
  result.threshold = otsu_threshold(histogram(img));
  result.mask = BinaryImage(img.width(), img.height());
  auto src = img.pixels();
  auto dst = result.mask.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > result.threshold ? 1 : 0;
  return result;
}

BinaryImage kmeans_segment(const RgbImage& img, Metric metric, int max_iterations) {
  const auto pixels = img.pixels();
  std::size_t darkest = 0, brightest = 0;
  bool varied = false;
  for (std::size_t i = 1; i < pixels.size(); ++i) {
    if (!(pixels[i] == pixels[0])) varied = true;
    if (luma_key(pixels[i]) < luma_key(pixels[darkest])) darkest = i;
    if (luma_key(pixels[i]) > luma_key(pixels[brightest])) brightest = i;
  }
  if (!varied) throw Error(ErrorCode::DegenerateClusters, "2-means needs at least two colours");

  std::array<std::array<double, 3>, 2> centroid{as_vector(pixels[darkest]), as_vector(pixels[brightest])};
  // Distinct colours with equal luma leave darkest == brightest; pick any
  // other colour so the two seeds differ.
  if (darkest == brightest) {
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      if (!(pixels[i] == pixels[darkest])) {
        centroid[1] = as_vector(pixels[i]);
        break;
      }
    }
  }

  std::vector<std::uint8_t> assignment(pixels.size(), 2);  // 2 = unassigned
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    std::array<std::array<double, 3>, 2> sum{};
    std::array<std::size_t, 2> count{};
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const auto c = as_vector(pixels[i]);
      const double d0 = distance(c, centroid[0], metric);
      const double d1 = distance(c, centroid[1], metric);
      const std::uint8_t a = d1 < d0 ? 1 : 0;
      if (a != assignment[i]) {
        assignment[i] = a;
        changed = true;
      }
      for (int ch = 0; ch < 3; ++ch) sum[a][static_cast<std::size_t>(ch)] += c[static_cast<std::size_t>(ch)];
      ++count[a];
    }
    if (!changed) break;
    for (std::size_t k = 0; k < 2; ++k) {
      if (count[k] == 0) continue;  // an empty cluster keeps its centroid
      for (std::size_t ch = 0; ch < 3; ++ch) centroid[k][ch] = sum[k][ch] / static_cast<double>(count[k]);
    }
  }

  const std::uint8_t fg = luma_of(centroid[1]) >= luma_of(centroid[0]) ? 1 : 0;
  BinaryImage mask(img.width(), img.height());
  auto dst = mask.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = assignment[i] == fg ? 1 : 0;
  return mask;
}

PixelModel train_pixel_classifier(std::vector<PixelSample> samples, Metric metric) {
  bool has_fg = false, has_bg = false;
  for (const PixelSample& s : samples) {
    (s.label == PixelLabel::Foreground ? has_fg : has_bg) = true;
  }
  if (!has_fg) throw Error(ErrorCode::MissingClass, "no foreground training sample");
  if (!has_bg) throw Error(ErrorCode::MissingClass, "no background training sample");
  return PixelModel{std::move(samples), metric};
}

BinaryImage classify_pixels(const PixelModel& model, const RgbImage& img) {
  std::vector<std::array<double, 3>> fg, bg;
  for (const PixelSample& s : model.samples) {
    (s.label == PixelLabel::Foreground ? fg : bg).push_back(as_vector(s.color));
  }
  auto nearest = [&](const std::array<double, 3>& c, const std::vector<std::array<double, 3>>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : set) best = std::min(best, distance(c, s, model.metric));
    return best;
  };

  BinaryImage mask(img.width(), img.height());
  auto src = img.pixels();
  auto dst = mask.pixels();
  // Identical colours share a label, so memoise on the packed RGB value.
  std::unordered_map<std::uint32_t, std::uint8_t> cache;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::uint32_t key = (std::uint32_t{src[i].r} << 16) | (std::uint32_t{src[i].g} << 8) | src[i].b;
    auto [it, inserted] = cache.try_emplace(key, 0);
    if (inserted) {
      const auto c = as_vector(src[i]);
      it->second = nearest(c, fg) < nearest(c, bg) ? 1 : 0;
    }
    dst[i] = it->second;
  }
  return mask;
}

BinaryImage segment(const RgbImage& img, const SegmentationMethod& method) {
  const BinaryImage raw = std::visit(
      overloaded{
          [&](const segmentation::Otsu&) { return otsu_threshold(to_grayscale(img)).mask; },
          [&](const segmentation::KMeans& m) { return kmeans_segment(img, m.metric); },
          [&](const segmentation::PixelClassifier& m) {
            // Re-validate: a model may have been assembled by hand or loaded from disk.
            train_pixel_classifier(m.model.samples, m.model.metric);
            return classify_pixels(m.model, img);
          },
      },
      method);
  return largest_component(raw);
}

}  // namespace vsign
