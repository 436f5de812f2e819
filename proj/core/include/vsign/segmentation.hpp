#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "vsign/image.hpp"
#include "vsign/metrics.hpp"

namespace vsign {

enum class PixelLabel : std::uint8_t { Background = 0, Foreground = 1 };

struct PixelSample {
  Rgb color;
  PixelLabel label = PixelLabel::Background;

  friend bool operator==(const PixelSample&, const PixelSample&) = default;
};

/// Lazy 1-nearest-neighbour colour model built from labelled pixels.
struct PixelModel {
  std::vector<PixelSample> samples;
  Metric metric = Metric::Euclidean;

  friend bool operator==(const PixelModel&, const PixelModel&) = default;
};

struct OtsuResult {
  int threshold = 0;
  BinaryImage mask;
};

/// Between-class variance w0*w1*(mu0-mu1)^2 of the split {<= t} / {> t}.
/// Zero when either class is empty.
double between_class_variance(const Histogram& h, int t);

/// Global Otsu threshold; the smallest maximiser wins. Throws ConstantImage
/// when the histogram has fewer than two occupied bins.
int otsu_threshold(const Histogram& h);

/// Foreground is gray > threshold (the bright hand on a black background).
OtsuResult otsu_threshold(const GrayImage& img);

/// Two-means clustering of RGB triples. Centroids start at the darkest and
/// brightest pixels by luma; the brighter final centroid is the foreground.
/// Throws DegenerateClusters when every pixel has the same colour.
BinaryImage kmeans_segment(const RgbImage& img, Metric metric, int max_iterations = 100);

/// Throws MissingClass unless both labels have at least one sample.
PixelModel train_pixel_classifier(std::vector<PixelSample> samples, Metric metric);

/// Nearest-sample labelling; equal foreground/background distances resolve
/// to background.
BinaryImage classify_pixels(const PixelModel& model, const RgbImage& img);

namespace segmentation {
struct Otsu {};
struct KMeans {
  Metric metric = Metric::Euclidean;
};
struct PixelClassifier {
  PixelModel model;
};
}  // namespace segmentation

using SegmentationMethod =
    std::variant<segmentation::Otsu, segmentation::KMeans, segmentation::PixelClassifier>;

/// Runs the chosen segmenter and keeps the largest 4-connected component.
BinaryImage segment(const RgbImage& img, const SegmentationMethod& method);

}  // namespace vsign
